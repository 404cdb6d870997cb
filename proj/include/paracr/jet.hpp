#pragma once

// Truncated weighted polynomials over the rationals.
//
// A WeightedPoly is a sparse polynomial in the variables a, b, x, y, p
// together with a grading (a positive weight per variable) and a
// truncation order L.  Every stored monomial has weight <= L; anything
// above L is unknown and has been discarded.  Arithmetic between jets of
// different orders yields a jet of the smaller order.

#include <array>
#include <iosfwd>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace paracr {

using Rational = mpq_class;

std::string toString(const Rational& q);
Rational parseRational(const std::string& text);

/// Raised when operands or substitutions violate a structural precondition
/// (grading mismatch, filtration-lowering substitution, wrong variables).
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when the input is valid but outside the domain of an algorithm
/// (e.g. F_a(0) = 0, or the surface is not of the expected type).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an order-by-order solve cannot determine a coefficient.
class SolveStall : public std::runtime_error {
public:
    SolveStall(const std::string& what, int weight)
        : std::runtime_error(what), weight_(weight) {}
    int weight() const noexcept { return weight_; }

private:
    int weight_;
};

enum class Var : std::uint8_t { a = 0, b = 1, x = 2, y = 3, p = 4 };
inline constexpr std::size_t kVarCount = 5;
inline constexpr std::array<Var, kVarCount> kAllVars{Var::a, Var::b, Var::x, Var::y, Var::p};

char varName(Var v);
std::optional<Var> varFromName(char c);

inline constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }

/// Exponent vector packed into 12-bit fields, a in the most significant
/// field.  Comparing the packed keys is lexicographic order with a < b < x < y < p
/// as field priority.
class Monomial {
public:
    static constexpr unsigned kMaxExponent = 4095;

    constexpr Monomial() = default;
    static Monomial of(Var v, unsigned exponent = 1);
    static Monomial fromExponents(const std::array<unsigned, kVarCount>& exps);
    static constexpr Monomial fromKey(std::uint64_t key)
    {
        Monomial m;
        m.key_ = key;
        return m;
    }

    unsigned exponent(Var v) const
    {
        return static_cast<unsigned>((key_ >> shift(v)) & kMaxExponent);
    }
    std::array<unsigned, kVarCount> exponents() const;
    unsigned totalDegree() const;
    bool isOne() const { return key_ == 0; }
    std::uint64_t key() const { return key_; }

    Monomial operator*(Monomial other) const;
    /// Monomial with the exponent of v replaced.
    Monomial withExponent(Var v, unsigned e) const;
    bool divisibleBy(Monomial other) const;

    friend constexpr bool operator==(Monomial, Monomial) = default;
    friend constexpr auto operator<=>(Monomial l, Monomial r) { return l.key_ <=> r.key_; }

private:
    static constexpr unsigned shift(Var v) { return 12u * (4u - static_cast<unsigned>(v)); }
    std::uint64_t key_ = 0;
};

std::string toString(Monomial m);

/// Positive integer weights per variable.  typeK is the weight of a (and y).
struct Grading {
    std::array<int, kVarCount> weights{1, 1, 1, 1, 1};
    int typeK = 1;

    /// a, y weight 2; b, x, p weight 1.
    static Grading regular();
    /// a, y weight k; b, x, p weight 1.
    static Grading singular(int k);
    /// Every variable weight 1.
    static Grading totalDegree();

    int weight(Var v) const { return weights[index(v)]; }
    int weight(Monomial m) const
    {
        int w = 0;
        for (Var v : kAllVars) w += weights[index(v)] * static_cast<int>(m.exponent(v));
        return w;
    }

    friend bool operator==(const Grading&, const Grading&) = default;
};

std::string describe(const Grading& g);

/// Sentinel truncation order for exact polynomials.
inline constexpr int kExactOrder = std::numeric_limits<int>::max() / 4;

class WeightedPoly {
public:
    struct Term {
        Monomial mono;
        Rational coef;
    };

    WeightedPoly() : WeightedPoly(Grading::regular(), kExactOrder) {}
    WeightedPoly(Grading grading, int order);

    static WeightedPoly constant(const Rational& c, Grading grading, int order = kExactOrder);
    static WeightedPoly variable(Var v, Grading grading, int order = kExactOrder);
    static WeightedPoly monomial(Monomial m, const Rational& c, Grading grading,
                                 int order = kExactOrder);
    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros and anything above the order.
    static WeightedPoly fromTerms(std::vector<Term> terms, Grading grading, int order);

    const Grading& grading() const { return grading_; }
    int order() const { return order_; }
    bool isExact() const { return order_ >= kExactOrder; }

    /// Terms in canonical order: increasing weight, then decreasing
    /// lexicographic exponent vector (a first).
    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool isZero() const { return terms_.empty(); }

    Rational coefficient(Monomial m) const;
    Rational constantTerm() const { return coefficient(Monomial{}); }
    /// Smallest weight carried by a term; order()+1 when zero.
    int lowestWeight() const;
    int highestWeight() const;
    unsigned degreeIn(Var v) const;
    bool dependsOn(Var v) const;
    bool dependsOnlyOn(std::initializer_list<Var> vars) const;

    WeightedPoly truncated(int order) const;
    /// Relabels the truncation order upwards.  Only valid when the caller
    /// knows the polynomial is exact to the new order.
    WeightedPoly withOrder(int order) const;
    /// Homogeneous part of the given weight.
    WeightedPoly component(int weight) const;
    /// Same terms under another grading; terms above `order` are dropped.
    WeightedPoly regraded(Grading grading, int order) const;
    /// p with v set to zero.
    WeightedPoly atZero(Var v) const;
    /// Coefficient of v^e, as a polynomial in the remaining variables.
    WeightedPoly coefficientOf(Var v, unsigned e) const;
    WeightedPoly renamed(Var from, Var to) const;
    WeightedPoly mulMonomial(Monomial m, const Rational& c = 1) const;

    WeightedPoly operator-() const;
    WeightedPoly& operator+=(const WeightedPoly& q);
    WeightedPoly& operator-=(const WeightedPoly& q);
    WeightedPoly& operator*=(const Rational& c);

    friend WeightedPoly operator+(WeightedPoly p, const WeightedPoly& q) { return p += q; }
    friend WeightedPoly operator-(WeightedPoly p, const WeightedPoly& q) { return p -= q; }
    friend WeightedPoly operator*(WeightedPoly p, const Rational& c) { return p *= c; }
    friend WeightedPoly operator*(const Rational& c, WeightedPoly p) { return p *= c; }
    friend WeightedPoly operator*(const WeightedPoly& p, const WeightedPoly& q);

    /// Same grading and identical terms; truncation orders are not compared.
    friend bool operator==(const WeightedPoly& p, const WeightedPoly& q);

private:
    friend class PolyBuilder;
    void canonicalize();

    Grading grading_;
    int order_;
    std::vector<Term> terms_;
};

/// True when p and q agree on every weight <= order.
bool equalMod(const WeightedPoly& p, const WeightedPoly& q, int order);

/// Accumulates terms with in-place addition; used by the arithmetic kernels.
class PolyBuilder {
public:
    PolyBuilder(Grading grading, int order);
    void add(Monomial m, const Rational& c);
    void addProduct(Monomial m, const Rational& c1, const Rational& c2);
    WeightedPoly build() &&;

private:
    Grading grading_;
    int order_;
    std::unordered_map<std::uint64_t, Rational> acc_;
    Rational scratch_;
};

WeightedPoly add(const WeightedPoly& p, const WeightedPoly& q);
WeightedPoly mul(const WeightedPoly& p, const WeightedPoly& q);
/// Product truncated at an explicit order.  Unlike mul, the order may exceed
/// min(p.order(), q.order()); the caller vouches that the result is valid there.
WeightedPoly mulTruncated(const WeightedPoly& p, const WeightedPoly& q, int order);
WeightedPoly pow(const WeightedPoly& p, unsigned n);
/// Product kept to the largest order its factors determine:
/// min(L_p + ord q, L_q + ord p), where ord is the lowest weight.
WeightedPoly mulKnown(const WeightedPoly& p, const WeightedPoly& q);

/// Variable -> series.  Variables without an entry are left in place.
struct SeriesAssignment {
    std::map<Var, WeightedPoly> substitutions;

    SeriesAssignment& set(Var v, WeightedPoly s)
    {
        substitutions.insert_or_assign(v, std::move(s));
        return *this;
    }
};

/// Formal composition p(s).  The result uses `target` grading (default:
/// p's) and is truncated at `order` (default: the largest order the
/// inputs determine).  Throws StructuralError if the requested order is
/// not determined by p's truncation, i.e. the assignment lowers weights.
WeightedPoly substitute(const WeightedPoly& p, const SeriesAssignment& s,
                        std::optional<Grading> target = std::nullopt,
                        std::optional<int> order = std::nullopt);

/// All monomials in `vars` of exactly the given weight, in canonical order.
std::vector<Monomial> monomialsOfWeight(const Grading& g, int weight, std::initializer_list<Var> vars);
std::vector<Monomial> monomialsOfWeight(const Grading& g, int weight, std::span<const Var> vars);

/// Homogeneous components (weight, part) in increasing weight.
std::vector<std::pair<int, WeightedPoly>> weightedComponents(const WeightedPoly& p);

/// Iterated formal derivative; the order drops by k * weight(v).
WeightedPoly partial(const WeightedPoly& p, Var v, unsigned k = 1);

/// Formal antiderivative in v vanishing at v = 0; the order rises by weight(v).
WeightedPoly integrate(const WeightedPoly& p, Var v);

/// Canonical text form, e.g. "a + b x - 3/2 b^2 x^2".
std::string formatPoly(const WeightedPoly& p);
std::ostream& operator<<(std::ostream& os, const WeightedPoly& p);

}  // namespace paracr
