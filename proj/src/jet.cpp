#include "paracr/jet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace paracr {

std::string toString(const Rational& q)
{
    return q.get_str();
}

Rational parseRational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

char varName(Var v)
{
    static constexpr std::array<char, kVarCount> names{'a', 'b', 'x', 'y', 'p'};
    return names[index(v)];
}

std::optional<Var> varFromName(char c)
{
    for (Var v : kAllVars)
        if (varName(v) == c) return v;
    return std::nullopt;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, unsigned exponent)
{
    if (exponent > kMaxExponent) throw StructuralError("exponent overflow");
    return fromKey(static_cast<std::uint64_t>(exponent) << shift(v));
}

Monomial Monomial::fromExponents(const std::array<unsigned, kVarCount>& exps)
{
    std::uint64_t key = 0;
    for (Var v : kAllVars) {
        if (exps[index(v)] > kMaxExponent) throw StructuralError("exponent overflow");
        key |= static_cast<std::uint64_t>(exps[index(v)]) << shift(v);
    }
    return fromKey(key);
}

std::array<unsigned, kVarCount> Monomial::exponents() const
{
    std::array<unsigned, kVarCount> e{};
    for (Var v : kAllVars) e[index(v)] = exponent(v);
    return e;
}

unsigned Monomial::totalDegree() const
{
    unsigned d = 0;
    for (Var v : kAllVars) d += exponent(v);
    return d;
}

Monomial Monomial::operator*(Monomial other) const
{
    // Fields never carry into each other as long as each sum stays below 4096.
    for (Var v : kAllVars)
        if (exponent(v) + other.exponent(v) > kMaxExponent)
            throw StructuralError("exponent overflow");
    return fromKey(key_ + other.key_);
}

Monomial Monomial::withExponent(Var v, unsigned e) const
{
    if (e > kMaxExponent) throw StructuralError("exponent overflow");
    const std::uint64_t cleared = key_ & ~(static_cast<std::uint64_t>(kMaxExponent) << shift(v));
    return fromKey(cleared | (static_cast<std::uint64_t>(e) << shift(v)));
}

bool Monomial::divisibleBy(Monomial other) const
{
    for (Var v : kAllVars)
        if (exponent(v) < other.exponent(v)) return false;
    return true;
}

std::string toString(Monomial m)
{
    std::string out;
    for (Var v : kAllVars) {
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        if (!out.empty()) out += ' ';
        out += varName(v);
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

// ----------------------------------------------------------------- Grading

Grading Grading::regular()
{
    return Grading{{2, 1, 1, 2, 1}, 2};
}

Grading Grading::singular(int k)
{
    if (k < 2) throw StructuralError("singular grading needs k >= 2");
    return Grading{{k, 1, 1, k, 1}, k};
}

Grading Grading::totalDegree()
{
    return Grading{{1, 1, 1, 1, 1}, 1};
}

std::string describe(const Grading& g)
{
    if (g == Grading::regular()) return "regular";
    if (g == Grading::totalDegree()) return "total-degree";
    if (g.typeK >= 2 && g == Grading::singular(g.typeK)) return "singular:" + std::to_string(g.typeK);
    std::string out = "weights(";
    for (Var v : kAllVars) {
        out += varName(v);
        out += '=' + std::to_string(g.weight(v)) + (v == Var::p ? ")" : ",");
    }
    return out;
}

// ------------------------------------------------------------ WeightedPoly

namespace {

struct CanonicalLess {
    const Grading* g;
    bool operator()(const WeightedPoly::Term& l, const WeightedPoly::Term& r) const
    {
        const int wl = g->weight(l.mono);
        const int wr = g->weight(r.mono);
        if (wl != wr) return wl < wr;
        return l.mono.key() > r.mono.key();
    }
};

void requireSameGrading(const WeightedPoly& p, const WeightedPoly& q)
{
    if (!(p.grading() == q.grading()))
        throw StructuralError("grading mismatch: " + describe(p.grading()) + " vs " +
                              describe(q.grading()));
}

}  // namespace

WeightedPoly::WeightedPoly(Grading grading, int order) : grading_(grading), order_(order)
{
    if (order_ < 0) order_ = -1;
    for (Var v : kAllVars)
        if (grading_.weight(v) <= 0) throw StructuralError("weights must be positive");
}

WeightedPoly WeightedPoly::constant(const Rational& c, Grading grading, int order)
{
    return monomial(Monomial{}, c, grading, order);
}

WeightedPoly WeightedPoly::variable(Var v, Grading grading, int order)
{
    return monomial(Monomial::of(v), 1, grading, order);
}

WeightedPoly WeightedPoly::monomial(Monomial m, const Rational& c, Grading grading, int order)
{
    WeightedPoly p(grading, order);
    if (c != 0 && grading.weight(m) <= p.order_) {
        p.terms_.push_back({m, c});
        p.terms_.back().coef.canonicalize();
    }
    return p;
}

WeightedPoly WeightedPoly::fromTerms(std::vector<Term> terms, Grading grading, int order)
{
    WeightedPoly p(grading, order);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
}

void WeightedPoly::canonicalize()
{
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& l, const Term& r) { return l.mono.key() < r.mono.key(); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (grading_.weight(t.mono) > order_) continue;
        if (!merged.empty() && merged.back().mono == t.mono)
            merged.back().coef += t.coef;
        else
            merged.push_back(std::move(t));
    }
    for (auto& t : merged) t.coef.canonicalize();
    std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
    std::sort(merged.begin(), merged.end(), CanonicalLess{&grading_});
    terms_ = std::move(merged);
}

Rational WeightedPoly::coefficient(Monomial m) const
{
    const Term probe{m, 0};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, CanonicalLess{&grading_});
    if (it != terms_.end() && it->mono == m) return it->coef;
    return 0;
}

int WeightedPoly::lowestWeight() const
{
    if (terms_.empty()) return order_ >= kExactOrder ? kExactOrder : order_ + 1;
    return grading_.weight(terms_.front().mono);
}

int WeightedPoly::highestWeight() const
{
    if (terms_.empty()) return -1;
    return grading_.weight(terms_.back().mono);
}

unsigned WeightedPoly::degreeIn(Var v) const
{
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
    return d;
}

bool WeightedPoly::dependsOn(Var v) const
{
    return degreeIn(v) > 0;
}

bool WeightedPoly::dependsOnlyOn(std::initializer_list<Var> vars) const
{
    for (Var v : kAllVars) {
        if (std::find(vars.begin(), vars.end(), v) != vars.end()) continue;
        if (dependsOn(v)) return false;
    }
    return true;
}

WeightedPoly WeightedPoly::truncated(int order) const
{
    WeightedPoly p(grading_, std::min(order, order_));
    for (const auto& t : terms_) {
        if (grading_.weight(t.mono) > p.order_) break;
        p.terms_.push_back(t);
    }
    return p;
}

WeightedPoly WeightedPoly::withOrder(int order) const
{
    WeightedPoly p = *this;
    p.order_ = order;
    if (order < order_) return truncated(order);
    return p;
}

WeightedPoly WeightedPoly::component(int weight) const
{
    WeightedPoly p(grading_, order_);
    for (const auto& t : terms_)
        if (grading_.weight(t.mono) == weight) p.terms_.push_back(t);
    return p;
}

WeightedPoly WeightedPoly::regraded(Grading grading, int order) const
{
    return fromTerms(terms_, grading, order);
}

WeightedPoly WeightedPoly::atZero(Var v) const
{
    WeightedPoly p(grading_, order_);
    for (const auto& t : terms_)
        if (t.mono.exponent(v) == 0) p.terms_.push_back(t);
    return p;
}

WeightedPoly WeightedPoly::coefficientOf(Var v, unsigned e) const
{
    // Removing v^e lowers each weight by the same amount, so the order follows.
    const int drop = static_cast<int>(e) * grading_.weight(v);
    WeightedPoly p(grading_, isExact() ? kExactOrder : order_ - drop);
    for (const auto& t : terms_)
        if (t.mono.exponent(v) == e) p.terms_.push_back({t.mono.withExponent(v, 0), t.coef});
    p.canonicalize();
    return p;
}

WeightedPoly WeightedPoly::renamed(Var from, Var to) const
{
    if (from == to) return *this;
    if (grading_.weight(from) != grading_.weight(to))
        throw StructuralError("renaming between variables of different weight");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.mono.exponent(to) != 0 && t.mono.exponent(from) != 0)
            throw StructuralError("renaming onto a variable already present");
        const unsigned e = t.mono.exponent(from);
        out.push_back({t.mono.withExponent(from, 0).withExponent(to, e + t.mono.exponent(to)),
                       t.coef});
    }
    return fromTerms(std::move(out), grading_, order_);
}

WeightedPoly WeightedPoly::mulMonomial(Monomial m, const Rational& c) const
{
    WeightedPoly p(grading_, order_);
    if (c == 0) return p;
    const int w = grading_.weight(m);
    for (const auto& t : terms_) {
        if (grading_.weight(t.mono) + w > order_) break;
        p.terms_.push_back({t.mono * m, t.coef * c});
    }
    // Multiplying by a monomial preserves the relative canonical order.
    return p;
}

WeightedPoly WeightedPoly::operator-() const
{
    WeightedPoly p = *this;
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
}

WeightedPoly& WeightedPoly::operator+=(const WeightedPoly& q)
{
    requireSameGrading(*this, q);
    const int order = std::min(order_, q.order_);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + q.terms_.size());
    CanonicalLess less{&grading_};
    auto i = terms_.begin();
    auto j = q.terms_.begin();
    while (i != terms_.end() || j != q.terms_.end()) {
        if (j == q.terms_.end() || (i != terms_.end() && less(*i, *j))) {
            merged.push_back(std::move(*i++));
        } else if (i == terms_.end() || less(*j, *i)) {
            merged.push_back(*j++);
        } else {
            Rational c = i->coef + j->coef;
            if (c != 0) merged.push_back({i->mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    std::erase_if(merged, [&](const Term& t) { return grading_.weight(t.mono) > order; });
    terms_ = std::move(merged);
    order_ = order;
    return *this;
}

WeightedPoly& WeightedPoly::operator-=(const WeightedPoly& q)
{
    return *this += -q;
}

WeightedPoly& WeightedPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

WeightedPoly operator*(const WeightedPoly& p, const WeightedPoly& q)
{
    return mul(p, q);
}

bool operator==(const WeightedPoly& p, const WeightedPoly& q)
{
    if (!(p.grading_ == q.grading_) || p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i)
        if (p.terms_[i].mono != q.terms_[i].mono || p.terms_[i].coef != q.terms_[i].coef)
            return false;
    return true;
}

bool equalMod(const WeightedPoly& p, const WeightedPoly& q, int order)
{
    return p.truncated(order) == q.truncated(order);
}

// ------------------------------------------------------------- PolyBuilder

PolyBuilder::PolyBuilder(Grading grading, int order) : grading_(grading), order_(order) {}

void PolyBuilder::add(Monomial m, const Rational& c)
{
    if (grading_.weight(m) > order_) return;
    auto [it, inserted] = acc_.try_emplace(m.key(), c);
    if (!inserted) it->second += c;
}

void PolyBuilder::addProduct(Monomial m, const Rational& c1, const Rational& c2)
{
    auto [it, inserted] = acc_.try_emplace(m.key());
    if (inserted) {
        mpq_mul(it->second.get_mpq_t(), c1.get_mpq_t(), c2.get_mpq_t());
    } else {
        mpq_mul(scratch_.get_mpq_t(), c1.get_mpq_t(), c2.get_mpq_t());
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), scratch_.get_mpq_t());
    }
}

WeightedPoly PolyBuilder::build() &&
{
    WeightedPoly p(grading_, order_);
    p.terms_.reserve(acc_.size());
    for (auto& [key, c] : acc_)
        if (c != 0) p.terms_.push_back({Monomial::fromKey(key), std::move(c)});
    std::sort(p.terms_.begin(), p.terms_.end(), CanonicalLess{&p.grading_});
    return p;
}

// --------------------------------------------------------------- Kernels

WeightedPoly add(const WeightedPoly& p, const WeightedPoly& q)
{
    return p + q;
}

WeightedPoly mulTruncated(const WeightedPoly& p, const WeightedPoly& q, int order)
{
    requireSameGrading(p, q);
    const Grading& g = p.grading();
    PolyBuilder out(g, order);
    const auto qt = q.terms();
    std::vector<int> qw(qt.size());
    for (std::size_t j = 0; j < qt.size(); ++j) qw[j] = g.weight(qt[j].mono);
    for (const auto& s : p.terms()) {
        const int ws = g.weight(s.mono);
        if (ws + (qt.empty() ? 0 : qw.front()) > order) break;
        for (std::size_t j = 0; j < qt.size(); ++j) {
            if (ws + qw[j] > order) break;
            out.addProduct(s.mono * qt[j].mono, s.coef, qt[j].coef);
        }
    }
    return std::move(out).build();
}

WeightedPoly mul(const WeightedPoly& p, const WeightedPoly& q)
{
    return mulTruncated(p, q, std::min(p.order(), q.order()));
}

WeightedPoly pow(const WeightedPoly& p, unsigned n)
{
    WeightedPoly result = WeightedPoly::constant(1, p.grading(), p.order());
    WeightedPoly base = p;
    while (n > 0) {
        if (n & 1u) result = mul(result, base);
        n >>= 1u;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

WeightedPoly mulKnown(const WeightedPoly& p, const WeightedPoly& q)
{
    auto bound = [](const WeightedPoly& known, const WeightedPoly& other) {
        if (known.isExact()) return kExactOrder;
        const long b = static_cast<long>(known.order()) + other.lowestWeight();
        return static_cast<int>(std::min<long>(b, kExactOrder));
    };
    return mulTruncated(p, q, std::min(bound(p, q), bound(q, p)));
}

std::vector<std::pair<int, WeightedPoly>> weightedComponents(const WeightedPoly& p)
{
    std::vector<std::pair<int, WeightedPoly>> out;
    std::vector<WeightedPoly::Term> current;
    int currentWeight = -1;
    auto flush = [&] {
        if (current.empty()) return;
        out.emplace_back(currentWeight,
                         WeightedPoly::fromTerms(std::move(current), p.grading(), p.order()));
        current.clear();
    };
    for (const auto& t : p.terms()) {
        const int w = p.grading().weight(t.mono);
        if (w != currentWeight) {
            flush();
            currentWeight = w;
        }
        current.push_back(t);
    }
    flush();
    return out;
}

WeightedPoly partial(const WeightedPoly& p, Var v, unsigned k)
{
    const int drop = static_cast<int>(k) * p.grading().weight(v);
    const int order = p.isExact() ? kExactOrder : p.order() - drop;
    std::vector<WeightedPoly::Term> out;
    for (const auto& t : p.terms()) {
        const unsigned e = t.mono.exponent(v);
        if (e < k) continue;
        Rational c = t.coef;
        for (unsigned i = 0; i < k; ++i) c *= static_cast<unsigned long>(e - i);
        out.push_back({t.mono.withExponent(v, e - k), std::move(c)});
    }
    return WeightedPoly::fromTerms(std::move(out), p.grading(), order);
}

WeightedPoly integrate(const WeightedPoly& p, Var v)
{
    const int order = p.isExact() ? kExactOrder : p.order() + p.grading().weight(v);
    std::vector<WeightedPoly::Term> out;
    for (const auto& t : p.terms()) {
        const unsigned e = t.mono.exponent(v);
        out.push_back({t.mono.withExponent(v, e + 1), t.coef / Rational(e + 1)});
    }
    return WeightedPoly::fromTerms(std::move(out), p.grading(), order);
}

// ------------------------------------------------------------- Substitute

namespace {

struct PowerCache {
    const WeightedPoly* base = nullptr;
    bool identity = false;
    Var var{};
    std::vector<WeightedPoly> powers;  // powers[e] = base^e

    const WeightedPoly& get(unsigned e, const Grading& g, int order)
    {
        if (powers.empty()) powers.push_back(WeightedPoly::constant(1, g, order));
        while (powers.size() <= e) powers.push_back(mulTruncated(powers.back(), *base, order));
        return powers[e];
    }
};

// Horner-style nested evaluation: terms are grouped by the exponent of the
// leading variable, recursively.  Variables left in place multiply by a
// monomial, which is cheap.
WeightedPoly evalNested(std::span<const WeightedPoly::Term> terms, std::size_t varPos,
                        std::array<PowerCache, kVarCount>& caches, const Grading& g, int order)
{
    if (varPos == kVarCount) {
        Rational c = 0;
        for (const auto& t : terms) c += t.coef;
        return WeightedPoly::constant(c, g, order);
    }
    const Var v = kAllVars[varPos];
    WeightedPoly result(g, order);
    std::size_t start = 0;
    while (start < terms.size()) {
        const unsigned e = terms[start].mono.exponent(v);
        std::size_t end = start;
        while (end < terms.size() && terms[end].mono.exponent(v) == e) ++end;
        WeightedPoly inner = evalNested(terms.subspan(start, end - start), varPos + 1, caches, g, order);
        if (e == 0) {
            result += inner;
        } else if (caches[varPos].identity) {
            result += inner.mulMonomial(Monomial::of(v, e));
        } else {
            result += mulTruncated(caches[varPos].get(e, g, order), inner, order);
        }
        start = end;
    }
    return result;
}

}  // namespace

WeightedPoly substitute(const WeightedPoly& p, const SeriesAssignment& s,
                        std::optional<Grading> target, std::optional<int> order)
{
    const Grading tg = target.value_or(p.grading());
    const Grading& pg = p.grading();

    // Filtration check: a missing term of p (weight > L_p) maps to weight at
    // least ratio * (L_p + 1), where ratio bounds ord(image)/weight over the
    // variables that actually occur.
    int determined = kExactOrder;
    double ratio = 1e300;
    for (Var v : kAllVars) {
        if (!p.dependsOn(v)) continue;
        auto it = s.substitutions.find(v);
        int ord;
        if (it == s.substitutions.end()) {
            ord = tg.weight(v);
        } else {
            if (!(it->second.grading() == tg))
                throw StructuralError("substituted series must use the target grading");
            ord = it->second.lowestWeight();
            determined = std::min(determined, it->second.order());
        }
        ratio = std::min(ratio, static_cast<double>(ord) / pg.weight(v));
    }
    if (!p.isExact()) {
        if (ratio <= 0) throw StructuralError("substituted series has a constant term");
        // Largest order L with L < ratio * (L_p + 1).
        const double bound = ratio * (static_cast<double>(p.order()) + 1.0);
        const int byP = bound >= kExactOrder ? kExactOrder : static_cast<int>(std::ceil(bound)) - 1;
        determined = std::min(determined, byP);
    }
    int resultOrder = determined;
    if (order) {
        if (*order > determined)
            throw StructuralError("substitution does not determine the result to order " +
                                  std::to_string(*order) + " (only to " +
                                  std::to_string(determined) + ")");
        resultOrder = *order;
    }

    std::array<PowerCache, kVarCount> caches;
    for (Var v : kAllVars) {
        auto& c = caches[index(v)];
        c.var = v;
        auto it = s.substitutions.find(v);
        if (it == s.substitutions.end()) {
            c.identity = true;
        } else {
            c.base = &it->second;
        }
    }

    std::vector<WeightedPoly::Term> sorted(p.terms().begin(), p.terms().end());
    std::sort(sorted.begin(), sorted.end(),
              [](const WeightedPoly::Term& l, const WeightedPoly::Term& r) {
                  return l.mono.key() > r.mono.key();
              });
    if (!(tg == pg)) {
        // Identity variables change weight under the new grading; nothing to do
        // beyond evaluating in the target grading.
    }
    return evalNested(sorted, 0, caches, tg, resultOrder);
}

std::vector<Monomial> monomialsOfWeight(const Grading& g, int weight, std::initializer_list<Var> vars)
{
    return monomialsOfWeight(g, weight, std::span<const Var>(vars.begin(), vars.size()));
}

std::vector<Monomial> monomialsOfWeight(const Grading& g, int weight, std::span<const Var> vars)
{
    std::vector<Monomial> out;
    if (weight < 0) return out;
    std::array<unsigned, kVarCount> e{};
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == vars.size()) {
            if (left == 0) out.push_back(Monomial::fromExponents(e));
            return;
        }
        const int w = g.weight(vars[i]);
        for (int k = 0; k * w <= left; ++k) {
            e[index(vars[i])] = static_cast<unsigned>(k);
            self(self, i + 1, left - k * w);
        }
        e[index(vars[i])] = 0;
    };
    rec(rec, 0, weight);
    std::sort(out.begin(), out.end(), [](Monomial l, Monomial r) { return l.key() > r.key(); });
    return out;
}

// --------------------------------------------------------------- Printing

std::string formatPoly(const WeightedPoly& p)
{
    if (p.isZero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        const bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const bool one = c == 1;
        if (t.mono.isOne()) {
            out += toString(c);
        } else {
            if (!one) out += toString(c) + " ";
            out += toString(t.mono);
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const WeightedPoly& p)
{
    return os << formatPoly(p);
}

}  // namespace paracr
