#pragma once

// The linearized tangency operator of a weighted-homogeneous model surface
// y = F0(a,b,x).  For the regular model F0 = a + bx this is
//     T(V) = eta - alpha - x beta - b xi   on y = a + bx,
// where V = eta d/dy + alpha d/da + beta d/db + xi d/dx.

#include <string>
#include <vector>

#include "paracr/jet.hpp"
#include "paracr/linalg.hpp"

namespace paracr {

struct VFieldJet {
    WeightedPoly eta;    ///< in (x, y)
    WeightedPoly alpha;  ///< in (a, b)
    WeightedPoly beta;   ///< in (a, b)
    WeightedPoly xi;     ///< in (x, y)

    static VFieldJet zero(const Grading& g);
    const Grading& grading() const { return eta.grading(); }
    /// Throws StructuralError if a component uses the wrong variables.
    void validate() const;

    VFieldJet& operator+=(const VFieldJet& o);
    friend VFieldJet operator*(const Rational& c, VFieldJet v);
    friend bool operator==(const VFieldJet&, const VFieldJet&) = default;
};

std::string formatField(const VFieldJet& v);

enum class FieldSlot { eta, alpha, beta, xi };
const char* slotName(FieldSlot s);

struct FieldBasisElement {
    FieldSlot slot;
    Monomial mono;
};

/// Coordinates for one homogeneous piece: either polynomial monomials or
/// elementary field components.
struct GradedBasis {
    int weight = 0;
    std::vector<Monomial> monomials;
    std::vector<FieldBasisElement> fields;
};

/// V(y - F)|_{y=F} for an arbitrary surface F(a,b,x); zero iff V is tangent.
WeightedPoly tangencyResidual(const VFieldJet& v, const WeightedPoly& F);

/// T(V) for the regular model a + bx.
WeightedPoly applyT(const VFieldJet& v);

/// The operator restricted to fields that land in weight nu, for a
/// weighted-homogeneous model of weight k = typeK.  eta and alpha have
/// weight nu, beta and xi weight nu - k + 1.
class ModelOperator {
public:
    ModelOperator(WeightedPoly model, std::vector<FieldSlot> columnOrder);
    static ModelOperator regular();

    const WeightedPoly& model() const { return model_; }
    const Grading& grading() const { return model_.grading(); }
    int slotWeight(FieldSlot s, int nu) const;

    GradedBasis domain(int nu) const;
    GradedBasis codomain(int nu) const;
    /// Matrix of the operator in the canonical bases: rows = codomain.
    RationalMatrix matrix(int nu) const;

    WeightedPoly apply(const VFieldJet& v) const { return tangencyResidual(v, model_); }
    VFieldJet fieldFromCoordinates(const GradedBasis& dom, const std::vector<Rational>& coords,
                                   std::size_t offset = 0) const;

private:
    WeightedPoly model_;
    std::vector<FieldSlot> order_;
};

struct OperatorReport {
    int ell = 0;
    std::size_t domainDim = 0, imageDim = 0, kernelDim = 0;
    std::vector<VFieldJet> kernelBasis;
    std::vector<WeightedPoly> imageBasis;
    std::vector<Monomial> complementMonomials;
};

OperatorReport operatorReport(int ell, Backend backend = Backend::Serial);
std::vector<VFieldJet> kernelBasis(int ell);

/// Weight-ell monomials a^i b^j x^l kept by the regular normal form:
/// j >= 2, l >= 2 and (j,l) not in {(2,2),(2,3),(3,2),(3,3)}.
std::vector<Monomial> normalComplementMonomials(int ell);

struct Decomposition {
    VFieldJet field;
    WeightedPoly normalPart;
};

/// Splits homogeneous polynomials of one weight into an operator image part
/// plus a part supported on a fixed set of retained monomials:
///     P = -apply(field) + normalPart.
/// Free parameters of the linear system are set to zero after reduction
/// with operator columns first, in the operator's column order.
class HomologicalSolver {
public:
    HomologicalSolver(const ModelOperator& op, int nu, std::vector<Monomial> retained,
                      Backend backend = Backend::Serial);
    Decomposition solve(const WeightedPoly& P) const;
    int weight() const { return nu_; }
    const std::vector<Monomial>& retained() const { return retained_; }

private:
    ModelOperator op_;
    int nu_;
    std::vector<Monomial> retained_;
    Backend backend_;
    GradedBasis dom_, cod_;
    RationalMatrix system_;
};

/// Regular decomposition of a homogeneous P of weight >= 3.
Decomposition decompose(const WeightedPoly& P);

}  // namespace paracr
