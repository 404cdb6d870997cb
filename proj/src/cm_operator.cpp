#include "paracr/cm_operator.hpp"

#include <algorithm>

namespace paracr {

namespace {

constexpr std::array<Var, 2> kXY{Var::x, Var::y};
constexpr std::array<Var, 2> kAB{Var::a, Var::b};

std::span<const Var> slotVars(FieldSlot s)
{
    return (s == FieldSlot::eta || s == FieldSlot::xi) ? std::span<const Var>(kXY)
                                                       : std::span<const Var>(kAB);
}

WeightedPoly& slotRef(VFieldJet& v, FieldSlot s)
{
    switch (s) {
    case FieldSlot::eta: return v.eta;
    case FieldSlot::alpha: return v.alpha;
    case FieldSlot::beta: return v.beta;
    case FieldSlot::xi: return v.xi;
    }
    throw StructuralError("bad field slot");
}

}  // namespace

VFieldJet VFieldJet::zero(const Grading& g)
{
    WeightedPoly z(g, kExactOrder);
    return VFieldJet{z, z, z, z};
}

void VFieldJet::validate() const
{
    if (!eta.dependsOnlyOn({Var::x, Var::y}) || !xi.dependsOnlyOn({Var::x, Var::y}))
        throw StructuralError("eta and xi must depend on (x, y) only");
    if (!alpha.dependsOnlyOn({Var::a, Var::b}) || !beta.dependsOnlyOn({Var::a, Var::b}))
        throw StructuralError("alpha and beta must depend on (a, b) only");
}

VFieldJet& VFieldJet::operator+=(const VFieldJet& o)
{
    eta += o.eta;
    alpha += o.alpha;
    beta += o.beta;
    xi += o.xi;
    return *this;
}

VFieldJet operator*(const Rational& c, VFieldJet v)
{
    v.eta *= c;
    v.alpha *= c;
    v.beta *= c;
    v.xi *= c;
    return v;
}

std::string formatField(const VFieldJet& v)
{
    std::string out;
    auto part = [&](const WeightedPoly& p, const char* d) {
        if (p.isZero()) return;
        if (!out.empty()) out += " + ";
        out += "(" + formatPoly(p) + ") " + d;
    };
    part(v.eta, "d/dy");
    part(v.alpha, "d/da");
    part(v.beta, "d/db");
    part(v.xi, "d/dx");
    return out.empty() ? "0" : out;
}

const char* slotName(FieldSlot s)
{
    switch (s) {
    case FieldSlot::eta: return "eta";
    case FieldSlot::alpha: return "alpha";
    case FieldSlot::beta: return "beta";
    case FieldSlot::xi: return "xi";
    }
    return "?";
}

WeightedPoly tangencyResidual(const VFieldJet& v, const WeightedPoly& F)
{
    v.validate();
    SeriesAssignment onSurface;
    onSurface.set(Var::y, F);
    const WeightedPoly etaF = substitute(v.eta, onSurface);
    const WeightedPoly xiF = substitute(v.xi, onSurface);
    WeightedPoly r = etaF;
    r -= mulKnown(xiF, partial(F, Var::x));
    r -= mulKnown(v.alpha, partial(F, Var::a));
    r -= mulKnown(v.beta, partial(F, Var::b));
    return r.truncated(F.order());
}

WeightedPoly applyT(const VFieldJet& v)
{
    const Grading g = Grading::regular();
    const WeightedPoly model = WeightedPoly::variable(Var::a, g) +
                               WeightedPoly::variable(Var::b, g) * WeightedPoly::variable(Var::x, g);
    return tangencyResidual(v, model);
}

// ------------------------------------------------------------ ModelOperator

ModelOperator::ModelOperator(WeightedPoly model, std::vector<FieldSlot> columnOrder)
    : model_(std::move(model)), order_(std::move(columnOrder))
{
    if (!model_.isExact()) throw StructuralError("model surface must be an exact polynomial");
}

ModelOperator ModelOperator::regular()
{
    const Grading g = Grading::regular();
    return ModelOperator(WeightedPoly::variable(Var::a, g) +
                             WeightedPoly::variable(Var::b, g) * WeightedPoly::variable(Var::x, g),
                         {FieldSlot::eta, FieldSlot::alpha, FieldSlot::beta, FieldSlot::xi});
}

int ModelOperator::slotWeight(FieldSlot s, int nu) const
{
    // eta d/dy and alpha d/da carry the weight of y and a; beta, xi the weight 1.
    return (s == FieldSlot::eta || s == FieldSlot::alpha) ? nu : nu - grading().typeK + 1;
}

GradedBasis ModelOperator::domain(int nu) const
{
    GradedBasis b;
    b.weight = nu;
    for (FieldSlot s : order_)
        for (Monomial m : monomialsOfWeight(grading(), slotWeight(s, nu), slotVars(s)))
            b.fields.push_back({s, m});
    return b;
}

GradedBasis ModelOperator::codomain(int nu) const
{
    GradedBasis b;
    b.weight = nu;
    b.monomials = monomialsOfWeight(grading(), nu, {Var::a, Var::b, Var::x});
    return b;
}

RationalMatrix ModelOperator::matrix(int nu) const
{
    const GradedBasis dom = domain(nu);
    const GradedBasis cod = codomain(nu);
    RationalMatrix m(cod.monomials.size(), dom.fields.size());
    for (std::size_t j = 0; j < dom.fields.size(); ++j) {
        VFieldJet v = VFieldJet::zero(grading());
        slotRef(v, dom.fields[j].slot) = WeightedPoly::monomial(dom.fields[j].mono, 1, grading());
        const WeightedPoly img = apply(v);
        for (const auto& t : img.terms()) {
            auto it = std::find(cod.monomials.begin(), cod.monomials.end(), t.mono);
            if (it == cod.monomials.end())
                throw StructuralError("operator image leaves the weight " + std::to_string(nu) +
                                      " component: " + toString(t.mono));
            m(static_cast<std::size_t>(it - cod.monomials.begin()), j) = t.coef;
        }
    }
    return m;
}

VFieldJet ModelOperator::fieldFromCoordinates(const GradedBasis& dom, const std::vector<Rational>& coords,
                                              std::size_t offset) const
{
    VFieldJet v = VFieldJet::zero(grading());
    for (std::size_t j = 0; j < dom.fields.size(); ++j) {
        const Rational& c = coords[offset + j];
        if (c == 0) continue;
        slotRef(v, dom.fields[j].slot) += WeightedPoly::monomial(dom.fields[j].mono, c, grading());
    }
    return v;
}

// ------------------------------------------------------------ reports

std::vector<Monomial> normalComplementMonomials(int ell)
{
    const Grading g = Grading::regular();
    std::vector<Monomial> out;
    for (Monomial m : monomialsOfWeight(g, ell, {Var::a, Var::b, Var::x})) {
        const unsigned j = m.exponent(Var::b), l = m.exponent(Var::x);
        if (j < 2 || l < 2) continue;
        if (j <= 3 && l <= 3) continue;
        out.push_back(m);
    }
    return out;
}

OperatorReport operatorReport(int ell, Backend backend)
{
    if (ell < 0) throw StructuralError("ell must be non-negative");
    const ModelOperator op = ModelOperator::regular();
    const GradedBasis dom = op.domain(ell);
    const RationalMatrix M = op.matrix(ell);

    OperatorReport rep;
    rep.ell = ell;
    rep.domainDim = dom.fields.size();
    const Echelon e = rref(M, backend);
    rep.imageDim = e.pivots.size();
    rep.kernelDim = rep.domainDim - rep.imageDim;
    for (const auto& vec : nullspace(M, backend)) rep.kernelBasis.push_back(op.fieldFromCoordinates(dom, vec));
    for (std::size_t c : e.pivots) {
        VFieldJet v = VFieldJet::zero(op.grading());
        slotRef(v, dom.fields[c].slot) = WeightedPoly::monomial(dom.fields[c].mono, 1, op.grading());
        rep.imageBasis.push_back(op.apply(v));
    }
    if (ell >= 3) rep.complementMonomials = normalComplementMonomials(ell);
    return rep;
}

std::vector<VFieldJet> kernelBasis(int ell)
{
    return operatorReport(ell).kernelBasis;
}

// ------------------------------------------------------------ decomposition

HomologicalSolver::HomologicalSolver(const ModelOperator& op, int nu, std::vector<Monomial> retained,
                                     Backend backend)
    : op_(op), nu_(nu), retained_(std::move(retained)), backend_(backend)
{
    dom_ = op_.domain(nu);
    cod_ = op_.codomain(nu);
    RationalMatrix M = op_.matrix(nu);
    RationalMatrix E(cod_.monomials.size(), retained_.size());
    for (std::size_t j = 0; j < retained_.size(); ++j) {
        auto it = std::find(cod_.monomials.begin(), cod_.monomials.end(), retained_[j]);
        if (it == cod_.monomials.end()) throw StructuralError("retained monomial of the wrong weight");
        E(static_cast<std::size_t>(it - cod_.monomials.begin()), j) = 1;
    }
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = -M(i, j);
    system_ = M.hcat(E);
}

Decomposition HomologicalSolver::solve(const WeightedPoly& P) const
{
    std::vector<Rational> rhs(cod_.monomials.size());
    for (const auto& t : P.terms()) {
        auto it = std::find(cod_.monomials.begin(), cod_.monomials.end(), t.mono);
        if (it == cod_.monomials.end())
            throw StructuralError("decompose: input is not homogeneous of weight " + std::to_string(nu_) +
                                  " in (a, b, x)");
        rhs[static_cast<std::size_t>(it - cod_.monomials.begin())] = t.coef;
    }
    const auto sol = paracr::solve(system_, rhs, backend_);
    if (!sol)
        throw std::logic_error("weight " + std::to_string(nu_) +
                               ": polynomial is not in image + retained span (" + formatPoly(P) + ")");
    Decomposition d{op_.fieldFromCoordinates(dom_, *sol), WeightedPoly(op_.grading(), kExactOrder)};
    for (std::size_t j = 0; j < retained_.size(); ++j)
        d.normalPart += WeightedPoly::monomial(retained_[j], (*sol)[dom_.fields.size() + j], op_.grading());
    // Round trip, asserted on every call.
    WeightedPoly back = d.normalPart - op_.apply(d.field);
    if (!(back == P.withOrder(kExactOrder).regraded(op_.grading(), kExactOrder)))
        throw std::logic_error("decomposition round trip failed at weight " + std::to_string(nu_));
    return d;
}

Decomposition decompose(const WeightedPoly& P)
{
    if (P.isZero()) return {VFieldJet::zero(Grading::regular()), WeightedPoly(Grading::regular(), kExactOrder)};
    const int nu = P.lowestWeight();
    if (P.highestWeight() != nu) throw StructuralError("decompose expects a homogeneous polynomial");
    if (nu < 3) throw StructuralError("decompose expects weight >= 3");
    HomologicalSolver solver(ModelOperator::regular(), nu, normalComplementMonomials(nu));
    return solver.solve(P);
}

}  // namespace paracr
