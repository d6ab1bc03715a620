#include "crgauss/calculus.hpp"

namespace crgauss {

namespace {

const ExactComplex kTwoI(0, 2);

RFunc extended(const RFunc& h) {
    return h.alphabet().extended ? h : h.embedded(h.alphabet().with_conjugates());
}

}  // namespace

RFunc apply_L(const RFunc& h, int j) {
    if (j < 0 || j >= h.alphabet().m) throw DomainError("L index out of range");
    const RFunc H = extended(h);
    const VarAlphabet a = H.alphabet();
    RFunc zeta = RFunc(MPoly::variable(a, a.zeta(j), kTwoI));
    return H.derivative(a.z(j)) + zeta * H.derivative(a.w());
}

RFunc apply_T(const RFunc& h) { return h.derivative(h.alphabet().w()); }

RFunc apply_Lbar(const RFunc& h, int j) {
    if (j < 0 || j >= h.alphabet().m) throw DomainError("L index out of range");
    const RFunc H = extended(h);
    const VarAlphabet a = H.alphabet();
    RFunc z = RFunc(MPoly::variable(a, a.z(j), -kTwoI));
    return H.derivative(a.zeta(j)) + z * H.derivative(a.eta());
}

MPoly hypersurface_restrict(const MPoly& h) {
    const VarAlphabet a = h.alphabet().with_conjugates();
    const MPoly H = h.alphabet().extended ? h : h.embedded(a);
    MPoly zz(a);
    for (int j = 0; j < a.m; ++j) zz += MPoly::variable(a, a.z(j)) * MPoly::variable(a, a.zeta(j));
    std::vector<MPoly> sub;
    for (int s = 0; s < a.size(); ++s) sub.push_back(MPoly::variable(a, s));
    const MPoly u = MPoly::variable(a, a.w());
    sub[a.w()] = u + zz * ExactComplex::i();
    sub[a.eta()] = u - zz * ExactComplex::i();
    return H.substitute(sub);
}

RFunc hypersurface_restrict(const RFunc& h) {
    return RFunc(hypersurface_restrict(h.num()), hypersurface_restrict(h.den()));
}

Exponent monomial(const VarAlphabet& a, std::initializer_list<int> zs, int wpow) {
    Exponent e = zero_exponent();
    for (int j : zs) {
        if (j < 0 || j >= a.m) throw DomainError("monomial z index out of range");
        ++e[a.z(j)];
    }
    e[a.w()] = static_cast<std::uint8_t>(wpow);
    return e;
}

BigJetTable to_big(const JetTable& t) {
    BigJetTable b;
    b.base = t.base;
    b.order = t.order;
    b.n = t.n;
    b.N = t.N;
    for (const auto& c : t.comps) b.comps.push_back(to_big(c));
    return b;
}

std::vector<MPoly> translated_jets(const CRMap& F, const HPoint& p, int order) {
    if (F.model() != Model::heisenberg) throw DomainError("jets need a Heisenberg map");
    if (p.n() != F.n()) throw DomainError("base point dimension mismatch");
    if (order < 0) throw DomainError("jet order must be non-negative");
    const auto sigma = HnAutomorphism::translation(p).images();
    std::vector<MPoly> sub;
    for (const auto& s : sigma) sub.push_back(s.num());
    std::vector<MPoly> out;
    for (const auto& c : F.components()) {
        MPoly num = c.num().substitute(sub, order);
        if (c.is_polynomial()) {
            out.push_back(std::move(num));
            continue;
        }
        MPoly den = c.den().substitute(sub, order);
        if (den.constant_term().is_zero()) throw DenominatorVanishes("denominator vanishes at the base point");
        out.push_back(MPoly::mul(num, series_inverse(den, order), order));
    }
    return out;
}

JetTable jet_at(const CRMap& F, const HPoint& p, int order) {
    std::vector<MPoly> j = translated_jets(F, p, order);
    const VarAlphabet a = F.source_alphabet();
    const int N = F.N();
    JetTable t;
    t.base = p;
    t.order = order;
    t.n = F.n();
    t.N = N;
    MPoly g = j.back() - MPoly::constant(a, j.back().constant_term().conj());
    for (int l = 0; l < N - 1; ++l) g -= j[l] * (kTwoI * j[l].constant_term().conj());
    for (int l = 0; l < N - 1; ++l) t.comps.push_back(j[l] - MPoly::constant(a, j[l].constant_term()));
    if (!g.constant_term().is_zero())
        throw DomainError("map does not send the base point into the target hypersurface");
    t.comps.push_back(std::move(g));
    return t;
}

}  // namespace crgauss
