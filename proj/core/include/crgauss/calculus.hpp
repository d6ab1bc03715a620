#pragma once

#include <initializer_list>
#include <vector>

#include "crgauss/cr_map.hpp"

namespace crgauss {

// Indices are 0-based: apply_L(h, j) is L_{j+1} = ∂/∂z_{j+1} + 2iζ_{j+1}∂/∂w.
RFunc apply_L(const RFunc& h, int j);
RFunc apply_T(const RFunc& h);
// ∂/∂ζ_j - 2i z_j ∂/∂η; annihilates holomorphic functions.
RFunc apply_Lbar(const RFunc& h, int j);

// w := u + i z·ζ, η := u - i z·ζ (u lives in the w slot).
MPoly hypersurface_restrict(const MPoly& h);
RFunc hypersurface_restrict(const RFunc& h);

// Exponent of z_{zs...} w^wpow on alphabet a (zs 0-based, repeats allowed).
Exponent monomial(const VarAlphabet& a, std::initializer_list<int> zs, int wpow = 0);

template <class K>
struct BasicJetTable {
    HPoint base;
    int order = 0;
    int n = 2;
    int N = 2;
    std::vector<BasicPoly<K>> comps;  // f_1..f_{n-1}, φ_1..φ_{N-n}, g

    VarAlphabet alphabet() const { return {n - 1, false}; }
    K coeff(int comp, const Exponent& e) const { return comps.at(comp).coeff(e); }
    const BasicPoly<K>& f(int j) const { return comps.at(j); }
    const BasicPoly<K>& phi(int k) const { return comps.at(n - 1 + k); }
    const BasicPoly<K>& g() const { return comps.back(); }

    BasicJetTable truncated(int m) const {
        BasicJetTable t = *this;
        t.order = std::min(order, m);
        for (auto& c : t.comps) c = c.truncated(t.order);
        return t;
    }
};

using JetTable = BasicJetTable<ExactComplex>;
using BigJetTable = BasicJetTable<BigComplex>;

BigJetTable to_big(const JetTable& t);

// Taylor polynomials at 0 of F∘σ⁰_p (no target translation).
std::vector<MPoly> translated_jets(const CRMap& F, const HPoint& p, int order);

// Jets of F_p = τ_{F(p)}∘F∘σ⁰_p at 0.
JetTable jet_at(const CRMap& F, const HPoint& p, int order);

}  // namespace crgauss
