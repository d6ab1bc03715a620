#pragma once

// Independent oracles shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

#include "crgauss/normalization.hpp"
#include "crgauss/rank.hpp"
#include "support.hpp"

namespace testsupport {

// |w|² style products F·F♯ on the extended alphabet.
inline MPoly norm_sq(const std::vector<MPoly>& v) {
    const VarAlphabet ext = v.front().alphabet().with_conjugates();
    MPoly s(ext);
    for (const auto& p : v) s += p.embedded(ext) * bar_reflect(p);
    return s;
}

// η := w - 2i z·ζ.
inline MPoly on_quadric(const MPoly& p) {
    const VarAlphabet ext = p.alphabet();
    std::vector<MPoly> images;
    for (int s = 0; s < ext.size(); ++s) images.push_back(MPoly::variable(ext, s));
    MPoly eta = MPoly::variable(ext, ext.w());
    for (int j = 0; j < ext.m; ++j)
        eta -= MPoly::variable(ext, ext.z(j)) * MPoly::variable(ext, ext.zeta(j)) * (ExactComplex::i() * ExactComplex(2));
    images[ext.eta()] = eta;
    return p.substitute(images);
}

inline std::vector<CRMap> ball_catalog() {
    CatalogParams lin;
    lin.n = 3;
    lin.N = 5;
    lin.model = Model::ball;
    CatalogParams w3 = lin, w4 = lin, d2 = lin;
    w3.N = 0;
    w4.n = 4;
    w4.N = 0;
    d2.n = 2;
    d2.N = 0;
    return {catalog("linear", lin), catalog("whitney", w3), catalog("whitney", w4), catalog("dangelo", d2)};
}

inline std::vector<CRMap> heis_catalog() {
    CatalogParams d2;
    d2.n = 2;
    CatalogParams lin;
    lin.n = 3;
    lin.N = 5;
    return {catalog("linear", lin), heis("whitney", 3), heis("whitney", 4), catalog("dangelo", d2)};
}

// Copy of F with the first coefficient of component k's numerator nudged.
inline CRMap mutant(const CRMap& F, int k, const mpq_class& eps) {
    std::vector<RFunc> c = F.components();
    MPoly num = c[k].num();
    num.add_term(num.terms().begin()->first, ExactComplex(eps));
    c[k] = RFunc(num, c[k].den());
    return {F.n(), F.N(), F.model(), c};
}

inline std::vector<HPoint> points(const CRMap& F, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<HPoint> out;
    while (static_cast<int>(out.size()) < count) {
        const HPoint p = testsupport::random_point(rng, F.n(), 5);
        try {
            F.evaluate(p.coords());
        } catch (const DenominatorVanishes&) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

inline BigReal abs_of(const BigComplex& c) { return c.abs(); }
inline BigReal big_abs(const BigReal& x) { return boost::multiprecision::abs(x); }
inline const BigReal& tight() {
    static const BigReal t = [] {
        PrecisionScope p(256);
        return pow2(-128);
    }();
    return t;
}

inline BigComplex coeff(const BigPoly& p, std::initializer_list<int> zs, int wpow = 0) {
    return p.coeff(monomial(p.alphabet(), zs, wpow));
}

// Exact second-derivative oracle for κ: the z_jz_l Taylor vectors of f̃_p,
// projected orthogonally to span{E_l}, span a space of dimension κ(2m−κ+1)/2.
inline int kappa_oracle(const CRMap& F, const HPoint& p) {
    const JetTable J = jet_at(F, p, 2);
    const int m = F.n() - 1, K = F.N() - 1;
    const VarAlphabet a = F.source_alphabet();
    ExactMatrix E(K, m);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < m; ++l) E(k, l) = J.comps[k].coeff(monomial(a, {l}));
    const ExactMatrix EhE = E.adjoint() * E;
    const ExactMatrix Pe = E * *exact_solve(EhE, E.adjoint());
    const ExactMatrix proj = ExactMatrix::identity(K) - Pe;
    ExactSpan span(K);
    for (int j = 0; j < m; ++j)
        for (int l = j; l < m; ++l) {
            ExactMatrix v(K, 1);
            for (int k = 0; k < K; ++k) v(k, 0) = J.comps[k].coeff(monomial(a, {j, l}));
            const ExactMatrix pv = proj * v;
            std::vector<ExactComplex> col(K);
            for (int k = 0; k < K; ++k) col[k] = pv(k, 0);
            span.add(col);
        }
    const int d2 = span.dimension();
    for (int kappa = 0; kappa <= m; ++kappa)
        if (kappa * (2 * m - kappa + 1) / 2 == d2) return kappa;
    return -1;
}

// Independent shape readback of F** (weights up to 4 for g, 3 otherwise).
inline BigReal shape_defect(const BigJetTable& J) {
    const int m = J.n - 1;
    const VarAlphabet a = J.alphabet();
    BigReal worst(0);
    auto bump = [&](const BigComplex& c) { worst = std::max(worst, c.abs()); };
    for (int l = 0; l < J.N - 1; ++l) {
        const BigPoly& p = J.comps[l];
        bump(p.constant_term());
        for (int h = 0; h < m; ++h) bump(coeff(p, {h}) - BigComplex(l == h ? 1 : 0));
        bump(coeff(p, {}, 1));
        for (int h = 0; h < m; ++h)
            for (int k = h; k < m; ++k)
                if (l < m) bump(coeff(p, {h, k}));
        if (l < m)
            for (int h = 0; h < m; ++h)
                for (int k = h; k < m; ++k)
                    for (int t = k; t < m; ++t) bump(coeff(p, {h, k, t}));
    }
    const BigPoly& g = J.g();
    for (const auto& [e, c] : g.terms())
        if (weighted_degree(e, a) <= 4 && e != monomial(a, {}, 1)) bump(c);
    bump(coeff(g, {}, 1) - BigComplex(1));
    return worst;
}

inline std::vector<BigComplex> random_zvec(std::mt19937_64& rng, int m) {
    std::vector<BigComplex> z;
    for (int j = 0; j < m; ++j) z.push_back(to_big(testsupport::small_complex(rng, 3)));
    return z;
}

// Σ_h coeff(p, z_h w^k) z_h evaluated at z.
inline BigComplex linear_w(const BigPoly& p, const std::vector<BigComplex>& z, int k) {
    BigComplex s;
    for (std::size_t h = 0; h < z.size(); ++h) s += coeff(p, {static_cast<int>(h)}, k) * z[h];
    return s;
}

inline BigComplex quadratic_z(const BigPoly& p, const std::vector<BigComplex>& z, int k = 0) {
    BigComplex s;
    const int m = static_cast<int>(z.size());
    for (int h = 0; h < m; ++h)
        for (int t = h; t < m; ++t) s += coeff(p, {h, t}, k) * z[h] * z[t];
    return s;
}

// Chern–Moser identity evaluated at a numeric z.
inline BigReal cm_pointwise(const BigJetTable& J, const std::vector<BigComplex>& z) {
    const int m = J.n - 1;
    BigComplex lhs;
    BigReal zz(0);
    for (int j = 0; j < m; ++j) {
        zz += z[j].norm2();
        lhs += conj(z[j]) * BigComplex(BigReal(0), BigReal(-2)) * linear_w(J.f(j), z, 1);
    }
    BigReal rhs(0);
    for (int s = 0; s < J.N - J.n; ++s) rhs += quadratic_z(J.phi(s), z).norm2();
    return (lhs * BigComplex(zz) - BigComplex(rhs)).abs();
}

// 2Re⟨z̄, f^{(1,2)}⟩ + |f^{(1,1)}|² + |φ^{(1,1)}|² at z.
inline BigReal eq112_pointwise(const BigJetTable& J, const std::vector<BigComplex>& z) {
    const int m = J.n - 1;
    BigComplex x;
    BigReal sq(0);
    for (int j = 0; j < m; ++j) {
        x += conj(z[j]) * linear_w(J.f(j), z, 2);
        sq += linear_w(J.f(j), z, 1).norm2();
    }
    for (int s = 0; s < J.N - J.n; ++s) sq += linear_w(J.phi(s), z, 1).norm2();
    return big_abs(2 * x.re + sq);
}

// ⟨z̄, f^{(2,1)}⟩ + Σ_{j<κ} z̄_j Σ_s ē_{j,s} φ_s^{(2,0)} at z.
inline BigReal hh_pointwise(const BigJetTable& J, int kappa, const std::vector<BigComplex>& z) {
    const int m = J.n - 1;
    BigComplex x;
    for (int j = 0; j < m; ++j) x += conj(z[j]) * quadratic_z(J.f(j), z, 1);
    for (int j = 0; j < kappa; ++j) {
        BigComplex xi;
        for (int s = 0; s < J.N - J.n; ++s) xi += conj(coeff(J.phi(s), {j}, 1)) * quadratic_z(J.phi(s), z);
        x += conj(z[j]) * xi;
    }
    return x.abs();
}

// Exact real rank of the derivative matrices, (Re, Im) of every entry per direction.
inline RationalMatrix realify(const std::vector<ExactMatrix>& d) {
    const int rows = d.front().rows() * d.front().cols();
    RationalMatrix r(2 * rows, static_cast<int>(d.size()));
    for (std::size_t t = 0; t < d.size(); ++t)
        for (int i = 0; i < d[t].rows(); ++i)
            for (int s = 0; s < d[t].cols(); ++s) {
                const int row = i * d[t].cols() + s;
                r(2 * row, static_cast<int>(t)) = d[t](i, s).re();
                r(2 * row + 1, static_cast<int>(t)) = d[t](i, s).im();
            }
    return r;
}

// Real-direction derivatives of chart entries by symbolic differentiation on
// the parameterized hypersurface (z, ζ, u): Re z = ∂z + ∂ζ, Im z = i(∂z − ∂ζ).
inline std::vector<ExactMatrix> symbolic_derivatives(const std::vector<std::vector<RFunc>>& M, int cols, const HPoint& p) {
    const int m = p.n() - 1;
    const VarAlphabet e(m, true);
    std::vector<ExactComplex> pt = p.coords(true);
    pt[e.w()] = ExactComplex(p.u);  // the w slot carries u after restriction
    pt[e.eta()] = ExactComplex(0);
    std::vector<ExactMatrix> out(2 * m + 1, ExactMatrix(static_cast<int>(M.size()), cols));
    for (std::size_t r = 0; r < M.size(); ++r)
        for (int c = 0; c < cols; ++c) {
            const RFunc h = hypersurface_restrict(M[r][c]);
            for (int k = 0; k < m; ++k) {
                const ExactComplex dz = h.derivative(e.z(k)).evaluate(pt);
                const ExactComplex dzeta = h.derivative(e.zeta(k)).evaluate(pt);
                out[k](static_cast<int>(r), c) = dz + dzeta;
                out[m + k](static_cast<int>(r), c) = ExactComplex::i() * (dz - dzeta);
            }
            out[2 * m](static_cast<int>(r), c) = h.derivative(e.w()).evaluate(pt);
        }
    return out;
}

inline std::vector<HPoint> admissible_points(const CRMap& F, int count, std::uint64_t seed) {
    GaussEvaluator ev(F);
    PointSampler s(F.n(), seed);
    std::vector<HPoint> pts;
    for (int t = 0; t < 10 * count && static_cast<int>(pts.size()) < count; ++t) {
        const HPoint p = s.next();
        try {
            if (ev.at(p)) pts.push_back(p);
        } catch (const DenominatorVanishes&) {
        }
    }
    return pts;
}

inline BigMatrix to_big(const RationalMatrix& m) {
    BigMatrix b(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) b(i, j) = BigComplex(crgauss::to_big(m(i, j)));
    return b;
}


// Brute-force E_k span from symbolic L^α applied to ρ̂ = (−f̃, i/2).
inline std::vector<int> span_oracle(const CRMap& F, const HPoint& p, int kmax) {
    const int m = F.n() - 1, N = F.N();
    const VarAlphabet ext = F.source_alphabet().with_conjugates();
    std::vector<ExactComplex> pt = p.coords(true);
    std::vector<RFunc> level;
    for (int l = 0; l < N - 1; ++l) level.push_back(-F.ftilde(l).embedded(ext));
    ExactSpan span(N);
    {
        std::vector<ExactComplex> v;
        for (const auto& h : level) v.push_back(h.evaluate(pt));
        v.push_back(ExactComplex(mpq_class(0), mpq_class(1, 2)));
        span.add(v);
    }
    // Vectors of components after applying a word L_{j1}...L_{jk}.
    std::vector<std::vector<RFunc>> words{level};
    std::vector<int> d;
    int dim1 = 0;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<std::vector<RFunc>> next;
        for (const auto& vec : words)
            for (int j = 0; j < m; ++j) {
                std::vector<RFunc> out;
                std::vector<ExactComplex> v;
                for (const auto& h : vec) {
                    out.push_back(apply_L(h, j));
                    v.push_back(out.back().evaluate(pt));
                }
                v.push_back(0);  // L kills the constant i/2
                span.add(v);
                next.push_back(std::move(out));
            }
        words = std::move(next);
        if (k == 1) dim1 = span.dimension();
        d.push_back(span.dimension() - dim1);
    }
    return d;
}

// Υ assembled directly from derivative polynomials of φ***.
inline BigMatrix upsilon_oracle(const BigJetTable& J) {
    const int n = J.n, m = n - 1, K = J.N - J.n;
    const VarAlphabet a = J.alphabet();
    auto slot = [&](int x) { return x == m ? a.w() : a.z(x); };
    BigMatrix ups(n * K, n);
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < K; ++s) {
            const BigPoly d = J.phi(s).derivative(slot(j));
            for (int h = 0; h < n; ++h) {
                Exponent e = zero_exponent();
                e[slot(h)] = 1;
                ups(j * K + s, h) = d.coeff(e);
            }
        }
    return ups;
}

}  // namespace testsupport
