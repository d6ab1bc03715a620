#include "crgauss/normalization.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

namespace crgauss {

namespace {

BigComplex big_i() { return BigComplex::i(); }
BigComplex big_two_i() { return {BigReal(0), BigReal(2)}; }

BigReal jet_scale(const BigJetTable& J) {
    BigReal s(1);
    for (const auto& c : J.comps) s = std::max(s, max_abs_coeff(c));
    return s;
}

BigReal tolerance_for(const BigReal& scale) { return scale * pow2(-current_precision_bits() / 2); }

BigReal cabs(const BigComplex& c) { return c.abs(); }

BigJetTable with_comps(const BigJetTable& like, std::vector<BigPoly> comps) {
    BigJetTable t;
    t.base = like.base;
    t.order = like.order;
    t.n = like.n;
    t.N = like.N;
    t.comps = std::move(comps);
    return t;
}

BigPoly linear_combination(const std::vector<BigPoly>& ps, const std::vector<BigComplex>& w, VarAlphabet a) {
    BigPoly r(a);
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (!w[i].is_zero()) r += ps[i] * w[i];
    return r;
}

// Extended-alphabet helpers for identities in (z, ζ).
BigPoly zeta_var(VarAlphabet ext, int j) { return BigPoly::variable(ext, ext.zeta(j)); }

BigPoly zz_norm(VarAlphabet ext) {
    BigPoly r(ext);
    for (int j = 0; j < ext.m; ++j) r += BigPoly::variable(ext, ext.z(j)) * zeta_var(ext, j);
    return r;
}

BigPoly norm_sq(const std::vector<BigPoly>& vs, VarAlphabet ext) {
    BigPoly r(ext);
    for (const auto& v : vs) r += v * v.bar_reflect();
    return r;
}

BigPoly real_part2(const BigPoly& p) { return p + p.bar_reflect(); }

}  // namespace

bool IdentityResiduals::pass() const {
    return cm < tolerance && eq112 < tolerance && eq92eq3 < tolerance && hh < tolerance && eq43 < tolerance;
}

BigPoly z_part(const BigPoly& p, int zdeg, int wpow) {
    const VarAlphabet a = p.alphabet();
    if (a.extended) throw AlphabetMismatch("z_part expects a holomorphic jet");
    const VarAlphabet ext = a.with_conjugates();
    BigPoly r(ext);
    for (const auto& [e, c] : p.terms()) {
        if (e[a.w()] != wpow) continue;
        int d = 0;
        for (int j = 0; j < a.m; ++j) d += e[j];
        if (d != zdeg) continue;
        Exponent f = zero_exponent();
        for (int j = 0; j < a.m; ++j) f[ext.z(j)] = e[j];
        r.add_term(f, c);
    }
    return r;
}

JetTable step_I_translate(const CRMap& F, const HPoint& p, int order) { return jet_at(F, p, order); }

StepII step_II_unitary(const BigJetTable& J, bool reversed_completion) {
    const int n = J.n, N = J.N, m = n - 1;
    const VarAlphabet a = J.alphabet();
    const BigReal tol = tolerance_for(jet_scale(J));
    StepII s;
    const BigComplex lam = J.g().coeff(monomial(a, {}, 1));
    if (boost::multiprecision::abs(lam.im) > tol || lam.re <= tol)
        throw NumericalFailure("lambda(p) is not a positive real: " + lam.to_string());
    s.lambda = lam.re;
    const BigReal sq = sqrt(s.lambda);

    BigMatrix E(N - 1, m);
    std::vector<BigVector> cols;
    for (int l = 0; l < m; ++l) {
        BigVector v(N - 1);
        for (int k = 0; k < N - 1; ++k) {
            E(k, l) = J.comps[k].coeff(monomial(a, {l}));
            v[k] = E(k, l) / BigComplex(sq);
        }
        cols.push_back(std::move(v));
    }
    const auto sv = singular_values(E);
    if (sv.empty() || sv.back() <= tol) throw ImmersionFailure("E_1..E_{n-1} are dependent at the base point");
    s.A = unitary_completion(cols, N - 1, reversed_completion);

    std::vector<BigPoly> ft(J.comps.begin(), J.comps.end() - 1);
    std::vector<BigPoly> out;
    const BigComplex inv_sq = BigComplex(BigReal(1) / sq);
    for (int k = 0; k < N - 1; ++k) {
        std::vector<BigComplex> w(N - 1);
        for (int l = 0; l < N - 1; ++l) w[l] = conj(s.A(l, k)) * inv_sq;
        out.push_back(linear_combination(ft, w, a));
    }
    out.push_back(J.g() * BigComplex(BigReal(1) / s.lambda));
    s.jets = with_comps(J, std::move(out));

    for (int j = 0; j < m; ++j) s.a.push_back(s.jets.comps[j].coeff(monomial(a, {}, 1)));
    for (int k = 0; k < N - n; ++k) s.b.push_back(s.jets.phi(k).coeff(monomial(a, {}, 1)));
    s.d = s.jets.g().coeff(monomial(a, {}, 2));

    s.unitary_residual = max_abs(s.A.adjoint() * s.A - BigMatrix::identity(N - 1));
    BigReal shape(0);
    for (int k = 0; k < N; ++k) shape = std::max(shape, cabs(s.jets.comps[k].constant_term()));
    for (int k = 0; k < N - 1; ++k)
        for (int i = 0; i < m; ++i) {
            BigComplex c = s.jets.comps[k].coeff(monomial(a, {i}));
            if (k == i) c -= BigComplex(1);
            shape = std::max(shape, cabs(c));
        }
    for (int i = 0; i < m; ++i) shape = std::max(shape, cabs(s.jets.g().coeff(monomial(a, {i}))));
    shape = std::max(shape, cabs(s.jets.g().coeff(monomial(a, {}, 1)) - BigComplex(1)));
    s.shape_residual = shape;
    return s;
}

BigReal chern_moser_residual(const BigJetTable& J) {
    const int m = J.n - 1;
    const VarAlphabet ext = J.alphabet().with_conjugates();
    // ⟨z̄, a(z)⟩ with a_j = -2i f_j^{(1,1)}.
    BigPoly lhs(ext);
    for (int j = 0; j < m; ++j) lhs += zeta_var(ext, j) * (z_part(J.f(j), 1, 1) * (-big_two_i()));
    lhs = lhs * zz_norm(ext);
    std::vector<BigPoly> phi2;
    for (int s = 0; s < J.N - J.n; ++s) phi2.push_back(z_part(J.phi(s), 2, 0));
    return max_abs_coeff(lhs - norm_sq(phi2, ext));
}

StepIII step_III_fractional(const BigJetTable& J) {
    const int n = J.n, N = J.N, m = n - 1;
    const VarAlphabet a = J.alphabet();
    const int order = J.order;
    StepIII s;
    for (int l = 0; l < N - 1; ++l) s.c.push_back(J.comps[l].coeff(monomial(a, {}, 1)));
    s.r = J.g().coeff(monomial(a, {}, 2)).re;
    BigReal c2(0);
    for (const auto& x : s.c) c2 += x.norm2();

    BigPoly q = BigPoly::constant(a, BigComplex(1));
    for (int l = 0; l < N - 1; ++l) q += J.comps[l] * (big_two_i() * conj(s.c[l]));
    q += J.g() * BigComplex(s.r, -c2);
    if (q.constant_term().is_zero()) throw NumericalFailure("q* vanishes at the origin");
    const BigPoly qi = series_inverse(q, order);

    std::vector<BigPoly> out;
    for (int l = 0; l < N - 1; ++l) out.push_back(BigPoly::mul(J.comps[l] - J.g() * s.c[l], qi, order));
    out.push_back(BigPoly::mul(J.g(), qi, order));
    s.jets = with_comps(J, std::move(out));

    // f** = z + (i/2)a(z)w + o_wt(3); φ** = φ^{(2)}(z) + o_wt(2); g** = w + o_wt(4).
    BigReal shape(0);
    for (int j = 0; j < N - 1; ++j) {
        const bool is_f = j < m;
        for (const auto& [e, c] : s.jets.comps[j].terms()) {
            const int wt = weighted_degree(e, a);
            if (wt > 3) continue;
            int zd = 0;
            for (int t = 0; t < m; ++t) zd += e[t];
            if (is_f) {
                if (wt == 1 && e[j] == 1) continue;           // the z_j term, checked below
                if (wt == 3 && e[a.w()] == 1 && zd == 1) continue;  // z_h w
            } else {
                if (wt == 2 && zd == 2) continue;             // φ^{(2)}
                if (wt == 3) continue;
            }
            shape = std::max(shape, cabs(c));
        }
        if (is_f) shape = std::max(shape, cabs(s.jets.comps[j].coeff(monomial(a, {j})) - BigComplex(1)));
    }
    for (const auto& [e, c] : s.jets.g().terms()) {
        if (weighted_degree(e, a) > 4) continue;
        if (e == monomial(a, {}, 1)) continue;
        shape = std::max(shape, cabs(c));
    }
    shape = std::max(shape, cabs(s.jets.g().coeff(monomial(a, {}, 1)) - BigComplex(1)));
    s.shape_residual = shape;
    s.cm_residual = chern_moser_residual(s.jets);
    return s;
}

GeometricRank geometric_rank(const BigJetTable& J, const BigReal& scale) {
    const int m = J.n - 1;
    const VarAlphabet a = J.alphabet();
    GeometricRank g;
    g.acal = BigMatrix(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) g.acal(j, l) = -big_two_i() * J.f(l).coeff(monomial(a, {j}, 1));
    g.hermitian_residual = max_abs(g.acal - g.acal.adjoint());
    const auto eig = hermitian_eigen(g.acal);
    g.eigenvalues = eig.values;
    BigReal top(0);
    for (const auto& x : eig.values) top = std::max(top, BigReal(boost::multiprecision::abs(x)));
    const BigReal thr = std::max(top, scale) * pow2(-current_precision_bits() / 2);
    g.rank = static_cast<int>(std::count_if(eig.values.begin(), eig.values.end(),
                                            [&](const BigReal& x) { return boost::multiprecision::abs(x) > thr; }));
    return g;
}

StepIV step_IV_diagonalize(const BigJetTable& J, const GeometricRank& geom) {
    const int n = J.n, N = J.N, m = n - 1, kappa = geom.rank;
    const VarAlphabet a = J.alphabet();
    const int order = J.order;
    StepIV s;
    const int s0_count = kappa * (2 * n - kappa - 1) / 2;
    s.s1_nominal = N - n - s0_count;
    if (kappa == 0) {
        s.U = BigMatrix::identity(m);
        s.W = BigMatrix::identity(N - n);
        s.jets = J;
        for (int t = 0; t < N - n; ++t) s.S.push_back({0, t, false});
        s.mu_law_residual = 0;
        s.orthogonality_residual = 0;
        return s;
    }
    const BigReal tol = tolerance_for(jet_scale(J));
    const auto eig = hermitian_eigen(geom.acal);
    for (const auto& x : eig.values)
        if (x < -tol) throw NumericalFailure("geometric-rank matrix has a negative eigenvalue");
    s.mu.assign(eig.values.begin(), eig.values.begin() + kappa);
    s.U = eig.vectors.adjoint();

    std::vector<BigPoly> images;
    for (int k = 0; k < m; ++k) {
        BigPoly im(a);
        for (int j = 0; j < m; ++j) im += BigPoly::variable(a, a.z(j), s.U(j, k));
        images.push_back(std::move(im));
    }
    images.push_back(BigPoly::variable(a, a.w()));
    std::vector<BigPoly> rot;
    for (const auto& c : J.comps) rot.push_back(c.substitute(images, order));

    std::vector<BigPoly> out;
    std::vector<BigPoly> fc(rot.begin(), rot.begin() + m);
    for (int k = 0; k < m; ++k) {
        std::vector<BigComplex> w(m);
        for (int l = 0; l < m; ++l) w[l] = conj(s.U(k, l));
        out.push_back(linear_combination(fc, w, a));
    }

    const int K = N - n;
    if (s0_count > K) throw NumericalFailure("more quadratic directions than φ components");
    std::vector<BigPoly> phic(rot.begin() + m, rot.end() - 1);
    std::vector<BigVector> vs;
    BigReal law(0);
    for (int j = 0; j < kappa; ++j)
        for (int l = j; l < m; ++l) {
            BigVector v(K);
            for (int t = 0; t < K; ++t) v[t] = phic[t].coeff(monomial(a, {j, l}));
            const BigReal nv = vector_norm(v);
            s.S.push_back({j, l, true});
            s.mu_S.push_back(nv);
            const BigReal predicted = l < kappa && j < l ? BigReal(sqrt(s.mu[j] + s.mu[l])) : BigReal(sqrt(s.mu[j]));
            law = std::max(law, BigReal(boost::multiprecision::abs(nv - predicted)));
            vs.push_back(std::move(v));
        }
    for (int t = 0; t < K - s0_count; ++t) s.S.push_back({kappa, kappa + t, false});
    s.mu_law_residual = law;

    BigReal orth(0);
    for (std::size_t x = 0; x < vs.size(); ++x)
        for (std::size_t y = x + 1; y < vs.size(); ++y)
            orth = std::max(orth, BigReal(inner(vs[x], vs[y]).abs() / (s.mu_S[x] * s.mu_S[y])));
    s.orthogonality_residual = orth;

    s.W = unitary_completion(vs, K);
    for (int q = 0; q < K; ++q) {
        std::vector<BigComplex> w(K);
        for (int t = 0; t < K; ++t) w[t] = conj(s.W(t, q));
        out.push_back(linear_combination(phic, w, a));
    }
    out.push_back(rot.back());
    s.jets = with_comps(J, std::move(out));
    return s;
}

BigJetTable apply_recentre(const BigJetTable& J, const BigVector& c) {
    const int m = J.n - 1, N = J.N;
    const VarAlphabet a = J.alphabet();
    const int order = J.order;
    if (static_cast<int>(c.size()) != m) throw DomainError("recentring vector has wrong size");
    BigReal c2(0);
    for (const auto& x : c) c2 += x.norm2();
    const BigPoly w = BigPoly::variable(a, a.w());
    BigPoly q = BigPoly::constant(a, BigComplex(1)) + w * BigComplex(BigReal(0), -c2);
    for (int j = 0; j < m; ++j) q += BigPoly::variable(a, a.z(j), big_two_i() * conj(c[j]));
    const BigPoly qi = series_inverse(q, order);
    std::vector<BigPoly> sigma;
    for (int j = 0; j < m; ++j)
        sigma.push_back(BigPoly::mul(BigPoly::variable(a, a.z(j)) - w * c[j], qi, order));
    sigma.push_back(BigPoly::mul(w, qi, order));

    std::vector<BigPoly> Fs;
    for (const auto& comp : J.comps) Fs.push_back(comp.substitute(sigma, order));
    std::vector<BigComplex> ct(N - 1, BigComplex(0));
    for (int j = 0; j < m; ++j) ct[j] = c[j];
    BigPoly qs = BigPoly::constant(a, BigComplex(1)) + Fs.back() * BigComplex(BigReal(0), -c2);
    for (int l = 0; l < N - 1; ++l)
        if (!ct[l].is_zero()) qs += Fs[l] * (-big_two_i() * conj(ct[l]));
    const BigPoly qsi = series_inverse(qs, order);
    std::vector<BigPoly> out;
    for (int l = 0; l < N - 1; ++l) out.push_back(BigPoly::mul(Fs[l] + Fs.back() * ct[l], qsi, order));
    out.push_back(BigPoly::mul(Fs.back(), qsi, order));
    return with_comps(J, std::move(out));
}

StepV step_V_recentre(const BigJetTable& J, const StepIV& s4, int kappa) {
    const int m = J.n - 1;
    const VarAlphabet a = J.alphabet();
    StepV s;
    s.c.assign(m, BigComplex(0));
    s.residual = 0;
    if (kappa == 0) {
        s.jets = J;
        return s;
    }
    const BigReal tol = tolerance_for(jet_scale(J));
    if (s4.mu.empty() || s4.mu.front() <= tol) throw NumericalFailure("mu_1 below tolerance");
    auto s_index = [&](int j, int l) {
        for (std::size_t t = 0; t < s4.S.size(); ++t)
            if (s4.S[t].s0 && s4.S[t].j == j && s4.S[t].l == l) return static_cast<int>(t);
        throw DomainError("index (j,l) not in S0");
    };
    for (int j = 0; j < kappa; ++j)
        s.c[j] = -big_two_i() / BigComplex(s4.mu[j]) * J.f(j).coeff(monomial(a, {}, 2));
    const BigReal sq1 = sqrt(s4.mu[0]);
    for (int al = kappa; al < m; ++al)
        s.c[al] = J.phi(s_index(0, al)).coeff(monomial(a, {0}, 1)) / BigComplex(sq1);

    s.jets = apply_recentre(J, s.c);

    for (int j = 0; j < kappa; ++j) s.residual = std::max(s.residual, cabs(s.jets.f(j).coeff(monomial(a, {}, 2))));
    for (int al = kappa; al < m; ++al)
        s.residual = std::max(s.residual, cabs(s.jets.phi(s_index(0, al)).coeff(monomial(a, {0}, 1))));
    return s;
}

IdentityResiduals normal_form_identity_checks(const BigJetTable& J, int kappa, const BigReal& tolerance) {
    const int m = J.n - 1, K = J.N - J.n;
    const VarAlphabet a = J.alphabet();
    const VarAlphabet ext = a.with_conjugates();
    IdentityResiduals r;
    r.tolerance = tolerance;
    r.cm = chern_moser_residual(J);

    std::vector<BigPoly> f11, phi11, phi20, phi21, phi30;
    for (int j = 0; j < m; ++j) f11.push_back(z_part(J.f(j), 1, 1));
    for (int s = 0; s < K; ++s) {
        phi11.push_back(z_part(J.phi(s), 1, 1));
        phi20.push_back(z_part(J.phi(s), 2, 0));
        phi21.push_back(z_part(J.phi(s), 2, 1));
        phi30.push_back(z_part(J.phi(s), 3, 0));
    }
    // X = ⟨z̄, f^{(1,2)}(z)⟩
    BigPoly X(ext);
    for (int j = 0; j < m; ++j) X += zeta_var(ext, j) * z_part(J.f(j), 1, 2);
    r.eq112 = max_abs_coeff(real_part2(X) + norm_sq(f11, ext) + norm_sq(phi11, ext));

    // ⟨z̄, f^{(2,1)}⟩ + Σ_{j<κ} z̄_j ξ_j,  ξ_j = Σ_s ē_{j,s} φ_s^{(2,0)}
    BigPoly hh(ext);
    for (int j = 0; j < m; ++j) hh += zeta_var(ext, j) * z_part(J.f(j), 2, 1);
    for (int j = 0; j < kappa; ++j) {
        BigPoly xi(ext);
        for (int s = 0; s < K; ++s) xi += phi20[s] * conj(J.phi(s).coeff(monomial(a, {j}, 1)));
        hh += zeta_var(ext, j) * xi;
    }
    r.hh = max_abs_coeff(hh);

    // 2Re(-2X|z|² + Σ_s i·conj(φ_s^{(2,0)})φ_s^{(2,1)})|z|² + |φ^{(3,0)}|²
    const BigPoly zz = zz_norm(ext);
    BigPoly Y = X * zz * BigComplex(-2);
    for (int s = 0; s < K; ++s) Y += phi20[s].bar_reflect() * phi21[s] * big_i();
    r.eq92eq3 = max_abs_coeff(real_part2(Y) * zz + norm_sq(phi30, ext));

    // φ^{(1,2)} ∈ span{e_j : j < κ}
    std::vector<BigVector> basis;
    const BigReal drop = pow2(-current_precision_bits() / 4);
    for (int j = 0; j < kappa; ++j) {
        BigVector e(K);
        for (int s = 0; s < K; ++s) e[s] = J.phi(s).coeff(monomial(a, {j}, 1));
        const BigReal n0 = vector_norm(e);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const BigComplex h = inner(b, e);
                for (int s = 0; s < K; ++s) e[s] -= h * b[s];
            }
        const BigReal n1 = vector_norm(e);
        if (n1 <= tolerance || n1 <= n0 * drop) continue;
        for (auto& x : e) x /= BigComplex(n1);
        basis.push_back(std::move(e));
    }
    r.eq43 = 0;
    for (int h = 0; h < m; ++h) {
        BigVector v(K);
        for (int s = 0; s < K; ++s) v[s] = J.phi(s).coeff(monomial(a, {h}, 2));
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const BigComplex c = inner(b, v);
                for (int s = 0; s < K; ++s) v[s] -= c * b[s];
            }
        for (const auto& x : v) r.eq43 = std::max(r.eq43, cabs(x));
    }
    return r;
}

Phi11 phi11_vector(const BigJetTable& J, const BigReal& tolerance) {
    const int m = J.n - 1;
    const VarAlphabet a = J.alphabet();
    Phi11 p;
    BigReal top(0);
    for (int s = 0; s < J.N - J.n; ++s) {
        BigVector v(m);
        for (int h = 0; h < m; ++h) {
            v[h] = J.phi(s).coeff(monomial(a, {h}, 1));
            top = std::max(top, cabs(v[h]));
        }
        p.forms.push_back(std::move(v));
    }
    p.nonzero = top > tolerance;
    return p;
}

BigMatrix upsilon_matrix(const BigJetTable& J) {
    const int n = J.n, m = n - 1, K = J.N - J.n;
    const VarAlphabet a = J.alphabet();
    // Index n-1 stands for w.
    auto second = [&](const BigPoly& p, int x, int y) {
        Exponent e = zero_exponent();
        ++e[x == m ? a.w() : a.z(x)];
        ++e[y == m ? a.w() : a.z(y)];
        BigComplex c = p.coeff(e);
        return x == y ? c * BigComplex(2) : c;
    };
    BigMatrix ups(n * K, n);
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < K; ++s)
            for (int h = 0; h < n; ++h) ups(j * K + s, h) = second(J.phi(s), j, h);
    return ups;
}

NormForm normalize_jets(const BigJetTable& jets_p, const PipelineConfig& cfg) {
    if (cfg.order < 4) throw DomainError("pipeline order must be at least 4");
    NormForm nf;
    nf.base = jets_p.base;
    nf.n = jets_p.n;
    nf.N = jets_p.N;
    nf.order = jets_p.order;
    nf.precision = current_precision_bits();
    nf.scale = jet_scale(jets_p);
    nf.tolerance = tolerance_for(nf.scale);

    nf.step2 = step_II_unitary(jets_p, cfg.reversed_completion);
    nf.step3 = step_III_fractional(nf.step2.jets);
    nf.geom = geometric_rank(nf.step3.jets, nf.scale);
    nf.step4 = step_IV_diagonalize(nf.step3.jets, nf.geom);
    nf.step5 = step_V_recentre(nf.step4.jets, nf.step4, nf.kappa());
    nf.identities = normal_form_identity_checks(nf.step5.jets, nf.kappa(), nf.tolerance);
    nf.phi11 = phi11_vector(nf.step5.jets, nf.tolerance);
    spdlog::debug("pipeline: kappa={} cm={} eq112={}", nf.kappa(), to_double(nf.identities.cm),
                  to_double(nf.identities.eq112));
    return nf;
}

NormForm normalize_at(const CRMap& F, const HPoint& p, const PipelineConfig& cfg) {
    if (cfg.precision < 64) throw DomainError("precision must be at least 64 bits");
    if (cfg.order < 4) throw DomainError("pipeline order must be at least 4");
    PrecisionScope prec(cfg.precision);
    JetTable jets = step_I_translate(F, p, cfg.order);
    NormForm nf = normalize_jets(to_big(jets), cfg);
    nf.precision = cfg.precision;
    nf.jets_p = std::move(jets);
    return nf;
}

}  // namespace crgauss
