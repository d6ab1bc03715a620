#include "crgauss/rank.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

namespace crgauss {

namespace {

const ExactComplex kI = ExactComplex::i();
const ExactComplex kTwoI(0, 2);

ExactMatrix eval_rows(const std::vector<std::vector<RFunc>>& rows, int cols, const HPoint& p) {
    const auto pt = p.coords(true);
    ExactMatrix m(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c].evaluate(pt);
    return m;
}

// Splits each complex entry of the t-indexed derivative matrices into a
// real and an imaginary row.
RationalMatrix realify(const std::vector<ExactMatrix>& d) {
    const int rows = d.front().rows(), cols = d.front().cols();
    RationalMatrix out(2 * rows * cols, static_cast<int>(d.size()));
    for (int t = 0; t < static_cast<int>(d.size()); ++t)
        for (int r = 0; r < rows; ++r)
            for (int s = 0; s < cols; ++s) {
                const int row = 2 * (r * cols + s);
                out(row, t) = d[t](r, s).re();
                out(row + 1, t) = d[t](r, s).im();
            }
    return out;
}

}  // namespace

ExactMatrix GrassChart::P_at(const HPoint& p) const { return eval_rows(P, n, p); }
ExactMatrix GrassChart::Q_at(const HPoint& p) const { return eval_rows(Q, N - n, p); }

void require_immersion(const CRMap& F) {
    const int m = F.n() - 1;
    const VarAlphabet a = F.source_alphabet();
    ExactMatrix lin(F.N() - 1, m);
    for (int l = 0; l < F.N() - 1; ++l) {
        const MPoly j1 = F.ftilde(l).jet(1);
        for (int k = 0; k < m; ++k) lin(l, k) = j1.coeff(monomial(a, {k}));
    }
    if (exact_rank(lin) < m) throw ImmersionFailure("map is not immersive at the origin");
}

GrassChart gauss_chart(const CRMap& F) {
    if (F.model() != Model::heisenberg) throw DomainError("Gauss chart needs a Heisenberg map");
    require_immersion(F);
    const int n = F.n(), N = F.N(), m = n - 1;
    GrassChart ch;
    ch.n = n;
    ch.N = N;
    const VarAlphabet ext = F.source_alphabet().with_conjugates();
    auto op = [&](const RFunc& h, int j) {
        return j < m ? apply_L(h, j) : apply_T(h.embedded(ext));
    };
    for (int j = 0; j < n; ++j) {
        std::vector<RFunc> prow, qrow;
        for (int k = 0; k < m; ++k) prow.push_back(op(F.f(k), j));
        prow.push_back(op(F.g(), j));
        for (int s = 0; s < N - n; ++s) qrow.push_back(op(F.phi(s), j));
        ch.P.push_back(std::move(prow));
        ch.Q.push_back(std::move(qrow));
    }
    return ch;
}

GaussEvaluator::GaussEvaluator(const CRMap& F) : n_(F.n()), N_(F.N()) {
    if (F.model() != Model::heisenberg) throw DomainError("Gauss chart needs a Heisenberg map");
    require_immersion(F);
    for (const auto& c : F.components()) {
        CompPolys cp;
        cp.num = c.num();
        cp.den = c.den();
        for (int a = 0; a < n_; ++a) {
            cp.num_d.push_back(cp.num.derivative(a));
            cp.den_d.push_back(cp.den.derivative(a));
        }
        cp.num_h.resize(n_);
        cp.den_h.resize(n_);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                cp.num_h[a].push_back(cp.num_d[a].derivative(b));
                cp.den_h[a].push_back(cp.den_d[a].derivative(b));
            }
        comps_.push_back(std::move(cp));
    }
}

GaussEvaluator::Taylor2 GaussEvaluator::taylor(const CompPolys& c, const std::vector<ExactComplex>& pt) const {
    const ExactComplex D = c.den.evaluate(pt);
    if (D.is_zero()) throw DenominatorVanishes("denominator vanishes at the sample point");
    const ExactComplex Dinv = D.inverse();
    Taylor2 t;
    t.v = c.num.evaluate(pt) * Dinv;
    std::vector<ExactComplex> Dd(n_);
    t.d.resize(n_);
    for (int a = 0; a < n_; ++a) {
        Dd[a] = c.den_d[a].evaluate(pt);
        t.d[a] = (c.num_d[a].evaluate(pt) - t.v * Dd[a]) * Dinv;
    }
    t.h.assign(n_, std::vector<ExactComplex>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = a; b < n_; ++b) {
            const ExactComplex x = (c.num_h[a][b].evaluate(pt) - t.d[a] * Dd[b] - t.d[b] * Dd[a] -
                                    t.v * c.den_h[a][b].evaluate(pt)) *
                                   Dinv;
            t.h[a][b] = x;
            t.h[b][a] = x;
        }
    return t;
}

std::vector<int> GaussEvaluator::default_columns() const {
    std::vector<int> cols;
    for (int j = 0; j < n_ - 1; ++j) cols.push_back(j);
    cols.push_back(N_ - 1);
    return cols;
}

std::optional<GaussPointData> GaussEvaluator::at(const HPoint& p) const { return at(p, default_columns()); }

std::optional<std::vector<int>> GaussEvaluator::chart_columns(const HPoint& p) const {
    std::vector<int> order = default_columns();
    for (int s = n_ - 1; s < N_ - 1; ++s) order.push_back(s);
    std::vector<int> all(N_);
    for (int c = 0; c < N_; ++c) all[c] = c;
    const auto d = at_columns(p, all);
    ExactSpan span(n_);
    std::vector<int> chosen;
    for (int c : order) {
        std::vector<ExactComplex> v(n_);
        for (int j = 0; j < n_; ++j) v[j] = d(j, c);
        if (span.add(std::move(v))) chosen.push_back(c);
        if (static_cast<int>(chosen.size()) == n_) break;
    }
    if (static_cast<int>(chosen.size()) < n_) return std::nullopt;
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

ExactMatrix GaussEvaluator::at_columns(const HPoint& p, const std::vector<int>& cols) const {
    std::vector<ExactComplex> pt = p.z;
    pt.push_back(p.w());
    const int m = n_ - 1, w = m;
    ExactMatrix out(n_, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Taylor2 F = taylor(comps_.at(cols[c]), pt);
        for (int j = 0; j < m; ++j)
            out(j, static_cast<int>(c)) = F.d[j] + kTwoI * p.z[j].conj() * F.d[w];
        out(m, static_cast<int>(c)) = F.d[w];
    }
    return out;
}

std::optional<GaussPointData> GaussEvaluator::at(const HPoint& p, const std::vector<int>& pcols) const {
    if (p.n() != n_) throw DomainError("sample point dimension mismatch");
    if (static_cast<int>(pcols.size()) != n_) throw DomainError("chart needs n columns");
    std::vector<int> qcols;
    for (int c = 0; c < N_; ++c)
        if (std::find(pcols.begin(), pcols.end(), c) == pcols.end()) qcols.push_back(c);
    if (static_cast<int>(qcols.size()) != N_ - n_) throw DomainError("chart columns must be distinct");
    const int m = n_ - 1, w = m, dirs = 2 * n_ - 1;
    std::vector<ExactComplex> pt = p.z;
    pt.push_back(p.w());
    std::vector<ExactComplex> zeta(m);
    for (int k = 0; k < m; ++k) zeta[k] = p.z[k].conj();

    std::vector<Taylor2> tay;
    for (const auto& c : comps_) tay.push_back(taylor(c, pt));

    GaussPointData out;
    out.P = ExactMatrix(n_, n_);
    out.Q = ExactMatrix(n_, N_ - n_);
    out.dP.assign(dirs, ExactMatrix(n_, n_));
    out.dQ.assign(dirs, ExactMatrix(n_, N_ - n_));

    // Value and real-direction derivatives of row-j operator applied to component c.
    auto entry = [&](int j, int c, ExactComplex& value, std::vector<ExactComplex>& dd) {
        const Taylor2& F = tay[c];
        std::vector<ExactComplex> dz(m), dzeta(m);
        ExactComplex dw;
        if (j < m) {
            value = F.d[j] + kTwoI * zeta[j] * F.d[w];
            for (int k = 0; k < m; ++k) {
                dz[k] = F.h[j][k] + kTwoI * zeta[j] * F.h[w][k];
                dzeta[k] = k == j ? kTwoI * F.d[w] : ExactComplex(0);
            }
            dw = F.h[j][w] + kTwoI * zeta[j] * F.h[w][w];
        } else {
            value = F.d[w];
            for (int k = 0; k < m; ++k) dz[k] = F.h[w][k];
            dw = F.h[w][w];
        }
        dd.assign(dirs, ExactComplex(0));
        for (int k = 0; k < m; ++k) {
            const ExactComplex Dz = dz[k] + kI * zeta[k] * dw;
            const ExactComplex Dzeta = dzeta[k] + kI * p.z[k] * dw;
            dd[k] = Dz + Dzeta;
            dd[m + k] = kI * (Dz - Dzeta);
        }
        dd[2 * m] = dw;
    };

    ExactComplex v;
    std::vector<ExactComplex> dd;
    for (int j = 0; j < n_; ++j) {
        for (int col = 0; col < n_; ++col) {
            entry(j, pcols[col], v, dd);
            out.P(j, col) = v;
            for (int t = 0; t < dirs; ++t) out.dP[t](j, col) = dd[t];
        }
        for (int s = 0; s < N_ - n_; ++s) {
            entry(j, qcols[s], v, dd);
            out.Q(j, s) = v;
            for (int t = 0; t < dirs; ++t) out.dQ[t](j, s) = dd[t];
        }
    }
    auto G = exact_solve(out.P, out.Q);
    if (!G) return std::nullopt;
    out.G = std::move(*G);
    return out;
}

RationalMatrix gauss_jacobian(const GaussPointData& d) {
    const int n = d.P.rows(), k = d.Q.cols(), dirs = static_cast<int>(d.dP.size());
    if (k == 0) return RationalMatrix(0, dirs);
    // dG_t = P⁻¹(dQ_t − dP_t G), all directions in one solve.
    ExactMatrix rhs(n, k * dirs);
    for (int t = 0; t < dirs; ++t) {
        const ExactMatrix r = d.dQ[t] - d.dP[t] * d.G;
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < k; ++s) rhs(i, t * k + s) = r(i, s);
    }
    auto sol = exact_solve(d.P, rhs);
    if (!sol) throw DomainError("P is singular at the point");
    std::vector<ExactMatrix> dG(dirs, ExactMatrix(n, k));
    for (int t = 0; t < dirs; ++t)
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < k; ++s) dG[t](i, s) = (*sol)(i, t * k + s);
    return realify(dG);
}

RationalMatrix fiber_linearization(const GaussPointData& d) {
    const int dirs = static_cast<int>(d.dP.size());
    if (d.Q.cols() == 0) return RationalMatrix(0, dirs);
    std::vector<ExactMatrix> dR;
    for (int t = 0; t < dirs; ++t) dR.push_back(d.dQ[t] - d.dP[t] * d.G);
    return realify(dR);
}

RationalMatrix fiber_linearization(const CRMap& F, const HPoint& p) {
    GaussEvaluator ev(F);
    auto d = ev.at(p);
    if (!d) throw DomainError("P is singular at the point");
    return fiber_linearization(*d);
}

PointSampler::PointSampler(int n, std::uint64_t seed, int height) : n_(n), height_(height), rng_(seed) {
    if (n < 2) throw DomainError("sampler needs n >= 2");
    if (height < 1) throw DomainError("sampler height must be positive");
}

long PointSampler::uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
}

mpq_class PointSampler::rational() {
    mpq_class q(uniform(-height_, height_), uniform(1, height_));
    q.canonicalize();
    return q;
}

HPoint PointSampler::next() {
    HPoint p;
    for (int j = 0; j < n_ - 1; ++j) {
        // Shared denominator for re and im, as (a + bi)/d.
        const long den = uniform(1, height_);
        mpq_class re(uniform(-height_, height_), den), im(uniform(-height_, height_), den);
        re.canonicalize();
        im.canonicalize();
        p.z.emplace_back(re, im);
    }
    p.u = rational();
    return p;
}

GaussRankResult gauss_rank_samples(const CRMap& F, int samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("need at least one sample");
    GaussEvaluator ev(F);
    PointSampler sampler(F.n(), seed);
    GaussRankResult res;
    const int budget = 5 * samples;
    while (static_cast<int>(res.points.size()) < samples && res.attempts < budget) {
        ++res.attempts;
        const HPoint p = sampler.next();
        std::optional<GaussPointData> d;
        try {
            d = ev.at(p);
        } catch (const DenominatorVanishes&) {
            spdlog::debug("gauss rank: skipping point on a pole");
            continue;
        }
        if (!d) {
            // Outside the standard chart; the rank of dγ does not depend on the chart.
            const auto cols = ev.chart_columns(p);
            if (cols) d = ev.at(p, *cols);
            if (!d) {
                spdlog::debug("gauss rank: skipping point with a degenerate tangent frame");
                continue;
            }
            spdlog::debug("gauss rank: point outside the standard chart, using another chart");
        }
        const int r = exact_rank(gauss_jacobian(*d));
        res.points.push_back(p);
        res.ranks.push_back(r);
        res.generic_rank = std::max(res.generic_rank, r);
    }
    if (res.points.empty())
        throw SamplingFailure("Gauss rank: every sampled point was singular; resample with another seed");
    if (static_cast<int>(res.points.size()) < samples)
        spdlog::warn("Gauss rank: only {} of {} admissible points found", res.points.size(), samples);
    res.degenerate = res.generic_rank < 2 * F.n() - 1;
    return res;
}

int gauss_generic_rank(const CRMap& F, int samples, std::uint64_t seed) {
    return gauss_rank_samples(F, samples, seed).generic_rank;
}

int stabilization_index(const std::vector<int>& d, int n, int N) {
    const int cap = N - n + 1;
    for (int k = 1; k < static_cast<int>(d.size()); ++k)
        if (d[k - 1] == d[k]) return std::min(k, cap);
    return std::min(static_cast<int>(d.size()), cap);
}

DegeneracyDims degeneracy_dims(const CRMap& F, const HPoint& p, int kmax) {
    const int n = F.n(), N = F.N(), m = n - 1;
    if (kmax < 0) kmax = N - n + 2;
    if (kmax < 2) throw DomainError("kmax must be at least 2");
    // L_j commutes with the Heisenberg translation σ⁰_p, and at the origin
    // L^α h(0) = ∂^α_z h(0) for holomorphic h, so E_k(p) is spanned by z-Taylor
    // coefficients of f̃∘σ⁰_p together with ρ̂_Z̄∘F(p) itself.
    const std::vector<MPoly> jets = translated_jets(F, p, kmax);
    const VarAlphabet a = F.source_alphabet();

    ExactSpan span(N);
    {
        std::vector<ExactComplex> v0(N);
        for (int l = 0; l < N - 1; ++l) v0[l] = -jets[l].constant_term();
        v0[N - 1] = ExactComplex(mpq_class(0), mpq_class(1, 2));
        span.add(std::move(v0));
    }
    // Monomials z^α of each degree, with α! factors.
    std::vector<std::vector<std::pair<Exponent, mpz_class>>> by_degree(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
        std::vector<int> idx(k, 0);
        while (true) {
            Exponent e = zero_exponent();
            for (int j : idx) ++e[a.z(j)];
            mpz_class fact = 1;
            for (int j = 0; j < m; ++j)
                for (int t = 2; t <= e[j]; ++t) fact *= t;
            by_degree[k].emplace_back(e, fact);
            // Next non-decreasing index tuple.
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == m - 1) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int q = pos + 1; q < k; ++q) idx[q] = idx[pos];
        }
    }
    DegeneracyDims out;
    int dim1 = 0;
    for (int k = 1; k <= kmax; ++k) {
        for (const auto& [e, fact] : by_degree[k]) {
            std::vector<ExactComplex> v(N);
            for (int l = 0; l < N - 1; ++l) v[l] = -jets[l].coeff(e) * ExactComplex(mpq_class(fact));
            span.add(std::move(v));
        }
        if (k == 1) dim1 = span.dimension();
        out.d.push_back(span.dimension() - dim1);
    }
    out.l0 = stabilization_index(out.d, n, N);
    return out;
}

DegeneracyDims generic_degeneracy(const std::vector<DegeneracyDims>& per_point, int n, int N) {
    if (per_point.empty()) throw DomainError("no degeneracy samples");
    DegeneracyDims g;
    g.d = per_point.front().d;
    for (const auto& pp : per_point) {
        if (pp.d.size() != g.d.size()) throw DomainError("degeneracy samples of different length");
        for (std::size_t k = 0; k < g.d.size(); ++k) g.d[k] = std::max(g.d[k], pp.d[k]);
    }
    g.l0 = stabilization_index(g.d, n, N);
    return g;
}

int thresholded_rank(const BigMatrix& a, const BigReal& scale, int bits) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    const auto sv = singular_values(a);
    const BigReal ref = std::max(sv.front(), scale);
    const BigReal thr = ref * pow2(-bits / 2);
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](const BigReal& s) { return s > thr; }));
}

int upsilon_rank(const BigMatrix& ups, const BigReal& scale) {
    return thresholded_rank(ups, scale, current_precision_bits());
}

int upsilon_rank(const NormForm& nf) {
    PrecisionScope prec(nf.precision);
    return upsilon_rank(upsilon_matrix(nf.jets_3star()), nf.scale);
}

int upsilon_rank(const CRMap& F, const HPoint& p, const PipelineConfig& cfg) {
    return upsilon_rank(normalize_at(F, p, cfg));
}

}  // namespace crgauss
