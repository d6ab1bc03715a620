#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "crgauss/calculus.hpp"
#include "crgauss/linalg.hpp"
#include "crgauss/normalization.hpp"

namespace crgauss {

// Rows j < n-1 are L_j applied to (f | g) resp. φ; row n-1 is T.
struct GrassChart {
    int n = 2;
    int N = 2;
    std::vector<std::vector<RFunc>> P;  // n × n, columns f_1..f_{n-1}, g
    std::vector<std::vector<RFunc>> Q;  // n × (N-n)

    ExactMatrix P_at(const HPoint& p) const;
    ExactMatrix Q_at(const HPoint& p) const;
};

// Throws ImmersionFailure when the linear part of f̃ at 0 has rank < n-1.
GrassChart gauss_chart(const CRMap& F);
void require_immersion(const CRMap& F);

// P, Q and their derivatives along the real directions
// (Re z_1..Re z_{n-1}, Im z_1..Im z_{n-1}, u) at a point of ∂H_n.
struct GaussPointData {
    ExactMatrix P, Q, G;
    std::vector<ExactMatrix> dP, dQ;  // 2n-1 each
};

// Evaluates the Gauss chart with second-order Taylor data of the components,
// so no symbolic L/T expansion is needed per point.
class GaussEvaluator {
public:
    explicit GaussEvaluator(const CRMap& F);

    int n() const { return n_; }
    int N() const { return N_; }
    // nullopt when P(p) is singular; throws DenominatorVanishes.
    std::optional<GaussPointData> at(const HPoint& p) const;
    // Same in another affine chart: pcols are the n target components
    // (0..N-1, g = N-1) forming P, the rest form Q in index order.
    std::optional<GaussPointData> at(const HPoint& p, const std::vector<int>& pcols) const;
    // Standard chart columns (f_1..f_{n-1}, g).
    std::vector<int> default_columns() const;
    // First n independent columns of the tangent frame at p, preferring the
    // standard chart; nullopt when the frame itself has rank < n.
    std::optional<std::vector<int>> chart_columns(const HPoint& p) const;

private:
    struct Taylor2 {
        ExactComplex v;
        std::vector<ExactComplex> d;               // ∂_a, a over (z_1..z_m, w)
        std::vector<std::vector<ExactComplex>> h;  // ∂_a∂_b
    };
    struct CompPolys {
        MPoly num, den;
        std::vector<MPoly> num_d, den_d;
        std::vector<std::vector<MPoly>> num_h, den_h;
    };
    Taylor2 taylor(const CompPolys& c, const std::vector<ExactComplex>& pt) const;
    // Frame values (L_j c, T c) for the listed components, one column each.
    ExactMatrix at_columns(const HPoint& p, const std::vector<int>& cols) const;

    int n_, N_;
    std::vector<CompPolys> comps_;
};

// Real Jacobian of G at p, 2n(N-n) × (2n-1); rows (Re, Im) of each entry.
RationalMatrix gauss_jacobian(const GaussPointData& d);
// Real Jacobian at p of R = Q - P·P(p)⁻¹Q(p). Throws DomainError when P(p) is singular.
RationalMatrix fiber_linearization(const CRMap& F, const HPoint& p);
RationalMatrix fiber_linearization(const GaussPointData& d);

// Random points of ∂H_n with coordinates (a + bi)/d, |a|,|b| ≤ height, 1 ≤ d ≤ height.
class PointSampler {
public:
    PointSampler(int n, std::uint64_t seed, int height = 256);
    HPoint next();

private:
    mpq_class rational();
    long uniform(long lo, long hi);

    int n_;
    int height_;
    std::mt19937_64 rng_;
};

struct GaussRankResult {
    int generic_rank = 0;
    bool degenerate = true;
    std::vector<HPoint> points;  // admissible points actually used
    std::vector<int> ranks;
    int attempts = 0;
};

// Max real rank of dγ over random admissible points. Points where P is
// singular are evaluated in another affine chart; points on a pole or with a
// degenerate tangent frame are skipped; at most 5·samples draws.
GaussRankResult gauss_rank_samples(const CRMap& F, int samples, std::uint64_t seed);
int gauss_generic_rank(const CRMap& F, int samples, std::uint64_t seed);

struct DegeneracyDims {
    std::vector<int> d;  // d[k-1] = d_k, k = 1..kmax
    int l0 = 1;

    int d_k(int k) const { return d.at(k - 1); }
    int kmax() const { return static_cast<int>(d.size()); }
};

// l0 = first k ≥ 1 with d_k = d_{k+1}, capped at N-n+1.
int stabilization_index(const std::vector<int>& d, int n, int N);

// kmax < 0 means N−n+2.
DegeneracyDims degeneracy_dims(const CRMap& F, const HPoint& p, int kmax = -1);
// Elementwise maximum of per-point sequences, l0 recomputed.
DegeneracyDims generic_degeneracy(const std::vector<DegeneracyDims>& per_point, int n, int N);

// Rank of Υ at the tolerance of the pipeline run.
int upsilon_rank(const BigMatrix& ups, const BigReal& scale);
int upsilon_rank(const NormForm& nf);
int upsilon_rank(const CRMap& F, const HPoint& p, const PipelineConfig& cfg = {});

// Rank of a BigMatrix with threshold max(σ_max, scale)·2^{-bits/2}.
int thresholded_rank(const BigMatrix& a, const BigReal& scale, int bits);

}  // namespace crgauss
