#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crgauss/normalization.hpp"
#include "crgauss/rank.hpp"

namespace crgauss {

struct AnalysisConfig {
    int samples = 8;
    std::uint64_t seed = 1;
    int precision = 256;
    int order = 6;
    int kmax = -1;  // -1: N - n + 2 (at least 3, so d_3 is always available)
    bool reversed_completion = false;

    void validate() const;  // throws DomainError
};

// (κ/6)(3(κ+3)n − (κ+1)(2κ+1)); requires κ ≥ 1, n ≥ κ+2.
mpq_class d3_threshold(int kappa, int n);
// ½(κ+1)(κ+2)n − (1/6)κ(κ+1)(2κ+1); requires κ ≥ 1.
mpq_class N_bound(int kappa, int n);

enum class Consistency { consistent, inconsistent, not_applicable };
std::string to_string(Consistency c);

struct Hypotheses {
    int kappa0 = 0;
    bool kappa_ok = false;    // κ0 ≤ n−2
    int l0 = 1;
    bool condition1 = false;  // l0 ≤ 2
    bool condition2 = false;  // l0 ≥ 3 and d3 ≠ threshold
    std::optional<mpq_class> d3_threshold;
    std::optional<mpq_class> N_bound;
    bool N_bound_ok = false;  // N < N_bound
};

struct Verdict {
    Hypotheses hyp;
    bool gauss_degenerate = false;
    bool totally_geodesic = false;
    bool applicable = false;
    Consistency consistency = Consistency::not_applicable;
};

struct SampleRecord {
    HPoint point;
    int geom_rank = 0;
    DegeneracyDims dims;
    int upsilon_rank = 0;
    int gauss_rank = 0;
    int fiber_rank = 0;
    bool phi11_nonzero = false;
    // Pipeline residuals.
    double lambda = 0;
    double unitary = 0, shape2 = 0, shape3 = 0, cm = 0, hermitian = 0, mu_law = 0, recentre = 0;
    double tolerance = 0;
    IdentityResiduals identities;
};

struct RankReport {
    bool cr_valid = false;
    int n = 0, N = 0;
    std::vector<SampleRecord> samples;
    int attempts = 0;
    int kappa0 = 0;
    DegeneracyDims generic;
    int gauss_generic_rank = 0;
    int gauss_rank_second_seed = 0;
    std::uint64_t second_seed = 0;
    // Maxima over samples.
    double cm = 0, eq112 = 0, eq92eq3 = 0, hh = 0, eq43 = 0;
    bool identities_pass = true;
    bool pipeline_pass = true;  // shape / Chern–Moser / Hermitian residuals within tolerance
};

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitFalsifier = 2, kExitNumerical = 3 };

struct AnalysisResult {
    RankReport report;
    Verdict verdict;
    std::vector<NormForm> forms;
    AnalysisConfig config;
    int exit_code = kExitOk;
    std::string message;
};

// d_2 = 0 at every admissible sampled point.
bool totally_geodesic_test(const CRMap& F, const AnalysisConfig& cfg);

// Ball maps are analysed through their Heisenberg conjugate. Throws
// DomainError for invalid maps, NumericalFailure / SamplingFailure otherwise.
AnalysisResult analyze(const CRMap& F, const AnalysisConfig& cfg = {});

Verdict make_verdict(const RankReport& r);

// Deterministic JSON (stable key order, exact rationals as strings).
std::string report_json(const AnalysisResult& res);
std::string invalid_report_json(int n, int N, const AnalysisConfig& cfg);

std::string point_string(const HPoint& p);

}  // namespace crgauss
