#include "crgauss/harness.hpp"

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>

namespace crgauss {

namespace {

using json = nlohmann::ordered_json;

// Offset for the independent second Gauss-rank seed.
constexpr std::uint64_t kSecondSeedOffset = 0x9E3779B97F4A7C15ULL;

json rational_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return rational_string(q);
}

json optional_rational(const std::optional<mpq_class>& q) { return q ? rational_json(*q) : json(nullptr); }

json point_json(const HPoint& p) {
    json z = json::array();
    for (const auto& c : p.z) z.push_back({rational_string(c.re()), rational_string(c.im())});
    return {{"z", z}, {"u", rational_string(p.u)}};
}

double d(const BigReal& x) { return to_double(x); }

}  // namespace

void AnalysisConfig::validate() const {
    if (samples < 2) throw DomainError("samples must be at least 2");
    if (precision < 64) throw DomainError("precision must be at least 64 bits");
    if (order < 4) throw DomainError("jet order must be at least 4");
    if (kmax != -1 && kmax < 2) throw DomainError("kmax must be at least 2");
}

mpq_class d3_threshold(int kappa, int n) {
    if (kappa < 1 || n < kappa + 2) throw DomainError("d3_threshold needs kappa >= 1 and n >= kappa + 2");
    mpq_class r(kappa * (3 * (kappa + 3) * n - (kappa + 1) * (2 * kappa + 1)), 6);
    r.canonicalize();
    return r;
}

mpq_class N_bound(int kappa, int n) {
    if (kappa < 1) throw DomainError("N_bound needs kappa >= 1");
    mpq_class a((kappa + 1) * (kappa + 2) * n, 2), b(kappa * (kappa + 1) * (2 * kappa + 1), 6);
    a.canonicalize();
    b.canonicalize();
    return a - b;
}

std::string to_string(Consistency c) {
    switch (c) {
        case Consistency::consistent: return "consistent";
        case Consistency::inconsistent: return "inconsistent";
        default: return "not_applicable";
    }
}

std::string point_string(const HPoint& p) {
    std::string s = "(";
    for (std::size_t j = 0; j < p.z.size(); ++j) s += (j ? ", " : "") + p.z[j].to_string();
    return s + "; u=" + rational_string(p.u) + ")";
}

Verdict make_verdict(const RankReport& r) {
    Verdict v;
    Hypotheses& h = v.hyp;
    h.kappa0 = r.kappa0;
    h.kappa_ok = r.kappa0 <= r.n - 2;
    h.l0 = r.generic.l0;
    h.condition1 = h.l0 <= 2;
    if (r.kappa0 >= 1 && r.n >= r.kappa0 + 2) h.d3_threshold = d3_threshold(r.kappa0, r.n);
    if (r.kappa0 >= 1) {
        h.N_bound = N_bound(r.kappa0, r.n);
        h.N_bound_ok = mpq_class(r.N) < *h.N_bound;
    }
    const int d3 = r.generic.kmax() >= 3 ? r.generic.d_k(3) : 0;
    h.condition2 = h.l0 >= 3 && h.d3_threshold && mpq_class(d3) != *h.d3_threshold;
    v.gauss_degenerate = r.gauss_generic_rank < 2 * r.n - 1;
    v.totally_geodesic = std::all_of(r.samples.begin(), r.samples.end(),
                                     [](const SampleRecord& s) { return s.dims.d_k(2) == 0; });
    v.applicable = h.kappa_ok && (h.condition1 || h.condition2);
    if (v.applicable)
        v.consistency = v.gauss_degenerate == v.totally_geodesic ? Consistency::consistent : Consistency::inconsistent;
    return v;
}

bool totally_geodesic_test(const CRMap& F, const AnalysisConfig& cfg) {
    cfg.validate();
    const CRMap H = F.model() == Model::ball ? cayley_conjugate(F, CayleyDirection::ball_to_heis) : F;
    PointSampler sampler(H.n(), cfg.seed);
    int found = 0;
    for (int att = 0; att < 5 * cfg.samples && found < cfg.samples; ++att) {
        const HPoint p = sampler.next();
        DegeneracyDims dd;
        try {
            dd = degeneracy_dims(H, p, 2);
        } catch (const DenominatorVanishes&) {
            continue;
        }
        ++found;
        if (dd.d_k(2) != 0) return false;
    }
    if (found == 0) throw SamplingFailure("no admissible sample points");
    return true;
}

AnalysisResult analyze(const CRMap& F, const AnalysisConfig& cfg) {
    cfg.validate();
    AnalysisResult res;
    res.config = cfg;
    RankReport& rep = res.report;
    rep.n = F.n();
    rep.N = F.N();
    rep.cr_valid = cr_validity(F);
    if (!rep.cr_valid) {
        res.exit_code = kExitInput;
        res.message = "map fails the CR validity identity";
        return res;
    }
    const CRMap H = F.model() == Model::ball ? cayley_conjugate(F, CayleyDirection::ball_to_heis) : F;
    const int n = H.n(), N = H.N();
    const int kmax = std::max(cfg.kmax < 0 ? N - n + 2 : cfg.kmax, 3);
    PipelineConfig pc{cfg.precision, cfg.order, cfg.reversed_completion};

    GaussEvaluator ev(H);
    PointSampler sampler(n, cfg.seed);
    std::vector<DegeneracyDims> dims;
    while (static_cast<int>(rep.samples.size()) < cfg.samples && rep.attempts < 5 * cfg.samples) {
        ++rep.attempts;
        const HPoint p = sampler.next();
        SampleRecord s;
        s.point = p;
        NormForm nf;
        try {
            auto gd = ev.at(p);
            if (!gd) {
                if (const auto cols = ev.chart_columns(p)) gd = ev.at(p, *cols);
                if (!gd) {
                    spdlog::debug("skipping {}: degenerate tangent frame", point_string(p));
                    continue;
                }
            }
            s.gauss_rank = exact_rank(gauss_jacobian(*gd));
            s.fiber_rank = exact_rank(fiber_linearization(*gd));
            s.dims = degeneracy_dims(H, p, kmax);
            nf = normalize_at(H, p, pc);
        } catch (const DenominatorVanishes&) {
            spdlog::debug("skipping {}: pole", point_string(p));
            continue;
        } catch (const ImmersionFailure&) {
            spdlog::debug("skipping {}: not immersive", point_string(p));
            continue;
        }
        {
            PrecisionScope prec(cfg.precision);
            s.upsilon_rank = upsilon_rank(nf);
        }
        s.geom_rank = nf.kappa();
        s.phi11_nonzero = nf.phi11.nonzero;
        s.lambda = d(nf.step2.lambda);
        s.unitary = d(nf.step2.unitary_residual);
        s.shape2 = d(nf.step2.shape_residual);
        s.shape3 = d(nf.step3.shape_residual);
        s.cm = d(nf.step3.cm_residual);
        s.hermitian = d(nf.geom.hermitian_residual);
        s.mu_law = d(nf.step4.mu_law_residual);
        s.recentre = d(nf.step5.residual);
        s.tolerance = d(nf.tolerance);
        s.identities = nf.identities;
        const bool ok = nf.step2.unitary_residual < nf.tolerance && nf.step2.shape_residual < nf.tolerance &&
                        nf.step3.shape_residual < nf.tolerance && nf.step3.cm_residual < nf.tolerance &&
                        nf.geom.hermitian_residual < nf.tolerance && nf.step4.mu_law_residual < nf.tolerance &&
                        nf.step5.residual < nf.tolerance;
        if (!ok) {
            spdlog::warn("pipeline residuals above tolerance at {}", point_string(p));
            rep.pipeline_pass = false;
        }
        rep.kappa0 = std::max(rep.kappa0, s.geom_rank);
        rep.gauss_generic_rank = std::max(rep.gauss_generic_rank, s.gauss_rank);
        dims.push_back(s.dims);
        rep.samples.push_back(std::move(s));
        res.forms.push_back(std::move(nf));
    }
    if (rep.samples.empty()) throw SamplingFailure("no admissible sample points; try another seed");
    if (static_cast<int>(rep.samples.size()) < cfg.samples)
        spdlog::warn("only {} of {} admissible points found", rep.samples.size(), cfg.samples);
    rep.generic = generic_degeneracy(dims, n, N);

    for (const auto& s : rep.samples) {
        rep.cm = std::max(rep.cm, d(s.identities.cm));
        rep.eq112 = std::max(rep.eq112, d(s.identities.eq112));
        rep.eq92eq3 = std::max(rep.eq92eq3, d(s.identities.eq92eq3));
        rep.hh = std::max(rep.hh, d(s.identities.hh));
        rep.eq43 = std::max(rep.eq43, d(s.identities.eq43));
        // The identities describe the normal form at points of geometric rank κ0.
        if (s.geom_rank == rep.kappa0 && !s.identities.pass()) rep.identities_pass = false;
    }

    rep.second_seed = cfg.seed + kSecondSeedOffset;
    rep.gauss_rank_second_seed = gauss_generic_rank(H, cfg.samples, rep.second_seed);

    res.verdict = make_verdict(rep);
    if (!rep.pipeline_pass) {
        res.exit_code = kExitNumerical;
        res.message = "normalization residuals exceed tolerance; raise --precision";
    } else if (rep.gauss_rank_second_seed != rep.gauss_generic_rank) {
        res.exit_code = kExitNumerical;
        res.message = "Gauss rank differs between the two seeds; increase --samples";
    } else if (res.verdict.consistency == Consistency::inconsistent) {
        res.exit_code = kExitFalsifier;
        res.message = "theorem inconsistency: Gauss degeneracy and total geodesy disagree";
    } else {
        res.exit_code = kExitOk;
        res.message = res.verdict.applicable ? "consistent" : "hypotheses not applicable";
    }
    return res;
}

std::string report_json(const AnalysisResult& res) {
    const RankReport& r = res.report;
    const Verdict& v = res.verdict;
    json j;
    j["cr_valid"] = r.cr_valid;
    j["n"] = r.n;
    j["N"] = r.N;
    json samples = json::array();
    for (const auto& s : r.samples) {
        json dk = json::array();
        for (int k = 2; k <= s.dims.kmax(); ++k) dk.push_back(s.dims.d_k(k));
        samples.push_back({
            {"point", point_json(s.point)},
            {"geom_rank", s.geom_rank},
            {"d", dk},
            {"l0", s.dims.l0},
            {"upsilon_rank", s.upsilon_rank},
            {"gauss_rank", s.gauss_rank},
            {"fiber_rank", s.fiber_rank},
            {"phi11_nonzero", s.phi11_nonzero},
            {"residuals",
             {{"lambda", s.lambda},
              {"unitary", s.unitary},
              {"shape_star", s.shape2},
              {"shape_2star", s.shape3},
              {"chern_moser", s.cm},
              {"hermitian", s.hermitian},
              {"mu_law", s.mu_law},
              {"recentre", s.recentre},
              {"eq112", d(s.identities.eq112)},
              {"hh", d(s.identities.hh)},
              {"eq92eq3", d(s.identities.eq92eq3)},
              {"eq43", d(s.identities.eq43)},
              {"tolerance", s.tolerance}}},
        });
    }
    j["samples"] = samples;
    j["kappa0"] = r.kappa0;
    j["l0"] = r.generic.l0;
    json dgen = json::array();
    for (int k = 2; k <= r.generic.kmax(); ++k) dgen.push_back(r.generic.d_k(k));
    j["d"] = dgen;
    j["d3"] = r.generic.kmax() >= 3 ? json(r.generic.d_k(3)) : json(nullptr);
    j["d3_threshold"] = optional_rational(v.hyp.d3_threshold);
    j["N_bound"] = optional_rational(v.hyp.N_bound);
    j["gauss_generic_rank"] = r.gauss_generic_rank;
    j["gauss_degenerate"] = v.gauss_degenerate;
    j["totally_geodesic"] = v.totally_geodesic;
    j["hypotheses"] = {{"kappa0", v.hyp.kappa0},
                       {"kappa0_le_n_minus_2", v.hyp.kappa_ok},
                       {"l0", v.hyp.l0},
                       {"condition1", v.hyp.condition1},
                       {"condition2", v.hyp.condition2},
                       {"N_bound_ok", v.hyp.N_bound_ok}};
    j["biconditional"] = {{"applicable", v.applicable},
                          {"consistent", v.applicable ? json(v.consistency == Consistency::consistent) : json(nullptr)},
                          {"status", to_string(v.consistency)}};
    j["identity_residuals"] = {{"cm", r.cm},         {"eq112", r.eq112}, {"eq92eq3", r.eq92eq3},
                               {"hh", r.hh},         {"eq43", r.eq43},   {"pass", r.identities_pass}};
    j["seeds"] = {{"primary", res.config.seed},
                  {"second", r.second_seed},
                  {"gauss_rank_second_seed", r.gauss_rank_second_seed},
                  {"attempts", r.attempts}};
    j["config"] = {{"seed", res.config.seed},
                   {"samples", res.config.samples},
                   {"precision", res.config.precision},
                   {"order", res.config.order}};
    j["exit_code"] = res.exit_code;
    j["message"] = res.message;
    return j.dump(2) + "\n";
}

std::string invalid_report_json(int n, int N, const AnalysisConfig& cfg) {
    json j;
    j["cr_valid"] = false;
    j["n"] = n;
    j["N"] = N;
    j["config"] = {{"seed", cfg.seed}, {"samples", cfg.samples}, {"precision", cfg.precision}, {"order", cfg.order}};
    j["exit_code"] = static_cast<int>(kExitInput);
    j["message"] = "map fails the CR validity identity";
    return j.dump(2) + "\n";
}

}  // namespace crgauss
