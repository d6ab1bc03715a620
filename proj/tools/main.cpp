// crgauss: command-line front end for the CR Gauss map analysis.
#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <optional>

#include "crgauss/harness.hpp"
#include "crgauss/map_io.hpp"

namespace {

using namespace crgauss;

struct AnalyzeOpts {
    std::string map;
    std::string out;
    AnalysisConfig cfg;
};

void add_analysis_flags(CLI::App* cmd, AnalyzeOpts& o) {
    cmd->add_option("map", o.map, "map JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--samples", o.cfg.samples, "random base points")->check(CLI::Range(2, 1000));
    cmd->add_option("--seed", o.cfg.seed, "sampler seed");
    cmd->add_option("--precision", o.cfg.precision, "working precision in bits")->check(CLI::Range(64, 8192));
    cmd->add_option("--order", o.cfg.order, "weighted jet order")->check(CLI::Range(4, 12));
}

std::pair<mpq_class, mpq_class> parse_theta(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw DomainError("--theta expects p/q,r/s");
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

int run_analyze(const AnalyzeOpts& o, bool verdict_only) {
    const CRMap F = load_map(o.map);
    const AnalysisResult res = analyze(F, o.cfg);
    if (!res.report.cr_valid) {
        spdlog::error("{}", res.message);
        if (!o.out.empty()) write_text(o.out, invalid_report_json(F.n(), F.N(), o.cfg));
        return res.exit_code;
    }
    const std::string json = report_json(res);
    if (!o.out.empty())
        write_text(o.out, json);
    else if (!verdict_only)
        std::cout << json;

    const auto& r = res.report;
    const auto& v = res.verdict;
    if (verdict_only || !o.out.empty()) {
        std::cout << "kappa0=" << r.kappa0 << " l0=" << r.generic.l0 << " gauss_rank=" << r.gauss_generic_rank
                  << "/" << 2 * r.n - 1 << " degenerate=" << (v.gauss_degenerate ? "yes" : "no")
                  << " totally_geodesic=" << (v.totally_geodesic ? "yes" : "no") << "\n";
        std::cout << "verdict: " << to_string(v.consistency) << " (" << res.message << ")\n";
    }
    if (res.exit_code != kExitOk) spdlog::error("{}", res.message);
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    auto logger = spdlog::stderr_color_mt("crgauss");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");

    CLI::App app{"Analyse rational CR maps between spheres and Heisenberg hypersurfaces"};
    app.require_subcommand(1);
    std::string level = "warn";
    app.add_option("--log-level", level, "trace|debug|info|warn|error|off")
        ->envname("CRGAUSS_LOG_LEVEL")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

    AnalyzeOpts an;
    auto* analyze_cmd = app.add_subcommand("analyze", "run the full analysis and write a JSON report");
    add_analysis_flags(analyze_cmd, an);
    analyze_cmd->add_option("--out", an.out, "report path (default: stdout)");

    AnalyzeOpts vt;
    auto* verify_cmd = app.add_subcommand("verify-theorem", "check the Gauss-degeneracy biconditional on a map");
    add_analysis_flags(verify_cmd, vt);

    std::string cat_name, cat_out, theta, model = "heisenberg";
    CatalogParams cp;
    auto* catalog_cmd = app.add_subcommand("catalog", "emit a catalog map as JSON");
    catalog_cmd->add_option("name", cat_name, "linear | whitney | dangelo")
        ->required()
        ->check(CLI::IsMember({"linear", "whitney", "dangelo"}));
    catalog_cmd->add_option("--n", cp.n, "source dimension")->check(CLI::Range(2, 10));
    catalog_cmd->add_option("--N", cp.N, "target dimension (linear only)")->check(CLI::Range(2, 40));
    catalog_cmd->add_option("--theta", theta, "exact (cos, sin) pair p/q,r/s (dangelo)");
    catalog_cmd->add_option("--model", model, "heisenberg | ball")->check(CLI::IsMember({"heisenberg", "ball"}));
    catalog_cmd->add_option("--out", cat_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }
    spdlog::set_level(spdlog::level::from_str(level));

    try {
        if (*catalog_cmd) {
            if (!theta.empty()) std::tie(cp.cos_theta, cp.sin_theta) = parse_theta(theta);
            cp.model = model == "ball" ? Model::ball : Model::heisenberg;
            if (cat_name == "dangelo" && !catalog_cmd->count("--n")) cp.n = 2;
            const CRMap F = catalog(cat_name, cp);
            if (cat_out.empty())
                std::cout << map_to_json(F);
            else
                save_map(F, cat_out);
            return kExitOk;
        }
        if (*analyze_cmd) return run_analyze(an, false);
        return run_analyze(vt, true);
    } catch (const NumericalFailure& e) {
        spdlog::error("numerical failure: {}", e.what());
        return kExitNumerical;
    } catch (const SamplingFailure& e) {
        spdlog::error("sampling failure: {}", e.what());
        return kExitNumerical;
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        spdlog::error("unexpected: {}", e.what());
        return kExitInput;
    }
}
