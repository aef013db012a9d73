// Command-line driver for the Peterlin numerical laboratory.
//
// Subcommands:
//   peterlin run <config>       execute the mode named in the config
//   peterlin compare <config>   closure-comparison experiment (MP vs KP)
//   peterlin validate <config>  admissibility + ratio report, no run
//   peterlin version
//
// Exit codes: 0 success, 2 configuration error, 3 numerical blowup,
// 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "peterlin/config.hpp"
#include "peterlin/runner.hpp"
#include "peterlin/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitIo = 4;

void print_verdict(const char* name, const peterlin::AdmissibilityVerdict& v) {
    std::printf("%s: %s", name, v.admissible ? "admissible" : "inadmissible");
    if (!v.violated_rules.empty()) {
        std::printf(" (violated:");
        for (const auto& r : v.violated_rules) std::printf(" %s", r.c_str());
        std::printf(")");
    }
    std::printf("\n");
    for (const auto& w : v.warnings) std::printf("  warning: %s\n", w.c_str());
}

void print_report(const peterlin::RunConfig& cfg) {
    const peterlin::AdmissibilityReport rep = peterlin::admissibility_report(cfg);
    print_verdict(peterlin::to_string(rep.classical.theorem), rep.classical);
    print_verdict(peterlin::to_string(rep.regular.theorem), rep.regular);
    std::printf("ratio condition gamma1/gamma2 = k_tau: %s\n",
                rep.ratio_ok ? "satisfied" : "violated");
    std::printf("derived: lambda = %.17g, eps = %.17g, a = %.17g\n", cfg.params.lambda,
                cfg.params.eps, cfg.maxwellian.a);
}

int dispatch_run(const peterlin::RunConfig& cfg) {
    using peterlin::RunMode;
    switch (cfg.mode) {
        case RunMode::mp: {
            const auto s = peterlin::run_mp(cfg);
            std::printf("mp run complete: %ld steps, diagnostics at %s\n", s.steps,
                        s.diagnostics_path.c_str());
            return 0;
        }
        case RunMode::fp_given: {
            const auto s = peterlin::run_fp_given(cfg);
            std::printf("fp run complete: %ld steps, diagnostics at %s\n", s.steps,
                        s.diagnostics_path.c_str());
            return 0;
        }
        case RunMode::kp: {
            const auto s = peterlin::run_kp(cfg);
            std::printf("kp run complete: %ld steps, diagnostics at %s\n", s.steps,
                        s.diagnostics_path.c_str());
            return 0;
        }
        case RunMode::closure_compare: {
            const auto r = peterlin::compare_closure(cfg);
            std::printf("closure comparison complete:\n");
            std::printf("  max_rel_c_error   = %.17g\n", r.max_rel_C_error);
            std::printf("  final_rel_c_error = %.17g\n", r.final_rel_C_error);
            std::printf("  residual_kinetic  = %.17g\n", r.residual_kinetic);
            std::printf("  residual_macro    = %.17g\n", r.residual_macro);
            std::printf("  report at %s\n", r.report_path.c_str());
            return 0;
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinetic and macroscopic Peterlin model laboratory"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker threads for cell-parallel loops")
        ->check(CLI::PositiveNumber);

    std::string config_path;
    CLI::App* cmd_run = app.add_subcommand("run", "execute the run mode named in the config");
    cmd_run->add_option("config", config_path, "config file")->required();
    CLI::App* cmd_compare =
        app.add_subcommand("compare", "run the MP vs KP closure comparison");
    cmd_compare->add_option("config", config_path, "config file")->required();
    CLI::App* cmd_validate =
        app.add_subcommand("validate", "report admissibility and the ratio condition");
    cmd_validate->add_option("config", config_path, "config file")->required();
    CLI::App* cmd_version = app.add_subcommand("version", "print the version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_version->parsed()) {
            std::printf("peterlin %s\n", peterlin::kVersion);
            return 0;
        }
        peterlin::RunConfig cfg = peterlin::load_config_file(config_path);
        cfg.threads = threads;
        print_report(cfg);

        if (cmd_validate->parsed()) return 0;
        if (cmd_compare->parsed()) {
            if (cfg.mode != peterlin::RunMode::closure_compare) {
                std::fprintf(stderr, "error: 'compare' requires mode = closure_compare\n");
                return kExitConfig;
            }
            return dispatch_run(cfg);
        }
        return dispatch_run(cfg);
    } catch (const peterlin::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const peterlin::InvalidParameterError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const peterlin::RepresentabilityError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const peterlin::CflError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitBlowup;
    } catch (const peterlin::BlowupError& e) {
        std::fprintf(stderr, "numerical failure: %s (step %ld)\n", e.what(), e.step());
        return kExitBlowup;
    } catch (const peterlin::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
