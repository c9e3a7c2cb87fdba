// Command-line front end: parameter sweeps and the consistency validator.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "su11/errors.hpp"
#include "su11/sweep.hpp"
#include "su11/validate.hpp"

namespace {

struct SweepFlags {
    std::string mode = "phi_sweep";
    std::string input = "vacuum";
    std::string beta = "1";
    std::string phi;
    double phi1 = 0.0;
    double phi2 = 0.0;
    std::string twice_k = "1";
    std::string zeta = "0";
    std::string zeta_arg = "0";
    std::string n_total = "1";
    std::string format = "csv";
    std::string out;
    bool numeric_check = false;
    int dim_cap = 4096;
    unsigned threads = 1;
};

su11::SweepConfig to_config(const SweepFlags& f, bool have_phi, bool have_arm_phases) {
    if (have_phi && have_arm_phases) {
        throw su11::Error(su11::ErrorCode::InvalidArgument, "give either --phi or --phi1/--phi2, not both");
    }
    su11::SweepConfig cfg;
    cfg.mode = su11::parse_sweep_mode(f.mode);
    cfg.input = su11::parse_input_kind(f.input);
    cfg.beta = su11::Range::parse(f.beta);
    cfg.phi = have_arm_phases ? su11::Range::single(-(f.phi1 + f.phi2))
                              : su11::Range::parse(have_phi ? f.phi : "0");
    cfg.twice_k = su11::Range::parse(f.twice_k);
    cfg.zeta = su11::Range::parse(f.zeta);
    cfg.zeta_arg = su11::Range::parse(f.zeta_arg);
    cfg.n_total = su11::Range::parse(f.n_total);
    cfg.format = su11::parse_output_format(f.format);
    cfg.numeric_check = f.numeric_check;
    cfg.dim_cap = f.dim_cap;
    cfg.threads = f.threads;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SU(1,1) interferometer phase-sensitivity sweeps and validation.\n"
                 "Angles are in radians; the gain beta is dimensionless."};
    app.require_subcommand(1);

    SweepFlags f;
    auto* sweep = app.add_subcommand("sweep", "Tabulate (dphi)^2 over a parameter grid");
    sweep->add_option("--mode", f.mode, "phi_sweep | beta_sweep | k_sweep | photon_budget")->capture_default_str();
    sweep->add_option("--input", f.input, "vacuum | coherent | coherent_intelligent | fock")->capture_default_str();
    sweep->add_option("--beta", f.beta, "FWM gain: value, start:stop:count or v1,v2,...")->capture_default_str();
    auto* phi_opt = sweep->add_option("--phi", f.phi, "Aggregate phase phi (radians); 0 gives the phi -> 0 limit");
    auto* phi1_opt = sweep->add_option("--phi1", f.phi1, "Arm-1 phase (radians); phi = -(phi1 + phi2)");
    auto* phi2_opt = sweep->add_option("--phi2", f.phi2, "Arm-2 phase (radians)");
    phi1_opt->needs(phi2_opt);
    phi2_opt->needs(phi1_opt);
    sweep->add_option("--twice-k", f.twice_k, "2k = n0 + 1 (integer >= 1)")->capture_default_str();
    sweep->add_option("--zeta", f.zeta, "|zeta| in [0, 0.95]")->capture_default_str();
    sweep->add_option("--zeta-arg", f.zeta_arg, "arg(zeta) in radians, coherent input only")->capture_default_str();
    sweep->add_option("--n-total", f.n_total, "photon budget N (photon_budget mode)")->capture_default_str();
    sweep->add_option("--format", f.format, "csv | json")->capture_default_str();
    sweep->add_option("--out", f.out, "Write to this file instead of stdout");
    sweep->add_flag("--numeric-check", f.numeric_check, "Also run the truncated Fock-space route");
    sweep->add_option("--dim-cap", f.dim_cap, "Largest truncation dimension")->capture_default_str();
    sweep->add_option("--threads", f.threads, "Worker threads for grid evaluation")->capture_default_str();

    std::string level = "fast";
    bool flip = false;
    auto* validate = app.add_subcommand("validate", "Run the invariant suite and report residuals");
    validate->add_option("--level", level, "fast | full")->capture_default_str();
    validate->add_flag("--flip-fwm-sign", flip, "Debug: reverse the FWM generator sign (must fail)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            const su11::SweepConfig cfg = to_config(f, phi_opt->count() > 0, phi1_opt->count() > 0);
            const auto rows = su11::run_sweep(cfg);
            if (f.out.empty()) {
                su11::write_rows(std::cout, rows, cfg.format);
            } else {
                std::ofstream file(f.out);
                if (!file) {
                    std::cerr << "error: cannot open " << f.out << '\n';
                    return 2;
                }
                su11::write_rows(file, rows, cfg.format);
            }
            return 0;
        }
        su11::ValidationOptions opts;
        opts.level = su11::parse_validation_level(level);
        opts.flip_fwm_sign = flip;
        const auto report = su11::run_validate(opts);
        su11::print_report(std::cout, report);
        return report.all_passed() ? 0 : 1;
    } catch (const su11::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
