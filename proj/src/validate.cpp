#include "su11/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "su11/core.hpp"
#include "su11/errors.hpp"
#include "su11/interferometer.hpp"
#include "su11/sensitivity.hpp"
#include "su11/states.hpp"
#include "su11/two_mode.hpp"

namespace su11 {

namespace {

using std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

class Checks {
public:
    void at_most(std::string name, double tolerance, double observed) {
        report_.checks.push_back({std::move(name), "<=", tolerance, observed, observed <= tolerance});
    }
    void above(std::string name, double threshold, double observed) {
        report_.checks.push_back({std::move(name), ">", threshold, observed, observed > threshold});
    }
    ValidationReport take() { return std::move(report_); }

private:
    ValidationReport report_;
};

const std::vector<int> kTwiceK = {1, 2, 3, 5};

/// Moment comparisons at the 1e-9..1e-12 level need the discarded tail well
/// below the default 1e-12: its bias on second moments grows like n^2.
TruncationPolicy precise() {
    TruncationPolicy p;
    p.tolerance = 1e-18;
    return p;
}

void structure_checks(Checks& out, bool full) {
    const std::vector<int> dims = full ? std::vector<int>{8, 16, 32} : std::vector<int>{8, 16};
    double herm = 0.0, comm = 0.0, casimir = 0.0, annihilate = 0.0;
    for (int tk : kTwiceK) {
        const BargmannIndex k(tk);
        for (int dim : dims) {
            const auto k1 = generator_matrix(Generator::K1, k, dim).entries;
            const auto k2 = generator_matrix(Generator::K2, k, dim).entries;
            herm = std::max({herm, (k1 - k1.adjoint()).cwiseAbs().maxCoeff(),
                             (k2 - k2.adjoint()).cwiseAbs().maxCoeff()});
            comm = std::max(comm, commutator_residual(k, dim));
            const auto c = casimir_matrix(k, dim).entries;
            const double kk = k.value() * (k.value() - 1.0);
            casimir = std::max(casimir, max_abs_block(c - kk * Eigen::MatrixXcd::Identity(dim, dim), dim - 2));
            annihilate = std::max(annihilate, generator_matrix(Generator::Kminus, k, dim).entries.col(0).cwiseAbs().maxCoeff());
        }
    }
    out.at_most("generators K1, K2 hermitian (exact)", 0.0, herm);
    out.at_most("interior commutator residual", 1e-12, comm);
    out.at_most("interior Casimir deviation from k(k-1)", 1e-12, casimir);
    out.at_most("K- annihilates |k,0>", 0.0, annihilate);

    double embed = 0.0, labels = 0.0;
    for (int n0 = 0; n0 <= 3; ++n0) {
        embed = std::max(embed, irrep_embedding_check(n0, 12));
        labels = std::max(labels, number_difference_commutator(build_two_mode_generators(n0, 12)));
    }
    out.at_most("two-mode embedding deviation, n0 = 0..3", 1e-12, embed);
    out.at_most("[n1 - n2, K_i] vanishes", 1e-12, labels);

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> beta_dist(0.0, 2.0), phi_dist(-pi, pi), wide_beta(0.0, 3.0);
    double metric = 0.0, row = 0.0, identity = 0.0;
    for (int i = 0; i < 100; ++i) {
        // Beyond beta ~ 2 the defect is dominated by rounding of cosh^4(beta)-sized terms.
        const InterferometerConfig cfg{beta_dist(rng), phi_dist(rng)};
        const auto t = overall_transform(cfg);
        metric = std::max({metric, t.metric_defect(), boost_matrix(cfg.beta).metric_defect(),
                           rotation_matrix(cfg.phi).metric_defect()});
        row = std::max(row, (t.matrix.row(2).transpose() - k3_out_coefficients(cfg).value).cwiseAbs().maxCoeff());
        identity = std::max(identity, (overall_transform({wide_beta(rng), 0.0}).matrix - Eigen::Matrix3d::Identity())
                                          .cwiseAbs().maxCoeff());
    }
    out.at_most("SO(2,1) metric preservation", 1e-12, metric);
    out.at_most("K3_out row equals coefficient triple", 1e-12, row);
    out.at_most("overall transform at phi = 0 is identity", 1e-14, identity);

    const auto u = fwm_unitary(1.0, BargmannIndex(1), 128).entries;
    out.at_most("FWM unitarity defect (beta=1, dim=128)", 1e-10,
                max_abs_block(u.adjoint() * u - Eigen::MatrixXcd::Identity(128, 128), 126));
}

void state_checks(Checks& out) {
    double closed = 0.0, equality = 0.0, half_k = 0.0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int tk : kTwiceK) {
        const BargmannIndex k(tk);
        for (double r : {0.0, 0.1, 0.3, 0.5, 0.7}) {
            for (double theta : {0.0, pi / 4, pi / 2, 2.0, pi}) {
                const CoherentParams p{k, std::polar(r, theta), std::nullopt};
                const KMoments m = moments(coherent_state(p, precise()));
                const CoherentClosedForm cf = coherent_closed_form_moments(p);
                closed = std::max({closed, std::abs(cf.var_k2 - m.variance(1)),
                                   std::abs(cf.var_k3 - m.variance(2)), std::abs(cf.mean_k1 - m.mean(0))});
                const double slack = m.variance(1) * m.variance(2) - 0.25 * m.mean(0) * m.mean(0);
                if (std::abs(std::sin(theta)) * r > 0.05) min_slack = std::min(min_slack, slack);
                if (std::sin(theta) == 0.0 || theta == pi) {
                    equality = std::max(equality, std::abs(slack));
                    half_k = std::max(half_k, std::abs(m.variance(1) - 0.5 * k.value()));
                }
            }
        }
    }
    out.at_most("closed-form moments vs brute force", 1e-9, closed);
    out.at_most("real zeta: (Delta K2)^2 = k/2", 1e-12, half_k);
    out.at_most("uncertainty equality, real zeta", 1e-10, equality);
    out.above("uncertainty slack, |Im zeta| > 0.05", 0.0, min_slack);

    double residual = 0.0, round_trip = 0.0;
    const std::pair<double, Branch> cases[] = {{0.5, Branch::upper}, {0.75, Branch::upper}, {1.0, Branch::upper},
                                              {2.0, Branch::upper}, {-0.75, Branch::lower}, {-2.0, Branch::lower}};
    for (int tk : {1, 4}) {
        const BargmannIndex k(tk);
        for (auto [gamma, branch] : cases) {
            const IntelligentParams ip = coherent_intelligent_params(gamma, branch, k);
            const TruncatedState s = coherent_state(to_coherent(ip, k), precise());
            residual = std::max(residual, intelligent_residual(s, gamma, ip.lambda));
            round_trip = std::max(round_trip, std::abs(gamma_from_state(s) - gamma));
        }
    }
    out.at_most("intelligent eigenvalue residual", 1e-8, residual);
    out.at_most("gamma_from_state round trip", 1e-8, round_trip);
}

void evolution_checks(Checks& out, bool full, bool flip) {
    const std::vector<int> tks = full ? std::vector<int>{1, 2, 4} : std::vector<int>{1, 2};
    const std::vector<double> zetas = full ? std::vector<double>{0.0, 0.3, 0.5} : std::vector<double>{0.0, 0.3};
    const std::vector<double> betas = full ? std::vector<double>{0.5, 1.0} : std::vector<double>{0.5};
    const std::vector<double> phis = {0.0, 0.3, 1.0};

    EvolutionOptions opts;
    if (!full) opts.dim = 128;
    if (flip) {
        GeneratorSigns s = detected_generator_signs();
        s.boost = -s.boost;
        opts.signs = s;
    }

    double first = 0.0, second = 0.0;
    for (int tk : tks) {
        for (double z : zetas) {
            const TruncatedState in = coherent_state({BargmannIndex(tk), z, std::nullopt});
            const KMoments m_in = moments(in);
            for (double beta : betas) {
                for (double phi : phis) {
                    const InterferometerConfig cfg{beta, phi};
                    const KMoments heis = transform_moments(m_in, overall_transform(cfg));
                    try {
                        const KMoments schr = moments(apply_interferometer(in, cfg, opts));
                        first = std::max(first, (heis.mean - schr.mean).cwiseAbs().maxCoeff());
                        second = std::max(second, (heis.second - schr.second).cwiseAbs().maxCoeff());
                    } catch (const Error&) {
                        first = second = std::numeric_limits<double>::infinity();
                    }
                }
            }
        }
    }
    out.at_most("Heisenberg/Schrodinger first moments", 1e-7, first);
    out.at_most("Heisenberg/Schrodinger second moments", 1e-6, second);
}

void sensitivity_checks(Checks& out, bool full) {
    const TruncatedState vacuum = fock_state(BargmannIndex(1), 0, 1);
    const std::vector<double> betas = full ? std::vector<double>{0.5, 1.0, 2.0} : std::vector<double>{0.5, 1.0};
    double vac = 0.0, vac_limit = 0.0;
    EvolutionOptions opts;
    opts.dim = full ? 512 : 128;
    for (double beta : betas) {
        for (double phi : {0.05, 0.3, 1.0, pi / 2}) {
            vac = std::max(vac, rel(delta_phi_evolved(vacuum, {beta, phi}, opts).delta_phi_sq,
                                    delta_phi_vacuum(beta, phi).delta_phi_sq));
        }
        const double limit = extrapolate_to_phi_zero(
            [&](double phi) { return delta_phi_evolved(vacuum, {beta, phi}, opts).delta_phi_sq; }, 0.02);
        vac_limit = std::max(vac_limit, rel(limit, 1.0 / std::pow(std::sinh(beta), 2)));
    }
    out.at_most("vacuum: evolved state vs closed form", 1e-6, vac);
    out.at_most("vacuum: phi -> 0 extrapolation vs 1/sinh^2 beta", 1e-4, vac_limit);

    double intersection = 0.0, photon_moment = 0.0, round_trip = 0.0;
    for (int tk : {1, 2, 6, 12}) {
        const BargmannIndex k(tk);
        for (double z : {0.0, 0.2, 0.5}) {
            const CoherentParams p{k, z, std::nullopt};
            const KMoments m = moments(coherent_state(p));
            for (double beta : {0.5, 1.0, 2.0}) {
                const double closed = delta_phi_coherent_intelligent(k, beta).delta_phi_sq;
                intersection = std::max(intersection, rel(delta_phi_numeric(m, {beta, 1e-3}).delta_phi_sq, closed));
                const double n = total_photons(p, beta);
                photon_moment = std::max(photon_moment, rel(total_photons_from_moments(m, beta), n));
                round_trip = std::max(round_trip, rel(delta_phi_vs_photons(k, z, n).delta_phi_sq, closed));
            }
        }
    }
    out.at_most("intersection states: numeric at phi=1e-3 vs 1/(2k sinh^2 beta)", 1e-4, intersection);
    out.at_most("photon number: closed form vs 2<K3'> - 1", 1e-8, photon_moment);
    out.at_most("photon budget round trip", 1e-10, round_trip);

    double vacuum_budget = 0.0;
    for (double n : {1.0, 2.0, 5.0, 10.0}) {
        vacuum_budget = std::max(vacuum_budget, rel(delta_phi_vs_photons(BargmannIndex(1), 0.0, n).delta_phi_sq,
                                                    delta_phi_vacuum_limit(n).delta_phi_sq));
    }
    out.at_most("vacuum budget 1/(N(N+2)) vs general budget", 1e-12, vacuum_budget);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> beta_dist(0.2, 2.0), phi_dist(0.05, 3.0), zeta_dist(0.0, 0.6),
        arg_dist(0.0, 2 * pi);
    std::uniform_int_distribution<int> tk_dist(1, 6);
    double fd = 0.0;
    for (int i = 0; i < (full ? 40 : 10); ++i) {
        const BargmannIndex k(tk_dist(rng));
        const KMoments m = moments(coherent_state({k, std::polar(zeta_dist(rng), arg_dist(rng)), std::nullopt}));
        const InterferometerConfig cfg{beta_dist(rng), phi_dist(rng)};
        const double h = 1e-5;
        const double slope = k3_out_coefficients(cfg).phi_derivative.dot(m.mean);
        const double fd_slope = (k3_out_coefficients({cfg.beta, cfg.phi + h}).value.dot(m.mean) -
                                 k3_out_coefficients({cfg.beta, cfg.phi - h}).value.dot(m.mean)) / (2 * h);
        if (std::abs(slope) > 1e-3) fd = std::max(fd, rel(fd_slope, slope));
    }
    out.at_most("analytic d<K3_out>/dphi vs central difference", 1e-6, fd);

    // Among coherent states of fixed |zeta|, the real ones give the lowest phi -> 0 value.
    double excess = std::numeric_limits<double>::infinity();
    double real_gap = 0.0;
    for (int tk : {1, 4}) {
        const BargmannIndex k(tk);
        const double closed = delta_phi_coherent_intelligent(k, 1.0).delta_phi_sq;
        for (double r : {0.2, 0.5}) {
            const double real_value = delta_phi_phi_zero_limit(moments(coherent_state({k, r, std::nullopt})), 1.0).delta_phi_sq;
            real_gap = std::max(real_gap, closed - real_value);
            for (int j = 1; j < 6; ++j) {
                const KMoments m = moments(coherent_state({k, std::polar(r, j * pi / 6), std::nullopt}));
                excess = std::min(excess, delta_phi_phi_zero_limit(m, 1.0).delta_phi_sq - real_value);
            }
        }
    }
    out.at_most("real zeta never beats 1/(2k sinh^2 beta)", 1e-9, real_gap);
    out.above("non-real zeta is worse than real zeta", 0.0, excess);

    double budget_gap = std::numeric_limits<double>::infinity();
    for (double n : {2.0, 5.0, 10.0, 50.0}) {
        const double best = delta_phi_vs_photons(BargmannIndex(1), 0.0, n).delta_phi_sq;
        for (int tk : {1, 2, 3, 4}) {
            for (double z : {0.0, 0.2, 0.4}) {
                if (tk == 1 && z == 0.0) continue;
                try {
                    budget_gap = std::min(budget_gap, delta_phi_vs_photons(BargmannIndex(tk), z, n).delta_phi_sq - best);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::InfeasibleBudget) throw;
                }
            }
        }
    }
    out.above("fixed N: vacuum input minimizes the budget form", 0.0, budget_gap);
}

}  // namespace

ValidationLevel parse_validation_level(std::string_view text) {
    if (text == "fast") return ValidationLevel::fast;
    if (text == "full") return ValidationLevel::full;
    throw Error(ErrorCode::InvalidArgument, "unknown validation level '" + std::string(text) + "'");
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validate(const ValidationOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const bool full = opts.level == ValidationLevel::full;
    Checks checks;
    structure_checks(checks, full);
    state_checks(checks);
    evolution_checks(checks, full, opts.flip_fwm_sign);
    sensitivity_checks(checks, full);
    ValidationReport report = checks.take();
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void print_report(std::ostream& os, const ValidationReport& report) {
    for (const CheckResult& c : report.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "  observed " << std::setprecision(3)
           << std::scientific << c.observed << ' ' << c.relation << ' ' << c.tolerance << std::defaultfloat
           << '\n';
    }
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                      [](const CheckResult& c) { return !c.passed; });
    os << report.checks.size() - failed << '/' << report.checks.size() << " checks passed in "
       << std::setprecision(3) << report.seconds << " s\n";
}

}  // namespace su11
