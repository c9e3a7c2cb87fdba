#include "su11/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

namespace {

void require_gain(double beta) {
    if (beta == 0.0) throw Error(ErrorCode::ZeroGain, "beta = 0 carries no phase signal");
}

double sinh_sq(double beta) {
    const double s = std::sinh(beta);
    return s * s;
}

SensitivityResult ratio(double numerator, double denominator, Method method) {
    return {numerator / denominator, numerator, denominator, method};
}

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
    case Method::numeric: return "numeric";
    case Method::vacuum_closed: return "vacuum_closed";
    case Method::lowest_weight_closed: return "lowest_weight_closed";
    case Method::coherent_closed: return "coherent_closed";
    case Method::intelligent_closed: return "intelligent_closed";
    case Method::coherent_intelligent_closed: return "coherent_intelligent_closed";
    case Method::photon_budget: return "photon_budget";
    }
    return "unknown";
}

SensitivityResult delta_phi_numeric(const KMoments& m, const InterferometerConfig& cfg, double eps) {
    const K3OutCoefficients c = k3_out_coefficients(cfg);
    const double slope = c.phi_derivative.dot(m.mean);
    if (!(std::abs(slope) > eps)) {
        throw Error(ErrorCode::IndeterminatePoint,
                    "d<K3_out>/dphi = " + std::to_string(slope) + " at phi = " + std::to_string(cfg.phi));
    }
    const double variance = c.value.dot(m.covariance() * c.value);
    return ratio(variance, slope * slope, Method::numeric);
}

SensitivityResult delta_phi_evolved(const TruncatedState& state, const InterferometerConfig& cfg,
                                    const EvolutionOptions& opts, double eps) {
    const EvolvedState e = evolve(state, cfg, opts);
    const Eigen::Index dim = e.output.size();
    const double k = e.k.value();

    Eigen::VectorXd weight(dim);
    for (Eigen::Index n = 0; n < dim; ++n) weight(n) = static_cast<double>(n) + k;

    const Eigen::VectorXd prob = e.output.cwiseAbs2() / e.output.squaredNorm();
    const double mean = prob.dot(weight);
    const double variance = prob.dot((weight.array() - mean).square().matrix());

    // d<K3_out>/dphi = 2 s_p Im <U2 K3 chi | K3 U2 chi>, chi the state after the phase shifters.
    const auto prop = boost_propagator(e.k, static_cast<int>(dim));
    const Eigen::VectorXcd k3_chi = weight.cast<complex>().cwiseProduct(e.after_phase);
    const Eigen::VectorXcd lhs = prop->apply(-e.signs.boost * cfg.beta, k3_chi);
    const Eigen::VectorXcd rhs = weight.cast<complex>().cwiseProduct(e.output);
    const double slope = 2.0 * e.signs.phase * lhs.dot(rhs).imag();

    if (!(std::abs(slope) > eps)) {
        throw Error(ErrorCode::IndeterminatePoint,
                    "d<K3_out>/dphi = " + std::to_string(slope) + " at phi = " + std::to_string(cfg.phi));
    }
    return ratio(variance, slope * slope, Method::numeric);
}

double extrapolate_to_phi_zero(const std::function<double(double)>& f, double step) {
    const double coarse = 0.5 * (f(step) + f(-step));
    const double fine = 0.5 * (f(0.5 * step) + f(-0.5 * step));
    return (4.0 * fine - coarse) / 3.0;
}

SensitivityResult delta_phi_phi_zero_limit(const KMoments& m, double beta, double step) {
    require_gain(beta);
    try {
        return delta_phi_numeric(m, {beta, 0.0});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::IndeterminatePoint) throw;
    }
    const double var_k3 = m.covariance()(2, 2);
    if (var_k3 > 1e-12 * (1.0 + m.mean(2) * m.mean(2))) {
        return {std::numeric_limits<double>::infinity(), var_k3, 0.0, Method::numeric};
    }
    const double value = extrapolate_to_phi_zero(
        [&](double phi) { return delta_phi_numeric(m, {beta, phi}).delta_phi_sq; }, step);
    return {value, value * sinh_sq(beta), sinh_sq(beta), Method::numeric};
}

SensitivityResult delta_phi_vacuum(double beta, double phi) {
    require_gain(beta);
    if (phi == 0.0) return ratio(1.0, sinh_sq(beta), Method::vacuum_closed);
    const double s = std::sin(phi);
    const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * phi), 2);
    const double c = std::cosh(beta);
    const double numerator = s * s + c * c * one_minus_cos * one_minus_cos;
    const double denominator = s * s * sinh_sq(beta);
    if (denominator == 0.0) {
        return {std::numeric_limits<double>::infinity(), numerator, 0.0, Method::vacuum_closed};
    }
    return ratio(numerator, denominator, Method::vacuum_closed);
}

SensitivityResult delta_phi_lowest_weight(BargmannIndex k, double beta, double phi) {
    SensitivityResult r = delta_phi_vacuum(beta, phi);
    r.denominator *= k.twice_k();
    r.delta_phi_sq /= k.twice_k();
    r.method = Method::lowest_weight_closed;
    return r;
}

SensitivityResult delta_phi_coherent(const CoherentParams& params, double beta) {
    require_gain(beta);
    const CoherentClosedForm m = coherent_closed_form_moments(params);
    // Same cutoff as the numeric route, so e.g. zeta = 0.5 exp(i pi/2) reads as <K1> = 0.
    if (!(std::abs(std::sinh(beta) * m.mean_k1) > kDenominatorEpsilon)) {
        if (m.var_k3 <= kDenominatorEpsilon) {
            SensitivityResult r = delta_phi_lowest_weight(params.k, beta, 0.0);
            r.method = Method::coherent_closed;
            return r;
        }
        return {std::numeric_limits<double>::infinity(), m.var_k3, 0.0, Method::coherent_closed};
    }
    return ratio(m.var_k3, sinh_sq(beta) * m.mean_k1 * m.mean_k1, Method::coherent_closed);
}

SensitivityResult delta_phi_intelligent(double var_k2, double beta) {
    require_gain(beta);
    if (!(var_k2 > 0.0)) {
        throw Error(ErrorCode::NonpositiveVariance, "(Delta K2)^2 must be positive");
    }
    return ratio(1.0, 4.0 * sinh_sq(beta) * var_k2, Method::intelligent_closed);
}

SensitivityResult delta_phi_coherent_intelligent(BargmannIndex k, double beta) {
    require_gain(beta);
    return ratio(1.0, k.twice_k() * sinh_sq(beta), Method::coherent_intelligent_closed);
}

namespace {

/// cosh(beta) implied by a photon budget, before any feasibility check.
double budget_cosh(BargmannIndex k, double zeta, double n_total) {
    if (!(std::abs(zeta) < 1.0)) {
        throw Error(ErrorCode::InvalidAmplitude, "coherent amplitude needs |zeta| < 1");
    }
    const double z2 = zeta * zeta;
    return (1.0 - z2) / (1.0 + z2) * (n_total + 1.0) / k.twice_k();
}

}  // namespace

double beta_for_photons(BargmannIndex k, double zeta, double n_total) {
    const double c = budget_cosh(k, zeta, n_total);
    if (!(c > 1.0)) {
        throw Error(ErrorCode::InfeasibleBudget,
                    "N = " + std::to_string(n_total) + " cannot be reached with any beta > 0");
    }
    return std::acosh(c);
}

SensitivityResult delta_phi_vs_photons(BargmannIndex k, double zeta, double n_total) {
    const double c = budget_cosh(k, zeta, n_total);
    const double bracket = c * c - 1.0;
    if (!(bracket > 0.0)) {
        throw Error(ErrorCode::InfeasibleBudget,
                    "N = " + std::to_string(n_total) + " cannot be reached with any beta > 0");
    }
    return ratio(1.0, k.twice_k() * bracket, Method::photon_budget);
}

SensitivityResult delta_phi_vacuum_limit(double n_total) {
    if (!(n_total > 0.0)) {
        throw Error(ErrorCode::NonpositivePhotons, "photon number must be positive");
    }
    return ratio(1.0, n_total * (n_total + 2.0), Method::photon_budget);
}

}  // namespace su11
