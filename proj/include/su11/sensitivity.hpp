#pragma once

// Phase uncertainty from error propagation of the output observable K3_out,
//   (dphi)^2 = Var(K3_out) / |d<K3_out>/dphi|^2,
// and the closed forms it reduces to for the input families studied here.

#include <functional>
#include <string_view>

#include "su11/interferometer.hpp"
#include "su11/states.hpp"

namespace su11 {

enum class Method {
    numeric,
    vacuum_closed,
    lowest_weight_closed,
    coherent_closed,
    intelligent_closed,
    coherent_intelligent_closed,
    photon_budget,
};

std::string_view to_string(Method method);

struct SensitivityResult {
    double delta_phi_sq;
    double numerator;
    double denominator;
    Method method;
};

inline constexpr double kDenominatorEpsilon = 1e-10;

/// Heisenberg route: input moments pushed through the K3_out coefficients.
/// Throws IndeterminatePoint when |d<K3_out>/dphi| <= eps.
SensitivityResult delta_phi_numeric(const KMoments& m, const InterferometerConfig& cfg,
                                    double eps = kDenominatorEpsilon);

/// Schrodinger route: the state is evolved through the truncated unitaries
/// and Var(K3), d<K3>/dphi are measured on the output.
SensitivityResult delta_phi_evolved(const TruncatedState& state, const InterferometerConfig& cfg,
                                    const EvolutionOptions& opts = {}, double eps = kDenominatorEpsilon);

/// lim_{phi->0} f(phi) from f(+-h), f(+-h/2): symmetrize, then one Richardson step.
double extrapolate_to_phi_zero(const std::function<double(double)>& f, double step);

/// phi -> 0 value of delta_phi_numeric. Evaluates at phi = 0 directly when
/// <K1> != 0; returns +inf when only the denominator vanishes; extrapolates
/// the 0/0 case (Fock inputs).
SensitivityResult delta_phi_phi_zero_limit(const KMoments& m, double beta, double step = 1e-2);

/// Vacuum in both ports: [sin^2 phi + cosh^2 beta (1 - cos phi)^2] / (sin^2 phi sinh^2 beta),
/// with the phi = 0 limit 1/sinh^2 beta.
SensitivityResult delta_phi_vacuum(double beta, double phi);

/// Lowest-weight input |k,0> (n0 photons in one mode, vacuum in the other):
/// the vacuum value divided by 2k.
SensitivityResult delta_phi_lowest_weight(BargmannIndex k, double beta, double phi);

/// (Delta K3)^2 / (sinh^2 beta <K1>^2) at phi = 0 from the coherent-state
/// closed-form moments. +inf when sinh(beta) <K1> is below kDenominatorEpsilon
/// while (Delta K3)^2 is not; the lowest-weight limit when both vanish.
SensitivityResult delta_phi_coherent(const CoherentParams& params, double beta);

/// 1 / (4 sinh^2 beta (Delta K2)^2)
SensitivityResult delta_phi_intelligent(double var_k2, double beta);

/// 1 / (2k sinh^2 beta)
SensitivityResult delta_phi_coherent_intelligent(BargmannIndex k, double beta);

/// Gain needed to emit n_total photons from an intersection state with real zeta.
/// Throws InfeasibleBudget when no beta > 0 does it.
double beta_for_photons(BargmannIndex k, double zeta, double n_total);

/// (1/2k) [((1 - zeta^2)/(1 + zeta^2) (N + 1)/(2k))^2 - 1]^{-1}
SensitivityResult delta_phi_vs_photons(BargmannIndex k, double zeta, double n_total);

/// 1 / (N (N + 2))
SensitivityResult delta_phi_vacuum_limit(double n_total);

}  // namespace su11
