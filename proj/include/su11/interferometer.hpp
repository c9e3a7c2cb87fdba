#pragma once

// Interferometer action on K = (K1, K2, K3).
//
// Heisenberg picture: FWM1 is the boost L(-beta), the phase shifters rotate by
// phi = -(phi1 + phi2) about the 3rd axis, FWM2 is L(beta); overall
// K_out = L(beta) R(phi) L(-beta) K.
//
// Schrodinger picture: FWM1 = exp(i s_b beta K1), phases = exp(i s_p phi K3),
// FWM2 = FWM1 with beta -> -beta. The signs s_b, s_p are found by checking the
// adjoint action on first moments against L(-beta) and R(phi).

#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "su11/core.hpp"
#include "su11/states.hpp"

namespace su11 {

/// Real 3x3 map on the K-vector (an element of SO(2,1)).
struct KVectorTransform {
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();

    /// max |M^T g M - g| for g = diag(-1, -1, +1).
    double metric_defect() const;

    KVectorTransform operator*(const KVectorTransform& rhs) const { return {matrix * rhs.matrix}; }
};

/// L(beta): identity on K1, boost mixing K2 and K3 with +sinh(beta) off-diagonal.
/// FWM1 is boost_matrix(-beta).
KVectorTransform boost_matrix(double beta);
KVectorTransform rotation_matrix(double phi);

struct InterferometerConfig {
    double beta = 0.0;
    double phi = 0.0;

    static InterferometerConfig from_arm_phases(double beta, double phi1, double phi2) {
        return {beta, -(phi1 + phi2)};
    }
};

KVectorTransform overall_transform(const InterferometerConfig& cfg);

/// K3_out = c . K and d(c)/d(phi).
struct K3OutCoefficients {
    Eigen::Vector3d value;
    Eigen::Vector3d phi_derivative;
};

K3OutCoefficients k3_out_coefficients(const InterferometerConfig& cfg);

/// Moments of M K given moments of K: mean -> M mean, S -> M S M^T.
KMoments transform_moments(const KMoments& m, const KVectorTransform& t);

struct GeneratorSigns {
    int boost = 0;  // s_b in exp(i s_b beta K1)
    int phase = 0;  // s_p in exp(i s_p phi K3)
};

/// Determined once per process by comparing both candidate signs against
/// L(-0.1) and R(0.1) on a coherent state.
GeneratorSigns detected_generator_signs();

/// Eigendecomposition of the truncated K1 (real symmetric tridiagonal). Every
/// FWM unitary on the same (k, dim) shares it.
class BoostPropagator {
public:
    BoostPropagator(BargmannIndex k, int dim);

    BargmannIndex k() const noexcept { return k_; }
    int dim() const noexcept { return dim_; }

    /// exp(i theta K1) psi
    Eigen::VectorXcd apply(double theta, const Eigen::VectorXcd& psi) const;
    Eigen::MatrixXcd matrix(double theta) const;

private:
    BargmannIndex k_;
    int dim_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

/// Shared, read-only propagators keyed by (k, dim). Safe for concurrent callers.
std::shared_ptr<const BoostPropagator> boost_propagator(BargmannIndex k, int dim);

/// FWM1 for gain beta (FWM2 is fwm_unitary(-beta, ...)).
OperatorMatrix fwm_unitary(double beta, BargmannIndex k, int dim,
                           std::optional<GeneratorSigns> signs = std::nullopt);
OperatorMatrix phase_unitary(double phi, BargmannIndex k, int dim,
                             std::optional<GeneratorSigns> signs = std::nullopt);

struct EvolutionOptions {
    int dim = 0;  // 0 selects evolution_dim()
    int dim_cap = 4096;
    double leak_tolerance = 1e-8;
    std::optional<GeneratorSigns> signs;  // override, for convention tests
};

/// Working dimension for evolving `state` through gain beta:
/// 4 cosh(2 beta) (support + 2k) + 32 rounded up to a multiple of 64,
/// clamped to [state.dim(), dim_cap].
int evolution_dim(const TruncatedState& state, double beta, int dim_cap = 4096);

/// Mass in the last max(8, dim/8) components, the region first reached when a
/// truncated evolution starts to feel the cut.
double boundary_mass(const Eigen::VectorXcd& psi);

/// Intermediate states of one pass through the interferometer.
struct EvolvedState {
    BargmannIndex k;
    Eigen::VectorXcd after_fwm1;
    Eigen::VectorXcd after_phase;
    Eigen::VectorXcd output;
    double leak = 0.0;
    GeneratorSigns signs;
};

/// Throws TruncationLeak when a stage's boundary mass exceeds the tolerance
/// or the norm drifts by more than 1e-8.
EvolvedState evolve(const TruncatedState& state, const InterferometerConfig& cfg,
                    const EvolutionOptions& opts = {});

/// U_FWM2 U_phase U_FWM1 |psi>.
TruncatedState apply_interferometer(const TruncatedState& state, const InterferometerConfig& cfg,
                                    const EvolutionOptions& opts = {});

/// N = 2k (1 + zeta^2)/(1 - zeta^2) cosh(beta) - 1 for real zeta.
double total_photons(const CoherentParams& params, double beta);

/// N = 2 <K3'> - 1 with K3' = cosh(beta) K3 - sinh(beta) K2; valid for any state.
double total_photons_from_moments(const KMoments& m, double beta);

}  // namespace su11
