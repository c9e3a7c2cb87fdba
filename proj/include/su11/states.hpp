#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "su11/core.hpp"

namespace su11 {

/// Normalized coefficient vector over |k,0>..|k,dim-1> plus an upper bound on
/// the probability mass that was discarded to truncate it.
class TruncatedState {
public:
    /// Normalizes `coefficients`. Throws InvalidArgument on a zero vector.
    TruncatedState(BargmannIndex k, Eigen::VectorXcd coefficients, double tail_bound);

    BargmannIndex k() const noexcept { return k_; }
    Eigen::Index dim() const noexcept { return coefficients_.size(); }
    const Eigen::VectorXcd& coefficients() const noexcept { return coefficients_; }
    double tail_bound() const noexcept { return tail_bound_; }

private:
    BargmannIndex k_;
    Eigen::VectorXcd coefficients_;
    double tail_bound_;
};

/// Perelomov coherent state |k,zeta>, |zeta| < 1. When built from a squeeze
/// parameter xi, zeta = (xi/|xi|) tanh|xi|.
struct CoherentParams {
    BargmannIndex k;
    complex zeta;
    std::optional<complex> xi;

    static CoherentParams from_squeeze(BargmannIndex k, complex xi);
};

/// Throws InvalidAmplitude unless |zeta| < 1 (and zeta matches xi if given).
void validate(const CoherentParams& params);

struct TruncationPolicy {
    double tolerance = 1e-12;
    int min_dim = 32;
    int max_dim = 4096;
};

/// Upper bound on sum_{n >= dim} |c_n|^2 for the untruncated coherent state.
double coherent_tail_bound(const CoherentParams& params, int dim);

/// Smallest dim >= policy.min_dim whose tail bound is below policy.tolerance.
/// Throws TailTooLarge if that exceeds policy.max_dim.
int coherent_dim(const CoherentParams& params, const TruncationPolicy& policy = {});

/// Coefficients from c_0 = (1-|zeta|^2)^k and c_{n+1}/c_n = zeta sqrt((n+2k)/(n+1)).
TruncatedState coherent_state(const CoherentParams& params, int dim, double tolerance = 1e-12);
TruncatedState coherent_state(const CoherentParams& params, const TruncationPolicy& policy = {});

/// |k,n> embedded in a dim-dimensional truncation.
TruncatedState fock_state(BargmannIndex k, int n, int dim);

/// First moments <K_i> and symmetrized second moments <(K_i K_j + K_j K_i)/2>.
struct KMoments {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    Eigen::Matrix3d second = Eigen::Matrix3d::Zero();

    Eigen::Matrix3d covariance() const { return second - mean * mean.transpose(); }
    double variance(int i) const { return second(i, i) - mean(i) * mean(i); }
};

/// Exact moments of the truncated state. Throws TailTooLarge when the state's
/// tail bound is not below `tolerance`.
KMoments moments(const TruncatedState& state, double tolerance = 1e-8);

struct CoherentClosedForm {
    double var_k2;
    double var_k3;
    double mean_k1;
};

CoherentClosedForm coherent_closed_form_moments(const CoherentParams& params);

enum class Branch { upper, lower };

/// K2-K3 intelligent states that are also coherent states:
///   lambda = +-i k sqrt(gamma^2 + 1),  zeta = 1 / (gamma +- sqrt(gamma^2 + 1)).
struct IntelligentParams {
    double gamma;
    Branch branch;
    complex lambda;
    double zeta;
};

IntelligentParams coherent_intelligent_params(double gamma, Branch branch, BargmannIndex k);

CoherentParams to_coherent(const IntelligentParams& params, BargmannIndex k);

/// ||(K2 + i gamma K3 - lambda)|psi>|| over components 0..dim-2, the range on
/// which the truncated state's image is unaffected by the cut.
double intelligent_residual(const TruncatedState& state, double gamma, complex lambda);

/// Delta K2 / Delta K3, signed by <K1> so the intelligent-state branch is
/// recovered. Throws DegenerateState when (Delta K3)^2 vanishes.
double gamma_from_state(const TruncatedState& state);

}  // namespace su11
