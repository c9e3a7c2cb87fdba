#pragma once

// Truncated matrices of the su(1,1) generators in the discrete-series basis
// |k,n>, n = 0..dim-1:
//
//   K3 |k,n>  = (n + k) |k,n>
//   K+ |k,n>  = sqrt((n + 1)(n + 2k)) |k,n+1>
//   K- = (K+)^dagger,  K1 = (K+ + K-)/2,  K2 = (K+ - K-)/(2i)
//
// With these conventions [K1,K2] = -iK3, [K2,K3] = iK1, [K3,K1] = iK2.

#include <compare>
#include <complex>

#include <Eigen/Dense>

namespace su11 {

using complex = std::complex<double>;

/// Discrete-series label k >= 1/2, stored doubled so half-integers compare
/// exactly. n0 = 2k - 1 is the photon-number difference of the two modes.
class BargmannIndex {
public:
    explicit BargmannIndex(int twice_k);

    static BargmannIndex from_photon_difference(int n0);

    int twice_k() const noexcept { return twice_k_; }
    double value() const noexcept { return 0.5 * twice_k_; }
    int photon_difference() const noexcept { return twice_k_ - 1; }

    auto operator<=>(const BargmannIndex&) const = default;

private:
    int twice_k_;
};

enum class Generator { K1, K2, K3, Kplus, Kminus };

/// Dense dim x dim operator on span{|k,0>, ..., |k,dim-1>}.
struct OperatorMatrix {
    BargmannIndex k;
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const noexcept { return entries.rows(); }
};

/// <k,n+1|K+|k,n>
double raising_element(BargmannIndex k, Eigen::Index n);

OperatorMatrix generator_matrix(Generator which, BargmannIndex k, int dim);

/// K3^2 - K1^2 - K2^2 from the truncated generators. Equal to k(k-1) on the
/// interior block 0..dim-2; the last diagonal entry carries the truncation.
OperatorMatrix casimir_matrix(BargmannIndex k, int dim);

enum class Block { interior, full };

/// Largest |entry| of [K1,K2]+iK3, [K2,K3]-iK1, [K3,K1]-iK2.
double commutator_residual(BargmannIndex k, int dim, Block block = Block::interior);

/// Applies a generator to a truncated coefficient vector without forming a
/// matrix. The result has one more entry than the input so that the image of
/// any vector supported on 0..dim-1 is represented exactly.
Eigen::VectorXcd apply_generator(Generator which, BargmannIndex k, const Eigen::VectorXcd& psi);

/// Max |entry| over rows/cols 0..last of a square matrix.
double max_abs_block(const Eigen::MatrixXcd& m, Eigen::Index last);

}  // namespace su11
