#pragma once

// Two-mode boson realization of su(1,1):
//   K1 = (a1^+ a2^+ + a1 a2)/2,  K2 = (a1^+ a2^+ - a1 a2)/(2i),  K3 = (a1^+ a1 + a2 a2^+)/2
// built from truncated single-mode ladder matrices. Used only as an
// independent check on the matrix elements in core.hpp.

#include <Eigen/Dense>

#include "su11/core.hpp"

namespace su11 {

struct TwoModeOperatorSet {
    int n0 = 0;
    int n_max = 0;
    Eigen::Index mode1_dim = 0;  // n_max + n0 + 1
    Eigen::Index mode2_dim = 0;  // n_max + 1
    Eigen::MatrixXcd k1;
    Eigen::MatrixXcd k2;
    Eigen::MatrixXcd k3;
    Eigen::MatrixXcd kplus;
    Eigen::MatrixXcd kminus;
    Eigen::MatrixXcd number_difference;  // a1^+ a1 - a2^+ a2

    /// Row of |n1>_1 |n2>_2 in the tensor-product basis.
    Eigen::Index index(Eigen::Index n1, Eigen::Index n2) const { return n1 * mode2_dim + n2; }
    BargmannIndex bargmann_index() const { return BargmannIndex::from_photon_difference(n0); }
};

TwoModeOperatorSet build_two_mode_generators(int n0, int n_max);

/// Columns are the images of |k,n> -> |n+n0>_1 |n>_2 for n = 0..n_max.
Eigen::MatrixXcd irrep_isometry(const TwoModeOperatorSet& ops);

/// V^+ K V for one generator, tagged with k = (n0+1)/2.
OperatorMatrix pull_back(const TwoModeOperatorSet& ops, Generator which);

/// (1/4)(a1^+ a1 - a2^+ a2)^2 - 1/4 on the tensor space.
Eigen::MatrixXcd two_mode_casimir(const TwoModeOperatorSet& ops);

/// Max deviation of the pulled-back K1, K2, K3, K+ from generator_matrix on
/// the interior block 0..n_max-1.
double irrep_embedding_check(int n0, int n_max);

/// Max |[a1^+ a1 - a2^+ a2, K_i]| over i = 1,2,3 and all entries.
double number_difference_commutator(const TwoModeOperatorSet& ops);

}  // namespace su11
