#include "su11/two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

namespace {

Eigen::MatrixXcd annihilation(Eigen::Index dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

TwoModeOperatorSet build_two_mode_generators(int n0, int n_max) {
    if (n0 < 0) {
        throw Error(ErrorCode::InvalidArgument, "n0 must be nonnegative, got " + std::to_string(n0));
    }
    if (n_max < 2) {
        throw Error(ErrorCode::InvalidArgument, "n_max must be >= 2, got " + std::to_string(n_max));
    }

    TwoModeOperatorSet ops;
    ops.n0 = n0;
    ops.n_max = n_max;
    ops.mode1_dim = n_max + n0 + 1;
    ops.mode2_dim = n_max + 1;

    const Eigen::MatrixXcd a1 = annihilation(ops.mode1_dim);
    const Eigen::MatrixXcd a2 = annihilation(ops.mode2_dim);
    const Eigen::MatrixXcd id1 = Eigen::MatrixXcd::Identity(ops.mode1_dim, ops.mode1_dim);
    const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(ops.mode2_dim, ops.mode2_dim);

    const Eigen::MatrixXcd pair_create = kron(a1.adjoint(), a2.adjoint());
    const Eigen::MatrixXcd pair_destroy = kron(a1, a2);
    const Eigen::MatrixXcd n1 = kron(a1.adjoint() * a1, id2);
    const Eigen::MatrixXcd n2 = kron(id1, a2.adjoint() * a2);

    ops.kplus = pair_create;
    ops.kminus = pair_destroy;
    ops.k1 = 0.5 * (pair_create + pair_destroy);
    ops.k2 = (pair_create - pair_destroy) / complex(0.0, 2.0);
    ops.k3 = 0.5 * (n1 + kron(id1, a2 * a2.adjoint()));
    ops.number_difference = n1 - n2;
    return ops;
}

Eigen::MatrixXcd irrep_isometry(const TwoModeOperatorSet& ops) {
    const Eigen::Index rows = ops.mode1_dim * ops.mode2_dim;
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(rows, ops.n_max + 1);
    for (Eigen::Index n = 0; n <= ops.n_max; ++n) v(ops.index(n + ops.n0, n), n) = 1.0;
    return v;
}

OperatorMatrix pull_back(const TwoModeOperatorSet& ops, Generator which) {
    const Eigen::MatrixXcd v = irrep_isometry(ops);
    const Eigen::MatrixXcd* op = nullptr;
    switch (which) {
    case Generator::K1: op = &ops.k1; break;
    case Generator::K2: op = &ops.k2; break;
    case Generator::K3: op = &ops.k3; break;
    case Generator::Kplus: op = &ops.kplus; break;
    case Generator::Kminus: op = &ops.kminus; break;
    }
    return {ops.bargmann_index(), v.adjoint() * (*op) * v};
}

Eigen::MatrixXcd two_mode_casimir(const TwoModeOperatorSet& ops) {
    const Eigen::Index rows = ops.number_difference.rows();
    return 0.25 * ops.number_difference * ops.number_difference -
           0.25 * Eigen::MatrixXcd::Identity(rows, rows);
}

double irrep_embedding_check(int n0, int n_max) {
    const TwoModeOperatorSet ops = build_two_mode_generators(n0, n_max);
    const BargmannIndex k = ops.bargmann_index();
    const int dim = n_max + 1;
    double worst = 0.0;
    for (Generator g : {Generator::K1, Generator::K2, Generator::K3, Generator::Kplus}) {
        const Eigen::MatrixXcd diff = pull_back(ops, g).entries - generator_matrix(g, k, dim).entries;
        worst = std::max(worst, max_abs_block(diff, dim - 2));
    }
    return worst;
}

double number_difference_commutator(const TwoModeOperatorSet& ops) {
    const auto& d = ops.number_difference;
    double worst = 0.0;
    for (const Eigen::MatrixXcd* k : {&ops.k1, &ops.k2, &ops.k3}) {
        worst = std::max(worst, (d * (*k) - (*k) * d).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace su11
