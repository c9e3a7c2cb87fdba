#include "su11/core.hpp"

#include <cmath>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

namespace {

constexpr complex kI{0.0, 1.0};

void require_dim(int dim, int minimum, const char* what) {
    if (dim < minimum) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " requires dim >= " + std::to_string(minimum) + ", got " +
                        std::to_string(dim));
    }
}

Eigen::MatrixXcd raising(BargmannIndex k, int dim) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 0; n + 1 < dim; ++n) m(n + 1, n) = raising_element(k, n);
    return m;
}

}  // namespace

BargmannIndex::BargmannIndex(int twice_k) : twice_k_(twice_k) {
    if (twice_k < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "Bargmann index needs 2k >= 1, got 2k = " + std::to_string(twice_k));
    }
}

BargmannIndex BargmannIndex::from_photon_difference(int n0) {
    if (n0 < 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "photon-number difference must be nonnegative, got " + std::to_string(n0));
    }
    return BargmannIndex(n0 + 1);
}

double raising_element(BargmannIndex k, Eigen::Index n) {
    return std::sqrt(static_cast<double>(n + 1) * static_cast<double>(n + k.twice_k()));
}

OperatorMatrix generator_matrix(Generator which, BargmannIndex k, int dim) {
    require_dim(dim, 2, "generator_matrix");
    const Eigen::MatrixXcd up = raising(k, dim);
    Eigen::MatrixXcd m;
    switch (which) {
    case Generator::Kplus: m = up; break;
    case Generator::Kminus: m = up.adjoint(); break;
    case Generator::K1: m = 0.5 * (up + up.adjoint()); break;
    case Generator::K2: m = (up - up.adjoint()) / (2.0 * kI); break;
    case Generator::K3: {
        m = Eigen::MatrixXcd::Zero(dim, dim);
        for (Eigen::Index n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n) + k.value();
        break;
    }
    }
    return {k, std::move(m)};
}

OperatorMatrix casimir_matrix(BargmannIndex k, int dim) {
    require_dim(dim, 3, "casimir_matrix");
    const auto k1 = generator_matrix(Generator::K1, k, dim).entries;
    const auto k2 = generator_matrix(Generator::K2, k, dim).entries;
    const auto k3 = generator_matrix(Generator::K3, k, dim).entries;
    return {k, k3 * k3 - k1 * k1 - k2 * k2};
}

double max_abs_block(const Eigen::MatrixXcd& m, Eigen::Index last) {
    return m.topLeftCorner(last + 1, last + 1).cwiseAbs().maxCoeff();
}

double commutator_residual(BargmannIndex k, int dim, Block block) {
    require_dim(dim, 3, "commutator_residual");
    const auto k1 = generator_matrix(Generator::K1, k, dim).entries;
    const auto k2 = generator_matrix(Generator::K2, k, dim).entries;
    const auto k3 = generator_matrix(Generator::K3, k, dim).entries;

    const Eigen::MatrixXcd r12 = k1 * k2 - k2 * k1 + kI * k3;
    const Eigen::MatrixXcd r23 = k2 * k3 - k3 * k2 - kI * k1;
    const Eigen::MatrixXcd r31 = k3 * k1 - k1 * k3 - kI * k2;

    const Eigen::Index last = block == Block::interior ? dim - 2 : dim - 1;
    return std::max({max_abs_block(r12, last), max_abs_block(r23, last), max_abs_block(r31, last)});
}

Eigen::VectorXcd apply_generator(Generator which, BargmannIndex k, const Eigen::VectorXcd& psi) {
    const Eigen::Index d = psi.size();
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(d + 1);
    Eigen::VectorXcd down = Eigen::VectorXcd::Zero(d + 1);
    if (which != Generator::K3) {
        for (Eigen::Index n = 0; n < d; ++n) {
            const double r = raising_element(k, n);
            up(n + 1) = r * psi(n);
            if (n + 1 < d) down(n) = r * psi(n + 1);
        }
    }
    switch (which) {
    case Generator::Kplus: return up;
    case Generator::Kminus: return down;
    case Generator::K1: return 0.5 * (up + down);
    case Generator::K2: return (up - down) / (2.0 * kI);
    case Generator::K3: {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d + 1);
        for (Eigen::Index n = 0; n < d; ++n) out(n) = (static_cast<double>(n) + k.value()) * psi(n);
        return out;
    }
    }
    return up;
}

}  // namespace su11
