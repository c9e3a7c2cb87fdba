#include <doctest.h>

#include <cmath>

#include "su11/errors.hpp"
#include "su11/two_mode.hpp"

using namespace su11;

TEST_CASE("two-mode K3 on the vacuum is 1/2") {
    const auto ops = build_two_mode_generators(0, 2);
    const auto v = ops.index(0, 0);
    CHECK(ops.k3(v, v).real() == doctest::Approx(0.5));
}

TEST_CASE("K- = a1 a2 annihilates the two-mode vacuum") {
    for (int n_max : {2, 5, 9}) {
        const auto ops = build_two_mode_generators(0, n_max);
        CHECK(ops.kminus.col(ops.index(0, 0)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("number-difference Casimir is 3/4 on the n0 = 2 sector") {
    const auto ops = build_two_mode_generators(2, 4);
    const Eigen::MatrixXcd v = irrep_isometry(ops);
    const Eigen::MatrixXcd pulled = v.adjoint() * two_mode_casimir(ops) * v;
    for (Eigen::Index n = 0; n < pulled.rows(); ++n) CHECK(pulled(n, n).real() == doctest::Approx(0.75));
    CHECK((pulled - 0.75 * Eigen::MatrixXcd::Identity(pulled.rows(), pulled.cols())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two-mode Casimir K3^2 - K1^2 - K2^2 matches (n1-n2)^2/4 - 1/4 inside the sector") {
    const auto ops = build_two_mode_generators(3, 10);
    const Eigen::MatrixXcd direct = ops.k3 * ops.k3 - ops.k1 * ops.k1 - ops.k2 * ops.k2;
    const Eigen::MatrixXcd v = irrep_isometry(ops);
    const Eigen::MatrixXcd lhs = v.adjoint() * direct * v;
    const Eigen::MatrixXcd rhs = v.adjoint() * two_mode_casimir(ops) * v;
    CHECK(max_abs_block(lhs - rhs, ops.n_max - 2) < 1e-12);
}

TEST_CASE("embedding reproduces the single-index matrices") {
    for (int n0 = 0; n0 <= 3; ++n0) CHECK(irrep_embedding_check(n0, 12) < 1e-12);
    CHECK(build_two_mode_generators(3, 12).bargmann_index() == BargmannIndex(4));  // k = 2
}

TEST_CASE("K+ element at n = 0 for n0 = 1 is sqrt(2) in both constructions") {
    const auto ops = build_two_mode_generators(1, 12);
    // a1^+ a2^+ |1>|0> = sqrt(2) sqrt(1) |2>|1>
    CHECK(ops.kplus(ops.index(2, 1), ops.index(1, 0)).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(pull_back(ops, Generator::Kplus).entries(1, 0).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(generator_matrix(Generator::Kplus, BargmannIndex(2), 13).entries(1, 0).real() ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("n1 - n2 commutes with every generator") {
    for (int n0 = 0; n0 <= 3; ++n0) CHECK(number_difference_commutator(build_two_mode_generators(n0, 8)) < 1e-12);
}

TEST_CASE("two-mode matrices are hermitian") {
    const auto ops = build_two_mode_generators(2, 6);
    CHECK((ops.k1 - ops.k1.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops.k2 - ops.k2.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((ops.k3 - ops.k3.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_two_mode_generators rejects bad sizes") {
    CHECK_THROWS_AS(build_two_mode_generators(-1, 4), Error);
    CHECK_THROWS_AS(build_two_mode_generators(0, 1), Error);
}
