#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "su11/errors.hpp"
#include "su11/states.hpp"

using namespace su11;
using std::numbers::pi;

namespace {

/// Direct Gamma-function evaluation of the coherent-state series, independent
/// of the ratio recursion used by coherent_state().
complex series_coefficient(double k, complex zeta, int n) {
    const double log_mag = k * std::log1p(-std::norm(zeta)) +
                           0.5 * (std::lgamma(n + 2 * k) - std::lgamma(n + 1.0) - std::lgamma(2 * k));
    return std::exp(log_mag) * std::pow(zeta, n);
}

TruncationPolicy precise() {
    TruncationPolicy p;
    p.tolerance = 1e-18;
    return p;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("zeta = 0 gives the lowest-weight state") {
    const auto s = coherent_state({BargmannIndex(1), 0.0, std::nullopt}, 8);
    CHECK(s.coefficients()(0) == complex(1.0));
    CHECK(s.coefficients().tail(7).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.tail_bound() == 0.0);
}

TEST_CASE("coherent coefficients at k = 1/2, zeta = 0.5") {
    const auto s = coherent_state({BargmannIndex(1), 0.5, std::nullopt}, 40);
    CHECK(s.coefficients()(0).real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(s.coefficients()(1).real() == doctest::Approx(std::sqrt(0.75) * 0.5).epsilon(1e-12));
    CHECK(s.coefficients().squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ratio recursion matches the Gamma-function series") {
    for (int tk : {1, 2, 5, 13}) {
        for (complex z : {complex(0.3, 0.0), complex(-0.2, 0.5), std::polar(0.7, 2.0)}) {
            const auto s = coherent_state({BargmannIndex(tk), z, std::nullopt}, precise());
            for (int n = 0; n < std::min<int>(40, s.dim()); ++n) {
                CHECK(std::abs(s.coefficients()(n) - series_coefficient(0.5 * tk, z, n)) < 1e-13);
            }
        }
    }
}

TEST_CASE("large k and n stay finite") {
    const auto s = coherent_state({BargmannIndex(400), 0.9, std::nullopt}, TruncationPolicy{1e-12, 32, 8192});
    CHECK(s.coefficients().allFinite());
    CHECK(s.coefficients().squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("tail bound is exact for k = 1/2 and an upper bound in general") {
    const double z = 0.6;
    // k = 1/2: |c_n|^2 = (1 - z^2) z^(2n), so the tail from dim is z^(2 dim).
    CHECK(coherent_tail_bound({BargmannIndex(1), z, std::nullopt}, 30) ==
          doctest::Approx(std::pow(z, 60)).epsilon(1e-9));
    for (int tk : {2, 4, 7}) {
        const CoherentParams p{BargmannIndex(tk), z, std::nullopt};
        for (int dim : {20, 40, 60}) {
            double exact = 0.0;
            for (int n = dim; n < dim + 2000; ++n) exact += std::norm(series_coefficient(0.5 * tk, z, n));
            const double bound = coherent_tail_bound(p, dim);
            CHECK(bound >= exact * (1 - 1e-12));
            CHECK(bound <= exact * (1 + 1e-6) + 1e-20);
        }
    }
}

TEST_CASE("automatic dimension meets the tolerance and respects the floor and cap") {
    const CoherentParams p{BargmannIndex(3), 0.5, std::nullopt};
    const int dim = coherent_dim(p);
    CHECK(dim >= 32);
    CHECK(coherent_tail_bound(p, dim) < 1e-12);
    CHECK(code_of([&] { coherent_dim({BargmannIndex(1), 0.95, std::nullopt}, TruncationPolicy{1e-12, 32, 64}); }) ==
          ErrorCode::TailTooLarge);
    CHECK(code_of([&] { coherent_state({BargmannIndex(1), 0.9, std::nullopt}, 10); }) == ErrorCode::TailTooLarge);
}

TEST_CASE("amplitude validation") {
    CHECK(code_of([&] { coherent_state({BargmannIndex(1), 1.0, std::nullopt}, 10); }) == ErrorCode::InvalidAmplitude);
    CHECK(code_of([&] { coherent_closed_form_moments({BargmannIndex(1), complex(0.0, -1.2), std::nullopt}); }) ==
          ErrorCode::InvalidAmplitude);
    const auto p = CoherentParams::from_squeeze(BargmannIndex(2), std::polar(0.8, 0.3));
    CHECK(std::abs(p.zeta - std::polar(std::tanh(0.8), 0.3)) < 1e-15);
    CHECK_NOTHROW(validate(p));
    CHECK(code_of([&] { validate({BargmannIndex(2), 0.1, complex(0.8)}); }) == ErrorCode::InvalidAmplitude);
}

TEST_CASE("moments of k = 1/2, zeta = 0.5") {
    const KMoments m = moments(coherent_state({BargmannIndex(1), 0.5, std::nullopt}, precise()));
    CHECK(m.mean(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));     // 2k Re zeta / (1 - |zeta|^2)
    CHECK(m.variance(2) == doctest::Approx(0.25 / 0.5625).epsilon(1e-12));  // 2k |zeta|^2 / (1 - |zeta|^2)^2
    CHECK(m.variance(1) == doctest::Approx(0.25).epsilon(1e-12));         // k/2
}

TEST_CASE("<K3> of k = 3/2, zeta = 0.5 is 2.5") {
    const auto s = coherent_state({BargmannIndex(3), 0.5, std::nullopt}, precise());
    double brute = 0.0;
    for (Eigen::Index n = 0; n < s.dim(); ++n) brute += (n + 1.5) * std::norm(s.coefficients()(n));
    CHECK(brute == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(moments(s).mean(2) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("closed-form moment examples") {
    // 1 * (1 + 0.0081 + 0.18) / (2 * 0.8281)
    const auto a = coherent_closed_form_moments({BargmannIndex(2), complex(0.0, 0.3), std::nullopt});
    CHECK(a.var_k2 == doctest::Approx(0.71736505252988769).epsilon(1e-13));
    const auto b = coherent_closed_form_moments({BargmannIndex(4), 0.4, std::nullopt});
    CHECK(b.mean_k1 == doctest::Approx(1.6 / 0.84).epsilon(1e-14));
    for (int tk : {1, 3, 8}) CHECK(coherent_closed_form_moments({BargmannIndex(tk), 0.0, std::nullopt}).var_k3 == 0.0);

    // Cross-check the two examples against brute force.
    const KMoments ma = moments(coherent_state({BargmannIndex(2), complex(0.0, 0.3), std::nullopt}, precise()));
    CHECK(ma.variance(1) == doctest::Approx(a.var_k2).epsilon(1e-12));
    const KMoments mb = moments(coherent_state({BargmannIndex(4), 0.4, std::nullopt}, precise()));
    CHECK(mb.mean(0) == doctest::Approx(b.mean_k1).epsilon(1e-12));
}

TEST_CASE("property: closed forms agree with brute force for |zeta| <= 0.7") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> radius(0.0, 0.7), angle(-pi, pi);
    std::uniform_int_distribution<int> tk(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
        const CoherentParams p{BargmannIndex(tk(rng)), std::polar(radius(rng), angle(rng)), std::nullopt};
        const KMoments m = moments(coherent_state(p, precise()));
        const CoherentClosedForm c = coherent_closed_form_moments(p);
        CHECK(std::abs(m.variance(1) - c.var_k2) < 1e-9);
        CHECK(std::abs(m.variance(2) - c.var_k3) < 1e-9);
        CHECK(std::abs(m.mean(0) - c.mean_k1) < 1e-9);
    }
}

TEST_CASE("uncertainty relation: equality for real zeta, strict otherwise") {
    for (int tk : {1, 2, 3, 5}) {
        const BargmannIndex k(tk);
        for (double z : {-0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.7}) {
            const KMoments m = moments(coherent_state({k, z, std::nullopt}, precise()));
            CHECK(std::abs(m.variance(1) * m.variance(2) - 0.25 * m.mean(0) * m.mean(0)) < 1e-10);
            CHECK(std::abs(m.variance(1) - 0.5 * k.value()) < 1e-12);
        }
        for (double theta : {0.3, pi / 4, pi / 2, 2.5}) {
            for (double r : {0.2, 0.5}) {
                if (r * std::sin(theta) <= 0.05) continue;
                const KMoments m = moments(coherent_state({k, std::polar(r, theta), std::nullopt}, precise()));
                CHECK(m.variance(1) * m.variance(2) - 0.25 * m.mean(0) * m.mean(0) > 0.0);
            }
        }
    }
}

TEST_CASE("coherent-intelligent parameters") {
    const BargmannIndex half(1);
    const auto up = coherent_intelligent_params(0.75, Branch::upper, half);
    CHECK(up.zeta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(up.lambda.real() == 0.0);
    CHECK(up.lambda.imag() == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(coherent_intelligent_params(1.0, Branch::upper, half).zeta == doctest::Approx(std::sqrt(2.0) - 1.0));
    const auto down = coherent_intelligent_params(-0.75, Branch::lower, half);
    CHECK(down.zeta == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(down.lambda.imag() == doctest::Approx(-0.625).epsilon(1e-15));

    CHECK(code_of([&] { coherent_intelligent_params(0.75, Branch::lower, half); }) == ErrorCode::BranchMismatch);
    CHECK(code_of([&] { coherent_intelligent_params(-2.0, Branch::upper, half); }) == ErrorCode::BranchMismatch);
    CHECK(code_of([&] { coherent_intelligent_params(0.0, Branch::upper, half); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("intelligent residual") {
    const BargmannIndex half(1);
    const auto ip = coherent_intelligent_params(0.75, Branch::upper, half);
    CHECK(intelligent_residual(coherent_state(to_coherent(ip, half), 40), 0.75, ip.lambda) < 1e-8);

    const auto off = coherent_state({half, complex(0.0, 0.5), std::nullopt}, 60);
    CHECK(intelligent_residual(off, 0.75, ip.lambda) > 1e-3);

    // (K2 + i gamma K3 - i gamma k)|k,0> = K2|k,0> = sqrt(2k)/(2i) |k,1>
    for (int tk : {1, 4}) {
        const BargmannIndex k(tk);
        const auto vac = fock_state(k, 0, 8);
        CHECK(intelligent_residual(vac, 3.0, complex(0.0, 3.0 * k.value())) ==
              doctest::Approx(std::sqrt(2.0 * k.value()) / 2.0));
    }
}

TEST_CASE("gamma_from_state") {
    CHECK(gamma_from_state(coherent_state({BargmannIndex(1), 0.5, std::nullopt}, precise())) ==
          doctest::Approx(0.75).epsilon(1e-10));
    CHECK(gamma_from_state(coherent_state({BargmannIndex(4), 0.41421, std::nullopt}, precise())) ==
          doctest::Approx((1 - 0.41421 * 0.41421) / (2 * 0.41421)).epsilon(1e-10));
    CHECK(std::abs(gamma_from_state(coherent_state({BargmannIndex(4), std::sqrt(2.0) - 1, std::nullopt}, precise())) - 1.0) < 1e-9);
    CHECK(code_of([&] { gamma_from_state(coherent_state({BargmannIndex(3), 0.0, std::nullopt}, 32)); }) ==
          ErrorCode::DegenerateState);
}

TEST_CASE("property: gamma round trip on both branches") {
    for (int tk : {1, 4, 7}) {
        const BargmannIndex k(tk);
        for (double gamma : {0.3, 0.5, 0.75, 1.0, 2.0, 4.0, -0.4, -0.75, -2.0, -3.5}) {
            const auto ip = coherent_intelligent_params(gamma, gamma > 0 ? Branch::upper : Branch::lower, k);
            const auto s = coherent_state(to_coherent(ip, k), precise());
            CHECK(std::abs(gamma_from_state(s) - gamma) < 1e-8);
            CHECK(intelligent_residual(s, gamma, ip.lambda) < 1e-8);
        }
    }
}

TEST_CASE("moments refuse states with a large tail") {
    const TruncatedState rough(BargmannIndex(1), Eigen::VectorXcd::Ones(4), 1e-3);
    CHECK(code_of([&] { moments(rough); }) == ErrorCode::TailTooLarge);
}
