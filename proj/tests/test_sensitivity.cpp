#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "su11/errors.hpp"
#include "su11/sensitivity.hpp"

using namespace su11;
using std::numbers::pi;

namespace {

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

double sh2(double b) { return std::sinh(b) * std::sinh(b); }

}  // namespace

TEST_CASE("vacuum closed form") {
    // [1 + cosh^2(1)] / sinh^2(1)
    CHECK(delta_phi_vacuum(1.0, pi / 2).delta_phi_sq == doctest::Approx(2.44812).epsilon(1e-5));
    CHECK(delta_phi_vacuum(1.0, 0.0).delta_phi_sq == doctest::Approx(1.0 / sh2(1.0)).epsilon(1e-15));
    CHECK(delta_phi_vacuum(1.0, 0.0).delta_phi_sq == doctest::Approx(0.72406).epsilon(1e-5));
    CHECK(std::isinf(delta_phi_vacuum(1.0, pi).delta_phi_sq) == false);
    CHECK(delta_phi_vacuum(1.0, 1e-6).delta_phi_sq == doctest::Approx(1.0 / sh2(1.0)).epsilon(1e-6));
    CHECK(code_of([] { delta_phi_vacuum(0.0, 0.3); }) == ErrorCode::ZeroGain);
    CHECK(delta_phi_vacuum(1.0, pi / 2).method == Method::vacuum_closed);
}

TEST_CASE("numeric route on the vacuum reproduces the closed form") {
    const KMoments m = moments(fock_state(BargmannIndex(1), 0, 8));
    for (double b : {0.3, 1.0, 2.0}) {
        for (double p : {0.05, 0.3, 1.0, pi / 2, 2.5}) {
            CHECK(delta_phi_numeric(m, {b, p}).delta_phi_sq ==
                  doctest::Approx(delta_phi_vacuum(b, p).delta_phi_sq).epsilon(1e-10));
        }
    }
    CHECK(code_of([&] { delta_phi_numeric(m, {1.0, 0.0}); }) == ErrorCode::IndeterminatePoint);
}

TEST_CASE("lowest-weight input is the vacuum value over 2k") {
    const BargmannIndex k(3);
    const KMoments m = moments(fock_state(k, 0, 8));
    const double numeric = delta_phi_numeric(m, {1.0, 0.1}).delta_phi_sq;
    CHECK(numeric == doctest::Approx(delta_phi_vacuum(1.0, 0.1).delta_phi_sq / 3.0).epsilon(1e-10));
    CHECK(delta_phi_lowest_weight(k, 1.0, 0.1).delta_phi_sq == doctest::Approx(numeric).epsilon(1e-12));
}

TEST_CASE("phi -> 0 limit") {
    // Fock input: 0/0, extrapolated.
    const KMoments vac = moments(fock_state(BargmannIndex(1), 0, 8));
    CHECK(delta_phi_phi_zero_limit(vac, 1.0).delta_phi_sq == doctest::Approx(1.0 / sh2(1.0)).epsilon(1e-6));
    // Coherent input with <K1> != 0: evaluated at phi = 0.
    const auto s = coherent_state({BargmannIndex(2), 0.3, std::nullopt}, precise());
    CHECK(delta_phi_phi_zero_limit(moments(s), 1.0).delta_phi_sq ==
          doctest::Approx(1.0 / (2.0 * sh2(1.0))).epsilon(1e-10));
    // <K1> = 0 but Var K3 > 0: no phase information at phi = 0.
    const auto imag = coherent_state({BargmannIndex(2), complex(0.0, 0.4), std::nullopt}, precise());
    CHECK(std::isinf(delta_phi_phi_zero_limit(moments(imag), 1.0).delta_phi_sq));
    CHECK(code_of([&] { delta_phi_phi_zero_limit(vac, 0.0); }) == ErrorCode::ZeroGain);
}

TEST_CASE("extrapolation removes the quadratic term") {
    const auto f = [](double x) { return 3.0 + 0.5 * x + 2.0 * x * x + 0.1 * x * x * x * x; };
    // 0.1 x^4 leaves -0.1 h^2 h^2 / 4 after one Richardson step
    CHECK(extrapolate_to_phi_zero(f, 1e-2) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("coherent closed form is independent of zeta and halves with k") {
    for (int tk : {1, 2, 6, 12}) {
        for (double z : {0.1, 0.3, 0.5, -0.4}) {
            CHECK(delta_phi_coherent({BargmannIndex(tk), z, std::nullopt}, 1.0).delta_phi_sq ==
                  doctest::Approx(1.0 / (tk * sh2(1.0))).epsilon(1e-12));
        }
    }
    CHECK(delta_phi_coherent({BargmannIndex(1), 0.3, std::nullopt}, 1.0).delta_phi_sq ==
          doctest::Approx(0.72406).epsilon(1e-5));
    CHECK(delta_phi_coherent({BargmannIndex(6), 0.3, std::nullopt}, 1.0).delta_phi_sq ==
          doctest::Approx(0.12068).epsilon(1e-4));
    CHECK(delta_phi_coherent({BargmannIndex(1), 0.0, std::nullopt}, 1.0).delta_phi_sq ==
          doctest::Approx(1.0 / sh2(1.0)));
    CHECK(std::isinf(delta_phi_coherent({BargmannIndex(1), std::polar(0.5, pi / 2), std::nullopt}, 1.0).delta_phi_sq));
}

TEST_CASE("intelligent closed forms") {
    CHECK(delta_phi_coherent_intelligent(BargmannIndex(1), 1.0).delta_phi_sq == doctest::Approx(0.72406).epsilon(1e-5));
    CHECK(delta_phi_coherent_intelligent(BargmannIndex(6), 1.0).delta_phi_sq == doctest::Approx(0.12068).epsilon(1e-4));
    CHECK(delta_phi_coherent_intelligent(BargmannIndex(1), 1.5).delta_phi_sq ==
          doctest::Approx(1.0 / sh2(1.5)).epsilon(1e-14));
    // (Delta K2)^2 = k/2 turns the general form into the coherent-intelligent one.
    for (int tk : {1, 3, 8}) {
        CHECK(delta_phi_intelligent(0.25 * tk, 0.7).delta_phi_sq ==
              doctest::Approx(delta_phi_coherent_intelligent(BargmannIndex(tk), 0.7).delta_phi_sq).epsilon(1e-14));
    }
    CHECK(code_of([] { delta_phi_intelligent(0.0, 1.0); }) == ErrorCode::NonpositiveVariance);
    CHECK(code_of([] { delta_phi_coherent_intelligent(BargmannIndex(1), 0.0); }) == ErrorCode::ZeroGain);
}

TEST_CASE("photon budget") {
    CHECK(delta_phi_vs_photons(BargmannIndex(1), 0.0, 1.0).delta_phi_sq == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(delta_phi_vacuum_limit(1.0).delta_phi_sq == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(delta_phi_vacuum_limit(4.0).delta_phi_sq == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    CHECK(delta_phi_vacuum_limit(10.0).delta_phi_sq == doctest::Approx(1.0 / 120.0).epsilon(1e-14));
    CHECK(code_of([] { beta_for_photons(BargmannIndex(3), 0.0, 2.0); }) == ErrorCode::InfeasibleBudget);
    CHECK(code_of([] { delta_phi_vs_photons(BargmannIndex(3), 0.0, 2.0); }) == ErrorCode::InfeasibleBudget);
    CHECK(code_of([] { delta_phi_vacuum_limit(0.0); }) == ErrorCode::NonpositivePhotons);
    double prev = 0.0;
    for (double n : {1e2, 1e3, 1e4, 1e5}) {
        const double scaled = n * n * delta_phi_vacuum_limit(n).delta_phi_sq;
        CHECK(scaled > prev);
        CHECK(scaled < 1.0);
        prev = scaled;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("property: photon budget round trip") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> tk(1, 6);
    std::uniform_real_distribution<double> zeta(-0.9, 0.9), beta(0.05, 3.0);
    for (int i = 0; i < 300; ++i) {
        const BargmannIndex k(tk(rng));
        const double z = zeta(rng), b = beta(rng);
        const double n = total_photons({k, z, std::nullopt}, b);
        CHECK(beta_for_photons(k, z, n) == doctest::Approx(b).epsilon(1e-10));
        // Sensitivity at fixed N equals the coherent value at the gain that spends N.
        CHECK(delta_phi_vs_photons(k, z, n).delta_phi_sq ==
              doctest::Approx(delta_phi_coherent_intelligent(k, b).delta_phi_sq).epsilon(1e-9));
    }
}

TEST_CASE("property: vacuum-limit formula equals the budget form at k = 1/2, zeta = 0") {
    for (double n : {0.5, 1.0, 2.0, 5.0, 10.0, 137.0}) {
        CHECK(delta_phi_vs_photons(BargmannIndex(1), 0.0, n).delta_phi_sq ==
              doctest::Approx(delta_phi_vacuum_limit(n).delta_phi_sq).epsilon(1e-12));
    }
}

TEST_CASE("property: closed forms agree with the numeric route near phi = 0") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> tk(1, 12);
    std::uniform_real_distribution<double> zeta(0.0, 0.5), beta(0.3, 1.5);
    for (int i = 0; i < 30; ++i) {
        const CoherentParams p{BargmannIndex(tk(rng)), zeta(rng), std::nullopt};
        const double b = beta(rng);
        const KMoments m = moments(coherent_state(p, precise()));
        const double numeric = p.zeta == 0.0 ? delta_phi_phi_zero_limit(m, b).delta_phi_sq
                                             : delta_phi_numeric(m, {b, 1e-3}).delta_phi_sq;
        const double closed = delta_phi_coherent(p, b).delta_phi_sq;
        CHECK(std::abs(numeric - closed) <= 1e-4 * closed);
        CHECK(closed == doctest::Approx(delta_phi_coherent_intelligent(p.k, b).delta_phi_sq).epsilon(1e-10));
    }
}

TEST_CASE("property: numeric slope matches a finite difference of <K3_out>") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> phi(0.1, 3.0), beta(0.2, 1.5);
    const auto s = coherent_state({BargmannIndex(3), complex(0.2, 0.3), std::nullopt}, precise());
    const KMoments m = moments(s);
    for (int i = 0; i < 50; ++i) {
        const double b = beta(rng), p = phi(rng), h = 1e-5;
        const auto mean_out = [&](double x) { return k3_out_coefficients({b, x}).value.dot(m.mean); };
        const double fd = (mean_out(p + h) - mean_out(p - h)) / (2 * h);
        const auto r = delta_phi_numeric(m, {b, p});
        CHECK(std::sqrt(r.denominator) == doctest::Approx(std::abs(fd)).epsilon(1e-6));
    }
}

TEST_CASE("evolved route agrees with the Heisenberg route") {
    for (int tk : {1, 4}) {
        const auto s = coherent_state({BargmannIndex(tk), 0.3, std::nullopt}, precise());
        for (double p : {0.3, 1.0}) {
            const InterferometerConfig cfg{0.8, p};
            const double a = delta_phi_evolved(s, cfg).delta_phi_sq;
            const double b = delta_phi_numeric(moments(s), cfg).delta_phi_sq;
            CHECK(a == doctest::Approx(b).epsilon(1e-6));
        }
    }
}

TEST_CASE("optimality: real zeta is optimal over the phase of zeta") {
    // At fixed |zeta| the closed form is minimised by a real amplitude.
    for (int tk : {1, 3}) {
        for (double r : {0.2, 0.5}) {
            const double best = delta_phi_coherent({BargmannIndex(tk), r, std::nullopt}, 1.0).delta_phi_sq;
            for (double theta = 0.05; theta < pi / 2; theta += 0.05) {
                CHECK(delta_phi_coherent({BargmannIndex(tk), std::polar(r, theta), std::nullopt}, 1.0).delta_phi_sq >=
                      best * (1 - 1e-12));
            }
        }
    }
}

TEST_CASE("optimality: phi = 0 is the best operating point for the vacuum") {
    for (double b : {0.5, 1.0, 2.0}) {
        const double at_zero = delta_phi_vacuum(b, 0.0).delta_phi_sq;
        for (double p = 0.01; p < pi; p += 0.01) CHECK(delta_phi_vacuum(b, p).delta_phi_sq >= at_zero * (1 - 1e-12));
    }
}
