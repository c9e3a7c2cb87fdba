#include "su11/states.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kTailTermFloor = 1e-20;
constexpr long kTailWalkLimit = 50'000'000;

/// Walks |c_n|^2 of a coherent state in log space.
class CoherentTerms {
public:
    explicit CoherentTerms(const CoherentParams& p)
        : abs2_(std::norm(p.zeta)), twice_k_(p.k.twice_k()) {
        log_term_ = 2.0 * p.k.value() * std::log1p(-abs2_);
    }

    long n() const noexcept { return n_; }
    double term() const { return std::exp(log_term_); }

    /// |c_{n+1}|^2 / |c_n|^2, nonincreasing in n because 2k >= 1.
    double ratio() const {
        return abs2_ * static_cast<double>(n_ + twice_k_) / static_cast<double>(n_ + 1);
    }

    void advance() {
        log_term_ += std::log(ratio());
        ++n_;
    }

private:
    double abs2_;
    int twice_k_;
    double log_term_;
    long n_ = 0;
};

void require_tail(const TruncatedState& state, double tolerance) {
    if (!(state.tail_bound() < tolerance)) {
        throw Error(ErrorCode::TailTooLarge, "state tail bound " + std::to_string(state.tail_bound()) +
                                                 " is not below " + std::to_string(tolerance));
    }
}

Eigen::VectorXcd padded(const Eigen::VectorXcd& psi) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size() + 1);
    out.head(psi.size()) = psi;
    return out;
}

}  // namespace

TruncatedState::TruncatedState(BargmannIndex k, Eigen::VectorXcd coefficients, double tail_bound)
    : k_(k), coefficients_(std::move(coefficients)), tail_bound_(tail_bound) {
    const double norm = coefficients_.norm();
    if (coefficients_.size() == 0 || !(norm > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty or zero state");
    }
    coefficients_ /= norm;
}

CoherentParams CoherentParams::from_squeeze(BargmannIndex k, complex xi) {
    const double r = std::abs(xi);
    const complex zeta = r == 0.0 ? complex(0.0) : (xi / r) * std::tanh(r);
    return {k, zeta, xi};
}

void validate(const CoherentParams& params) {
    const double r = std::abs(params.zeta);
    if (!(r < 1.0)) {
        throw Error(ErrorCode::InvalidAmplitude,
                    "coherent amplitude needs |zeta| < 1, got " + std::to_string(r));
    }
    if (params.xi) {
        const double s = std::abs(*params.xi);
        const complex expected = s == 0.0 ? complex(0.0) : (*params.xi / s) * std::tanh(s);
        if (std::abs(params.zeta - expected) >= 1e-12) {
            throw Error(ErrorCode::InvalidAmplitude, "zeta does not match (xi/|xi|) tanh|xi|");
        }
    }
}

double coherent_tail_bound(const CoherentParams& params, int dim) {
    validate(params);
    if (params.zeta == 0.0) return 0.0;
    CoherentTerms walk(params);
    while (walk.n() < dim) walk.advance();

    double sum = 0.0;
    for (long steps = 0; steps < kTailWalkLimit; ++steps) {
        const double t = walk.term();
        const double r = walk.ratio();
        if (r < 1.0 && t < kTailTermFloor) {
            // Ratios never increase past this point, so the rest is dominated by a geometric series.
            return sum + t / (1.0 - r);
        }
        sum += t;
        walk.advance();
    }
    return std::numeric_limits<double>::infinity();
}

int coherent_dim(const CoherentParams& params, const TruncationPolicy& policy) {
    validate(params);
    if (params.zeta == 0.0) return policy.min_dim;
    CoherentTerms walk(params);
    while (walk.n() <= policy.max_dim) {
        const double r = walk.ratio();
        if (walk.n() >= policy.min_dim && r < 1.0 && walk.term() / (1.0 - r) < policy.tolerance) {
            return static_cast<int>(walk.n());
        }
        walk.advance();
    }
    throw Error(ErrorCode::TailTooLarge,
                "coherent state with |zeta| = " + std::to_string(std::abs(params.zeta)) +
                    " needs more than " + std::to_string(policy.max_dim) + " levels");
}

TruncatedState coherent_state(const CoherentParams& params, int dim, double tolerance) {
    validate(params);
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be positive");

    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
    if (params.zeta == 0.0) {
        c(0) = 1.0;
        return TruncatedState(params.k, std::move(c), 0.0);
    }

    const double log_abs = std::log(std::abs(params.zeta));
    const double arg = std::arg(params.zeta);
    const double twice_k = params.k.twice_k();
    double log_mag = params.k.value() * std::log1p(-std::norm(params.zeta));
    for (Eigen::Index n = 0; n < dim; ++n) {
        c(n) = std::polar(std::exp(log_mag), static_cast<double>(n) * arg);
        log_mag += log_abs + 0.5 * std::log((static_cast<double>(n) + twice_k) / static_cast<double>(n + 1));
    }

    const double tail = coherent_tail_bound(params, dim);
    if (!(tail < tolerance)) {
        throw Error(ErrorCode::TailTooLarge, "truncation at dim " + std::to_string(dim) +
                                                 " discards mass " + std::to_string(tail));
    }
    return TruncatedState(params.k, std::move(c), tail);
}

TruncatedState coherent_state(const CoherentParams& params, const TruncationPolicy& policy) {
    return coherent_state(params, coherent_dim(params, policy), policy.tolerance);
}

TruncatedState fock_state(BargmannIndex k, int n, int dim) {
    if (n < 0 || n >= dim) {
        throw Error(ErrorCode::InvalidArgument, "Fock level " + std::to_string(n) +
                                                    " outside truncation " + std::to_string(dim));
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
    c(n) = 1.0;
    return TruncatedState(k, std::move(c), 0.0);
}

KMoments moments(const TruncatedState& state, double tolerance) {
    require_tail(state, tolerance);
    const Eigen::VectorXcd psi = padded(state.coefficients());
    const Eigen::VectorXcd images[3] = {
        apply_generator(Generator::K1, state.k(), state.coefficients()),
        apply_generator(Generator::K2, state.k(), state.coefficients()),
        apply_generator(Generator::K3, state.k(), state.coefficients()),
    };

    KMoments m;
    for (int i = 0; i < 3; ++i) {
        m.mean(i) = psi.dot(images[i]).real();
        for (int j = i; j < 3; ++j) {
            // K_i hermitian: <K_i K_j> = <K_i psi|K_j psi>; its real part is the symmetrized moment.
            m.second(i, j) = m.second(j, i) = images[i].dot(images[j]).real();
        }
    }
    return m;
}

CoherentClosedForm coherent_closed_form_moments(const CoherentParams& params) {
    validate(params);
    const double k = params.k.value();
    const double a = std::norm(params.zeta);
    const double denom = 1.0 - a;
    const double zeta_sq_re = (params.zeta * params.zeta).real();
    return {
        .var_k2 = k * (1.0 + a * a - 2.0 * zeta_sq_re) / (2.0 * denom * denom),
        .var_k3 = 2.0 * k * a / (denom * denom),
        .mean_k1 = 2.0 * k * params.zeta.real() / denom,
    };
}

IntelligentParams coherent_intelligent_params(double gamma, Branch branch, BargmannIndex k) {
    if (!std::isfinite(gamma) || gamma == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "gamma must be finite and nonzero");
    }
    const double root = std::sqrt(gamma * gamma + 1.0);
    const double sign = branch == Branch::upper ? 1.0 : -1.0;
    const double zeta = 1.0 / (gamma + sign * root);
    if (!(std::abs(zeta) < 1.0)) {
        throw Error(ErrorCode::BranchMismatch, "gamma = " + std::to_string(gamma) +
                                                   " requires the " +
                                                   (gamma > 0 ? "upper" : "lower") + " branch");
    }
    return {gamma, branch, complex(0.0, sign * k.value() * root), zeta};
}

CoherentParams to_coherent(const IntelligentParams& params, BargmannIndex k) {
    return {k, complex(params.zeta, 0.0), std::nullopt};
}

double intelligent_residual(const TruncatedState& state, double gamma, complex lambda) {
    require_tail(state, 1e-8);
    const auto& c = state.coefficients();
    const Eigen::VectorXcd r = apply_generator(Generator::K2, state.k(), c) +
                               kI * gamma * apply_generator(Generator::K3, state.k(), c) -
                               lambda * padded(c);
    return r.head(state.dim() - 1).norm();
}

double gamma_from_state(const TruncatedState& state) {
    const KMoments m = moments(state);
    const double var2 = m.variance(1);
    const double var3 = m.variance(2);
    if (!(var3 > 1e-14 * (1.0 + m.mean(2) * m.mean(2)))) {
        throw Error(ErrorCode::DegenerateState, "(Delta K3)^2 vanishes; gamma is undefined");
    }
    const double magnitude = std::sqrt(var2 / var3);
    return m.mean(0) < 0.0 ? -magnitude : magnitude;
}

}  // namespace su11
