#include "su11/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "su11/errors.hpp"

namespace su11 {

namespace {

constexpr double kConventionStep = 0.1;

Eigen::VectorXcd pad_to(const Eigen::VectorXcd& psi, Eigen::Index dim) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    out.head(psi.size()) = psi;
    return out;
}

Eigen::VectorXcd apply_phase(const Eigen::VectorXcd& psi, BargmannIndex k, double angle) {
    Eigen::VectorXcd out(psi.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        out(n) = std::polar(1.0, angle * (static_cast<double>(n) + k.value())) * psi(n);
    }
    return out;
}

Eigen::Vector3d first_moments(BargmannIndex k, const Eigen::VectorXcd& psi) {
    return moments(TruncatedState(k, psi, 0.0)).mean;
}

GeneratorSigns detect_signs() {
    const BargmannIndex k(1);
    const auto probe = coherent_state({k, complex(0.3, 0.2), std::nullopt}, 96);
    const Eigen::Vector3d before = moments(probe).mean;
    const BoostPropagator prop(k, 96);

    auto pick = [](double plus_err, double minus_err, const char* what) {
        const double best = std::min(plus_err, minus_err);
        const double other = std::max(plus_err, minus_err);
        if (!(best < 1e-9 && other > 1e-4)) {
            throw std::logic_error(std::string("generator sign check is not discriminating for ") + what);
        }
        return plus_err < minus_err ? 1 : -1;
    };

    const Eigen::Vector3d boosted = boost_matrix(-kConventionStep).matrix * before;
    auto boost_err = [&](int s) {
        return (first_moments(k, prop.apply(s * kConventionStep, probe.coefficients())) - boosted)
            .cwiseAbs()
            .maxCoeff();
    };

    const Eigen::Vector3d rotated = rotation_matrix(kConventionStep).matrix * before;
    auto phase_err = [&](int s) {
        return (first_moments(k, apply_phase(probe.coefficients(), k, s * kConventionStep)) - rotated)
            .cwiseAbs()
            .maxCoeff();
    };

    return {pick(boost_err(1), boost_err(-1), "FWM"), pick(phase_err(1), phase_err(-1), "phase")};
}

}  // namespace

double KVectorTransform::metric_defect() const {
    const Eigen::Matrix3d g = Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal();
    return (matrix.transpose() * g * matrix - g).cwiseAbs().maxCoeff();
}

KVectorTransform boost_matrix(double beta) {
    const double c = std::cosh(beta);
    const double s = std::sinh(beta);
    Eigen::Matrix3d m;
    m << 1.0, 0.0, 0.0,
         0.0, c, s,
         0.0, s, c;
    return {m};
}

KVectorTransform rotation_matrix(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix3d m;
    m << c, -s, 0.0,
         s, c, 0.0,
         0.0, 0.0, 1.0;
    return {m};
}

KVectorTransform overall_transform(const InterferometerConfig& cfg) {
    // L(beta) R(phi) L(-beta) expanded with d = 1 - cos(phi), so phi = 0 gives
    // the identity exactly instead of cosh^2 - sinh^2 rounding.
    const double sb = std::sinh(cfg.beta);
    const double cb = std::cosh(cfg.beta);
    const double sp = std::sin(cfg.phi);
    const double d = 2.0 * std::pow(std::sin(0.5 * cfg.phi), 2);
    Eigen::Matrix3d m;
    m << 1.0 - d, -cb * sp, sb * sp,
         cb * sp, 1.0 - cb * cb * d, cb * sb * d,
         sb * sp, -sb * cb * d, 1.0 + sb * sb * d;
    return {m};
}

K3OutCoefficients k3_out_coefficients(const InterferometerConfig& cfg) {
    const double sb = std::sinh(cfg.beta);
    const double cb = std::cosh(cfg.beta);
    const double sp = std::sin(cfg.phi);
    const double cp = std::cos(cfg.phi);
    // cos(phi) - 1 = -2 sin^2(phi/2) keeps small-phi values accurate.
    const double cos_minus_one = -2.0 * std::pow(std::sin(0.5 * cfg.phi), 2);
    return {
        .value = {sb * sp, sb * cb * cos_minus_one, 1.0 - sb * sb * cos_minus_one},
        .phi_derivative = {sb * cp, -sb * cb * sp, sb * sb * sp},
    };
}

KMoments transform_moments(const KMoments& m, const KVectorTransform& t) {
    KMoments out;
    out.mean = t.matrix * m.mean;
    out.second = t.matrix * m.second * t.matrix.transpose();
    return out;
}

GeneratorSigns detected_generator_signs() {
    static const GeneratorSigns signs = detect_signs();
    return signs;
}

BoostPropagator::BoostPropagator(BargmannIndex k, int dim) : k_(k), dim_(dim) {
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "propagator needs dim >= 2");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(dim - 1);
    for (Eigen::Index n = 0; n + 1 < dim; ++n) sub(n) = 0.5 * raising_element(k, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("K1 eigendecomposition failed at dim " + std::to_string(dim));
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd BoostPropagator::apply(double theta, const Eigen::VectorXcd& psi) const {
    if (psi.size() > dim_) {
        throw Error(ErrorCode::InvalidArgument, "state larger than propagator dimension");
    }
    const Eigen::VectorXcd full = pad_to(psi, dim_);
    const Eigen::VectorXd re = eigenvectors_.transpose() * full.real();
    const Eigen::VectorXd im = eigenvectors_.transpose() * full.imag();
    Eigen::VectorXd rot_re(dim_);
    Eigen::VectorXd rot_im(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
        const complex w = std::polar(1.0, theta * eigenvalues_(i)) * complex(re(i), im(i));
        rot_re(i) = w.real();
        rot_im(i) = w.imag();
    }
    Eigen::VectorXcd out(dim_);
    out.real() = eigenvectors_ * rot_re;
    out.imag() = eigenvectors_ * rot_im;
    return out;
}

Eigen::MatrixXcd BoostPropagator::matrix(double theta) const {
    Eigen::VectorXcd phases(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) phases(i) = std::polar(1.0, theta * eigenvalues_(i));
    const Eigen::MatrixXcd v = eigenvectors_.cast<complex>();
    return v * phases.asDiagonal() * v.transpose();
}

std::shared_ptr<const BoostPropagator> boost_propagator(BargmannIndex k, int dim) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const BoostPropagator>> cache;
    const auto key = std::make_pair(k.twice_k(), dim);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const BoostPropagator>(k, dim);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(built)).first->second;
}

OperatorMatrix fwm_unitary(double beta, BargmannIndex k, int dim, std::optional<GeneratorSigns> signs) {
    if (dim < 8) throw Error(ErrorCode::InvalidArgument, "fwm_unitary requires dim >= 8");
    const GeneratorSigns s = signs.value_or(detected_generator_signs());
    return {k, boost_propagator(k, dim)->matrix(s.boost * beta)};
}

OperatorMatrix phase_unitary(double phi, BargmannIndex k, int dim, std::optional<GeneratorSigns> signs) {
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "phase_unitary requires dim >= 2");
    const GeneratorSigns s = signs.value_or(detected_generator_signs());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        m(n, n) = std::polar(1.0, s.phase * phi * (static_cast<double>(n) + k.value()));
    }
    return {k, std::move(m)};
}

int evolution_dim(const TruncatedState& state, double beta, int dim_cap) {
    const auto& c = state.coefficients();
    Eigen::Index support = 1;
    for (Eigen::Index n = c.size() - 1; n >= 0; --n) {
        if (std::norm(c(n)) > 1e-16) {
            support = n + 1;
            break;
        }
    }
    const double headroom = 4.0 * std::cosh(2.0 * beta);
    // Rounded up to a multiple of 64 so nearby states share a cached propagator.
    const double raw = headroom * (static_cast<double>(support) + state.k().twice_k()) + 32.0;
    const double wanted = 64.0 * std::ceil(raw / 64.0);
    const double capped = std::min(wanted, static_cast<double>(dim_cap));
    return static_cast<int>(std::max(capped, static_cast<double>(state.dim())));
}

double boundary_mass(const Eigen::VectorXcd& psi) {
    const Eigen::Index band = std::min<Eigen::Index>(psi.size(), std::max<Eigen::Index>(8, psi.size() / 8));
    return psi.tail(band).squaredNorm();
}

EvolvedState evolve(const TruncatedState& state, const InterferometerConfig& cfg,
                    const EvolutionOptions& opts) {
    const int dim = opts.dim > 0 ? opts.dim : evolution_dim(state, cfg.beta, opts.dim_cap);
    if (dim < state.dim()) {
        throw Error(ErrorCode::InvalidArgument, "evolution dim " + std::to_string(dim) +
                                                    " is smaller than the state");
    }
    const GeneratorSigns signs = opts.signs.value_or(detected_generator_signs());
    const auto prop = boost_propagator(state.k(), dim);

    EvolvedState out{state.k(), {}, {}, {}, 0.0, signs};
    out.after_fwm1 = prop->apply(signs.boost * cfg.beta, state.coefficients());
    out.after_phase = apply_phase(out.after_fwm1, state.k(), signs.phase * cfg.phi);
    out.output = prop->apply(-signs.boost * cfg.beta, out.after_phase);

    out.leak = std::max({state.tail_bound(), boundary_mass(out.after_fwm1), boundary_mass(out.output)});
    if (out.leak > opts.leak_tolerance) {
        throw Error(ErrorCode::TruncationLeak, "mass " + std::to_string(out.leak) +
                                                   " reached the truncation edge at dim " +
                                                   std::to_string(dim));
    }
    const double drift = std::abs(out.output.squaredNorm() - 1.0);
    if (drift > 1e-8) {
        throw Error(ErrorCode::TruncationLeak, "norm drifted by " + std::to_string(drift));
    }
    return out;
}

TruncatedState apply_interferometer(const TruncatedState& state, const InterferometerConfig& cfg,
                                    const EvolutionOptions& opts) {
    EvolvedState e = evolve(state, cfg, opts);
    return TruncatedState(e.k, std::move(e.output), e.leak);
}

double total_photons(const CoherentParams& params, double beta) {
    validate(params);
    if (params.zeta.imag() != 0.0) {
        throw Error(ErrorCode::InvalidAmplitude, "closed-form photon number needs real zeta");
    }
    const double z2 = params.zeta.real() * params.zeta.real();
    return params.k.twice_k() * (1.0 + z2) / (1.0 - z2) * std::cosh(beta) - 1.0;
}

double total_photons_from_moments(const KMoments& m, double beta) {
    return 2.0 * (std::cosh(beta) * m.mean(2) - std::sinh(beta) * m.mean(1)) - 1.0;
}

}  // namespace su11
