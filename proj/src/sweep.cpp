#include "su11/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "su11/errors.hpp"
#include "su11/interferometer.hpp"
#include "su11/sensitivity.hpp"
#include "su11/states.hpp"

namespace su11 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxZeta = 0.95;

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double parse_double(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        bad_config("not a number: '" + s + "'");
    }
    if (used != s.size()) bad_config("not a number: '" + s + "'");
    return v;
}

struct GridPoint {
    int twice_k = 1;
    double zeta = 0.0;
    double zeta_arg = 0.0;
    double beta = 0.0;
    double phi = 0.0;
    double n_total = 0.0;
};

enum class Axis { twice_k, zeta, zeta_arg, beta, phi, n_total };

std::vector<Axis> axes_for(SweepMode mode) {
    switch (mode) {
    case SweepMode::phi_sweep: return {Axis::twice_k, Axis::zeta, Axis::zeta_arg, Axis::beta, Axis::phi};
    case SweepMode::beta_sweep: return {Axis::twice_k, Axis::zeta, Axis::zeta_arg, Axis::phi, Axis::beta};
    case SweepMode::k_sweep: return {Axis::zeta, Axis::zeta_arg, Axis::beta, Axis::phi, Axis::twice_k};
    case SweepMode::photon_budget: return {Axis::twice_k, Axis::zeta, Axis::n_total};
    }
    return {};
}

const Range& range_of(const SweepConfig& cfg, Axis axis) {
    switch (axis) {
    case Axis::twice_k: return cfg.twice_k;
    case Axis::zeta: return cfg.zeta;
    case Axis::zeta_arg: return cfg.zeta_arg;
    case Axis::beta: return cfg.beta;
    case Axis::phi: return cfg.phi;
    case Axis::n_total: return cfg.n_total;
    }
    return cfg.beta;
}

void assign(GridPoint& p, Axis axis, double v) {
    switch (axis) {
    case Axis::twice_k: p.twice_k = static_cast<int>(std::lround(v)); break;
    case Axis::zeta: p.zeta = v; break;
    case Axis::zeta_arg: p.zeta_arg = v; break;
    case Axis::beta: p.beta = v; break;
    case Axis::phi: p.phi = v; break;
    case Axis::n_total: p.n_total = v; break;
    }
}

std::vector<GridPoint> grid(const SweepConfig& cfg) {
    const auto axes = axes_for(cfg.mode);
    std::vector<GridPoint> points{GridPoint{}};
    for (Axis axis : axes) {
        std::vector<GridPoint> next;
        next.reserve(points.size() * range_of(cfg, axis).count());
        for (const GridPoint& p : points) {
            for (double v : range_of(cfg, axis).points) {
                GridPoint q = p;
                assign(q, axis, v);
                next.push_back(q);
            }
        }
        points = std::move(next);
    }
    return points;
}

CoherentParams params_of(const GridPoint& p) {
    return {BargmannIndex(p.twice_k), std::polar(p.zeta, p.zeta_arg), std::nullopt};
}

/// The input state for the Fock-space route.
TruncatedState input_state(const GridPoint& p, int dim_cap) {
    TruncationPolicy policy;
    policy.max_dim = dim_cap;
    return coherent_state(params_of(p), policy);
}

void fail(SweepRow& row, const std::string& route, const Error& e) {
    if (row.status == "ok") row.status = route + std::string(to_string(e.code()));
}

void evaluate_interferometer(const SweepConfig& cfg, const GridPoint& p, SweepRow& row) {
    const CoherentParams params = params_of(p);
    const BargmannIndex k = params.k;
    try {
        SensitivityResult closed{};
        switch (cfg.input) {
        case InputKind::vacuum: closed = delta_phi_vacuum(p.beta, p.phi); break;
        case InputKind::fock: closed = delta_phi_lowest_weight(k, p.beta, p.phi); break;
        case InputKind::coherent_intelligent: closed = delta_phi_coherent_intelligent(k, p.beta); break;
        case InputKind::coherent: closed = delta_phi_coherent(params, p.beta); break;
        }
        row.delta_phi_sq_closed = closed.delta_phi_sq;
        row.method = to_string(closed.method);
    } catch (const Error& e) {
        fail(row, "", e);
    }

    try {
        if (params.zeta.imag() == 0.0) {
            row.n_total = total_photons(params, p.beta);
        } else {
            row.n_total = total_photons_from_moments(moments(input_state(p, cfg.dim_cap)), p.beta);
        }
    } catch (const Error& e) {
        fail(row, "", e);
    }

    if (!cfg.numeric_check) return;
    try {
        const TruncatedState state = input_state(p, cfg.dim_cap);
        if (p.phi == 0.0) {
            row.delta_phi_sq_numeric = delta_phi_phi_zero_limit(moments(state), p.beta).delta_phi_sq;
        } else {
            EvolutionOptions opts;
            opts.dim_cap = cfg.dim_cap;
            row.delta_phi_sq_numeric = delta_phi_evolved(state, {p.beta, p.phi}, opts).delta_phi_sq;
        }
    } catch (const Error& e) {
        fail(row, "numeric:", e);
    }
}

void evaluate_budget(const SweepConfig& cfg, const GridPoint& p, SweepRow& row) {
    const BargmannIndex k(p.twice_k);
    row.n_total = p.n_total;
    row.beta = kNaN;
    row.phi = 0.0;
    try {
        const SensitivityResult closed = delta_phi_vs_photons(k, p.zeta, p.n_total);
        row.delta_phi_sq_closed = closed.delta_phi_sq;
        row.method = to_string(closed.method);
        row.beta = beta_for_photons(k, p.zeta, p.n_total);
    } catch (const Error& e) {
        fail(row, "", e);
        return;
    }
    if (!cfg.numeric_check) return;
    try {
        const TruncatedState state = input_state(p, cfg.dim_cap);
        row.delta_phi_sq_numeric = delta_phi_phi_zero_limit(moments(state), row.beta).delta_phi_sq;
    } catch (const Error& e) {
        fail(row, "numeric:", e);
    }
}

SweepRow evaluate(const SweepConfig& cfg, const GridPoint& p) {
    SweepRow row{cfg.mode, cfg.input, p.twice_k, p.zeta, p.zeta_arg, p.beta, p.phi,
                 kNaN, kNaN, std::nullopt, std::nullopt, "", "ok"};
    if (cfg.mode == SweepMode::photon_budget) {
        evaluate_budget(cfg, p, row);
    } else {
        evaluate_interferometer(cfg, p, row);
    }
    if (row.delta_phi_sq_numeric && std::isfinite(row.delta_phi_sq_closed) &&
        std::isfinite(*row.delta_phi_sq_numeric) && row.delta_phi_sq_closed != 0.0) {
        row.discrepancy = std::abs(row.delta_phi_sq_closed - *row.delta_phi_sq_numeric) / row.delta_phi_sq_closed;
    }
    return row;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

SweepMode parse_sweep_mode(std::string_view text) {
    if (text == "phi_sweep") return SweepMode::phi_sweep;
    if (text == "beta_sweep") return SweepMode::beta_sweep;
    if (text == "k_sweep") return SweepMode::k_sweep;
    if (text == "photon_budget") return SweepMode::photon_budget;
    bad_config("unknown sweep mode '" + std::string(text) + "'");
}

InputKind parse_input_kind(std::string_view text) {
    if (text == "vacuum") return InputKind::vacuum;
    if (text == "coherent") return InputKind::coherent;
    if (text == "coherent_intelligent") return InputKind::coherent_intelligent;
    if (text == "fock") return InputKind::fock;
    bad_config("unknown input kind '" + std::string(text) + "'");
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    bad_config("unknown output format '" + std::string(text) + "'");
}

std::string_view to_string(SweepMode mode) {
    switch (mode) {
    case SweepMode::phi_sweep: return "phi_sweep";
    case SweepMode::beta_sweep: return "beta_sweep";
    case SweepMode::k_sweep: return "k_sweep";
    case SweepMode::photon_budget: return "photon_budget";
    }
    return "unknown";
}

std::string_view to_string(InputKind kind) {
    switch (kind) {
    case InputKind::vacuum: return "vacuum";
    case InputKind::coherent: return "coherent";
    case InputKind::coherent_intelligent: return "coherent_intelligent";
    case InputKind::fock: return "fock";
    }
    return "unknown";
}

Range Range::linear(double start, double stop, int count) {
    if (count < 1) bad_config("range count must be >= 1");
    Range r;
    r.points.reserve(count);
    if (count == 1) {
        r.points.push_back(start);
        return r;
    }
    for (int i = 0; i < count; ++i) {
        // Endpoints are reproduced exactly.
        r.points.push_back(i == count - 1 ? stop : start + (stop - start) * i / (count - 1));
    }
    return r;
}

Range Range::parse(std::string_view text) {
    if (text.empty()) bad_config("empty range");
    if (text.find(',') != std::string_view::npos) {
        Range r;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t next = std::min(text.find(',', pos), text.size());
            r.points.push_back(parse_double(text.substr(pos, next - pos)));
            pos = next + 1;
        }
        return r;
    }
    const std::size_t first = text.find(':');
    if (first == std::string_view::npos) return single(parse_double(text));
    const std::size_t second = text.find(':', first + 1);
    if (second == std::string_view::npos) bad_config("range must be start:stop:count, got '" + std::string(text) + "'");
    const double start = parse_double(text.substr(0, first));
    const double stop = parse_double(text.substr(first + 1, second - first - 1));
    const double count = parse_double(text.substr(second + 1));
    if (count != std::floor(count)) bad_config("range count must be an integer");
    return linear(start, stop, static_cast<int>(count));
}

void validate(const SweepConfig& cfg) {
    for (Axis axis : axes_for(cfg.mode)) {
        const Range& r = range_of(cfg, axis);
        if (r.count() < 1) bad_config("every range needs at least one point");
        for (double v : r.points) {
            if (!std::isfinite(v)) bad_config("range values must be finite");
        }
    }
    for (double v : cfg.twice_k.points) {
        if (v < 1.0 || v != std::floor(v)) bad_config("twice_k values must be integers >= 1");
    }
    for (double v : cfg.zeta.points) {
        if (v < 0.0 || v > kMaxZeta) bad_config("|zeta| must lie in [0, 0.95]");
    }
    const bool has_phase = std::any_of(cfg.zeta_arg.points.begin(), cfg.zeta_arg.points.end(),
                                       [](double v) { return v != 0.0; });
    if (has_phase && (cfg.input != InputKind::coherent || cfg.mode == SweepMode::photon_budget)) {
        bad_config("zeta_arg applies to coherent input outside photon_budget mode only");
    }
    const bool only_zero_zeta = std::all_of(cfg.zeta.points.begin(), cfg.zeta.points.end(),
                                            [](double v) { return v == 0.0; });
    if (cfg.input == InputKind::vacuum) {
        const bool half = std::all_of(cfg.twice_k.points.begin(), cfg.twice_k.points.end(),
                                      [](double v) { return v == 1.0; });
        if (!half || !only_zero_zeta) bad_config("vacuum input fixes twice_k = 1 and zeta = 0");
    }
    if (cfg.input == InputKind::fock && !only_zero_zeta) bad_config("fock input fixes zeta = 0");
    if (cfg.dim_cap < 32) bad_config("dim cap must be at least 32");
    if (cfg.threads < 1) bad_config("threads must be >= 1");
}

std::size_t expected_rows(const SweepConfig& cfg) {
    std::size_t n = 1;
    for (Axis axis : axes_for(cfg.mode)) n *= range_of(cfg, axis).count();
    return n;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const std::vector<GridPoint> points = grid(cfg);
    std::vector<std::optional<SweepRow>> slots(points.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) slots[i] = evaluate(cfg, points[i]);
    };
    const unsigned n_threads = std::min<std::size_t>(cfg.threads, std::max<std::size_t>(points.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<SweepRow> rows;
    rows.reserve(slots.size());
    for (auto& s : slots) rows.push_back(std::move(*s));
    return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "mode,input,twice_k,zeta,zeta_arg,beta,phi,n_total,delta_phi_sq_closed,"
          "delta_phi_sq_numeric,discrepancy,method,status\n";
    for (const SweepRow& r : rows) {
        os << to_string(r.mode) << ',' << to_string(r.input) << ',' << r.twice_k << ','
           << format_double(r.zeta) << ',' << format_double(r.zeta_arg) << ',' << format_double(r.beta) << ','
           << format_double(r.phi) << ',' << format_double(r.n_total) << ','
           << format_double(r.delta_phi_sq_closed) << ','
           << (r.delta_phi_sq_numeric ? format_double(*r.delta_phi_sq_numeric) : "") << ','
           << (r.discrepancy ? format_double(*r.discrepancy) : "") << ',' << r.method << ',' << r.status
           << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<SweepRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        out.push_back({
            {"mode", to_string(r.mode)},
            {"input", to_string(r.input)},
            {"twice_k", r.twice_k},
            {"zeta", json_number(r.zeta)},
            {"zeta_arg", json_number(r.zeta_arg)},
            {"beta", json_number(r.beta)},
            {"phi", json_number(r.phi)},
            {"n_total", json_number(r.n_total)},
            {"delta_phi_sq_closed", json_number(r.delta_phi_sq_closed)},
            {"delta_phi_sq_numeric", r.delta_phi_sq_numeric ? json_number(*r.delta_phi_sq_numeric) : nullptr},
            {"discrepancy", r.discrepancy ? json_number(*r.discrepancy) : nullptr},
            {"method", r.method},
            {"status", r.status},
        });
    }
    os << out.dump(2) << '\n';
}

void write_rows(std::ostream& os, const std::vector<SweepRow>& rows, OutputFormat format) {
    if (format == OutputFormat::csv) {
        write_csv(os, rows);
    } else {
        write_json(os, rows);
    }
}

}  // namespace su11
