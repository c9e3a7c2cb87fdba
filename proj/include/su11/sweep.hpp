#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace su11 {

enum class SweepMode { phi_sweep, beta_sweep, k_sweep, photon_budget };
enum class InputKind { vacuum, coherent, coherent_intelligent, fock };
enum class OutputFormat { csv, json };

SweepMode parse_sweep_mode(std::string_view text);
InputKind parse_input_kind(std::string_view text);
OutputFormat parse_output_format(std::string_view text);
std::string_view to_string(SweepMode mode);
std::string_view to_string(InputKind kind);

/// Inclusive, evenly spaced range, or an explicit list of values.
struct Range {
    std::vector<double> points;

    static Range single(double v) { return {{v}}; }
    static Range linear(double start, double stop, int count);

    /// Accepts "v", "start:stop:count" or "v1,v2,...".
    static Range parse(std::string_view text);

    std::size_t count() const noexcept { return points.size(); }
};

struct SweepConfig {
    SweepMode mode = SweepMode::phi_sweep;
    InputKind input = InputKind::vacuum;
    Range beta = Range::single(1.0);
    Range phi = Range::single(0.0);
    Range twice_k = Range::single(1.0);
    Range zeta = Range::single(0.0);
    Range zeta_arg = Range::single(0.0);  // radians; coherent input only
    Range n_total = Range::single(1.0);
    OutputFormat format = OutputFormat::csv;
    bool numeric_check = false;
    int dim_cap = 4096;
    unsigned threads = 1;
};

/// Throws Error(InvalidArgument) naming the offending field.
void validate(const SweepConfig& cfg);

/// Number of rows run_sweep produces: the product of the mode's range counts.
std::size_t expected_rows(const SweepConfig& cfg);

struct SweepRow {
    SweepMode mode;
    InputKind input;
    int twice_k;
    double zeta;
    double zeta_arg;
    double beta;
    double phi;
    double n_total;
    double delta_phi_sq_closed;
    std::optional<double> delta_phi_sq_numeric;
    std::optional<double> discrepancy;
    std::string method;
    std::string status;  // "ok" or the error code of the failing route
};

/// Rows in lexicographic order over the mode's grid axes (swept axis
/// innermost). Failures are reported in `status`, never dropped.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_json(std::ostream& os, const std::vector<SweepRow>& rows);
void write_rows(std::ostream& os, const std::vector<SweepRow>& rows, OutputFormat format);

}  // namespace su11
