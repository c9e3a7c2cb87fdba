#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace su11 {

enum class ValidationLevel { fast, full };

ValidationLevel parse_validation_level(std::string_view text);

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::fast;
    /// Evolve with the FWM generator sign reversed; the Heisenberg/Schrodinger
    /// comparison must then fail.
    bool flip_fwm_sign = false;
};

struct CheckResult {
    std::string name;
    std::string relation;  // "<=" (observed must not exceed tolerance) or ">" (must exceed)
    double tolerance;
    double observed;
    bool passed;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool all_passed() const;
};

ValidationReport run_validate(const ValidationOptions& opts);

void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace su11
