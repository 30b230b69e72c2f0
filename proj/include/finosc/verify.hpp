#pragma once

#include "finosc/report.hpp"

#include <optional>
#include <vector>

namespace finosc {

enum class Precision { standard, extended };

// FINOSC_PRECISION = double | extended (unset means double).
Precision precision_from_env();
Precision parse_precision(const std::string& s);

struct VerifyOptions {
    int N = 10;
    Params params{0.8, 0.3, 0.2, 0.9};
    std::optional<double> tolerance;  // overrides every per-identity tolerance
    Precision precision = Precision::standard;
};

// Runs every registered identity check at one parameter point. Matrix-level
// identities need generic parameters (rho, r non-zero) and at least two
// complete 3-blocks; they are skipped otherwise.
std::vector<VerificationRecord> run_verification(const VerifyOptions& opt);

// Uniform draws: rho in [0.4, 1.2], r in [0.1, 0.5], phases in [0, 2pi).
std::vector<Params> random_params(unsigned long long seed, int count);

}  // namespace finosc
