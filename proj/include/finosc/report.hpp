#pragma once

#include "finosc/matrix_elements.hpp"
#include "finosc/multi_ortho.hpp"
#include "finosc/squeezing.hpp"

#include <json.hpp>

#include <string>

namespace finosc {

// 17 significant digits, '.' decimal regardless of locale.
std::string fmt17(double x);

nlohmann::json params_json(const Params& prm);

// Header "k\n,0,...,N"; every entry is a quoted "re,im" pair.
std::string table_csv(const MatrixElementTable& t);
nlohmann::json table_json(const MatrixElementTable& t);

struct VerificationRecord {
    std::string identity;
    int N = 0;
    Params params;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

nlohmann::json to_json(const VerificationRecord& r);

// Columns n, j, re, im over the nominal band.
std::string band_csv(const BandOperator& b);

std::string curve_csv(const SqueezeCurve& c);
nlohmann::json parity_json(const ParityReport& p);
nlohmann::json contraction_json(const ContractionReport& c);

// JSON text with doubles at 17 significant digits.
std::string dump_json(const nlohmann::json& j);

// Write to a temporary file next to path, then rename over it.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace finosc
