#pragma once

#include "nr/harness.hpp"
#include "nr/radius.hpp"
#include "nr/transforms.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace nr {

// key order is part of the byte-level determinism contract
using Json = nlohmann::ordered_json;

// ===== matrices =====
//
// {"rows": n, "cols": m, "data": [[re, im], ...]} with data in row-major
// order.  Round-trips bit-exactly: shortest-round-trip doubles on write,
// exact binary64 parse on read.

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j); // raises LinalgError on malformed input

Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

// ===== reports =====

Json certified_to_json(const CertifiedValue& v);
Json spec_to_json(const GeneratorSpec& spec);
Json report_to_json(const CheckReport& report);
Json polar_to_json(const PolarParts& parts);
Json registry_entry_to_json(const CatalogEntry& e);

std::string reports_to_csv(const std::vector<CheckReport>& reports);

} // namespace nr
