#pragma once

// Run configuration, the worker pool and report serialization (JSON, CSV).

#include "qident/identities.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qident {

inline constexpr const char* kVersion = "1.0.0";

struct CaseRequest {
    std::string case_id;
    ParamMap params; // fixed values; everything else is sampled
    double tol = 0;  // 0 -> registry default
    std::uint64_t seed = 0;
    long samples = 1;
};

struct RunConfig {
    std::vector<CaseRequest> cases;
    std::uint64_t seed = 0;
    Precision precision = Precision::Double;
};

// Schema-driven decoding: complex values are [re, im], plain numbers or
// {"qpow": m}; partitions are "[3,1]" or [3,1]; vectors are lists of complex.
ParamValue param_from_json(ParamKind kind, const nlohmann::json& j);
nlohmann::json param_to_json(const ParamValue& v);
ParamMap params_from_json(const std::string& case_id, const nlohmann::json& obj);

// QIDENT_PRECISION=high selects the 50-digit backend.
Precision precision_from_env();
Precision parse_precision(const std::string& s);
const char* to_string(Precision p);

// {"seed": 1, "precision": "double", "cases": [{"case": id, "samples": k, "seed": s, "tol": t, "params": {..}}]}
RunConfig parse_config(const nlohmann::json& j);

// Runs every (request, sample) pair on `parallelism` threads. The result is
// sorted by (case_id, sample) and does not depend on the thread count.
std::vector<IdentityReport> run_all(const RunConfig& cfg, unsigned parallelism);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json report_document(const std::vector<IdentityReport>& runs, const RunConfig& cfg);
// Drops timestamp and elapsed_ms so documents can be compared for determinism.
nlohmann::json strip_timing(nlohmann::json doc);
std::string to_csv(const std::vector<IdentityReport>& runs);

bool all_passed(const std::vector<IdentityReport>& runs);

} // namespace qident
