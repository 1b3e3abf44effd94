#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lamespec/domain.hpp"
#include "lamespec/errors.hpp"
#include "lamespec/spectrum.hpp"
#include "lamespec/trace_fit.hpp"

namespace lamespec {

inline constexpr int kSchemaVersion = 1;

/// JSON text with every floating-point number written as %.17g, so parsing
/// and re-serializing reproduces the same bytes.
std::string dump_json(const nlohmann::json& value);

/// Parses text and checks schema_version. Throws Schema on malformed JSON,
/// a missing version or a version mismatch.
nlohmann::json parse_versioned(const std::string& text, const std::string& expected_type);

nlohmann::json domain_to_json(const Domain& domain);
Domain domain_from_json(const nlohmann::json& value);

nlohmann::json spectrum_to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const nlohmann::json& value);

nlohmann::json geometry_to_json(const RecoveredGeometry& result);
RecoveredGeometry geometry_from_json(const nlohmann::json& value);

/// Machine-readable error report {kind, stage, message, hint}.
nlohmann::json error_to_json(const Error& error, const std::string& stage);

/// Convenience wrappers producing complete documents with schema_version and type.
std::string write_spectrum(const Spectrum& spectrum);
Spectrum read_spectrum(const std::string& text);
std::string write_domain(const Domain& domain);
Domain read_domain(const std::string& text);
std::string write_recovered(const RecoveredGeometry& result);
RecoveredGeometry read_recovered(const std::string& text);

}  // namespace lamespec
