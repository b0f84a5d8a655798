#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "picod/bounds.hpp"
#include "picod/constructors.hpp"
#include "picod/instance.hpp"
#include "picod/oracle.hpp"
#include "picod/scheme.hpp"

namespace picod::io {

inline constexpr const char* kToolVersion = "picod 0.1.0";

// Instance files:
//   picod-instance 1
//   messages <m>
//   client <v> <v> ...        one line per request-set, 1-based
// Blank lines and text after '#' are ignored.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance read_instance(const std::filesystem::path& path);
std::string serialize_instance(const Instance& inst);
void write_instance(const Instance& inst, const std::filesystem::path& path);

// Scheme files:
//   picod-scheme 1
//   field <p>
//   messages <m>
//   length <l>
//   row sparse <v> ...        coefficient-1 support, or
//   row dense <c_1> ... <c_m>
// serialize_scheme writes sparse rows whenever every coefficient is 0 or 1.
Scheme parse_scheme(std::istream& in);
Scheme parse_scheme_text(const std::string& text);
Scheme read_scheme(const std::filesystem::path& path);
std::string serialize_scheme(const Scheme& scheme);
void write_scheme(const Scheme& scheme, const std::filesystem::path& path);

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string digest(const std::string& text);
std::string instance_digest(const Instance& inst);

nlohmann::json certificate_to_json(const Instance& inst, const BoundCertificate& cert);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-validates every witness of a certificate against the instance by
/// direct inspection; no search is re-run.
CheckResult check_certificate(const Instance& inst, const nlohmann::json& cert);

nlohmann::json trace_to_json(const Algorithm1Result& result);
nlohmann::json report_to_json(const Instance& inst, const SatisfactionReport& report);
nlohmann::json cross_check_to_json(const CrossCheckReport& report);

}  // namespace picod::io
