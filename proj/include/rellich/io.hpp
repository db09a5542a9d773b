#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "rellich/cone.hpp"
#include "rellich/emden_fowler.hpp"
#include "rellich/grid.hpp"
#include "rellich/ground_state.hpp"
#include "rellich/symmetry.hpp"

namespace rellich {

inline constexpr const char* tool_version = "0.1.0";

/// Shortest round-trippable decimal representation ('.' decimal point,
/// locale-independent).
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// RFC 4180: quote a field only when it contains a comma, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_profile_csv(std::ostream& os, const Profile& p) {
  os << "s,w\r\n";
  for (int i = 0; i < p.grid.M; ++i)
    os << format_real(p.grid.nodes[i]) << ',' << format_real(p.values[i])
       << "\r\n";
}

inline void write_radial_csv(std::ostream& os, const RadialFunction& f) {
  os << "r,u\r\n";
  for (std::size_t i = 0; i < f.r.size(); ++i)
    os << format_real(f.r[i]) << ',' << format_real(f.u[i]) << "\r\n";
}

inline void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> rows) {
  os << "lambda,I,X,g_of_X,certified_breaking\r\n";
  for (const auto& r : rows) {
    os << format_real(r.lambda) << ',';
    if (r.ok) {
      os << format_real(r.I_value) << ',' << format_real(r.X) << ','
         << format_real(r.g_of_X) << ','
         << (r.certified_breaking ? "true" : "false");
    } else {
      os << ",,," << csv_field("ERROR:" + r.failure);
    }
    os << "\r\n";
  }
}

inline void write_tail_csv(std::ostream& os, std::span<const TailRecord> rows) {
  os << "R,grad_integral,bilap_integral\r\n";
  for (const auto& r : rows)
    os << format_real(r.R) << ',' << format_real(r.grad_integral) << ','
       << format_real(r.bilap_integral) << "\r\n";
}

inline nlohmann::json to_json(const ProblemParams& p) {
  return {{"N", p.N},           {"q", p.q},
          {"lambda", p.lambda}, {"gamma_N", p.gamma_N},
          {"beta", p.beta},     {"A", p.A},
          {"B2", p.B2},         {"omega_N", p.omega_N},
          {"two_star_star", p.two_star_star}};
}

inline nlohmann::json to_json(const Profile& p) {
  return {{"L", p.grid.L}, {"M", p.grid.M}, {"h", p.grid.h},
          {"values", p.values}};
}

inline nlohmann::json to_json(const GroundState& gs, bool include_profile) {
  nlohmann::json j{{"I_value", gs.I_value},
                   {"residual_linf", gs.residual_linf},
                   {"hamiltonian_dev", gs.hamiltonian_dev},
                   {"is_even", gs.is_even},
                   {"is_positive", gs.is_positive},
                   {"is_monotone_halfline", gs.is_monotone_halfline},
                   {"sup_bound_ok", gs.sup_bound_ok},
                   {"positivity_guaranteed", gs.positivity_guaranteed}};
  if (include_profile) j["profile"] = to_json(gs.profile);
  return j;
}

inline nlohmann::json to_json(const SymmetryVerdict& v) {
  nlohmann::json j{{"X", v.X},
                   {"g_of_X", v.g_of_X},
                   {"certified_breaking", v.certified_breaking},
                   {"lambda", v.lambda},
                   {"lambda_basic", v.thresholds.lambda_basic},
                   {"q_min_improved", v.thresholds.q_min_improved}};
  if (v.thresholds.lambda_improved)
    j["lambda_improved"] = *v.thresholds.lambda_improved;
  return j;
}

inline nlohmann::json to_json(const SweepRecord& r) {
  nlohmann::json j{{"lambda", r.lambda}, {"ok", r.ok}};
  if (r.ok) {
    j["I"] = r.I_value;
    j["X"] = r.X;
    j["g_of_X"] = r.g_of_X;
    j["certified_breaking"] = r.certified_breaking;
  } else {
    j["error"] = r.failure;
  }
  return j;
}

inline void write_sweep_jsonl(std::ostream& os,
                              std::span<const SweepRecord> rows) {
  for (const auto& r : rows) os << to_json(r).dump() << '\n';
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Uniform JSON envelope for CLI output: version, resolved config echo,
/// timestamp, warnings, and the subcommand payload.
inline nlohmann::json make_envelope(const nlohmann::json& config,
                                    const nlohmann::json& payload,
                                    const std::vector<std::string>& warnings) {
  return {{"version", tool_version},
          {"config", config},
          {"timestamp", utc_timestamp()},
          {"warnings", warnings},
          {"payload", payload}};
}

}  // namespace rellich
