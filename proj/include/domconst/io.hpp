// SPDX-License-Identifier: Apache-2.0
//
// File formats: domain files, facts overrides, interval seeds. JSON via
// nlohmann; all numeric output of reports goes through fmt12 so emission is
// byte-stable.
#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "domconst/bound_calculus.hpp"
#include "domconst/geometry.hpp"
#include "domconst/intervals.hpp"

namespace domconst {

/// 12 significant digits; infinities and NaNs spelled out.
inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default: out += c;
    }
  }
  out += '"';
  return out;
}

/// JSON value for one bound: a plain number, or "inf" for an open end.
inline std::string json_bound(double v) {
  return std::isfinite(v) ? fmt12(v) : json_quote(fmt12(v));
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FileError("cannot parse JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw FileError("write failed: " + path);
}

namespace io_detail {

inline double require_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw FileError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline Point2 parse_point(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw FileError(std::string(what) + " must be an [x, y] pair");
  return {require_number(j[0], what), require_number(j[1], what)};
}

} // namespace io_detail

/// Domain file: {"kind": "polygon"|"disc"|"ellipse", ...}.
inline PlanarDomain domain_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw FileError("domain object needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "polygon") {
    if (!j.contains("vertices") || !j.at("vertices").is_array())
      throw FileError("polygon domain needs a \"vertices\" array");
    std::vector<Point2> verts;
    for (const auto& v : j.at("vertices"))
      verts.push_back(io_detail::parse_point(v, "vertex"));
    return PlanarDomain::polygon(std::move(verts));
  }
  if (kind == "disc") {
    return PlanarDomain::disc(
        io_detail::parse_point(j.at("center"), "center"),
        io_detail::require_number(j.at("radius"), "radius"));
  }
  if (kind == "ellipse") {
    return PlanarDomain::ellipse(
        io_detail::parse_point(j.at("center"), "center"),
        io_detail::require_number(j.at("a"), "a"),
        io_detail::require_number(j.at("b"), "b"));
  }
  throw FileError("unknown domain kind: " + kind);
}

inline PlanarDomain load_domain(const std::string& path) {
  return domain_from_json(load_json_file(path));
}

/// Facts override object; user values win and are flagged so the
/// propagation trace can mark rules fed by them.
inline void apply_facts_overrides(DomainFacts& facts, const nlohmann::json& j,
                                  bool domain_is_polygon) {
  if (!j.is_object()) throw FileError("facts override must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "M0") {
      facts.modulus_m0 = io_detail::require_number(value, "M0");
      facts.user.m0 = true;
    } else if (key == "capacity_ratio") {
      facts.capacity_ratio = io_detail::require_number(value, "capacity_ratio");
      facts.user.capacity_ratio = true;
    } else if (key == "eta") {
      facts.star_eccentricity = io_detail::require_number(value, "eta");
      facts.user.eta = true;
    } else if (key == "theta") {
      facts.cone_angle = io_detail::require_number(value, "theta");
      facts.user.theta = true;
    } else if (key == "convex") {
      if (!value.is_boolean()) throw FileError("convex must be a boolean");
      facts.convex = value.get<bool>();
      facts.convex_polygon = facts.convex && domain_is_polygon;
      facts.user.convex = true;
    } else if (key == "dimension") {
      if (!value.is_number_integer())
        throw FileError("dimension must be 2 or 3");
      facts.dimension = value.get<int>();
    } else if (key == "simply_connected") {
      if (!value.is_boolean())
        throw FileError("simply_connected must be a boolean");
      facts.simply_connected = value.get<bool>();
      facts.user.simply_connected = true;
    } else if (key == "seed") {
      // handled by the caller (harness entries may carry interval seeds)
    } else {
      throw FileError("unknown facts key: " + key);
    }
  }
  validate_facts(facts);
}

/// Interval in JSON: [lo, hi] where hi may be the string "inf".
inline Interval interval_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw FileError(std::string(what) + " must be a [lo, hi] pair");
  Interval iv;
  iv.lo = io_detail::require_number(j[0], what);
  if (j[1].is_string()) {
    if (j[1].get<std::string>() != "inf")
      throw FileError(std::string(what) + ": only \"inf\" is allowed as text");
    iv.hi = kInf;
  } else {
    iv.hi = io_detail::require_number(j[1], what);
  }
  if (!iv.valid()) throw FileError(std::string(what) + ": invalid interval");
  return iv;
}

using SeedOverride = std::array<std::optional<Interval>, kConstantCount>;

/// Seed object: {"gamma": [1, 1], "poincare": [0, "inf"], ...}; a present
/// entry replaces the default (or estimator) seed for that constant.
inline SeedOverride seed_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FileError("seed must be a JSON object");
  SeedOverride out;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (int i = 0; i < kConstantCount; ++i) {
      const auto id = static_cast<ConstantId>(i);
      if (key == to_string(id)) {
        out[i] = interval_from_json(value, key.c_str());
        known = true;
        break;
      }
    }
    if (!known) throw FileError("unknown constant in seed: " + key);
  }
  return out;
}

/// FNV-1a over a canonical settings string; used for report provenance.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace domconst
