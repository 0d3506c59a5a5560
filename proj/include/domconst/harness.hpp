// SPDX-License-Identifier: Apache-2.0
//
// End-to-end verification: run the estimators over a catalog of domains,
// seed the propagation with the lower bounds, and check that every estimate
// stays inside its propagated interval. Emits deterministic CSV/JSON.
#pragma once

#include <cmath>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "domconst/bound_calculus.hpp"
#include "domconst/estimators.hpp"
#include "domconst/io.hpp"

namespace domconst {

struct DegreesRange {
  int n_min = 1;
  int n_max = 6;
};

/// Per-entry user overrides: facts fields plus optional interval seeds that
/// replace the estimator seeds for the named constants.
struct EntryOverrides {
  std::optional<bool> convex, simply_connected;
  std::optional<double> eta, theta, m0, capacity_ratio;
  SeedOverride seed;
};

struct CatalogEntry {
  std::string name;
  PlanarDomain domain;
  EntryOverrides overrides;
  DegreesRange gamma_degrees{1, 6};
  DegreesRange poincare_degrees{1, 8};
  DegreesRange hardy_degrees{0, 8};
  double consistency_tol = 1e-9;
  double monotonicity_tol = 1e-9;
};

struct HarnessSettings {
  PropagationOptions propagation;
  QuadraturePolicy quadrature;
  int mean_distance_nodes = 256; // M for the sampled distance checks
  int quotient_mean_nodes = 64;  // M per quadrature node in the Hardy check
};

struct ReportRow {
  std::string domain_name;
  std::string constant;
  double estimate = std::numeric_limits<double>::quiet_NaN();
  double interval_lo = std::numeric_limits<double>::quiet_NaN();
  double interval_hi = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
  std::string error;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<ReportRow> rows;
  std::vector<CheckResult> checks;
  bool global_pass = false;
  std::string config_hash;
  std::string settings;
};

namespace harness_detail {

inline double radical_inverse(int base, unsigned long long i) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

/// First `count` points of the Halton (2,3) sequence over the bounding box
/// that land strictly inside the domain.
inline std::vector<Point2> interior_samples(const PlanarDomain& domain,
                                            std::size_t count) {
  const BoundingBox bb = domain.bounding_box();
  std::vector<Point2> out;
  out.reserve(count);
  for (unsigned long long i = 1; out.size() < count && i < 1000000ull; ++i) {
    const Point2 p{bb.xmin + radical_inverse(2, i) * (bb.xmax - bb.xmin),
                   bb.ymin + radical_inverse(3, i) * (bb.ymax - bb.ymin)};
    if (domain.contains(p)) out.push_back(p);
  }
  if (out.size() < count)
    throw GeometryError("interior sampling failed to fill the quota");
  return out;
}

inline bool history_monotone(const std::vector<std::pair<int, double>>& h,
                             double tol) {
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i].second < h[i - 1].second - tol) return false;
  return true;
}

inline DomainFacts entry_facts(const CatalogEntry& entry) {
  DomainFacts facts = facts_from_geometry(entry.domain);
  const auto& ov = entry.overrides;
  if (ov.convex) {
    facts.convex = *ov.convex;
    facts.convex_polygon = facts.convex && entry.domain.is_polygon();
    facts.user.convex = true;
  }
  if (ov.simply_connected) {
    facts.simply_connected = *ov.simply_connected;
    facts.user.simply_connected = true;
  }
  if (ov.eta) {
    facts.star_eccentricity = *ov.eta;
    facts.user.eta = true;
  }
  if (ov.theta) {
    facts.cone_angle = *ov.theta;
    facts.user.theta = true;
  }
  if (ov.m0) {
    facts.modulus_m0 = *ov.m0;
    facts.user.m0 = true;
  }
  if (ov.capacity_ratio) {
    facts.capacity_ratio = *ov.capacity_ratio;
    facts.user.capacity_ratio = true;
  }
  validate_facts(facts);
  return facts;
}

struct EntryResult {
  std::vector<ReportRow> rows;
  std::vector<CheckResult> checks;
};

} // namespace harness_detail

/// Runs one catalog entry: estimators with convergence studies, propagation
/// seeded by the lower bounds, then the containment and identity checks.
/// Module errors mark the affected rows as failed; the harness continues.
inline harness_detail::EntryResult run_entry(const CatalogEntry& entry,
                                             const HarnessSettings& settings) {
  harness_detail::EntryResult result;
  const ConstantName constants[3] = {ConstantName::gamma, ConstantName::poincare,
                                     ConstantName::hardy};
  const DegreesRange ranges[3] = {entry.gamma_degrees, entry.poincare_degrees,
                                  entry.hardy_degrees};
  std::optional<RayleighEstimate> estimates[3];

  for (int k = 0; k < 3; ++k) {
    ReportRow row;
    row.domain_name = entry.name;
    row.constant = to_string(constants[k]);
    try {
      estimates[k] = convergence_study(constants[k], entry.domain,
                                       ranges[k].n_min, ranges[k].n_max,
                                       settings.quadrature);
      row.estimate = estimates[k]->value;
      row.pass = true; // provisional until the propagation checks run
    } catch (const Error& e) {
      row.error = e.what();
      row.pass = false;
    }
    result.rows.push_back(std::move(row));
  }

  DomainFacts facts;
  try {
    facts = harness_detail::entry_facts(entry);
  } catch (const Error& e) {
    for (ReportRow& row : result.rows) {
      row.pass = false;
      if (row.error.empty()) row.error = e.what();
    }
    return result;
  }

  ConstantSet seed;
  const ConstantId row_ids[3] = {ConstantId::gamma, ConstantId::poincare,
                                 ConstantId::hardy};
  for (int k = 0; k < 3; ++k)
    if (estimates[k]) get(seed, row_ids[k]).lo = estimates[k]->value;
  for (int i = 0; i < kConstantCount; ++i)
    if (entry.overrides.seed[i])
      get(seed, static_cast<ConstantId>(i)) = *entry.overrides.seed[i];

  std::optional<PropagationResult> propagated;
  try {
    propagated = propagate(facts, seed, settings.propagation);
  } catch (const Error& e) {
    for (ReportRow& row : result.rows) {
      row.pass = false;
      if (row.error.empty()) row.error = e.what();
    }
    return result;
  }

  for (int k = 0; k < 3; ++k) {
    ReportRow& row = result.rows[k];
    if (!estimates[k]) continue;
    const Interval iv = get(propagated->set, row_ids[k]);
    row.interval_lo = iv.lo;
    row.interval_hi = iv.hi;
    row.margin = iv.hi - row.estimate;
    const bool contained = row.estimate <= iv.hi + entry.consistency_tol;
    const bool monotone = harness_detail::history_monotone(
        estimates[k]->history, entry.monotonicity_tol);
    row.pass = contained && monotone;
    if (!contained)
      row.error = "estimate exceeds the propagated upper bound";
    else if (!monotone)
      row.error = "estimate history is not monotone";
  }

  {
    CheckResult chk;
    chk.name = entry.name + ": c_div = 1 + gamma bit-exact";
    const Interval g = propagated->set.gamma;
    const Interval c = propagated->set.c_div;
    chk.pass = (c.lo == 1.0 + g.lo) && (c.hi == 1.0 + g.hi);
    if (!chk.pass)
      chk.detail = "c_div = [" + fmt12(c.lo) + ", " + fmt12(c.hi) +
                   "], 1 + gamma = [" + fmt12(1.0 + g.lo) + ", " +
                   fmt12(1.0 + g.hi) + "]";
    result.checks.push_back(std::move(chk));
  }
  return result;
}

/// Sampled distance properties of one entry: d <= D everywhere, the
/// exterior-cone comparison when theta is known, and the mean-distance Hardy
/// quotient <= 4/n for trial functions d * (polynomials of degree <= 3).
inline std::vector<CheckResult> run_property_checks(const CatalogEntry& entry,
                                                    const HarnessSettings& settings) {
  std::vector<CheckResult> out;
  const PlanarDomain& domain = entry.domain;
  DomainFacts facts;
  try {
    facts = harness_detail::entry_facts(entry);
  } catch (const Error& e) {
    out.push_back({entry.name + ": property checks", false, e.what()});
    return out;
  }

  try {
    const std::vector<Point2> samples =
        harness_detail::interior_samples(domain, 200);

    {
      CheckResult chk{entry.name + ": d <= mean distance", true, ""};
      for (const Point2& p : samples) {
        const double d = boundary_distance(domain, p).value;
        const double D = mean_distance(domain, p, settings.mean_distance_nodes);
        if (!(D >= d - 1e-9)) {
          chk.pass = false;
          chk.detail = "violated at (" + fmt12(p.x) + ", " + fmt12(p.y) + ")";
          break;
        }
      }
      out.push_back(std::move(chk));
    }

    if (facts.cone_angle) {
      CheckResult chk{entry.name + ": mean distance cone comparison", true, ""};
      const double factor =
          2.0 / std::sqrt(omega(std::sin(*facts.cone_angle) / 2.0, 2));
      for (const Point2& p : samples) {
        const double d = boundary_distance(domain, p).value;
        const double D = mean_distance(domain, p, settings.mean_distance_nodes);
        if (!(D <= factor * d + 1e-9)) {
          chk.pass = false;
          chk.detail = "violated at (" + fmt12(p.x) + ", " + fmt12(p.y) + ")";
          break;
        }
      }
      out.push_back(std::move(chk));
    }

    {
      CheckResult chk{entry.name + ": mean-distance Hardy quotient <= 2", true, ""};
      const QuadratureRule rule =
          build_quadrature(domain, 10, domain.is_curved() ? 3 : 2);
      const BasisSpec spec =
          make_basis(domain, BasisFamily::distance_weighted_polynomials, 3);
      const BasisFrame frame = make_frame(domain, spec);
      const int dim = basis_dimension(spec);
      std::vector<double> qv(dim), qx(dim), qy(dim);
      std::vector<double> num(dim, 0.0), den(dim, 0.0);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Point2 p = rule.nodes[i];
        const double w = rule.weights[i];
        const DistanceEval de = boundary_distance(domain, p);
        const double D = mean_distance(domain, p, settings.quotient_mean_nodes);
        basis_detail::eval_monomials(3, true, frame, p, qv, qx, qy);
        for (int b = 0; b < dim; ++b) {
          const double u = de.value * qv[b];
          const double gx = qv[b] * de.gradient.x + de.value * qx[b];
          const double gy = qv[b] * de.gradient.y + de.value * qy[b];
          num[b] += w * u * u / (D * D);
          den[b] += w * (gx * gx + gy * gy);
        }
      }
      for (int b = 0; b < dim; ++b) {
        if (!(num[b] <= 2.0 * den[b] + 1e-6 * den[b] + 1e-12)) {
          chk.pass = false;
          chk.detail = "quotient " + fmt12(num[b] / den[b]) +
                       " for basis index " + std::to_string(b);
          break;
        }
      }
      out.push_back(std::move(chk));
    }
  } catch (const Error& e) {
    out.push_back({entry.name + ": property checks", false, e.what()});
  }
  return out;
}

/// The shipped default catalog.
inline std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> entries;
  entries.push_back({"disc", PlanarDomain::disc({0.0, 0.0}, 1.0), {}});
  entries.push_back(
      {"unit_square",
       PlanarDomain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
       {}});
  entries.push_back(
      {"rectangle_3x1",
       PlanarDomain::polygon({{0, 0}, {3, 0}, {3, 1}, {0, 1}}),
       {}});
  std::vector<Point2> hex;
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi * k / 3.0;
    hex.push_back({std::cos(a), std::sin(a)});
  }
  entries.push_back({"regular_hexagon", PlanarDomain::polygon(hex), {}});
  entries.push_back(
      {"right_triangle", PlanarDomain::polygon({{0, 0}, {1, 0}, {0, 1}}), {}});
  entries.push_back(
      {"l_shape",
       PlanarDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}),
       {}});
  return entries;
}

/// Catalog file: JSON array of {name, domain, overrides?, degrees?,
/// tolerances?}; overrides may be inline or a path relative to `base_dir`.
inline std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& j,
                                                   const std::string& base_dir) {
  if (!j.is_array()) throw FileError("catalog must be a JSON array");
  std::vector<CatalogEntry> entries;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("name") || !e.contains("domain"))
      throw FileError("catalog entry needs \"name\" and \"domain\"");
    CatalogEntry entry{e.at("name").get<std::string>(),
                       domain_from_json(e.at("domain")),
                       {}};
    if (e.contains("overrides")) {
      nlohmann::json ov = e.at("overrides");
      if (ov.is_string())
        ov = load_json_file(base_dir.empty() ? ov.get<std::string>()
                                             : base_dir + "/" +
                                                   ov.get<std::string>());
      if (!ov.is_object()) throw FileError("overrides must be an object or path");
      for (const auto& [key, value] : ov.items()) {
        if (key == "convex") entry.overrides.convex = value.get<bool>();
        else if (key == "simply_connected")
          entry.overrides.simply_connected = value.get<bool>();
        else if (key == "eta") entry.overrides.eta = value.get<double>();
        else if (key == "theta") entry.overrides.theta = value.get<double>();
        else if (key == "M0") entry.overrides.m0 = value.get<double>();
        else if (key == "capacity_ratio")
          entry.overrides.capacity_ratio = value.get<double>();
        else if (key == "seed") entry.overrides.seed = seed_from_json(value);
        else throw FileError("unknown overrides key: " + key);
      }
    }
    if (e.contains("degrees")) {
      const auto& d = e.at("degrees");
      auto range = [&](const char* key, DegreesRange fallback) {
        if (!d.contains(key)) return fallback;
        const auto& r = d.at(key);
        if (!r.is_array() || r.size() != 2)
          throw FileError("degrees must be [n_min, n_max] pairs");
        return DegreesRange{r[0].get<int>(), r[1].get<int>()};
      };
      entry.gamma_degrees = range("gamma", entry.gamma_degrees);
      entry.poincare_degrees = range("poincare", entry.poincare_degrees);
      entry.hardy_degrees = range("hardy", entry.hardy_degrees);
    }
    if (e.contains("tolerances")) {
      const auto& t = e.at("tolerances");
      if (t.contains("consistency"))
        entry.consistency_tol = t.at("consistency").get<double>();
      if (t.contains("monotonicity"))
        entry.monotonicity_tol = t.at("monotonicity").get<double>();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

namespace harness_detail {

inline std::string settings_summary(const std::vector<CatalogEntry>& entries,
                                    const HarnessSettings& settings) {
  std::ostringstream os;
  os << "star_gamma_bound="
     << (settings.propagation.use_cited_star_gamma_bound ? 1 : 0)
     << ";avkhadiev="
     << (settings.propagation.avkhadiev_mode == AvkhadievMode::corrected
             ? "corrected"
             : "as_printed")
     << ";refinement=" << settings.quadrature.refinement_polygon << ","
     << settings.quadrature.refinement_curved;
  for (const CatalogEntry& e : entries) {
    os << ";" << e.name << ":g" << e.gamma_degrees.n_min << "-"
       << e.gamma_degrees.n_max << ",p" << e.poincare_degrees.n_min << "-"
       << e.poincare_degrees.n_max << ",h" << e.hardy_degrees.n_min << "-"
       << e.hardy_degrees.n_max << ",tol" << fmt12(e.consistency_tol) << ","
       << fmt12(e.monotonicity_tol);
  }
  return os.str();
}

} // namespace harness_detail

/// Runs the full catalog. Entries may run concurrently (`max_threads`; 0
/// means hardware concurrency); rows keep catalog order regardless.
inline VerificationReport run_catalog(const std::vector<CatalogEntry>& entries,
                                      const HarnessSettings& settings = {},
                                      int max_threads = 0) {
  if (max_threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    max_threads = hw > 0 ? static_cast<int>(hw) : 1;
  }
  std::vector<harness_detail::EntryResult> per_entry(entries.size());
  std::vector<std::vector<CheckResult>> per_entry_props(entries.size());

  auto work = [&](std::size_t i) {
    per_entry[i] = run_entry(entries[i], settings);
    per_entry_props[i] = run_property_checks(entries[i], settings);
  };
  if (max_threads == 1 || entries.size() <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) work(i);
  } else {
    for (std::size_t start = 0; start < entries.size();
         start += static_cast<std::size_t>(max_threads)) {
      std::vector<std::future<void>> batch;
      const std::size_t stop = std::min(
          entries.size(), start + static_cast<std::size_t>(max_threads));
      for (std::size_t i = start; i < stop; ++i)
        batch.push_back(std::async(std::launch::async, work, i));
      for (auto& f : batch) f.get();
    }
  }

  VerificationReport report;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (auto& row : per_entry[i].rows) report.rows.push_back(std::move(row));
    for (auto& chk : per_entry[i].checks)
      report.checks.push_back(std::move(chk));
    for (auto& chk : per_entry_props[i])
      report.checks.push_back(std::move(chk));
  }
  report.global_pass = true;
  for (const ReportRow& row : report.rows)
    if (!row.pass) report.global_pass = false;
  for (const CheckResult& chk : report.checks)
    if (!chk.pass) report.global_pass = false;
  report.settings = harness_detail::settings_summary(entries, settings);
  report.config_hash = fnv1a_hex(report.settings);
  return report;
}

/// CSV: exactly domain,constant,estimate,interval_lo,interval_hi,margin,status
/// with 12 significant digits and LF line endings.
inline std::string emit_report_csv(const VerificationReport& report) {
  std::string out = "domain,constant,estimate,interval_lo,interval_hi,margin,status\n";
  for (const ReportRow& r : report.rows) {
    out += r.domain_name + "," + r.constant + "," + fmt12(r.estimate) + "," +
           fmt12(r.interval_lo) + "," + fmt12(r.interval_hi) + "," +
           fmt12(r.margin) + "," + (r.pass ? "pass" : "fail") + "\n";
  }
  return out;
}

inline std::string emit_report_json(const VerificationReport& report) {
  std::string out = "{\n";
  out += "  \"global_status\": ";
  out += report.global_pass ? "\"pass\"" : "\"fail\"";
  out += ",\n  \"provenance\": {\"config_hash\": " + json_quote(report.config_hash) +
         ", \"settings\": " + json_quote(report.settings) + "},\n";
  out += "  \"rows\": [\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ReportRow& r = report.rows[i];
    out += "    {\"domain\": " + json_quote(r.domain_name) +
           ", \"constant\": " + json_quote(r.constant) +
           ", \"estimate\": " + json_bound(r.estimate) +
           ", \"interval_lo\": " + json_bound(r.interval_lo) +
           ", \"interval_hi\": " + json_bound(r.interval_hi) +
           ", \"margin\": " + json_bound(r.margin) + ", \"status\": " +
           (r.pass ? std::string("\"pass\"") : std::string("\"fail\"")) +
           ", \"error\": " + json_quote(r.error) + "}";
    out += i + 1 < report.rows.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"checks\": [\n";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const CheckResult& c = report.checks[i];
    out += "    {\"name\": " + json_quote(c.name) + ", \"status\": " +
           (c.pass ? std::string("\"pass\"") : std::string("\"fail\"")) +
           ", \"detail\": " + json_quote(c.detail) + "}";
    out += i + 1 < report.checks.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

} // namespace domconst
