// SPDX-License-Identifier: Apache-2.0
//
// domconst - estimate and bound domain-specific inequality constants.
//
// Subcommands:
//   estimate  lower-bound one constant on a domain (convergence study)
//   bounds    propagate the inequality system over interval seeds
//   verify    run a catalog end to end and emit a report
//   distance  boundary / directional / mean distance debugging
//
// Exit codes: 0 success, 1 mathematical failure (contradiction or failed
// verification), 2 input error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "domconst/bound_calculus.hpp"
#include "domconst/estimators.hpp"
#include "domconst/harness.hpp"
#include "domconst/io.hpp"

namespace {

using namespace domconst;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::string interval_json(const Interval& iv) {
  return "[" + json_bound(iv.lo) + ", " + json_bound(iv.hi) + "]";
}

std::string trace_json(const PropagationTrace& trace) {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceStep& s = trace[i];
    out += std::string(i ? ",\n    " : "\n    ") + "{\"rule\": " +
           json_quote(s.rule) + ", \"constant\": " +
           json_quote(to_string(s.constant)) + ", \"before\": " +
           interval_json(s.before) + ", \"after\": " + interval_json(s.after) +
           "}";
  }
  out += trace.empty() ? "]" : "\n  ]";
  return out;
}

int cmd_estimate(const std::string& domain_path, const std::string& constant,
                 int degree, int quad_order, int refinement,
                 const std::string& format, const std::string& output) {
  const PlanarDomain domain = load_domain(domain_path);
  ConstantName name;
  if (constant == "gamma") name = ConstantName::gamma;
  else if (constant == "poincare") name = ConstantName::poincare;
  else if (constant == "hardy") name = ConstantName::hardy;
  else throw ArgumentError("unknown constant: " + constant);

  QuadraturePolicy policy;
  policy.order_override = quad_order;
  policy.refinement_override = refinement;
  const int n_min = name == ConstantName::hardy ? 0 : 1;
  const RayleighEstimate est =
      convergence_study(name, domain, n_min, degree, policy);

  std::string text;
  if (format == "json") {
    text = "{\n  \"constant\": " + json_quote(to_string(est.constant_name)) +
           ",\n  \"value\": " + fmt12(est.value) +
           ",\n  \"degree\": " + std::to_string(est.degree) +
           ",\n  \"quadrature_order\": " + std::to_string(est.quadrature_order) +
           ",\n  \"history\": [";
    for (std::size_t i = 0; i < est.history.size(); ++i) {
      text += i ? ", " : "";
      text += "[" + std::to_string(est.history[i].first) + ", " +
              fmt12(est.history[i].second) + "]";
    }
    text += "]\n}\n";
  } else {
    text = "constant,degree,value\n";
    for (const auto& [n, v] : est.history)
      text += constant + "," + std::to_string(n) + "," + fmt12(v) + "\n";
  }
  write_output(output, text);
  return 0;
}

int cmd_bounds(const std::string& domain_path, const std::string& facts_path,
               const std::string& seed_path, const PropagationOptions& options,
               const std::string& format, const std::string& output) {
  DomainFacts facts;
  bool is_polygon = false;
  if (!domain_path.empty()) {
    const PlanarDomain domain = load_domain(domain_path);
    is_polygon = domain.is_polygon();
    facts = facts_from_geometry(domain);
  }
  if (!facts_path.empty())
    apply_facts_overrides(facts, load_json_file(facts_path), is_polygon);

  ConstantSet seed;
  if (!seed_path.empty()) {
    const SeedOverride sv = seed_from_json(load_json_file(seed_path));
    for (int i = 0; i < kConstantCount; ++i)
      if (sv[i]) get(seed, static_cast<ConstantId>(i)) = *sv[i];
  }

  PropagationResult result;
  try {
    result = propagate(facts, seed, options);
  } catch (const ContradictionError& e) {
    if (format == "json") {
      write_output(output, std::string("{\n  \"contradiction\": {\"rule\": ") +
                               json_quote(e.rule_name) + ", \"constant\": " +
                               json_quote(e.constant_name) + ", \"message\": " +
                               json_quote(e.what()) + "}\n}\n");
    } else {
      write_output(output, std::string("contradiction,") + e.rule_name + "," +
                               e.constant_name + "\n");
    }
    return 1;
  }

  std::string text;
  if (format == "json") {
    text = "{\n  \"constants\": {";
    for (int i = 0; i < kConstantCount; ++i) {
      const auto id = static_cast<ConstantId>(i);
      text += std::string(i ? ", " : "") + "\n    " + json_quote(to_string(id)) +
              ": " + interval_json(get(result.set, id));
    }
    text += "\n  },\n  \"trace\": " + trace_json(result.trace) + "\n}\n";
  } else {
    text = "constant,lo,hi\n";
    for (int i = 0; i < kConstantCount; ++i) {
      const auto id = static_cast<ConstantId>(i);
      const Interval iv = get(result.set, id);
      text += std::string(to_string(id)) + "," + fmt12(iv.lo) + "," +
              fmt12(iv.hi) + "\n";
    }
    text += "\nrule,constant,before_lo,before_hi,after_lo,after_hi\n";
    for (const TraceStep& s : result.trace) {
      text += "\"" + s.rule + "\"," + to_string(s.constant) + "," +
              fmt12(s.before.lo) + "," + fmt12(s.before.hi) + "," +
              fmt12(s.after.lo) + "," + fmt12(s.after.hi) + "\n";
    }
  }
  write_output(output, text);
  return 0;
}

int cmd_verify(const std::string& catalog_path, const HarnessSettings& settings,
               const std::string& format, const std::string& output) {
  std::vector<CatalogEntry> entries;
  if (catalog_path.empty()) {
    entries = default_catalog();
  } else {
    std::string base_dir;
    const auto slash = catalog_path.find_last_of('/');
    if (slash != std::string::npos) base_dir = catalog_path.substr(0, slash);
    entries = catalog_from_json(load_json_file(catalog_path), base_dir);
  }
  int max_threads = 0;
  if (const char* env = std::getenv("DOMAINCONST_THREADS")) {
    max_threads = std::atoi(env);
    if (max_threads < 1)
      throw ArgumentError("DOMAINCONST_THREADS must be a positive integer");
  }
  const VerificationReport report = run_catalog(entries, settings, max_threads);
  write_output(output, format == "json" ? emit_report_json(report)
                                        : emit_report_csv(report));
  return report.global_pass ? 0 : 1;
}

int cmd_distance(const std::string& domain_path, double x, double y,
                 int angular_nodes, const std::string& format,
                 const std::string& output) {
  const PlanarDomain domain = load_domain(domain_path);
  const Point2 p{x, y};
  const DistanceEval de = boundary_distance(domain, p);
  const double D = mean_distance(domain, p, angular_nodes);
  std::string text;
  if (format == "json") {
    text = "{\n  \"d\": " + fmt12(de.value) + ",\n  \"gradient\": [" +
           fmt12(de.gradient.x) + ", " + fmt12(de.gradient.y) +
           "],\n  \"on_medial_axis\": " +
           (de.on_medial_axis ? "true" : "false") +
           ",\n  \"mean_distance\": " + fmt12(D) + "\n}\n";
  } else {
    text = "d,grad_x,grad_y,on_medial_axis,mean_distance\n" + fmt12(de.value) +
           "," + fmt12(de.gradient.x) + "," + fmt12(de.gradient.y) + "," +
           (de.on_medial_axis ? "true" : "false") + "," + fmt12(D) + "\n";
  }
  write_output(output, text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lower bounds and propagated interval bounds for "
               "domain-specific inequality constants of planar domains"};
  app.require_subcommand(1);

  std::string domain_path, facts_path, seed_path, catalog_path, output = "-";
  std::string constant, format = "json";
  int degree = 8, quad_order = 0, refinement = -1, angular_nodes = 256;
  double x = 0.0, y = 0.0;
  PropagationOptions prop_options;
  std::string avkhadiev = "corrected";

  CLI::App* estimate = app.add_subcommand("estimate", "estimate one constant");
  estimate->add_option("--domain", domain_path, "domain JSON file")->required();
  estimate->add_option("--constant", constant, "gamma | poincare | hardy")
      ->required();
  estimate->add_option("--degree", degree, "largest trial-space degree");
  estimate->add_option("--quad-order", quad_order,
                       "quadrature order override (0 = policy 2*degree+4)");
  estimate->add_option("--refinement", refinement,
                       "mesh refinement override (-1 = per-kind default)");

  CLI::App* bounds = app.add_subcommand("bounds", "propagate interval bounds");
  bounds->add_option("--domain", domain_path, "domain JSON file (optional)");
  bounds->add_option("--facts", facts_path, "facts override JSON file");
  bounds->add_option("--seed", seed_path, "interval seed JSON file");

  CLI::App* verify = app.add_subcommand("verify", "run a verification catalog");
  verify->add_option("--catalog", catalog_path,
                     "catalog JSON file (default: built-in six domains)");

  CLI::App* distance = app.add_subcommand("distance", "distance debugging");
  distance->add_option("--domain", domain_path, "domain JSON file")->required();
  distance->add_option("--x", x, "point x coordinate")->required();
  distance->add_option("--y", y, "point y coordinate")->required();
  distance->add_option("--angular-nodes", angular_nodes,
                       "angles for the mean distance (>= 8)");

  for (CLI::App* sub : {estimate, bounds, verify, distance}) {
    sub->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", output, "output path or - for stdout");
  }
  for (CLI::App* sub : {bounds, verify}) {
    sub->add_flag("--use-cited-star-gamma-bound,!--no-cited-star-gamma-bound",
                  prop_options.use_cited_star_gamma_bound,
                  "narrow gamma by the cited star-shape bound (default on)");
    sub->add_option("--avkhadiev-mode", avkhadiev, "corrected | as_printed")
        ->check(CLI::IsMember({"corrected", "as_printed"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  prop_options.avkhadiev_mode = avkhadiev == "as_printed"
                                    ? AvkhadievMode::as_printed
                                    : AvkhadievMode::corrected;

  try {
    if (estimate->parsed())
      return cmd_estimate(domain_path, constant, degree, quad_order, refinement,
                          format, output);
    if (bounds->parsed())
      return cmd_bounds(domain_path, facts_path, seed_path, prop_options,
                        format, output);
    if (verify->parsed()) {
      HarnessSettings settings;
      settings.propagation = prop_options;
      return cmd_verify(catalog_path, settings, format, output);
    }
    if (distance->parsed())
      return cmd_distance(domain_path, x, y, angular_nodes, format, output);
  } catch (const ContradictionError& e) {
    std::cerr << "contradiction: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
