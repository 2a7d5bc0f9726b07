#include "simplex_angles/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "simplex_angles/conformity.hpp"
#include "simplex_angles/families.hpp"
#include "simplex_angles/identities.hpp"
#include "simplex_angles/interpolation.hpp"
#include "simplex_angles/mesh.hpp"
#include "simplex_angles/mesh_analysis.hpp"

namespace simplex_angles {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to --output when given, to the fallback stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& os() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw std::runtime_error("failed writing output file");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void require_dim(Index d) {
  if (d < 2 || d > kMaxCliDimension)
    throw UsageError("unsupported dimension " + std::to_string(d) + " (supported: 2.." +
                     std::to_string(kMaxCliDimension) + ")");
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw UsageError("unsupported --format '" + f + "' for this command");
}

FamilySpec family_spec(const RunConfig& cfg) {
  const auto name = parse_family_name(cfg.family);
  if (!name) throw UsageError("unknown family '" + cfg.family + "'");
  require_dim(cfg.dim);
  FamilySpec spec;
  spec.name = *name;
  spec.dim = cfg.dim;
  spec.seed = cfg.seed;
  spec.schedule = geometric_schedule(cfg.schedule.start, cfg.schedule.factor, cfg.schedule.count);
  spec.validate();
  return spec;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json witness_json(const ConditionVerdict<double>& v) {
  if (const auto* sel = std::get_if<EdgeSelection<double>>(&v.witness)) {
    json edges = json::array();
    for (const auto& e : sel->edges) edges.push_back({e.from, e.to});
    return {{"edges", edges}};
  }
  if (const auto* sub = std::get_if<SubsimplexWitness>(&v.witness))
    return {{"subsimplex", sub->subsimplex.vertex_indices},
            {"facet_pair", {sub->facet_pair.first, sub->facet_pair.second}}};
  return nullptr;
}

std::string witness_text(const ConditionVerdict<double>& v) {
  std::ostringstream os;
  if (const auto* sel = std::get_if<EdgeSelection<double>>(&v.witness)) {
    os << "edges";
    for (const auto& e : sel->edges) os << ' ' << e.from << '-' << e.to;
  } else if (const auto* sub = std::get_if<SubsimplexWitness>(&v.witness)) {
    os << "subsimplex {";
    for (std::size_t k = 0; k < sub->subsimplex.vertex_indices.size(); ++k)
      os << (k ? "," : "") << sub->subsimplex.vertex_indices[k];
    os << "} facets opposite " << sub->facet_pair.first << ',' << sub->facet_pair.second;
  }
  return os.str();
}

std::string violation_text(const ConformityViolation& v) {
  std::ostringstream os;
  if (v.kind == ConformityViolation::Kind::FacetOvershared) {
    os << "facet {";
    for (std::size_t k = 0; k < v.facet.size(); ++k) os << (k ? "," : "") << v.facet[k];
    os << "} shared by elements";
    for (Index e : v.elements) os << ' ' << e;
  } else {
    os << "elements " << v.elements[0] << " and " << v.elements[1]
       << " meet outside their common face (excess " << std::setprecision(6) << v.excess << ')';
  }
  return os.str();
}

}  // namespace

ScheduleSpec parse_schedule(const std::string& text) {
  std::istringstream is(text);
  std::string a, b, c, extra;
  if (!std::getline(is, a, ',') || !std::getline(is, b, ',') || !std::getline(is, c, ',') ||
      std::getline(is, extra, ','))
    throw std::invalid_argument("schedule must be 'start,factor,count'");
  ScheduleSpec s;
  try {
    std::size_t used = 0;
    s.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument("start");
    s.factor = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument("factor");
    s.count = std::stoi(c, &used);
    if (used != c.size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw std::invalid_argument("schedule must be 'start,factor,count' with numeric fields");
  }
  if (s.count < 1) throw std::invalid_argument("schedule count must be at least 1");
  return s;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_format(cfg.format, {"text", "csv", "json"});
  if (cfg.input.empty()) throw UsageError("analyze needs --input");
  cfg.thresholds.validate();
  const SimplicialMesh mesh = read_mesh_file(cfg.input);
  require_dim(mesh.dim);

  const ConformityReport conf = face_to_face_check(mesh);
  const MeshAnalysis an = analyze_mesh(mesh, cfg.thresholds);
  const MeshSummary& sum = an.summary;
  const bool pass = conf.conforming && sum.violating == 0 && sum.failed == 0;

  Sink sink(cfg.output, out);
  std::ostream& os = sink.os();
  os << std::setprecision(17);
  if (cfg.format == "json") {
    json j;
    j["dim"] = mesh.dim;
    j["thresholds"] = {{"gamma0", cfg.thresholds.gamma0},
                       {"min_sine", cfg.thresholds.min_sine},
                       {"theta0", cfg.thresholds.theta0}};
    j["conforming"] = conf.conforming;
    j["violations"] = json::array();
    for (const auto& v : conf.violations)
      j["violations"].push_back({{"kind", v.kind == ConformityViolation::Kind::Overlap ? "overlap" : "facet"},
                                 {"elements", v.elements},
                                 {"facet", v.facet},
                                 {"excess", v.excess}});
    j["elements"] = json::array();
    for (const AngleReport& r : an.reports) {
      json e{{"element", r.element}, {"measure", r.measure}, {"diameter", r.diameter}};
      if (r.error) {
        e["error"] = *r.error;
      } else {
        e["satisfied"] = r.satisfied();
        for (const auto& [cond, v] : r.verdicts)
          e["conditions"][to_string(cond)] = {{"quantity", number(v.quantity)},
                                              {"threshold", v.threshold},
                                              {"satisfied", v.satisfied},
                                              {"witness", witness_json(v)}};
      }
      j["elements"].push_back(std::move(e));
    }
    j["summary"] = {{"elements", sum.elements},
                    {"violating", sum.violating},
                    {"failed", sum.failed},
                    {"min_min_vertex_sine", number(sum.min_min_vertex_sine)},
                    {"min_best_edge_sine", number(sum.min_best_edge_sine)},
                    {"max_max_dihedral", number(sum.max_max_dihedral)},
                    {"max_jamet_theta", number(sum.max_jamet_theta)}};
    j["pass"] = pass;
    os << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "element,measure,diameter,min_vertex_sine,best_edge_sine,max_dihedral,jamet_theta,satisfied,error\n";
    for (const AngleReport& r : an.reports)
      os << r.element << ',' << r.measure << ',' << r.diameter << ',' << r.min_vertex_sine << ','
         << r.best_edge_sine << ',' << r.max_dihedral << ',' << r.jamet_theta << ',' << (r.satisfied() ? 1 : 0)
         << ',' << (r.error ? "degenerate" : "") << '\n';
  } else {
    os << "mesh: dim " << mesh.dim << ", " << mesh.num_vertices() << " vertices, " << mesh.num_elements()
       << " elements\n";
    os << "face-to-face: " << (conf.conforming ? "yes" : "NO") << '\n';
    for (const auto& v : conf.violations) os << "  violation: " << violation_text(v) << '\n';
    for (const AngleReport& r : an.reports) {
      os << "element " << r.element << ":";
      if (r.error) {
        os << " not evaluated (" << *r.error << ")\n";
        continue;
      }
      os << (r.satisfied() ? " ok" : " VIOLATES") << '\n';
      for (const auto& [cond, v] : r.verdicts) {
        os << "  " << std::left << std::setw(16) << to_string(cond) << std::right << ' ' << v.quantity
           << (v.satisfied ? "  ok" : "  violated") << " (threshold " << v.threshold << ')';
        const std::string w = witness_text(v);
        if (!w.empty()) os << "  " << w;
        os << '\n';
      }
    }
    os << "summary: min min_vertex_sine " << sum.min_min_vertex_sine << ", min best_edge_sine "
       << sum.min_best_edge_sine << ", max max_dihedral " << sum.max_max_dihedral << ", max jamet_theta "
       << sum.max_jamet_theta << '\n';
    os << "violating elements: " << sum.violating << ", unevaluated: " << sum.failed << '\n';
    os << "result: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  sink.close();
  return pass ? kExitPass : kExitViolation;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_format(cfg.format, {"text"});
  SimplicialMesh mesh;
  std::string note;
  if (cfg.family == "kuhn") {
    require_dim(cfg.dim);
    if (cfg.cells < 1) throw UsageError("--cells must be at least 1");
    mesh = kuhn_cube_mesh(cfg.dim, cfg.cells);
    note = "Kuhn subdivision of the unit cube, " + std::to_string(cfg.cells) + " cells per direction";
  } else {
    const FamilySpec spec = family_spec(cfg);
    mesh = mesh_from_simplices(generate_family(spec));
    note = std::string(to_string(spec.name)) + ": " + std::string(construction_note(spec.name));
  }
  Sink sink(cfg.output, out);
  sink.os() << "# " << note << '\n';
  write_mesh(sink.os(), mesh);
  sink.close();
  return kExitPass;
}

int cmd_study(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg.format, {"csv", "json", "text"});
  if (cfg.lattice_order < 2) throw UsageError("--lattice-order must be at least 2");
  const FamilySpec spec = family_spec(cfg);
  const FamilyReport report = run_family_study(spec, cfg.lattice_order);

  Sink sink(cfg.output, out);
  std::ostream& os = sink.os();
  if (cfg.format == "json") {
    json rows = json::array();
    for (const FamilyRow& r : report.rows)
      rows.push_back({{"eps", r.eps},
                      {"min_vertex_sine", r.min_vertex_sine},
                      {"best_edge_sine", r.best_edge_sine},
                      {"max_dihedral", r.max_dihedral},
                      {"jamet_theta", r.jamet_theta},
                      {"interp_ratio", number(r.interp_ratio)}});
    os << json{{"family", to_string(spec.name)},
               {"construction", construction_note(spec.name)},
               {"dim", spec.dim},
               {"rows", rows}}
              .dump(2)
       << '\n';
  } else if (cfg.format == "text") {
    os << "family " << to_string(spec.name) << " (" << construction_note(spec.name) << "), d = " << spec.dim
       << '\n';
    os << std::setw(12) << "eps" << std::setw(14) << "min_vsine" << std::setw(14) << "edge_sine" << std::setw(14)
       << "max_dihed" << std::setw(14) << "jamet" << std::setw(14) << "interp" << '\n';
    os << std::setprecision(6);
    for (const FamilyRow& r : report.rows)
      os << std::setw(12) << r.eps << std::setw(14) << r.min_vertex_sine << std::setw(14) << r.best_edge_sine
         << std::setw(14) << r.max_dihedral << std::setw(14) << r.jamet_theta << std::setw(14) << r.interp_ratio
         << '\n';
  } else {
    write_csv(os, report);
  }
  sink.close();

  // Implication check on every row, then trend verdicts on the last row.
  constexpr double kFlatDihedral = std::numbers::pi - 0.01;
  bool implication_holds = true;
  for (const FamilyRow& r : report.rows)
    if (r.max_dihedral > kFlatDihedral && r.best_edge_sine >= 0.1) implication_holds = false;
  const FamilyRow& last = report.rows.back();
  const bool codegenerate = last.max_dihedral > kFlatDihedral && last.best_edge_sine < 0.05;
  const bool jamet_link = last.jamet_theta > std::numbers::pi / 2 - 0.05 && last.best_edge_sine < 0.05;

  std::ostream& verdict = sink.to_file() ? out : err;
  verdict << "co-degeneration of edge sine and dihedral angle: " << (codegenerate ? "detected" : "not detected")
          << '\n';
  verdict << "co-degeneration of edge sine and Jamet angle: " << (jamet_link ? "detected" : "not detected") << '\n';
  verdict << "flat dihedral implies small edge sine: " << (implication_holds ? "holds" : "VIOLATED") << '\n';
  return implication_holds ? kExitPass : kExitViolation;
}

int cmd_check_identities(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_format(cfg.format, {"text", "json"});
  require_dim(cfg.dim);
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  const auto results = run_identity_suite(cfg.dim, cfg.trials, cfg.seed);
  bool all = true;
  for (const auto& r : results) all = all && r.passed();

  Sink sink(cfg.output, out);
  std::ostream& os = sink.os();
  if (cfg.format == "json") {
    json j = json::array();
    for (const auto& r : results)
      j.push_back({{"identity", r.name},
                   {"max_violation", r.max_violation},
                   {"tolerance", r.tolerance},
                   {"cases", r.cases},
                   {"passed", r.passed()}});
    os << json{{"dim", cfg.dim}, {"trials", cfg.trials}, {"seed", cfg.seed}, {"results", j}}.dump(2) << '\n';
  } else {
    os << "identity suite: d = " << cfg.dim << ", trials = " << cfg.trials << ", seed = " << cfg.seed << '\n';
    for (const auto& r : results)
      os << std::left << std::setw(18) << r.name << std::right << " max violation " << std::setw(12)
         << std::setprecision(4) << std::scientific << r.max_violation << "  tolerance " << r.tolerance
         << std::defaultfloat << "  cases " << r.cases << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
  }
  sink.close();
  return all ? kExitPass : kExitViolation;
}

int cmd_interp_study(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_format(cfg.format, {"csv", "json"});
  if (cfg.lattice_order < 2) throw UsageError("--lattice-order must be at least 2");
  const FamilySpec spec = family_spec(cfg);
  const auto members = generate_family(spec);
  const auto suite = default_quadratic_suite(spec.dim);

  Sink sink(cfg.output, out);
  std::ostream& os = sink.os();
  json rows = json::array();
  if (cfg.format == "csv") os << "eps,diameter,interp_ratio,sup_value_err,sup_gradient_err\n" << std::setprecision(17);
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Simplex<double>& s = members[k];
    InterpolationError worst;
    for (const TestFunction& v : suite) {
      const InterpolationError e = interpolation_error(s, v, cfg.lattice_order);
      worst.sup_value_err = std::max(worst.sup_value_err, e.sup_value_err);
      worst.sup_gradient_err = std::max(worst.sup_gradient_err, e.sup_gradient_err);
    }
    const double ratio = interpolation_ratio(s, suite, cfg.lattice_order);
    if (cfg.format == "csv")
      os << spec.schedule[k] << ',' << diameter(s) << ',' << ratio << ',' << worst.sup_value_err << ','
         << worst.sup_gradient_err << '\n';
    else
      rows.push_back({{"eps", spec.schedule[k]},
                      {"diameter", diameter(s)},
                      {"interp_ratio", number(ratio)},
                      {"sup_value_err", worst.sup_value_err},
                      {"sup_gradient_err", worst.sup_gradient_err}});
  }
  if (cfg.format == "json")
    os << json{{"family", to_string(spec.name)}, {"dim", spec.dim}, {"rows", rows}}.dump(2) << '\n';
  sink.close();
  return kExitPass;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized angle quantities of d-simplices and meshes"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string schedule_text = "0.5,0.5,20";

  auto add_thresholds = [&](CLI::App* sub) {
    sub->add_option("--gamma0", cfg.thresholds.gamma0, "bound on dihedral angles in radians, in (0, pi)")
        ->capture_default_str();
    sub->add_option("--min-sine", cfg.thresholds.min_sine, "lower bound C on d-sines, > 0")->capture_default_str();
    sub->add_option("--theta0", cfg.thresholds.theta0, "bound on Jamet's angle in radians, in (0, pi/2)")
        ->capture_default_str();
  };
  auto add_family = [&](CLI::App* sub, bool with_schedule) {
    sub->add_option("--family", cfg.family, "path|needle|cap|sliver|splinter|regular|random")->required();
    sub->add_option("--dim", cfg.dim, "simplex dimension, 2..6")->capture_default_str();
    if (with_schedule)
      sub->add_option("--schedule", schedule_text, "start,factor,count for eps_k = start * factor^k")
          ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for the random family")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub, const char* default_format) {
    cfg.format = default_format;
    sub->add_option("--output", cfg.output, "output file (default: standard output)");
    sub->add_option("--format", cfg.format, "text|csv|json")->default_str(default_format);
  };

  CLI::App* analyze = app.add_subcommand("analyze", "check the angle conditions on every element of a mesh");
  analyze->add_option("--input", cfg.input, "mesh file")->required();
  add_thresholds(analyze);
  add_output(analyze, "text");

  CLI::App* generate = app.add_subcommand("generate", "write a family (or a Kuhn cube mesh) as a mesh file");
  add_family(generate, true);
  generate->add_option("--cells", cfg.cells, "cells per direction for --family kuhn")->capture_default_str();
  add_output(generate, "text");

  CLI::App* study = app.add_subcommand("study", "tabulate all quantities along a degenerating family");
  add_family(study, true);
  study->add_option("--lattice-order", cfg.lattice_order, "barycentric lattice order for sup norms")
      ->capture_default_str();
  add_output(study, "csv");

  CLI::App* identities = app.add_subcommand("check-identities", "randomized d-sine identity suite");
  identities->add_option("--dim", cfg.dim, "dimension, 2..6")->capture_default_str();
  identities->add_option("--trials", cfg.trials, "random simplices")->capture_default_str();
  identities->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  add_output(identities, "text");

  CLI::App* interp = app.add_subcommand("interp-study", "interpolation errors along a family");
  add_family(interp, true);
  interp->add_option("--lattice-order", cfg.lattice_order, "barycentric lattice order for sup norms")
      ->capture_default_str();
  add_output(interp, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  // The format default depends on the chosen subcommand.
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--format") == 0) cfg.format = (chosen == study || chosen == interp) ? "csv" : "text";
  cfg.command = chosen->get_name();

  try {
    if (chosen->get_option_no_throw("--schedule") != nullptr) cfg.schedule = parse_schedule(schedule_text);
    if (chosen == analyze) return cmd_analyze(cfg, out, err);
    if (chosen == generate) return cmd_generate(cfg, out, err);
    if (chosen == study) return cmd_study(cfg, out, err);
    if (chosen == identities) return cmd_check_identities(cfg, out, err);
    return cmd_interp_study(cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: mesh parse failed: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "error: invalid mesh: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace simplex_angles
