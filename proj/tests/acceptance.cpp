// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "simplex_angles/cli.hpp"
#include "simplex_angles/conformity.hpp"
#include "simplex_angles/families.hpp"
#include "simplex_angles/interpolation.hpp"
#include "simplex_angles/jamet.hpp"
#include "simplex_angles/mesh.hpp"
#include "simplex_angles/mesh_analysis.hpp"

using namespace simplex_angles;
using Eigen::MatrixXd;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

// sin_d values seen by criteria 1 and 2, for criterion 3.
double g_min_sine = 1.0;
double g_max_sine = 0.0;
long g_sines = 0;

void record_sine(double v) {
  g_min_sine = std::min(g_min_sine, v);
  g_max_sine = std::max(g_max_sine, v);
  ++g_sines;
}

FamilySpec halving_spec(FamilyName f, Index d) {
  FamilySpec s;
  s.name = f;
  s.dim = d;
  s.schedule = geometric_schedule(0.5, 0.5, 20);
  return s;
}

std::map<std::string, FamilyReport> g_reports;

const FamilyReport& report(FamilyName f, Index d) {
  const std::string key = std::string(to_string(f)) + std::to_string(d);
  auto it = g_reports.find(key);
  if (it == g_reports.end()) it = g_reports.emplace(key, run_family_study(halving_spec(f, d))).first;
  return it->second;
}

std::string label(const FamilyReport& r) { return std::string(to_string(r.family)) + " d=" + std::to_string(r.dim); }

Outcome c1_planar_reduction() {
  Clock clock;
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Simplex<double> s = random_simplex(2, rng);
    for (Index i = 0; i < 3; ++i) {
      const double v = sin_d_at_vertex(s, i).value;
      record_sine(v);
      worst = std::max(worst, std::abs(v - std::sin(oracle::triangle_angle(s.vertices(), i))));
    }
  }
  const double secs = clock.seconds();
  return {worst < 1e-12 && secs < 5.0, "max |sin_2 - sin| = " + fmt(worst) + ", " + fmt(secs, 3) + " s"};
}

Outcome c2_product_formula() {
  Clock clock;
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  long pairs = 0;
  for (Index d = 3; d <= 6; ++d)
    for (int t = 0; t < 1000; ++t) {
      const Simplex<double> s = random_simplex(d, rng);
      for (Index i = 0; i <= d; ++i) {
        const double a = sin_d_at_vertex(s, i).value;
        record_sine(a);
        for (Index p = 0; p <= d; ++p) {
          if (p == i) continue;
          const double b = sin_d_via_product(s, i, p).value;
          record_sine(b);
          worst = std::max(worst, std::abs(a - b) / a);
          ++pairs;
        }
      }
    }
  const double secs = clock.seconds();
  return {worst < 1e-9 && secs < 60.0,
          std::to_string(pairs) + " (i, pivot) pairs, max relative difference " + fmt(worst) + ", " + fmt(secs, 3) +
              " s"};
}

Outcome c3_range() {
  return {g_sines > 0 && g_min_sine >= 0.0 && g_max_sine <= 1.0 + 1e-12,
          std::to_string(g_sines) + " values in [" + fmt(g_min_sine) + ", " + fmt(g_max_sine, 17) + "]"};
}

Outcome c4_corner() {
  double worst = 0.0;
  for (Index d = 2; d <= 6; ++d) worst = std::max(worst, std::abs(sin_d_at_vertex(corner_simplex(d), 0).value - 1.0));
  return {worst < 1e-10, "max |sin_d - 1| = " + fmt(worst) + " over d = 2..6"};
}

Outcome c5_regular_dihedral() {
  double worst = 0.0;
  for (Index d = 3; d <= 6; ++d) {
    const Simplex<double> s = regular_simplex(d);
    const double target = std::acos(1.0 / static_cast<double>(d));
    worst = std::max(worst, std::abs(max_subsimplex_dihedral(s).value - target));
    // Independent check through the inverse edge matrix.
    worst = std::max(worst, std::abs(oracle::dihedral_by_inverse(s.vertices(), 0, 1) - target));
  }
  return {worst < 1e-10, "max |dihedral - arccos(1/d)| = " + fmt(worst) + " over d = 3..6"};
}

Outcome c6_degenerating() {
  Clock clock;
  bool ok = true;
  std::string detail;
  for (auto [f, d] : {std::pair{FamilyName::Cap, Index{3}}, std::pair{FamilyName::Sliver, Index{3}},
                      std::pair{FamilyName::Cap, Index{4}}, std::pair{FamilyName::Cap, Index{5}}}) {
    const FamilyReport& r = report(f, d);
    // First row from which the dihedral angle stays above pi - 0.01.
    std::size_t onset = r.rows.size();
    while (onset > 0 && r.rows[onset - 1].max_dihedral > kPi - 0.01) --onset;
    bool fam = onset < r.rows.size();
    for (std::size_t k = onset; k < r.rows.size(); ++k) fam = fam && r.rows[k].best_edge_sine < 0.05;
    for (std::size_t k = r.rows.size() - 9; k < r.rows.size(); ++k)
      fam = fam && r.rows[k].best_edge_sine < r.rows[k - 1].best_edge_sine;
    ok = ok && fam;
    detail += label(r) + (fam ? " ok" : " FAILED") + " (flat from k=" + std::to_string(onset + 1) +
              ", final edge sine " + fmt(r.rows.back().best_edge_sine, 3) + "); ";
  }
  const double secs = clock.seconds();
  return {ok && secs < 600.0, detail + fmt(secs, 3) + " s"};
}

Outcome c7_path() {
  bool ok = true;
  std::string detail;
  for (Index d = 3; d <= 5; ++d) {
    const FamilyReport& r = report(FamilyName::Path, d);
    double max_dihedral = 0.0, lo = 1.0, hi = 0.0, tail_lo = 1.0, tail_hi = 0.0;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
      const FamilyRow& row = r.rows[k];
      max_dihedral = std::max(max_dihedral, row.max_dihedral);
      lo = std::min(lo, row.best_edge_sine);
      hi = std::max(hi, row.best_edge_sine);
      if (k + 10 >= r.rows.size()) {
        tail_lo = std::min(tail_lo, row.best_edge_sine);
        tail_hi = std::max(tail_hi, row.best_edge_sine);
      }
    }
    const double variation = (tail_hi - tail_lo) / tail_lo;
    const bool fam = max_dihedral <= kPi / 2 + 1e-9 && lo > 0.0 && variation < 0.1;
    ok = ok && fam;
    detail += "d=" + std::to_string(d) + (fam ? " ok" : " FAILED") + " (max dihedral " + fmt(max_dihedral, 10) +
              ", min edge sine " + fmt(lo, 4) + ", tail variation " + fmt(variation, 3) + "); ";
  }
  return {ok, detail};
}

Outcome c8_jamet_linkage() {
  const double flat = kPi / 2 - 0.05;
  bool ok = true;
  std::string detail;
  std::vector<const FamilyReport*> reps{&report(FamilyName::Cap, 3), &report(FamilyName::Sliver, 3),
                                        &report(FamilyName::Cap, 4), &report(FamilyName::Cap, 5)};
  for (Index d = 3; d <= 5; ++d) reps.push_back(&report(FamilyName::Path, d));
  for (const FamilyReport* r : reps) {
    std::vector<std::size_t> mismatched;
    double max_theta_bounded = 0.0;
    for (std::size_t k = 0; k < r->rows.size(); ++k) {
      const FamilyRow& row = r->rows[k];
      if ((row.jamet_theta > flat) != (row.best_edge_sine < 0.05)) mismatched.push_back(k + 1);
      if (row.best_edge_sine >= 0.05) max_theta_bounded = std::max(max_theta_bounded, row.jamet_theta);
    }
    const double delta = kPi / 2 - max_theta_bounded;
    const bool need = r->family == FamilyName::Path ? delta > 0.1 : delta > 0.0;
    const bool fam = mismatched.empty() && need;
    ok = ok && fam;
    detail += label(*r) + (fam ? " ok" : " FAILED") + " (delta " + fmt(delta, 4);
    if (!mismatched.empty()) {
      detail += ", mismatched k =";
      for (std::size_t k : mismatched)
        detail += " " + std::to_string(k) + "[edge " + fmt(r->rows[k - 1].best_edge_sine, 4) + ", theta " +
                  fmt(r->rows[k - 1].jamet_theta, 6) + "]";
    }
    detail += "); ";
  }
  return {ok, detail};
}

Outcome c9_planar_jamet_bound() {
  std::mt19937_64 rng(1009);
  int violations = 0;
  double worst = 0.0;
  double worst_corrected = -1.0;
  for (int t = 0; t < 10000; ++t) {
    const Simplex<double> s = random_simplex(2, rng);
    double gamma = 0.0;
    for (Index i = 0; i < 3; ++i) gamma = std::max(gamma, oracle::triangle_angle(s.vertices(), i));
    const double theta = best_jamet_theta(s).value;
    const double excess = theta - (gamma / 2 + 1e-6);
    if (excess > 0) ++violations;
    worst = std::max(worst, excess);
    worst_corrected = std::max(worst_corrected, theta - std::max(gamma, kPi - gamma) / 2);
  }
  return {violations == 0, std::to_string(violations) + " of 10000 triangles exceed gamma/2 + 1e-6 (worst by " +
                               fmt(worst) + " rad); max(theta - max(gamma, pi - gamma)/2) = " +
                               fmt(worst_corrected)};
}

Outcome c10_multistart_oracle() {
  Clock clock;
  std::mt19937_64 rng(1010);
  double worst = 0.0;
  for (Index d = 2; d <= 3; ++d)
    for (int t = 0; t < 100; ++t) {
      const MatrixXd e = oracle::random_unit_vectors(d, rng);
      const double ms = jamet_theta_multistart(UnitVectorTuple<double>(e));
      worst = std::max(worst, std::abs(ms - oracle::dense_jamet(e, 1000000)));
    }
  return {worst < 2e-3, "max |multistart - dense| = " + fmt(worst) + " rad over 200 tuples, " +
                            fmt(clock.seconds(), 3) + " s"};
}

Outcome c11_interpolation() {
  bool ok = true;
  std::string detail;
  for (Index d = 3; d <= 4; ++d) {
    const FamilyReport& r = report(FamilyName::Path, d);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const FamilyRow& row : r.rows) {
      lo = std::min(lo, row.interp_ratio);
      hi = std::max(hi, row.interp_ratio);
    }
    const bool fam = lo > 0.0 && hi / lo < 2.0;
    ok = ok && fam;
    detail += "path d=" + std::to_string(d) + " max/min " + fmt(hi / lo, 4) + (fam ? " ok" : " FAILED") + "; ";
  }
  const FamilyReport& cap = report(FamilyName::Cap, 3);
  const double growth = cap.rows.back().interp_ratio / cap.rows.front().interp_ratio;
  ok = ok && growth > 10.0;
  detail += "cap d=3 growth k=1..20 " + fmt(growth, 4) + (growth > 10.0 ? " ok" : " FAILED");
  return {ok, detail};
}

Outcome c12_mesh_pipeline() {
  bool ok = true;
  std::string detail;
  const Thresholds th{1.6, 0.1, 1.4};
  for (Index d = 2; d <= 4; ++d) {
    SimplicialMesh m = kuhn_cube_mesh(d);
    const bool conforming = face_to_face_check(m).conforming;
    const double gap = std::abs(analyze_mesh(m, th).summary.max_max_dihedral - kPi / 2);

    const Index u = m.elements[0].front(), v = m.elements[0].back();
    oracle::inject_hanging_node(m, 0, u, v);
    const ConformityReport rep = face_to_face_check(m);
    bool named = !rep.conforming && !rep.violations.empty();
    std::string pair;
    for (const auto& viol : rep.violations) {
      named = named && viol.kind == ConformityViolation::Kind::Overlap && viol.elements.size() == 2 &&
              !oracle::pair_conforms(m, viol.elements[0], viol.elements[1]);
      if (pair.empty() && viol.elements.size() == 2)
        pair = "(" + std::to_string(viol.elements[0]) + "," + std::to_string(viol.elements[1]) + ")";
    }
    const bool dim_ok = conforming && gap < 1e-9 && named;
    ok = ok && dim_ok;
    detail += "d=" + std::to_string(d) + (dim_ok ? " ok" : " FAILED") + " (|max dihedral - pi/2| " + fmt(gap, 3) +
              ", hanging node pair " + pair + "); ";
  }
  return {ok, detail};
}

Outcome c13_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  bool ok = true;
  std::string detail;
  for (const char* family : {"random", "sliver"}) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      RunConfig cfg;
      cfg.command = "study";
      cfg.family = family;
      cfg.dim = 3;
      cfg.seed = 2024;
      cfg.format = "csv";
      cfg.output = (dir / ("simplex_angles_acceptance_" + std::string(family) + std::to_string(run) + ".csv")).string();
      std::ostringstream out, err;
      if (cmd_study(cfg, out, err) != kExitPass) ok = false;
      std::ifstream in(cfg.output, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      bytes[run] = ss.str();
      std::remove(cfg.output.c_str());
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    ok = ok && same;
    detail += std::string(family) + ": " + std::to_string(bytes[0].size()) + " bytes " +
              (same ? "identical" : "DIFFER") + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      c1_planar_reduction, c2_product_formula, c3_range,       c4_corner,           c5_regular_dihedral,
      c6_degenerating,     c7_path,            c8_jamet_linkage, c9_planar_jamet_bound, c10_multistart_oracle,
      c11_interpolation,   c12_mesh_pipeline,  c13_determinism};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
