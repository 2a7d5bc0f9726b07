#include "simplex_angles/families.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "simplex_angles/conditions.hpp"
#include "simplex_angles/interpolation.hpp"

namespace simplex_angles {

namespace {

struct FamilyEntry {
  FamilyName name;
  std::string_view label;
  std::string_view note;
};

constexpr FamilyEntry kFamilies[] = {
    {FamilyName::Path, "path", "orthoscheme A_j = A_{j-1} + eps^{j-1} e_j"},
    {FamilyName::Needle, "needle",
     "A_0 = 0, remaining vertices e_1 + eps * (unit regular (d-1)-simplex centred in x_2..x_d)"},
    {FamilyName::Cap, "cap", "unit regular (d-1)-simplex base centred at 0 in x_d = 0, apex at height eps"},
    {FamilyName::Sliver, "sliver", "(-1,0,eps/2), (1,0,eps/2), (0,-1,-eps/2), (0,1,-eps/2)"},
    {FamilyName::Splinter, "splinter", "unit regular simplex with x_2..x_d scaled by eps"},
    {FamilyName::Regular, "regular", "unit regular simplex, eps ignored"},
    {FamilyName::Random, "random", "vertices uniform in [0,1]^d from a seeded mt19937_64, eps ignored"},
};

const FamilyEntry& entry(FamilyName f) {
  for (const auto& e : kFamilies)
    if (e.name == f) return e;
  throw std::invalid_argument("unknown family");
}

// Regular (d-1)-simplex with unit edges and centroid at the origin, as columns in R^{d-1}.
Eigen::MatrixXd centred_regular(Index k) {
  Eigen::MatrixXd v = regular_simplex(k).vertices();
  v.colwise() -= v.rowwise().mean();
  return v;
}

}  // namespace

std::string_view to_string(FamilyName f) { return entry(f).label; }

std::optional<FamilyName> parse_family_name(std::string_view s) {
  for (const auto& e : kFamilies)
    if (e.label == s) return e.name;
  return std::nullopt;
}

const std::vector<FamilyName>& all_families() {
  static const std::vector<FamilyName> names = [] {
    std::vector<FamilyName> v;
    for (const auto& e : kFamilies) v.push_back(e.name);
    return v;
  }();
  return names;
}

std::string_view construction_note(FamilyName f) { return entry(f).note; }

void FamilySpec::validate() const {
  if (dim < 2) throw std::invalid_argument("family dimension must be at least 2");
  if (name == FamilyName::Sliver && dim != 3) throw std::invalid_argument("the sliver family exists only for d = 3");
  if (schedule.empty()) throw std::invalid_argument("the parameter schedule is empty");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0) || !std::isfinite(schedule[k]))
      throw std::invalid_argument("schedule entries must be positive and finite");
    if (k > 0 && !(schedule[k] < schedule[k - 1]))
      throw std::invalid_argument("schedule must be strictly decreasing");
  }
}

std::vector<double> geometric_schedule(double start, double factor, int count) {
  if (count < 1) throw std::invalid_argument("schedule count must be at least 1");
  if (!(start > 0.0) || !std::isfinite(start)) throw std::invalid_argument("schedule start must be positive");
  if (count > 1 && !(factor > 0.0 && factor < 1.0))
    throw std::invalid_argument("schedule factor must lie in (0, 1)");
  std::vector<double> eps(static_cast<std::size_t>(count));
  double e = start;
  for (auto& x : eps) {
    x = e;
    e *= factor;
  }
  return eps;
}

Simplex<double> regular_simplex(Index d) {
  if (d < 1) throw std::invalid_argument("regular simplex needs d >= 1");
  // e_1, ..., e_{d+1} / sqrt(2) has unit edges; express it in its own hull.
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(d + 1, d + 1) / std::sqrt(2.0);
  return Simplex<double>(affine_frame(e).coordinates);
}

Simplex<double> corner_simplex(Index d) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d + 1);
  v.rightCols(d).setIdentity();
  return Simplex<double>(std::move(v));
}

Simplex<double> random_simplex(Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd v(d, d + 1);
    for (Index j = 0; j <= d; ++j)
      for (Index i = 0; i < d; ++i) v(i, j) = unit(rng);
    bool distinct = true;
    for (Index a = 0; a <= d && distinct; ++a)
      for (Index b = a + 1; b <= d; ++b)
        if (v.col(a) == v.col(b)) distinct = false;
    if (!distinct) continue;
    Simplex<double> s(std::move(v));
    if (!is_degenerate(s)) return s;
  }
}

Simplex<double> family_member(FamilyName name, Index d, double eps, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("family dimension must be at least 2");
  if (!(eps > 0.0)) throw std::invalid_argument("family parameter must be positive");
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d + 1);
  switch (name) {
    case FamilyName::Path: {
      double len = 1.0;
      for (Index j = 1; j <= d; ++j) {
        v.col(j) = v.col(j - 1);
        v(j - 1, j) += len;
        len *= eps;
      }
      break;
    }
    case FamilyName::Needle: {
      const Eigen::MatrixXd base = centred_regular(d - 1);
      for (Index j = 1; j <= d; ++j) {
        v(0, j) = 1.0;
        v.col(j).tail(d - 1) = eps * base.col(j - 1);
      }
      break;
    }
    case FamilyName::Cap: {
      v.topLeftCorner(d - 1, d) = centred_regular(d - 1);
      v(d - 1, d) = eps;
      break;
    }
    case FamilyName::Sliver: {
      if (d != 3) throw std::invalid_argument("the sliver family exists only for d = 3");
      v << -1.0, 1.0, 0.0, 0.0,
            0.0, 0.0, -1.0, 1.0,
            eps / 2, eps / 2, -eps / 2, -eps / 2;
      break;
    }
    case FamilyName::Splinter: {
      v = regular_simplex(d).vertices();
      v.bottomRows(d - 1) *= eps;
      break;
    }
    case FamilyName::Regular:
      return regular_simplex(d);
    case FamilyName::Random:
      return random_simplex(d, rng);
  }
  return Simplex<double>(std::move(v));
}

std::vector<Simplex<double>> generate_family(const FamilySpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::vector<Simplex<double>> out;
  out.reserve(spec.schedule.size());
  for (double eps : spec.schedule) out.push_back(family_member(spec.name, spec.dim, eps, rng));
  return out;
}

FamilyRow analyze_member(const Simplex<double>& s, double eps, int lattice_order) {
  FamilyRow row;
  row.eps = eps;
  row.min_vertex_sine = min_vertex_sine(s);
  row.best_edge_sine = best_edge_sine(s).value;
  row.max_dihedral = max_subsimplex_dihedral(s).value;
  row.jamet_theta = best_jamet_theta(s).value;
  const auto suite = default_quadratic_suite(s.dim());
  row.interp_ratio = interpolation_ratio(s, suite, lattice_order);
  return row;
}

FamilyReport run_family_study(const FamilySpec& spec, int lattice_order) {
  const auto members = generate_family(spec);
  FamilyReport report;
  report.family = spec.name;
  report.dim = spec.dim;
  report.rows.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k)
    report.rows.push_back(analyze_member(members[k], spec.schedule[k], lattice_order));
  return report;
}

void write_csv(std::ostream& os, const FamilyReport& report) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << kFamilyCsvHeader << '\n' << std::setprecision(17);
  for (const FamilyRow& r : report.rows)
    os << r.eps << ',' << r.min_vertex_sine << ',' << r.best_edge_sine << ',' << r.max_dihedral << ','
       << r.jamet_theta << ',' << r.interp_ratio << '\n';
  os.flags(flags);
  os.precision(prec);
}

std::vector<FamilyRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kFamilyCsvHeader)
    throw std::runtime_error("family CSV: missing or unexpected header");
  std::vector<FamilyRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    double vals[6];
    int n = 0;
    while (std::getline(ls, field, ',')) {
      if (n == 6) throw std::runtime_error("family CSV line " + std::to_string(lineno) + ": too many fields");
      std::size_t used = 0;
      try {
        vals[n] = std::stod(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != field.size())
        throw std::runtime_error("family CSV line " + std::to_string(lineno) + ": bad number '" + field + "'");
      ++n;
    }
    if (n != 6) throw std::runtime_error("family CSV line " + std::to_string(lineno) + ": expected 6 fields");
    rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]});
  }
  return rows;
}

}  // namespace simplex_angles
