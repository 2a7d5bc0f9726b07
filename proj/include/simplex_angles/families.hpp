#pragma once

// Parameterized degenerating simplex families and the per-epsilon study report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "simplex_angles/geometry.hpp"

namespace simplex_angles {

enum class FamilyName { Path, Needle, Cap, Sliver, Splinter, Regular, Random };

std::string_view to_string(FamilyName f);
std::optional<FamilyName> parse_family_name(std::string_view s);
const std::vector<FamilyName>& all_families();

// One line describing how the family is built, for reports.
std::string_view construction_note(FamilyName f);

struct FamilySpec {
  FamilyName name = FamilyName::Regular;
  Index dim = 3;
  std::vector<double> schedule;  // strictly decreasing, positive
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

// eps_k = start * factor^k for k = 0..count-1.
std::vector<double> geometric_schedule(double start, double factor, int count);

// Regular d-simplex with unit edges in R^d, vertex 0 at the origin.
Simplex<double> regular_simplex(Index d);

// Corner simplex conv{0, e_1, ..., e_d}.
Simplex<double> corner_simplex(Index d);

// d+1 vertices uniform in [0, 1]^d, redrawn until nondegenerate.
Simplex<double> random_simplex(Index d, std::mt19937_64& rng);

// Single family member; `rng` is only consulted by the random family.
Simplex<double> family_member(FamilyName name, Index d, double eps, std::mt19937_64& rng);

std::vector<Simplex<double>> generate_family(const FamilySpec& spec);

struct FamilyRow {
  double eps = 0.0;
  double min_vertex_sine = 0.0;
  double best_edge_sine = 0.0;
  double max_dihedral = 0.0;
  double jamet_theta = 0.0;
  double interp_ratio = 0.0;

  bool operator==(const FamilyRow&) const = default;
};

struct FamilyReport {
  FamilyName family = FamilyName::Regular;
  Index dim = 0;
  std::vector<FamilyRow> rows;
};

FamilyRow analyze_member(const Simplex<double>& s, double eps, int lattice_order = 20);
FamilyReport run_family_study(const FamilySpec& spec, int lattice_order = 20);

inline constexpr const char* kFamilyCsvHeader =
    "eps,min_vertex_sine,best_edge_sine,max_dihedral,jamet_theta,interp_ratio";

void write_csv(std::ostream& os, const FamilyReport& report);
std::vector<FamilyRow> read_csv(std::istream& is);  // throws std::runtime_error on malformed input

}  // namespace simplex_angles
