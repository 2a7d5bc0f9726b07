#pragma once

// Simplicial meshes: shared vertex table plus element index tuples.
//
// Text format (line oriented, '#' starts a comment that runs to end of line):
//   dim <d>
//   vertices <n>
//   <d coordinates>            x n
//   elements <m>
//   <d + 1 vertex indices>     x m   (zero based)

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplex_angles/geometry.hpp"

namespace simplex_angles {

struct SimplicialMesh {
  Index dim = 0;
  Eigen::MatrixXd vertices;                // dim x n
  std::vector<std::vector<Index>> elements; // each of size dim + 1

  Index num_vertices() const { return vertices.cols(); }
  Index num_elements() const { return static_cast<Index>(elements.size()); }
  Simplex<double> element(Index e) const;

  bool operator==(const SimplicialMesh& o) const {
    return dim == o.dim && vertices.rows() == o.vertices.rows() && vertices.cols() == o.vertices.cols() &&
           vertices == o.vertices && elements == o.elements;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", field " + std::to_string(field) + ": " + what),
        line_(line), field_(field) {}
  int line() const noexcept { return line_; }
  int field() const noexcept { return field_; }  // 1-based, 0 when the whole line is at fault

 private:
  int line_;
  int field_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(Index element, const std::string& what)
      : std::runtime_error("element " + std::to_string(element) + ": " + what), element_(element) {}
  Index element() const noexcept { return element_; }

 private:
  Index element_;
};

// Throws ValidationError on out-of-range indices, wrong tuple sizes, repeated
// or affinely dependent vertices, and duplicate elements up to permutation.
void validate(const SimplicialMesh& mesh);

SimplicialMesh parse_mesh(std::istream& is);
SimplicialMesh parse_mesh_string(const std::string& text);
SimplicialMesh read_mesh_file(const std::string& path);  // std::runtime_error when unreadable

// Coordinates with 17 significant digits, so write/parse is lossless.
void write_mesh(std::ostream& os, const SimplicialMesh& mesh);
std::string to_string(const SimplicialMesh& mesh);

// Element tuples sorted, then elements sorted lexicographically.
SimplicialMesh canonical(SimplicialMesh mesh);

// Kuhn subdivision of [0,1]^d on a grid of `cells`^d cubes, d! path simplices
// per cube, each listed along its monotone lattice path.
SimplicialMesh kuhn_cube_mesh(Index d, Index cells = 1);

// Each simplex as its own element with private vertices.
SimplicialMesh mesh_from_simplices(const std::vector<Simplex<double>>& simplices);

}  // namespace simplex_angles
