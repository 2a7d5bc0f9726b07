#include "simplex_angles/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace simplex_angles {

Simplex<double> SimplicialMesh::element(Index e) const {
  const auto& idx = elements.at(static_cast<std::size_t>(e));
  Eigen::MatrixXd v(dim, static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) v.col(static_cast<Index>(k)) = vertices.col(idx[k]);
  return Simplex<double>(std::move(v));
}

void validate(const SimplicialMesh& mesh) {
  if (mesh.dim < 1) throw std::invalid_argument("mesh dimension must be at least 1");
  if (mesh.vertices.rows() != mesh.dim) throw std::invalid_argument("vertex table has the wrong number of rows");
  if (!mesh.vertices.allFinite()) throw std::invalid_argument("vertex coordinates must be finite");

  std::set<std::vector<Index>> seen;
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto& idx = mesh.elements[static_cast<std::size_t>(e)];
    if (static_cast<Index>(idx.size()) != mesh.dim + 1)
      throw ValidationError(e, "expected " + std::to_string(mesh.dim + 1) + " vertex indices, got " +
                                   std::to_string(idx.size()));
    for (Index i : idx)
      if (i < 0 || i >= mesh.num_vertices())
        throw ValidationError(e, "vertex index " + std::to_string(i) + " out of range [0, " +
                                     std::to_string(mesh.num_vertices()) + ")");
    std::vector<Index> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError(e, "repeated vertex index");
    Eigen::MatrixXd v(mesh.dim, mesh.dim + 1);
    for (std::size_t k = 0; k < idx.size(); ++k) v.col(static_cast<Index>(k)) = mesh.vertices.col(idx[k]);
    for (Index a = 0; a <= mesh.dim; ++a)
      for (Index b = a + 1; b <= mesh.dim; ++b)
        if (v.col(a) == v.col(b)) throw ValidationError(e, "two vertices share coordinates");
    if (is_degenerate(affine_frame(v), mesh.dim)) throw ValidationError(e, "element has zero measure");
    if (!seen.insert(sorted).second) throw ValidationError(e, "duplicate element");
  }
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-blank line with comments removed, split on whitespace.
  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(is_, raw)) {
      ++line_;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      tokens.clear();
      for (std::string t; ls >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int line() const { return line_; }

 private:
  std::istream& is_;
  int line_ = 0;
};

template <typename T>
T parse_number(std::string_view tok, int line, int field, const char* what) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, field, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

Index header(LineReader& r, std::vector<std::string>& tok, const char* keyword) {
  if (!r.next(tok)) throw ParseError(r.line() + 1, 0, std::string("missing '") + keyword + "' line");
  if (tok[0] != keyword)
    throw ParseError(r.line(), 1, std::string("expected '") + keyword + "', got '" + tok[0] + "'");
  if (tok.size() != 2) throw ParseError(r.line(), tok.size() < 2 ? 0 : 3, std::string("'") + keyword + "' takes one count");
  const auto n = parse_number<long long>(tok[1], r.line(), 2, "a nonnegative integer");
  if (n < 0) throw ParseError(r.line(), 2, "count must be nonnegative");
  return static_cast<Index>(n);
}

}  // namespace

SimplicialMesh parse_mesh(std::istream& is) {
  LineReader r(is);
  std::vector<std::string> tok;
  SimplicialMesh mesh;

  mesh.dim = header(r, tok, "dim");
  if (mesh.dim < 1) throw ParseError(r.line(), 2, "dimension must be at least 1");

  const Index n = header(r, tok, "vertices");
  mesh.vertices.resize(mesh.dim, n);
  for (Index j = 0; j < n; ++j) {
    if (!r.next(tok)) throw ParseError(r.line() + 1, 0, "expected " + std::to_string(n) + " vertex lines");
    if (static_cast<Index>(tok.size()) != mesh.dim)
      throw ParseError(r.line(), 0, "expected " + std::to_string(mesh.dim) + " coordinates, got " +
                                        std::to_string(tok.size()));
    for (Index i = 0; i < mesh.dim; ++i) {
      const double x = parse_number<double>(tok[static_cast<std::size_t>(i)], r.line(), static_cast<int>(i + 1),
                                            "a coordinate");
      if (!std::isfinite(x)) throw ParseError(r.line(), static_cast<int>(i + 1), "coordinate is not finite");
      mesh.vertices(i, j) = x;
    }
  }

  const Index m = header(r, tok, "elements");
  mesh.elements.reserve(static_cast<std::size_t>(m));
  for (Index e = 0; e < m; ++e) {
    if (!r.next(tok)) throw ParseError(r.line() + 1, 0, "expected " + std::to_string(m) + " element lines");
    std::vector<Index> idx;
    for (std::size_t k = 0; k < tok.size(); ++k)
      idx.push_back(static_cast<Index>(
          parse_number<long long>(tok[k], r.line(), static_cast<int>(k + 1), "a vertex index")));
    mesh.elements.push_back(std::move(idx));
  }
  if (r.next(tok)) throw ParseError(r.line(), 1, "unexpected content after the element list");

  validate(mesh);
  return mesh;
}

SimplicialMesh parse_mesh_string(const std::string& text) {
  std::istringstream is(text);
  return parse_mesh(is);
}

SimplicialMesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path + "'");
  return parse_mesh(in);
}

void write_mesh(std::ostream& os, const SimplicialMesh& mesh) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  os << "dim " << mesh.dim << '\n' << "vertices " << mesh.num_vertices() << '\n';
  for (Index j = 0; j < mesh.num_vertices(); ++j) {
    for (Index i = 0; i < mesh.dim; ++i) os << (i ? " " : "") << mesh.vertices(i, j);
    os << '\n';
  }
  os << "elements " << mesh.num_elements() << '\n';
  for (const auto& el : mesh.elements) {
    for (std::size_t k = 0; k < el.size(); ++k) os << (k ? " " : "") << el[k];
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

std::string to_string(const SimplicialMesh& mesh) {
  std::ostringstream os;
  write_mesh(os, mesh);
  return os.str();
}

SimplicialMesh canonical(SimplicialMesh mesh) {
  for (auto& el : mesh.elements) std::sort(el.begin(), el.end());
  std::sort(mesh.elements.begin(), mesh.elements.end());
  return mesh;
}

SimplicialMesh kuhn_cube_mesh(Index d, Index cells) {
  if (d < 1) throw std::invalid_argument("Kuhn mesh needs d >= 1");
  if (cells < 1) throw std::invalid_argument("Kuhn mesh needs at least one cell per direction");
  const Index side = cells + 1;
  Index n = 1;
  for (Index k = 0; k < d; ++k) n *= side;

  SimplicialMesh mesh;
  mesh.dim = d;
  mesh.vertices.resize(d, n);
  std::vector<Index> stride(static_cast<std::size_t>(d));
  for (Index k = 0, s = 1; k < d; ++k, s *= side) stride[static_cast<std::size_t>(k)] = s;
  for (Index v = 0; v < n; ++v)
    for (Index k = 0; k < d; ++k)
      mesh.vertices(k, v) = static_cast<double>((v / stride[static_cast<std::size_t>(k)]) % side) /
                            static_cast<double>(cells);

  Index cubes = 1;
  for (Index k = 0; k < d; ++k) cubes *= cells;
  std::vector<Index> perm(static_cast<std::size_t>(d));
  for (Index c = 0; c < cubes; ++c) {
    Index corner = 0;
    for (Index k = 0, rest = c; k < d; ++k, rest /= cells)
      corner += (rest % cells) * stride[static_cast<std::size_t>(k)];
    std::iota(perm.begin(), perm.end(), Index{0});
    do {
      std::vector<Index> el{corner};
      for (Index k : perm) el.push_back(el.back() + stride[static_cast<std::size_t>(k)]);
      mesh.elements.push_back(std::move(el));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return mesh;
}

SimplicialMesh mesh_from_simplices(const std::vector<Simplex<double>>& simplices) {
  if (simplices.empty()) throw std::invalid_argument("no simplices given");
  SimplicialMesh mesh;
  mesh.dim = simplices.front().dim();
  Index total = 0;
  for (const auto& s : simplices) {
    if (s.dim() != mesh.dim || s.ambient_dim() != mesh.dim)
      throw std::invalid_argument("all simplices must be d-simplices in the same R^d");
    total += s.num_vertices();
  }
  mesh.vertices.resize(mesh.dim, total);
  Index next = 0;
  for (const auto& s : simplices) {
    std::vector<Index> el;
    for (Index j = 0; j < s.num_vertices(); ++j) {
      mesh.vertices.col(next) = s.vertex(j);
      el.push_back(next++);
    }
    mesh.elements.push_back(std::move(el));
  }
  return mesh;
}

}  // namespace simplex_angles
