#include "alphamag/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

#include "alphamag/error.hpp"
#include "format.hpp"

namespace alphamag {

int Barcode::max_degree() const noexcept {
  int d = -1;
  for (const auto& iv : intervals) d = std::max(d, iv.degree);
  return d;
}

std::size_t Barcode::count(int degree) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(intervals.begin(), intervals.end(), [&](const Interval& iv) { return iv.degree == degree; }));
}

Barcode Barcode::scaled(double t) const {
  if (!(t > 0.0)) throw Error(Errc::invalid_scale, "barcode scale must be positive");
  Barcode out = *this;
  for (auto& iv : out.intervals) {
    iv.birth *= t;
    iv.death *= t;
  }
  return out;
}

void Barcode::canonicalize() {
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
}

namespace {

using Position = std::uint32_t;
constexpr Position kNone = std::numeric_limits<Position>::max();

std::uint64_t edge_key(VertexId a, VertexId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

std::string bytes_key(std::span<const VertexId> s) {
  return std::string(reinterpret_cast<const char*>(s.data()), s.size_bytes());
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), oldest_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  Position& oldest(std::size_t root) { return oldest_[root]; }
  void attach(std::size_t child_root, std::size_t parent_root) { parent_[child_root] = parent_root; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<Position> oldest_;
};

// Filtration order plus boundary columns expressed in positions.
struct OrderedComplex {
  std::vector<std::size_t> simplex_at;  // position -> simplex index
  std::vector<Position> position_of;    // simplex index -> position
  std::vector<double> value;            // by position
  std::vector<int> dim;                 // by position
  int max_dim = -1;
};

OrderedComplex order_complex(const FilteredComplex& complex) {
  const std::size_t n = complex.size();
  if (n >= kNone) throw Error(Errc::too_large, "complex has too many simplices");
  OrderedComplex oc;
  oc.simplex_at.resize(n);
  std::iota(oc.simplex_at.begin(), oc.simplex_at.end(), std::size_t{0});
  std::sort(oc.simplex_at.begin(), oc.simplex_at.end(), [&](std::size_t a, std::size_t b) {
    if (complex.value(a) != complex.value(b)) return complex.value(a) < complex.value(b);
    if (complex.dimension(a) != complex.dimension(b)) return complex.dimension(a) < complex.dimension(b);
    const auto sa = complex.simplex(a);
    const auto sb = complex.simplex(b);
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  });
  oc.position_of.resize(n);
  oc.value.resize(n);
  oc.dim.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t s = oc.simplex_at[p];
    oc.position_of[s] = static_cast<Position>(p);
    oc.value[p] = complex.value(s);
    oc.dim[p] = complex.dimension(s);
    oc.max_dim = std::max(oc.max_dim, oc.dim[p]);
  }
  return oc;
}

// Resolves facets to positions, validating closure and monotonicity.
class FaceIndex {
 public:
  FaceIndex(const FilteredComplex& complex, const OrderedComplex& oc) : complex_(complex), oc_(oc) {
    VertexId max_vertex = 0;
    for (std::size_t i = 0; i < complex.size(); ++i) {
      for (VertexId v : complex.simplex(i)) max_vertex = std::max(max_vertex, v);
    }
    vertex_.assign(static_cast<std::size_t>(max_vertex) + 1, kNone);
    for (std::size_t i = 0; i < complex.size(); ++i) {
      const auto s = complex.simplex(i);
      const Position p = oc.position_of[i];
      if (s.empty()) throw Error(Errc::malformed_complex, "empty simplex");
      if (s.size() == 1) {
        vertex_[s[0]] = p;
      } else if (s.size() == 2) {
        edge_.emplace(edge_key(s[0], s[1]), p);
      }
    }
  }

  void enable_higher_faces() {
    for (std::size_t i = 0; i < complex_.size(); ++i) {
      const auto s = complex_.simplex(i);
      if (s.size() >= 3) higher_.emplace(bytes_key(s), oc_.position_of[i]);
    }
  }

  // Boundary of the simplex at position p, sorted ascending.
  void boundary(Position p, std::vector<Position>& out) const {
    out.clear();
    const auto s = complex_.simplex(oc_.simplex_at[p]);
    if (s.size() < 2) return;
    std::vector<VertexId> facet(s.size() - 1);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != drop) facet[k++] = s[i];
      }
      out.push_back(lookup(facet, p));
    }
    std::sort(out.begin(), out.end());
  }

  Position lookup(std::span<const VertexId> facet, Position owner) const {
    Position f = kNone;
    if (facet.size() == 1) {
      f = facet[0] < vertex_.size() ? vertex_[facet[0]] : kNone;
    } else if (facet.size() == 2) {
      const auto it = edge_.find(edge_key(facet[0], facet[1]));
      if (it != edge_.end()) f = it->second;
    } else {
      const auto it = higher_.find(bytes_key(facet));
      if (it != higher_.end()) f = it->second;
    }
    if (f == kNone) throw Error(Errc::malformed_complex, "a face of a listed simplex is missing");
    if (f > owner) throw Error(Errc::malformed_complex, "a face enters after its coface");
    return f;
  }

 private:
  const FilteredComplex& complex_;
  const OrderedComplex& oc_;
  std::vector<Position> vertex_;
  std::unordered_map<std::uint64_t, Position> edge_;
  std::unordered_map<std::string, Position> higher_;
};

void emit(Barcode& barcode, int degree, double birth, double death) {
  if (birth < death) barcode.intervals.push_back({degree, birth, death});
}

Barcode reduce_matrix(const OrderedComplex& oc, FaceIndex& faces) {
  const std::size_t n = oc.value.size();
  if (oc.max_dim >= 3) faces.enable_higher_faces();

  std::vector<std::vector<Position>> columns(n);
  std::vector<Position> pivot_owner(n, kNone);  // low row -> column
  std::vector<char> cleared(n, 0);
  std::vector<char> is_birth(n, 0);
  std::vector<char> is_death(n, 0);
  std::vector<Position> scratch;

  std::vector<std::vector<Position>> by_dim(static_cast<std::size_t>(std::max(oc.max_dim, 0)) + 1);
  for (Position p = 0; p < n; ++p) by_dim[static_cast<std::size_t>(oc.dim[p])].push_back(p);

  Barcode barcode;
  // Twist order: higher dimensions first so their pivots clear lower columns.
  for (int d = oc.max_dim; d >= 1; --d) {
    for (Position j : by_dim[static_cast<std::size_t>(d)]) {
      if (cleared[j]) {
        faces.boundary(j, scratch);  // validation only
        continue;
      }
      std::vector<Position>& col = columns[j];
      faces.boundary(j, col);
      while (!col.empty() && pivot_owner[col.back()] != kNone) {
        const std::vector<Position>& other = columns[pivot_owner[col.back()]];
        scratch.clear();
        std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                      std::back_inserter(scratch));
        col.swap(scratch);
      }
      if (col.empty()) continue;
      const Position low = col.back();
      pivot_owner[low] = j;
      cleared[low] = 1;
      is_birth[low] = 1;
      is_death[j] = 1;
      emit(barcode, d - 1, oc.value[low], oc.value[j]);
    }
  }
  for (Position p = 0; p < n; ++p) {
    if (!is_birth[p] && !is_death[p]) barcode.intervals.push_back({oc.dim[p], oc.value[p], kInfinity});
  }
  return barcode;
}

// H0 by union-find with the elder rule. Marks edges that create cycles.
void zero_dimensional(const OrderedComplex& oc, const FaceIndex& faces, Barcode& barcode,
                      std::vector<char>& creates_cycle) {
  const std::size_t n = oc.value.size();
  UnionFind uf(n);
  creates_cycle.assign(n, 0);
  for (Position p = 0; p < n; ++p) {
    if (oc.dim[p] == 0) uf.oldest(p) = p;
  }
  std::vector<Position> bd;
  for (Position p = 0; p < n; ++p) {
    if (oc.dim[p] != 1) continue;
    faces.boundary(p, bd);
    const std::size_t ra = uf.find(bd[0]);
    const std::size_t rb = uf.find(bd[1]);
    if (ra == rb) {
      creates_cycle[p] = 1;
      continue;
    }
    const bool a_older = uf.oldest(ra) < uf.oldest(rb);
    const std::size_t keep = a_older ? ra : rb;
    const std::size_t die = a_older ? rb : ra;
    emit(barcode, 0, oc.value[uf.oldest(die)], oc.value[p]);
    uf.attach(die, keep);
  }
  for (Position p = 0; p < n; ++p) {
    if (oc.dim[p] == 0 && uf.find(p) == p) barcode.intervals.push_back({0, oc.value[uf.oldest(p)], kInfinity});
  }
}

// H1 of a triangulated planar region via union-find on the dual graph,
// sweeping the filtration backwards. Returns false if the complex is not a
// triangulated disk (the caller then falls back to the matrix reduction).
bool planar_dual_h1(const OrderedComplex& oc, const FaceIndex& faces, const std::vector<char>& creates_cycle,
                    Barcode& barcode) {
  const std::size_t n = oc.value.size();
  // Dual nodes: one per triangle (indexed by position) plus the outer face at n.
  std::vector<std::array<Position, 2>> edge_cofaces(n, {kNone, kNone});
  std::vector<Position> bd;
  for (Position p = 0; p < n; ++p) {
    if (oc.dim[p] != 2) continue;
    faces.boundary(p, bd);
    for (Position e : bd) {
      auto& slots = edge_cofaces[e];
      if (slots[0] == kNone) {
        slots[0] = p;
      } else if (slots[1] == kNone) {
        slots[1] = p;
      } else {
        return false;  // an edge with three cofaces is not planar
      }
    }
  }

  const std::size_t outer = n;
  UnionFind uf(n + 1);
  uf.oldest(outer) = kNone;  // the outer face outlives everything
  Barcode h1;
  std::size_t cycles = 0;
  for (Position p = 0; p < n; ++p) cycles += creates_cycle[p] ? 1 : 0;

  for (Position p = static_cast<Position>(n); p-- > 0;) {
    if (oc.dim[p] == 2) {
      uf.oldest(p) = p;
      continue;
    }
    if (oc.dim[p] != 1) continue;
    const auto& cf = edge_cofaces[p];
    const std::size_t ra = uf.find(cf[0] == kNone ? outer : cf[0]);
    const std::size_t rb = uf.find(cf[1] == kNone ? outer : cf[1]);
    if (ra == rb) continue;
    if (!creates_cycle[p]) return false;
    // Reverse-time elder rule: the component whose oldest triangle comes
    // earliest in the forward filtration is the younger one and dies.
    const bool a_younger = uf.oldest(ra) < uf.oldest(rb);
    const std::size_t die = a_younger ? ra : rb;
    const std::size_t keep = a_younger ? rb : ra;
    emit(h1, 1, oc.value[p], oc.value[uf.oldest(die)]);
    uf.attach(die, keep);
    --cycles;
  }
  if (cycles != 0) return false;
  barcode.intervals.insert(barcode.intervals.end(), h1.intervals.begin(), h1.intervals.end());
  return true;
}

}  // namespace

Barcode compute_persistence(const FilteredComplex& complex, PersistenceAlgorithm algorithm) {
  const OrderedComplex oc = order_complex(complex);
  FaceIndex faces(complex, oc);

  Barcode barcode;
  if (algorithm == PersistenceAlgorithm::automatic && oc.max_dim <= 2) {
    std::vector<char> creates_cycle;
    Barcode h0;
    zero_dimensional(oc, faces, h0, creates_cycle);
    if (oc.max_dim <= 1) {
      barcode = std::move(h0);
      for (Position p = 0; p < oc.value.size(); ++p) {
        if (creates_cycle[p]) barcode.intervals.push_back({1, oc.value[p], kInfinity});
      }
      barcode.canonicalize();
      return barcode;
    }
    if (complex.kind() == ComplexKind::alpha && complex.ambient_dim() == 2 &&
        planar_dual_h1(oc, faces, creates_cycle, h0)) {
      barcode = std::move(h0);
      barcode.canonicalize();
      return barcode;
    }
  }
  barcode = reduce_matrix(oc, faces);
  barcode.canonicalize();
  return barcode;
}

std::vector<std::size_t> betti_at(const Barcode& barcode, double eps) {
  std::vector<std::size_t> betti(static_cast<std::size_t>(std::max(barcode.max_degree(), 0)) + 1, 0);
  for (const auto& iv : barcode.intervals) {
    if (iv.birth <= eps && eps < iv.death) ++betti[static_cast<std::size_t>(iv.degree)];
  }
  return betti;
}

void write_barcode_csv(std::ostream& out, const Barcode& barcode, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "degree,birth,death\n";
  std::string row;
  for (const auto& iv : barcode.intervals) {
    row = std::to_string(iv.degree);
    row.push_back(',');
    detail::append_real(row, iv.birth);
    row.push_back(',');
    detail::append_real(row, iv.death);
    row.push_back('\n');
    out << row;
  }
}

namespace {

double parse_endpoint(std::string_view field, std::size_t line_no) {
  if (field == "inf" || field == "+inf" || field == "Infinity") return kInfinity;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": bad endpoint '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

Barcode read_barcode_csv(std::istream& in) {
  Barcode barcode;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "degree,birth,death") throw Error(Errc::parse_error, "expected header 'degree,birth,death'");
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": 3 columns");
    int degree = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + c1, degree);
    if (ec != std::errc() || ptr != line.data() + c1 || degree < 0) {
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": bad degree");
    }
    const std::string_view view(line);
    const double birth = parse_endpoint(view.substr(c1 + 1, c2 - c1 - 1), line_no);
    const double death = parse_endpoint(view.substr(c2 + 1), line_no);
    if (!(birth < death)) throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": birth >= death");
    barcode.intervals.push_back({degree, birth, death});
  }
  if (!header) throw Error(Errc::parse_error, "missing barcode header");
  barcode.canonicalize();
  return barcode;
}

}  // namespace alphamag
