#include "sicprob/ks.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "sicprob/error.hpp"

namespace sicprob::ks {

namespace {

constexpr QuadInt kZero{0, 0};
constexpr QuadInt kOne{1, 0};
constexpr QuadInt kMinusOne{-1, 0};
constexpr QuadInt kRoot2{0, 1};
constexpr QuadInt kMinusRoot2{0, -1};

bool sign_negative(QuadInt q) { return q.a < 0 || (q.a == 0 && q.b < 0); }

enum class Mark : signed char { Unknown, False, True };

class Colorer {
 public:
  Colorer(const OrthogonalityGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {
    of_ray_.resize(static_cast<std::size_t>(g.vertices));
    for (std::size_t b = 0; b < g.bases.size(); ++b)
      for (int r : g.bases[b]) of_ray_[static_cast<std::size_t>(r)].push_back(static_cast<int>(b));
    // Branch on rays in many bases first; ties by index keep it deterministic.
    order_.resize(static_cast<std::size_t>(g.vertices));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      const auto kx = of_ray_[static_cast<std::size_t>(x)].size() + g_.adjacency[static_cast<std::size_t>(x)].size();
      const auto ky = of_ray_[static_cast<std::size_t>(y)].size() + g_.adjacency[static_cast<std::size_t>(y)].size();
      return kx > ky;
    });
  }

  ColoringResult run() {
    ColoringResult out;
    std::vector<Mark> marks(static_cast<std::size_t>(g_.vertices), Mark::Unknown);
    const bool ok = search(marks);
    out.nodes_explored = nodes_;
    out.colorable = ok;
    if (ok) {
      std::vector<bool> a(marks.size());
      for (std::size_t i = 0; i < marks.size(); ++i) a[i] = marks[i] == Mark::True;
      out.assignment = std::move(a);
    }
    return out;
  }

 private:
  // Assigns `value` to ray r and propagates to a fixed point. Returns false
  // on a contradiction.
  bool assign(std::vector<Mark>& marks, int r, Mark value) const {
    std::vector<std::pair<int, Mark>> queue{{r, value}};
    while (!queue.empty()) {
      auto [v, m] = queue.back();
      queue.pop_back();
      Mark& cur = marks[static_cast<std::size_t>(v)];
      if (cur == m) continue;
      if (cur != Mark::Unknown) return false;
      cur = m;
      if (m == Mark::True) {
        for (int u : g_.adjacency[static_cast<std::size_t>(v)]) queue.emplace_back(u, Mark::False);
      }
      for (int b : of_ray_[static_cast<std::size_t>(v)]) {
        int trues = 0;
        int unknown = -1;
        int unknowns = 0;
        for (int u : g_.bases[static_cast<std::size_t>(b)]) {
          const Mark mu = marks[static_cast<std::size_t>(u)];
          if (mu == Mark::True) ++trues;
          if (mu == Mark::Unknown) {
            ++unknowns;
            unknown = u;
          }
        }
        if (trues > 1) return false;
        if (trues == 0 && unknowns == 0) return false;
        if (trues == 0 && unknowns == 1) queue.emplace_back(unknown, Mark::True);
      }
    }
    return true;
  }

  bool search(std::vector<Mark>& marks) {
    if (++nodes_ > budget_) {
      throw Error(ErrorKind::SearchBudgetExceeded, "ks_colorable: node budget exhausted");
    }
    const auto next = std::find_if(order_.begin(), order_.end(),
                                   [&](int r) { return marks[static_cast<std::size_t>(r)] == Mark::Unknown; });
    if (next == order_.end()) return true;
    for (Mark m : {Mark::True, Mark::False}) {
      std::vector<Mark> trial = marks;
      if (assign(trial, *next, m) && search(trial)) {
        marks = std::move(trial);
        return true;
      }
    }
    return false;
  }

  const OrthogonalityGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<int>> of_ray_;
  std::vector<int> order_;
};

}  // namespace

std::string to_string(QuadInt q) {
  if (q.b == 0) return std::to_string(q.a);
  std::string root = (q.b == 1 ? "" : q.b == -1 ? "-" : std::to_string(q.b)) + "sqrt2";
  if (q.a == 0) return root;
  return std::to_string(q.a) + (q.b > 0 ? "+" : "") + root;
}

Ray::Ray(QuadInt x, QuadInt y, QuadInt z) : c_{x, y, z} {
  const auto first = std::find_if(c_.begin(), c_.end(), [](QuadInt q) { return !q.is_zero(); });
  if (first == c_.end()) throw Error(ErrorKind::InvalidArgument, "ray: zero vector");
  if (sign_negative(*first)) {
    for (auto& q : c_) q = -q;
  }
}

QuadInt Ray::dot(const Ray& o) const { return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2]; }

bool Ray::parallel(const Ray& o) const {
  const auto& u = c_;
  const auto& v = o.c_;
  return (u[1] * v[2] - u[2] * v[1]).is_zero() && (u[2] * v[0] - u[0] * v[2]).is_zero() &&
         (u[0] * v[1] - u[1] * v[0]).is_zero();
}

std::string label(const Ray& r) {
  std::string s;
  for (QuadInt q : r.components()) {
    if (q == kZero) s += "0";
    else if (q == kOne) s += "1";
    else if (q == kMinusOne) s += "-1";
    else if (q == kRoot2) s += "2";
    else if (q == kMinusRoot2) s += "-2";
    else s += "(" + to_string(q) + ")";
  }
  return s;
}

RaySet make_ray_set(const std::vector<Ray>& rays) {
  RaySet rs;
  for (const Ray& r : rays) {
    if (std::find(rs.rays.begin(), rs.rays.end(), r) == rs.rays.end()) rs.rays.push_back(r);
  }
  return rs;
}

RaySet make_ray_set(const std::vector<std::array<Ray, 3>>& triads) {
  RaySet rs;
  for (const auto& t : triads) {
    Triad idx{};
    for (std::size_t k = 0; k < 3; ++k) {
      auto it = std::find(rs.rays.begin(), rs.rays.end(), t[k]);
      if (it == rs.rays.end()) {
        rs.rays.push_back(t[k]);
        it = rs.rays.end() - 1;
      }
      idx[k] = static_cast<int>(it - rs.rays.begin());
    }
    if (!t[0].orthogonal(t[1]) || !t[0].orthogonal(t[2]) || !t[1].orthogonal(t[2])) {
      throw Error(ErrorKind::InvalidArgument,
                  "triad " + label(t[0]) + " " + label(t[1]) + " " + label(t[2]) + " is not orthogonal");
    }
    rs.triads.push_back(idx);
  }
  return rs;
}

RaySet printed_peres_table() {
  constexpr QuadInt o = kZero, l = kOne, m = kMinusOne, s = kRoot2, n = kMinusRoot2;
  // Row 3 is printed as (011, 0-10, 100) in the source table; 011 . 0-10 = -1,
  // so the middle ray is taken as 0-11.
  const std::vector<std::array<Ray, 3>> rows{{
      {Ray{o, o, l}, Ray{l, o, o}, Ray{o, l, o}},
      {Ray{l, o, l}, Ray{m, o, l}, Ray{o, l, o}},
      {Ray{o, l, l}, Ray{o, m, l}, Ray{l, o, o}},
      {Ray{l, m, s}, Ray{m, l, s}, Ray{l, l, o}},
      {Ray{l, o, s}, Ray{n, o, l}, Ray{o, l, o}},
      {Ray{s, l, l}, Ray{o, m, l}, Ray{n, l, l}},
      {Ray{s, o, l}, Ray{o, l, o}, Ray{m, o, s}},
      {Ray{l, l, s}, Ray{l, m, o}, Ray{m, m, s}},
      {Ray{o, l, s}, Ray{l, o, o}, Ray{o, n, l}},
      {Ray{l, s, l}, Ray{m, o, l}, Ray{l, n, l}},
  }};
  RaySet rs = make_ray_set(rows);
  assert(rs.triads.size() == 10);
  return rs;
}

RaySet permutation_closure(const RaySet& rs) {
  RaySet out = rs;
  for (const Ray& r : rs.rays) {
    std::array<int, 3> perm{0, 1, 2};
    do {
      const auto& c = r.components();
      const Ray p{c[static_cast<std::size_t>(perm[0])], c[static_cast<std::size_t>(perm[1])],
                  c[static_cast<std::size_t>(perm[2])]};
      if (std::find(out.rays.begin(), out.rays.end(), p) == out.rays.end()) out.rays.push_back(p);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

RaySet peres_rays() { return permutation_closure(printed_peres_table()); }

bool OrthogonalityGraph::adjacent(int u, int v) const {
  const auto& a = adjacency[static_cast<std::size_t>(u)];
  return std::find(a.begin(), a.end(), v) != a.end();
}

OrthogonalityGraph orthogonality_graph(const RaySet& rs) {
  OrthogonalityGraph g;
  g.vertices = static_cast<int>(rs.rays.size());
  g.adjacency.resize(rs.rays.size());
  for (int i = 0; i < g.vertices; ++i) {
    for (int j = i + 1; j < g.vertices; ++j) {
      if (rs.rays[static_cast<std::size_t>(i)].orthogonal(rs.rays[static_cast<std::size_t>(j)])) {
        g.edges.emplace_back(i, j);
        g.adjacency[static_cast<std::size_t>(i)].push_back(j);
        g.adjacency[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  for (const auto& [i, j] : g.edges) {
    for (int k : g.adjacency[static_cast<std::size_t>(j)]) {
      if (k > j && g.adjacent(i, k)) g.bases.push_back({i, j, k});
    }
  }
  return g;
}

bool is_valid_coloring(const OrthogonalityGraph& g, const std::vector<bool>& a) {
  if (static_cast<int>(a.size()) != g.vertices) return false;
  for (const auto& [i, j] : g.edges) {
    if (a[static_cast<std::size_t>(i)] && a[static_cast<std::size_t>(j)]) return false;
  }
  for (const auto& b : g.bases) {
    int trues = 0;
    for (int r : b) trues += a[static_cast<std::size_t>(r)] ? 1 : 0;
    if (trues != 1) return false;
  }
  return true;
}

ColoringResult ks_colorable(const RaySet& rs, std::uint64_t node_budget) {
  const OrthogonalityGraph g = orthogonality_graph(rs);
  return Colorer(g, node_budget).run();
}

CegaTable cega_table() {
  return CegaTable{{{'a', 'b', 'c', 'd'},
                    {'a', 'e', 'f', 'g'},
                    {'h', 'i', 'c', 'j'},
                    {'h', 'k', 'g', 'l'},
                    {'b', 'e', 'm', 'n'},
                    {'i', 'k', 'n', 'o'},
                    {'p', 'q', 'd', 'j'},
                    {'p', 'r', 'f', 'l'},
                    {'q', 'r', 'm', 'o'}}};
}

ParityVerdict cega_parity_check(const CegaTable& t) {
  if (t.columns.empty()) throw Error(ErrorKind::MalformedTable, "cega: table has no columns");
  std::map<char, int> count;
  for (const auto& col : t.columns) {
    for (char c : col) ++count[c];
  }
  for (const auto& [letter, k] : count) {
    if (k != 2) {
      throw Error(ErrorKind::MalformedTable,
                  std::string("cega: letter '") + letter + "' appears " + std::to_string(k) + " times, expected 2");
    }
  }

  ParityVerdict v;
  v.letters = static_cast<int>(count.size());
  v.total_true_required = static_cast<int>(t.columns.size());
  v.multiplicity_even = true;
  v.contradiction = v.total_true_required % 2 == 1;
  v.proof.push_back("each of " + std::to_string(v.total_true_required) +
                    " columns holds exactly one TRUE letter, so counting by columns gives " +
                    std::to_string(v.total_true_required) + " TRUE slots");
  v.proof.push_back("each of " + std::to_string(v.letters) +
                    " letters occupies exactly two slots, so counting by letters gives an even number of TRUE slots");
  v.proof.push_back(v.contradiction ? std::to_string(v.total_true_required) + " is odd: no assignment exists"
                                    : std::to_string(v.total_true_required) + " is even: parity gives no obstruction");
  return v;
}

}  // namespace sicprob::ks
