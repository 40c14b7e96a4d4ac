#include "copnum/generators.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "copnum/error.hpp"
#include "copnum/random.hpp"

namespace copnum {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = static_cast<u128>(result) * base % mod;
    base = static_cast<u128>(base) * base % mod;
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod(std::int64_t a, std::uint64_t m) {
  auto r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

// 2x2 matrix over Z/q, row-major, canonical up to scalar multiples.
using Mat = std::array<std::uint32_t, 4>;

class ProjectiveGroup {
 public:
  explicit ProjectiveGroup(std::uint32_t q) : q_(q) {}

  Mat canonical(Mat m) const {
    for (std::uint32_t x : m) {
      if (x != 0) {
        auto inv = static_cast<std::uint32_t>(pow_mod(x, q_ - 2, q_));
        for (auto& y : m) y = static_cast<std::uint32_t>(std::uint64_t{y} * inv % q_);
        return m;
      }
    }
    throw Error("zero matrix in projective group");
  }

  Mat multiply(const Mat& a, const Mat& b) const {
    auto dot = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z, std::uint32_t w) {
      return static_cast<std::uint32_t>((std::uint64_t{x} * y + std::uint64_t{z} * w) % q_);
    };
    return canonical({dot(a[0], b[0], a[1], b[2]), dot(a[0], b[1], a[1], b[3]),
                      dot(a[2], b[0], a[3], b[2]), dot(a[2], b[1], a[3], b[3])});
  }

  std::uint64_t key(const Mat& m) const {
    return ((std::uint64_t{m[0]} * q_ + m[1]) * q_ + m[2]) * q_ + m[3];
  }

 private:
  std::uint32_t q_;
};

}  // namespace

int legendre(std::int64_t a, std::uint64_t p) {
  auto r = pow_mod(mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

LpsGraph lps_graph(LpsParams params) {
  const std::uint32_t p = params.p;
  const std::uint32_t q = params.q;
  if (!is_prime(p)) throw PreconditionError("p = " + std::to_string(p) + " is not prime");
  if (!is_prime(q)) throw PreconditionError("q = " + std::to_string(q) + " is not prime");
  if (p % 4 != 1) throw PreconditionError("p must be 1 mod 4");
  if (q % 4 != 1) throw PreconditionError("q must be 1 mod 4");
  if (p == q) throw PreconditionError("p and q must be distinct");
  if (std::uint64_t{q} * q <= 4ULL * p) throw PreconditionError("q must exceed 2 sqrt(p)");
  if (q > 2000) throw PreconditionError("q too large for an explicit construction");

  LpsRecord rec;
  rec.p = p;
  rec.q = q;
  rec.legendre_p_over_q = legendre(p, q);
  rec.legendre_q_over_p = legendre(q, p);
  rec.expected_n = std::uint64_t{q} * (std::uint64_t{q} * q - 1);
  rec.expected_d = p + 1;
  rec.girth_lower_bound = 4.0 * std::log(static_cast<double>(q)) / std::log(static_cast<double>(p)) - 1.0;
  rec.girth_floor = static_cast<std::uint32_t>(std::ceil(rec.girth_lower_bound));
  rec.q_at_most_exp_p1 = std::log(static_cast<double>(q)) <= p + 1.0;
  if (rec.legendre_p_over_q != -1) {
    throw PreconditionError("(p/q) = 1 gives the non-bipartite PSL(2, q) case, which is not supported");
  }

  // Quaternions a0^2 + a1^2 + a2^2 + a3^2 = p with a0 > 0 odd, a1..a3 even.
  std::vector<std::array<std::int64_t, 4>> quads;
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + 1;
  for (std::int64_t a0 = 1; a0 <= bound; a0 += 2) {
    for (std::int64_t a1 = -bound; a1 <= bound; ++a1) {
      for (std::int64_t a2 = -bound; a2 <= bound; ++a2) {
        for (std::int64_t a3 = -bound; a3 <= bound; ++a3) {
          if (a1 % 2 || a2 % 2 || a3 % 2) continue;
          if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p) quads.push_back({a0, a1, a2, a3});
        }
      }
    }
  }
  if (quads.size() != p + 1) {
    throw Error("found " + std::to_string(quads.size()) + " generator quaternions, expected " +
                std::to_string(p + 1));
  }

  std::uint64_t i_unit = 0;
  for (std::uint64_t x = 1; x < q; ++x) {
    if (x * x % q == q - 1) {
      i_unit = x;
      break;
    }
  }

  ProjectiveGroup group(q);
  std::vector<Mat> generators;
  for (const auto& a : quads) {
    auto entry = [&](std::int64_t re, std::int64_t im) {
      return static_cast<std::uint32_t>(mod(re + static_cast<std::int64_t>(i_unit) * im, q));
    };
    generators.push_back(group.canonical(
        {entry(a[0], a[1]), entry(a[2], a[3]), entry(-a[2], a[3]), entry(a[0], -a[1])}));
  }

  std::unordered_map<std::uint64_t, Vertex> index;
  std::vector<Mat> elements{group.canonical({1, 0, 0, 1})};
  index.emplace(group.key(elements[0]), 0);
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    const Mat x = elements[head];
    for (const Mat& s : generators) {
      Mat y = group.multiply(x, s);
      auto [it, inserted] = index.emplace(group.key(y), static_cast<Vertex>(elements.size()));
      if (inserted) elements.push_back(y);
      if (head < it->second) edges.push_back({static_cast<Vertex>(head), it->second});
    }
  }

  LpsGraph out{Graph::from_edges(elements.size(), edges), rec};
  auto& r = out.record;
  r.n = out.graph.order();
  r.regular = out.graph.is_regular() && out.graph.min_degree() == r.expected_d;
  r.connected = out.graph.is_connected() && r.n == r.expected_n;
  r.bipartite = out.graph.is_bipartite();
  r.girth = girth(out.graph).girth;
  return out;
}

namespace {

struct NameSpec {
  std::string name;
  std::vector<std::uint64_t> args;
};

NameSpec parse_name(std::string_view text) {
  NameSpec spec;
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  }
  auto open = s.find('(');
  if (open == std::string::npos) {
    spec.name = s;
    return spec;
  }
  if (s.back() != ')') throw PreconditionError("malformed graph name '" + std::string(text) + "'");
  spec.name = s.substr(0, open);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= inner.size() && !inner.empty()) {
    auto comma = inner.find(',', pos);
    std::string token = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      throw PreconditionError("invalid size parameter '" + token + "' in '" + std::string(text) + "'");
    }
    spec.args.push_back(std::stoull(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

void require_args(const NameSpec& spec, std::size_t count) {
  if (spec.args.size() != count) {
    throw PreconditionError(spec.name + " takes " + std::to_string(count) + " parameter(s)");
  }
}

Graph lcf_graph(std::size_t n, std::initializer_list<int> pattern) {
  std::vector<Edge> edges;
  std::vector<int> jumps(pattern);
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
    auto target = (static_cast<long>(i) + jumps[i % jumps.size()] + static_cast<long>(n)) % static_cast<long>(n);
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(target)});
  }
  return Graph::from_edges(n, edges);
}

constexpr std::uint64_t kMaxNamedOrder = 1u << 20;

}  // namespace

Graph named_graph(std::string_view name) {
  NameSpec spec = parse_name(name);
  std::vector<Edge> edges;
  auto check_order = [&](std::uint64_t n, std::uint64_t min) {
    if (n < min || n > kMaxNamedOrder) {
      throw PreconditionError("invalid size parameter for " + spec.name + ": " + std::to_string(n));
    }
  };

  if (spec.name == "path") {
    require_args(spec, 1);
    auto n = spec.args[0];
    check_order(n, 1);
    for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph::from_edges(n, edges);
  }
  if (spec.name == "cycle") {
    require_args(spec, 1);
    auto n = spec.args[0];
    check_order(n, 3);
    for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
    return Graph::from_edges(n, edges);
  }
  if (spec.name == "complete") {
    require_args(spec, 1);
    auto n = spec.args[0];
    check_order(n, 1);
    if (n > 4096) throw PreconditionError("complete graph too large");
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
    }
    return Graph::from_edges(n, edges);
  }
  if (spec.name == "complete_bipartite") {
    require_args(spec, 2);
    auto a = spec.args[0];
    auto b = spec.args[1];
    check_order(a, 1);
    check_order(b, 1);
    if (a * b > (1u << 24)) throw PreconditionError("complete bipartite graph too large");
    for (Vertex i = 0; i < a; ++i) {
      for (Vertex j = 0; j < b; ++j) edges.push_back({i, static_cast<Vertex>(a + j)});
    }
    return Graph::from_edges(a + b, edges);
  }
  if (spec.name == "hypercube") {
    require_args(spec, 1);
    auto k = spec.args[0];
    if (k > 20) throw PreconditionError("invalid size parameter for hypercube: " + std::to_string(k));
    const Vertex n = Vertex{1} << k;
    for (Vertex x = 0; x < n; ++x) {
      for (std::uint32_t b = 0; b < k; ++b) {
        Vertex y = x ^ (Vertex{1} << b);
        if (x < y) edges.push_back({x, y});
      }
    }
    return Graph::from_edges(n, edges);
  }
  if (spec.name == "petersen") {
    require_args(spec, 0);
    for (Vertex i = 0; i < 5; ++i) {
      edges.push_back({i, (i + 1) % 5});
      edges.push_back({i, i + 5});
      edges.push_back({i + 5, 5 + (i + 2) % 5});
    }
    return Graph::from_edges(10, edges);
  }
  if (spec.name == "heawood") {
    require_args(spec, 0);
    return lcf_graph(14, {5, -5});
  }
  if (spec.name == "mcgee") {
    require_args(spec, 0);
    return lcf_graph(24, {12, 7, -7});
  }
  if (spec.name == "tutte_coxeter") {
    require_args(spec, 0);
    return lcf_graph(30, {-13, -9, 7, -7, 9, 13});
  }
  if (spec.name == "random_tree") {
    require_args(spec, 2);
    auto n = spec.args[0];
    check_order(n, 1);
    Rng rng(spec.args[1]);
    for (Vertex i = 1; i < n; ++i) {
      edges.push_back({static_cast<Vertex>(uniform_below(rng, i)), i});
    }
    return Graph::from_edges(n, edges);
  }
  throw PreconditionError("unknown graph name '" + std::string(name) + "'");
}

std::uint64_t moore_bound(std::uint32_t d, std::uint32_t g) {
  if (d == 0) return 1;
  if (g < 3) g = 3;
  // Sum of (d-1)^i for i < floor(g/2).
  std::uint64_t sum = 0;
  for (std::uint32_t i = 0; i < g / 2; ++i) sum += saturating_pow(d - 1ULL, i);
  if (g % 2 == 1) return 1 + std::uint64_t{d} * sum;
  return 2 * sum;
}

namespace {

// Adds u-v to the partial graph unless it closes a cycle shorter than g_min.
class PartialGraph {
 public:
  PartialGraph(std::uint32_t n, std::uint32_t d) : adj_(n), dist_(n, kInfinity) {
    for (auto& a : adj_) a.reserve(d);
  }

  void clear() {
    for (auto& a : adj_) a.clear();
  }

  bool try_add(Vertex u, Vertex v, std::uint32_t g_min) {
    if (u == v) return false;
    if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) return false;
    // Adding u-v closes a cycle of length dist(u, v) + 1.
    if (g_min > 3 && within(u, v, g_min - 2)) return false;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    return true;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

 private:
  bool within(Vertex from, Vertex to, std::uint32_t radius) {
    queue_.assign(1, from);
    dist_[from] = 0;
    bool found = false;
    for (std::size_t head = 0; head < queue_.size() && !found; ++head) {
      Vertex x = queue_[head];
      if (dist_[x] >= radius) continue;
      for (Vertex y : adj_[x]) {
        if (dist_[y] != kInfinity) continue;
        if (y == to) {
          found = true;
          break;
        }
        dist_[y] = dist_[x] + 1;
        queue_.push_back(y);
      }
    }
    for (Vertex x : queue_) dist_[x] = kInfinity;
    return found;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint32_t> dist_;
  std::vector<Vertex> queue_;
};

}  // namespace

Graph random_regular_girth(std::uint32_t d, std::uint32_t n, std::uint32_t g_min,
                           std::uint64_t seed, std::uint64_t max_attempts) {
  if (d == 0 || n == 0) throw PreconditionError("degree and order must be positive");
  if ((std::uint64_t{d} * n) % 2 != 0) throw PreconditionError("d * n must be even");
  const std::uint64_t moore = moore_bound(d, std::max<std::uint32_t>(g_min, 3));
  if (n < moore) {
    throw PreconditionError("Moore bound requires n >= " + std::to_string(moore) + " for d = " +
                            std::to_string(d) + ", g = " + std::to_string(g_min));
  }

  Rng rng(seed);
  std::vector<Vertex> points(std::size_t{d} * n);
  PartialGraph partial(n, d);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<Vertex>(i / d);
    for (std::size_t i = points.size(); i > 1; --i) {
      std::swap(points[i - 1], points[uniform_below(rng, i)]);
    }
    partial.clear();
    bool ok = true;
    for (std::size_t i = 0; ok && i < points.size(); i += 2) {
      ok = partial.try_add(points[i], points[i + 1], g_min);
    }
    if (!ok) continue;
    auto edges = partial.edges();
    Graph g = Graph::from_edges(n, edges);
    if (!g.is_connected()) continue;
    auto measured = girth(g).girth;
    if (measured && *measured < g_min) continue;
    return g;
  }
  throw GenerationFailure("no " + std::to_string(d) + "-regular graph of order " + std::to_string(n) +
                              " with girth >= " + std::to_string(g_min),
                          max_attempts);
}

}  // namespace copnum
