#include "copnum/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "copnum/error.hpp"
#include "copnum/parallel.hpp"
#include "copnum/random.hpp"

namespace copnum {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void scale(Vec& a, double s) {
  for (double& x : a) x *= s;
}

// y = (A + shift I) x
void apply(const Graph& g, double shift, const Vec& x, Vec& y) {
  for (Vertex v = 0; v < g.order(); ++v) {
    double s = shift * x[v];
    for (Vertex w : g.neighbors(v)) s += x[w];
    y[v] = s;
  }
}

void project_out(Vec& x, const std::vector<Vec>& basis) {
  for (const auto& q : basis) {
    const double c = dot(x, q);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * q[i];
  }
}

Vec start_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vec x(n);
  for (double& v : x) v = uniform01(rng) - 0.5;
  return x;
}

struct PowerResult {
  double rayleigh = 0;  // of A + shift I
  double residual = 0;
  std::uint64_t iterations = 0;
  Vec vector;
};

// Dominant eigenpair of A + shift I on the complement of `basis`.
PowerResult power_iteration(const Graph& g, double shift, const std::vector<Vec>& basis,
                            const Lambda2Options& options) {
  const std::size_t n = g.order();
  Vec x = start_vector(n, options.seed);
  project_out(x, basis);
  double nx = norm(x);
  if (nx == 0) throw ConvergenceError("power iteration start vector vanished after deflation");
  scale(x, 1.0 / nx);

  Vec y(n);
  PowerResult out;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev_step = std::numeric_limits<double>::quiet_NaN();
  for (std::uint64_t it = 1; it <= options.max_iterations; ++it) {
    apply(g, shift, x, y);
    project_out(y, basis);
    const double rho = dot(x, y);
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) r2 += (y[i] - rho * x[i]) * (y[i] - rho * x[i]);
    out.rayleigh = rho;
    out.residual = std::sqrt(r2);
    out.iterations = it;

    const double ny = norm(y);
    if (ny == 0) {
      out.vector = x;
      return out;
    }
    if (out.residual <= options.tol) {
      out.vector = x;
      return out;
    }
    const double step = rho - prev;
    if (it > 32 && step > 0 && prev_step > 0) {
      const double q = step / prev_step;
      if (q < 1 && step * q / (1 - q) < options.tol * 1e-2) {
        out.vector = x;
        return out;
      }
    }
    prev_step = step;
    prev = rho;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(options.max_iterations) +
                         " iterations");
}

}  // namespace

Lambda2Result lambda2(const Graph& g, Lambda2Options options) {
  const std::size_t n = g.order();
  if (n < 2) throw PreconditionError("second eigenvalue needs at least 2 vertices");
  const double shift = static_cast<double>(g.max_degree());

  std::vector<Vec> basis;
  double lambda1 = 0;
  Vec top(n);
  if (g.is_regular()) {
    std::fill(top.begin(), top.end(), 1.0 / std::sqrt(static_cast<double>(n)));
    lambda1 = static_cast<double>(g.max_degree());
  } else {
    auto p = power_iteration(g, shift, {}, options);
    top = p.vector;
    lambda1 = p.rayleigh - shift;
  }
  basis.push_back(top);
  if (auto sides = g.bipartition()) {
    Vec twin = top;
    for (std::size_t i = 0; i < n; ++i) {
      if ((*sides)[i]) twin[i] = -twin[i];
    }
    project_out(twin, basis);
    const double nt = norm(twin);
    if (nt > 1e-12) {
      scale(twin, 1.0 / nt);
      basis.push_back(twin);
    }
  }
  if (basis.size() >= n) return {-lambda1, 0, 0};

  auto p = power_iteration(g, shift, basis, options);
  return {p.rayleigh - shift, p.residual, p.iterations};
}

// ---------------------------------------------------------------------------

std::uint64_t subsets_up_to(std::size_t n, std::size_t k_max) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, j)
  for (std::size_t j = 1; j <= std::min(k_max, n); ++j) {
    // binom * (n - j + 1) / j without overflow where possible.
    const std::uint64_t num = n - j + 1;
    if (binom > kMax / num) return kMax;
    binom = binom * num / j;
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

std::uint64_t vertex_boundary(const Graph& g, std::span<const Vertex> set) {
  std::vector<std::uint8_t> mark(g.order(), 0);
  for (Vertex v : set) mark[v] = 1;
  std::uint64_t boundary = 0;
  for (Vertex v : set) {
    for (Vertex w : g.neighbors(v)) {
      if (!mark[w]) {
        mark[w] = 2;
        ++boundary;
      }
    }
  }
  return boundary;
}

namespace {

struct Best {
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;
  std::vector<Vertex> set;

  bool empty() const { return size == 0; }
  // Strictly better ratio.
  bool improves(std::uint64_t b, std::uint64_t s) const { return empty() || b * size < boundary * s; }
};

// Enumerates every subset whose smallest vertex is `root`, in lexicographic
// order, keeping the best ratio per exact size.
class SubsetSearch {
 public:
  SubsetSearch(const Graph& g, std::uint32_t k_max) : g_(g), k_max_(k_max), cover_(g.order(), 0), best_(k_max) {}

  std::vector<Best> run(Vertex root) {
    add(root);
    visit();
    extend(root);
    remove(root);
    return std::move(best_);
  }

 private:
  void add(Vertex v) {
    set_.push_back(v);
    if (cover_[v]++ == 0) ++closed_;
    for (Vertex w : g_.neighbors(v)) {
      if (cover_[w]++ == 0) ++closed_;
    }
  }
  void remove(Vertex v) {
    set_.pop_back();
    if (--cover_[v] == 0) --closed_;
    for (Vertex w : g_.neighbors(v)) {
      if (--cover_[w] == 0) --closed_;
    }
  }
  void visit() {
    const std::uint64_t s = set_.size();
    const std::uint64_t b = closed_ - s;
    auto& slot = best_[s - 1];
    if (slot.improves(b, s)) {
      slot.boundary = b;
      slot.size = s;
      slot.set = set_;
    }
  }
  void extend(Vertex last) {
    if (set_.size() >= k_max_) return;
    for (Vertex v = last + 1; v < g_.order(); ++v) {
      add(v);
      visit();
      extend(v);
      remove(v);
    }
  }

  const Graph& g_;
  std::uint32_t k_max_;
  std::vector<std::uint32_t> cover_;
  std::uint64_t closed_ = 0;
  std::vector<Vertex> set_;
  std::vector<Best> best_;
};

IsoProfile assemble(const std::vector<Best>& per_size, std::uint32_t k_max, bool exact) {
  IsoProfile profile;
  profile.exact = exact;
  const Best* running = nullptr;
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    const Best& candidate = per_size[k - 1];
    if (!candidate.empty() && (!running || running->improves(candidate.boundary, candidate.size))) {
      running = &candidate;
    }
    PhiValue value;
    value.k = k;
    if (running) {
      value.boundary = running->boundary;
      value.size = running->size;
      value.set = running->set;
    }
    profile.phi.push_back(std::move(value));
  }
  return profile;
}

void merge_into(std::vector<Best>& acc, std::vector<Best>&& part) {
  for (std::size_t j = 0; j < acc.size(); ++j) {
    if (!part[j].empty() && acc[j].improves(part[j].boundary, part[j].size)) acc[j] = std::move(part[j]);
  }
}

IsoProfile exact_profile(const Graph& g, std::uint32_t k_max, const IsoOptions& options) {
  const std::size_t n = g.order();
  std::vector<std::vector<Best>> parts(n);
  parallel_for(
      n, [&](std::size_t root) { parts[root] = SubsetSearch(g, k_max).run(static_cast<Vertex>(root)); },
      options.threads);
  std::vector<Best> acc(k_max);
  for (auto& part : parts) merge_into(acc, std::move(part));
  return assemble(acc, k_max, true);
}

IsoProfile sampled_profile(const Graph& g, std::uint32_t k_max, const IsoOptions& options) {
  const std::size_t n = g.order();
  std::vector<Best> acc(k_max);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> single{v};
    const auto b = vertex_boundary(g, single);
    if (acc[0].improves(b, 1)) acc[0] = {b, 1, single};
  }

  constexpr std::size_t kChunks = 64;
  std::vector<std::vector<Best>> parts(kChunks, std::vector<Best>(k_max));
  parallel_for(
      kChunks,
      [&](std::size_t chunk) {
        auto& best = parts[chunk];
        std::vector<std::uint32_t> cover(n, 0);
        std::vector<std::uint8_t> in_set(n, 0);
        for (std::uint64_t i = chunk; i < options.samples; i += kChunks) {
          Rng rng(trial_seed(options.seed, i));
          const auto target = static_cast<std::uint32_t>(1 + uniform_below(rng, k_max));
          std::vector<Vertex> set;
          std::vector<Vertex> frontier;
          std::uint64_t closed = 0;
          auto add = [&](Vertex v) {
            set.push_back(v);
            in_set[v] = 1;
            for (Vertex w : g.neighbors(v)) {
              if (!in_set[w] && cover[w] == 0) frontier.push_back(w);
            }
            if (cover[v]++ == 0) ++closed;
            for (Vertex w : g.neighbors(v)) {
              if (cover[w]++ == 0) ++closed;
            }
          };
          add(static_cast<Vertex>(uniform_below(rng, n)));
          for (;;) {
            const std::uint64_t s = set.size();
            const std::uint64_t b = closed - s;
            if (best[s - 1].improves(b, s)) {
              auto sorted = set;
              std::sort(sorted.begin(), sorted.end());
              best[s - 1] = {b, s, std::move(sorted)};
            }
            if (s >= target) break;
            frontier.erase(std::remove_if(frontier.begin(), frontier.end(), [&](Vertex w) { return in_set[w]; }),
                           frontier.end());
            if (frontier.empty()) break;
            const auto pick = uniform_below(rng, frontier.size());
            const Vertex next = frontier[pick];
            frontier[pick] = frontier.back();
            frontier.pop_back();
            add(next);
          }
          for (Vertex v : set) {
            in_set[v] = 0;
            cover[v] = 0;
            for (Vertex w : g.neighbors(v)) cover[w] = 0;
          }
        }
      },
      options.threads);
  for (auto& part : parts) merge_into(acc, std::move(part));
  return assemble(acc, k_max, false);
}

}  // namespace

IsoProfile isoperimetric_profile(const Graph& g, std::uint32_t k_max, IsoOptions options) {
  if (g.order() == 0) throw PreconditionError("isoperimetric profile of an empty graph");
  if (k_max == 0) throw PreconditionError("isoperimetric profile needs k >= 1");
  k_max = std::min<std::uint32_t>(k_max, static_cast<std::uint32_t>(g.order()));
  const std::uint64_t count = subsets_up_to(g.order(), k_max);
  switch (options.mode) {
    case PhiMode::Exact:
      if (count > options.budget) {
        throw BudgetExceeded("exact isoperimetric profile", count, options.budget);
      }
      return exact_profile(g, k_max, options);
    case PhiMode::Sampled:
      return sampled_profile(g, k_max, options);
    case PhiMode::Auto:
      break;
  }
  if (count <= options.budget) return exact_profile(g, k_max, options);
  return sampled_profile(g, k_max, options);
}

// ---------------------------------------------------------------------------

std::uint32_t phi_argument(std::size_t n, double alpha) {
  const double x = std::pow(static_cast<double>(n), 1.0 - alpha);
  return static_cast<std::uint32_t>(std::floor(x + 1e-9));
}

Lemma4Report check_lemma4(const Graph& g, std::span<const Vertex> set, std::uint32_t r, double alpha,
                          double beta, IsoOptions options, std::optional<double> known_phi) {
  if (set.empty()) throw PreconditionError("ball growth check needs a nonempty set");
  for (Vertex v : set) require_vertex(g, v);
  Lemma4Report rep;
  const double n = static_cast<double>(g.order());
  rep.ball_size = ball(g, set, r).size();
  rep.cap = std::pow(n, 1.0 - alpha);
  rep.growth = static_cast<double>(set.size()) * std::pow(1.0 + beta, static_cast<double>(r));
  rep.rhs = std::min(rep.cap, rep.growth);
  rep.phi_k = phi_argument(g.order(), alpha);
  rep.inequality_holds = static_cast<double>(rep.ball_size) >= rep.rhs * (1 - 1e-12);

  if (known_phi) {
    rep.phi = known_phi;
  } else if (rep.phi_k >= 1 && subsets_up_to(g.order(), rep.phi_k) <= options.budget) {
    options.mode = PhiMode::Exact;
    rep.phi = isoperimetric_profile(g, rep.phi_k, options).at(std::min<std::uint32_t>(
        rep.phi_k, static_cast<std::uint32_t>(g.order()))).value();
  }
  rep.precondition_verified = rep.phi && beta > 0 && beta <= *rep.phi;
  return rep;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Lemma5Status status) {
  switch (status) {
    case Lemma5Status::Holds: return "holds";
    case Lemma5Status::Fails: return "fails";
    case Lemma5Status::Inconclusive: return "inconclusive";
    case Lemma5Status::Degenerate: return "degenerate";
  }
  return "unknown";
}

Lemma5Report lemma5_report(const Graph& g, double alpha, double slack, IsoOptions options,
                           Lambda2Options spectral) {
  Lemma5Report rep;
  rep.n = g.order();
  rep.d = static_cast<std::uint32_t>(g.max_degree());
  rep.alpha = alpha;
  rep.slack = slack;
  if (!g.is_connected()) rep.notes.emplace_back("graph is not connected");
  if (!g.is_regular()) rep.notes.emplace_back("graph is not regular");
  if (!g.is_bipartite()) rep.notes.emplace_back("graph is not bipartite");

  rep.lambda2 = lambda2(g, spectral).value;
  rep.k = std::max<std::uint32_t>(1, phi_argument(g.order(), alpha));
  auto profile = isoperimetric_profile(g, rep.k, options);
  rep.phi = profile.phi.back();
  rep.phi_exact = profile.exact;

  if (rep.lambda2 <= 1e-9) {
    rep.status = Lemma5Status::Degenerate;
    rep.notes.emplace_back(std::abs(rep.lambda2) <= 1e-9 ? "degenerate: lambda2 = 0"
                                                          : "degenerate: lambda2 < 0");
    return rep;
  }
  const double ratio = static_cast<double>(rep.d) / rep.lambda2;
  rep.rhs = ratio * ratio - 1.0;
  const bool meets = rep.phi.value() >= *rep.rhs - slack;
  if (rep.phi_exact) {
    rep.status = meets ? Lemma5Status::Holds : Lemma5Status::Fails;
  } else {
    rep.status = meets ? Lemma5Status::Inconclusive : Lemma5Status::Fails;
  }
  return rep;
}

}  // namespace copnum
