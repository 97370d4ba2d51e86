#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "homolink/grid.hpp"
#include "homolink/invariant.hpp"

namespace homolink {

/// Per-edge invariant vectors over a skeleton set. Stored once per
/// undirected edge (u < v) in the u -> v direction; the reverse direction is
/// the exact negation.
class EdgeSignatureCache {
 public:
  EdgeSignatureCache() = default;
  EdgeSignatureCache(const GridGraph& g, int m) : m_(m) {
    const auto& es = g.edges();
    values_.assign(es.size() * static_cast<std::size_t>(m), 0.0);
    index_.reserve(es.size());
    for (std::size_t i = 0; i < es.size(); ++i)
      index_.emplace(key(es[i].first, es[i].second), i);
  }

  int components() const { return m_; }

  double* slot(std::size_t edge_index) {
    return values_.data() + edge_index * static_cast<std::size_t>(m_);
  }
  const double* slot(std::size_t edge_index) const {
    return values_.data() + edge_index * static_cast<std::size_t>(m_);
  }

  /// Signature of traversing from -> to; sign follows direction.
  void accumulate(int from, int to, double* c) const {
    const bool forward = from < to;
    const auto it = index_.find(forward ? key(from, to) : key(to, from));
    if (it == index_.end())
      throw std::out_of_range("edge " + std::to_string(from) + "-" +
                              std::to_string(to) + " is not in the cache");
    const double* v = slot(it->second);
    if (forward)
      for (int i = 0; i < m_; ++i) c[i] += v[i];
    else
      for (int i = 0; i < m_; ++i) c[i] -= v[i];
  }

  Signature edge_signature(int from, int to) const {
    Signature s(std::vector<double>(m_, 0.0));
    accumulate(from, to, s.values.data());
    return s;
  }

 private:
  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  int m_ = 0;
  std::vector<double> values_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

namespace detail {

template <class Fn>
void chunked_parallel_for(std::size_t n, std::size_t grain, int threads,
                          Fn&& fn) {
  if (n == 0) return;
  const std::size_t nchunks = (n + grain - 1) / grain;
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  t = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(t), nchunks));
  std::exception_ptr error;
  std::mutex error_mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t chunk = next.fetch_add(1);
      if (chunk >= nchunks) return;
      try {
        fn(chunk * grain, std::min(n, (chunk + 1) * grain));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Evaluate the invariant of every grid edge against every skeleton.
/// Data-parallel over edges; results do not depend on the thread count.
/// Throws SingularProximityError naming the edge when the discretization
/// runs too close to a skeleton.
inline EdgeSignatureCache edge_signatures(const GridGraph& g,
                                          const SkeletonSet& set,
                                          const EngineConfig& cfg = {}) {
  EdgeSignatureCache cache(g, set.size());
  const auto& es = g.edges();
  EngineConfig inner = cfg;
  inner.threads = 1;  // parallelism lives on the edge loop
  detail::chunked_parallel_for(
      es.size(), 64, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const auto [u, v] = es[i];
          Chain segment;
          segment.terms.push_back(
              ChainTerm{Simplex({g.position(u), g.position(v)}), 1});
          double* out = cache.slot(i);
          for (int s = 0; s < set.size(); ++s) {
            const std::string label =
                (s < static_cast<int>(set.labels.size()) ? set.labels[s]
                                                         : "S" + std::to_string(s)) +
                " at edge " + std::to_string(u) + "-" + std::to_string(v);
            out[s] = phi_s(segment, set.skeletons[s], inner, label);
          }
        }
      });
  return cache;
}

/// Least-cost representative of one homology class of start-goal paths.
struct ClassResult {
  Signature signature;      // class key (canonical residue for quotient runs)
  Signature raw_signature;  // accumulated edge-signature sum along the path
  std::vector<int> path;    // vertex ids, start first
  double cost = 0.0;
  int rank = 0;             // 1-based discovery order
};

struct SearchMode {
  int enumerate_k = 0;
  std::optional<Signature> target;

  static SearchMode enumerate(int k) { return SearchMode{k, std::nullopt}; }
  static SearchMode target_class(Signature c) {
    return SearchMode{0, std::move(c)};
  }
};

struct SearchOptions {
  double eps_key = 0.5;
  std::uint64_t node_budget = 5'000'000;
};

struct SearchOutcome {
  std::vector<ClassResult> classes;
  std::uint64_t expansions = 0;
  bool budget_exhausted = false;
  bool target_found = false;
};

namespace detail {

// Augmented best-first search over (vertex, accumulated signature) states.
// Identity decides when two signatures at the same vertex are the same
// class; Weight and Heuristic parameterize the quotient variants.
template <class Identity, class Weight, class Heuristic, class Allowed>
SearchOutcome augmented_best_first(const GridGraph& g,
                                   const EdgeSignatureCache& cache, int start,
                                   int goal, const SearchMode& mode,
                                   const SearchOptions& opts,
                                   const Identity& identity,
                                   const Weight& weight,
                                   const Heuristic& heuristic,
                                   const Allowed& allowed) {
  const int m = cache.components();
  struct Node {
    int vertex;
    int parent;
    double g;
  };
  std::vector<Node> arena;
  std::vector<double> sigs;  // m per node
  auto sig_of = [&](int node) { return sigs.data() + std::size_t(node) * m; };

  struct OpenEntry {
    double f;
    int node;
  };
  auto lex_less = [&](const double* a, const double* b) {
    for (int i = 0; i < m; ++i) {
      if (a[i] < b[i]) return true;
      if (a[i] > b[i]) return false;
    }
    return false;
  };
  auto entry_after = [&](const OpenEntry& a, const OpenEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    const double* ca = sig_of(a.node);
    const double* cb = sig_of(b.node);
    if (lex_less(ca, cb)) return false;
    if (lex_less(cb, ca)) return true;
    if (arena[a.node].vertex != arena[b.node].vertex)
      return arena[a.node].vertex > arena[b.node].vertex;
    return a.node > b.node;
  };
  std::priority_queue<OpenEntry, std::vector<OpenEntry>,
                      decltype(entry_after)>
      open(entry_after);

  std::unordered_map<int, std::vector<int>> closed;  // vertex -> settled nodes

  auto is_closed = [&](int vertex, const double* c) {
    const auto it = closed.find(vertex);
    if (it == closed.end()) return false;
    for (int node : it->second)
      if (identity.same(sig_of(node), c)) return true;
    return false;
  };

  arena.push_back(Node{start, -1, 0.0});
  sigs.resize(m, 0.0);
  open.push(OpenEntry{heuristic(start), 0});

  SearchOutcome outcome;
  std::vector<double> scratch(m);

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const Node node = arena[top.node];
    if (is_closed(node.vertex, sig_of(top.node))) continue;
    closed[node.vertex].push_back(top.node);
    ++outcome.expansions;

    if (node.vertex == goal) {
      // every settle at the goal vertex is a previously unseen class
      const bool is_target =
          mode.target &&
          identity.same(sig_of(top.node), mode.target->values.data());
      if (!mode.target || is_target) {
        ClassResult result;
        result.raw_signature =
            Signature(std::vector<double>(sig_of(top.node), sig_of(top.node) + m));
        result.signature = identity.canonical(result.raw_signature);
        result.cost = node.g;
        result.rank = static_cast<int>(outcome.classes.size()) + 1;
        for (int n = top.node; n >= 0; n = arena[n].parent)
          result.path.push_back(arena[n].vertex);
        std::reverse(result.path.begin(), result.path.end());
        outcome.classes.push_back(std::move(result));
        if (is_target) {
          outcome.target_found = true;
          return outcome;
        }
        if (mode.enumerate_k > 0 &&
            static_cast<int>(outcome.classes.size()) >= mode.enumerate_k)
          return outcome;
      }
    }

    if (outcome.expansions >= opts.node_budget) {
      outcome.budget_exhausted = true;
      return outcome;
    }

    // copy before expanding: pushes reallocate the signature arena
    const std::vector<double> c(sig_of(top.node), sig_of(top.node) + m);
    g.for_each_neighbor(node.vertex, [&](int u) {
      if (!allowed(u)) return;
      for (int i = 0; i < m; ++i) scratch[i] = c[i];
      cache.accumulate(node.vertex, u, scratch.data());
      if (is_closed(u, scratch.data())) return;
      const double w = weight(node.vertex, u);
      const int id = static_cast<int>(arena.size());
      arena.push_back(Node{u, top.node, node.g + w});
      sigs.insert(sigs.end(), scratch.begin(), scratch.end());
      open.push(OpenEntry{arena[id].g + heuristic(u), id});
    });
  }
  return outcome;
}

struct L1Identity {
  double eps_key;
  int m;
  bool same(const double* a, const double* b) const {
    for (int i = 0; i < m; ++i)
      if (std::abs(a[i] - b[i]) >= eps_key) return false;
    return true;
  }
  Signature canonical(const Signature& s) const { return s; }
};

}  // namespace detail

/// A* over the homology-augmented graph from start to goal.
/// EnumerateK returns the first k distinct goal classes in nondecreasing
/// cost order, each path least-cost within its class; TargetClass stops at
/// the first goal state matching the requested signature within eps_key.
inline SearchOutcome augmented_search(const GridGraph& g,
                                      const EdgeSignatureCache& cache,
                                      int start, int goal,
                                      const SearchMode& mode,
                                      const SearchOptions& opts = {}) {
  if (start < 0 || start >= g.vertex_count() || goal < 0 ||
      goal >= g.vertex_count())
    throw std::invalid_argument("augmented_search: vertex out of range");
  if (mode.enumerate_k <= 0 && !mode.target)
    throw std::invalid_argument("augmented_search: no termination mode");
  detail::L1Identity identity{opts.eps_key, cache.components()};
  const Vec goal_pos = g.position(goal);
  return detail::augmented_best_first(
      g, cache, start, goal, mode, opts, identity,
      [&g](int u, int v) { return g.edge_weight(u, v); },
      [&g, &goal_pos](int v) { return distance(g.position(v), goal_pos); },
      [](int) { return true; });
}

/// Known signatures plus their integer offsets up to the given radius,
/// deduplicated under eps_key.
inline std::vector<Signature> next_class_candidates(
    const std::vector<Signature>& known, int radius, double eps_key = 0.5) {
  if (known.empty())
    throw std::invalid_argument("next_class_candidates: no known signatures");
  const int m = known.front().size();
  std::vector<Signature> out;
  auto seen = [&](const Signature& c) {
    for (const auto& s : out)
      if (s.inf_distance(c) < eps_key) return true;
    return false;
  };
  std::vector<int> zeta(m, -radius);
  while (true) {
    for (const auto& base : known) {
      Signature c = base;
      for (int i = 0; i < m; ++i) c[i] += zeta[i];
      if (!seen(c)) out.push_back(std::move(c));
    }
    int d = m - 1;
    while (d >= 0 && zeta[d] == radius) zeta[d--] = -radius;
    if (d < 0) break;
    ++zeta[d];
  }
  return out;
}

}  // namespace homolink
