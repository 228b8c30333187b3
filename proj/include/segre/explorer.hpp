#pragma once

// Breadth-first enumeration of exchange graphs, cluster and cluster-variable
// counts, and checks of the gluing correspondence on bounded graphs.

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/glue.hpp"
#include "segre/seed.hpp"

namespace segre {

enum class KeyMode {
  values,  // cluster = set of variable values
  strict,  // values plus the exchange matrix, slots ordered by value
};

struct ClusterKey {
  std::vector<LaurentPoly> values;  // sorted
  std::vector<Exponent> shape;      // strict mode only

  friend bool operator==(const ClusterKey&, const ClusterKey&) = default;
  friend std::strong_ordering operator<=>(const ClusterKey& a, const ClusterKey& b) {
    std::size_t n = std::min(a.values.size(), b.values.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = a.values[i] <=> b.values[i]; c != 0) return c;
    if (auto c = a.values.size() <=> b.values.size(); c != 0) return c;
    return a.shape <=> b.shape;
  }
};

inline ClusterKey cluster_key(const Seed& s, KeyMode mode = KeyMode::values) {
  std::vector<std::uint32_t> order(s.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return s.values()[a] < s.values()[b];
  });
  ClusterKey key;
  for (auto i : order) key.values.push_back(s.values()[i]);
  if (mode == KeyMode::strict) {
    for (auto i : order) {
      key.shape.push_back(s.is_frozen(VariableId{i}) ? 1 : 0);
      for (auto j : order) key.shape.push_back(s.matrix().at(VariableId{i}, VariableId{j}));
    }
  }
  return key;
}

enum class GraphStatus { exhausted, truncated };

inline std::string_view to_string(GraphStatus s) {
  return s == GraphStatus::exhausted ? "exhausted" : "truncated";
}

struct ExploreBounds {
  std::size_t max_nodes = 10000;
  std::size_t max_depth = 12;
  unsigned threads = 1;
  KeyMode mode = KeyMode::values;
};

struct GraphNode {
  ClusterKey key;
  Seed seed;
  std::size_t depth = 0;
};

struct GraphEdge {
  std::size_t from = 0;
  VariableId slot;
  std::size_t to = 0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct ExchangeGraph {
  std::vector<GraphNode> nodes;  // discovery order
  std::vector<GraphEdge> edges;
  GraphStatus status = GraphStatus::exhausted;
  ExploreBounds bounds;

  bool exhausted() const noexcept { return status == GraphStatus::exhausted; }
};

namespace detail {

struct Neighbor {
  VariableId slot;
  std::optional<std::size_t> known;  // back to the parent, no mutation needed
  std::optional<Seed> seed;
  std::optional<ClusterKey> key;
};

inline void expand(const GraphNode& node, std::optional<std::pair<std::size_t, VariableId>> parent,
                   KeyMode mode, std::vector<Neighbor>& out) {
  for (auto k : node.seed.mutable_ids()) {
    Neighbor n{k, std::nullopt, std::nullopt, std::nullopt};
    if (parent && parent->second == k) {
      n.known = parent->first;
    } else {
      n.seed = mutate_seed(node.seed, k);
      n.key = cluster_key(*n.seed, mode);
    }
    out.push_back(std::move(n));
  }
}

}  // namespace detail

/// Breadth-first closure of `s` under mutation, deduplicated by ClusterKey.
/// Each level is processed in ascending key order, so node numbering is
/// independent of `bounds.threads`.
inline ExchangeGraph enumerate(const Seed& s, const ExploreBounds& bounds = {}) {
  ExchangeGraph g;
  g.bounds = bounds;
  std::map<ClusterKey, std::size_t> index;
  std::vector<std::optional<std::pair<std::size_t, VariableId>>> parent;

  g.nodes.push_back({cluster_key(s, bounds.mode), s, 0});
  index.emplace(g.nodes[0].key, 0);
  parent.emplace_back();
  if (bounds.max_nodes == 0) throw Error("max_nodes must be positive");

  std::vector<std::size_t> frontier{0};
  std::size_t depth = 0;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end(), [&](auto a, auto b) {
      return g.nodes[a].key < g.nodes[b].key;
    });
    std::vector<std::vector<detail::Neighbor>> found(frontier.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(
        bounds.threads, static_cast<unsigned>(frontier.size())));
    if (workers == 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i)
        detail::expand(g.nodes[frontier[i]], parent[frontier[i]], bounds.mode, found[i]);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < frontier.size(); i = next++)
              detail::expand(g.nodes[frontier[i]], parent[frontier[i]], bounds.mode,
                             found[i]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    std::vector<std::size_t> next_frontier;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const std::size_t from = frontier[i];
      for (auto& n : found[i]) {
        if (n.known) {
          g.edges.push_back({from, n.slot, *n.known});
          continue;
        }
        if (auto it = index.find(*n.key); it != index.end()) {
          g.edges.push_back({from, n.slot, it->second});
          continue;
        }
        if (depth + 1 > bounds.max_depth || g.nodes.size() >= bounds.max_nodes) {
          g.status = GraphStatus::truncated;
          continue;
        }
        const std::size_t id = g.nodes.size();
        index.emplace(*n.key, id);
        g.nodes.push_back({std::move(*n.key), std::move(*n.seed), depth + 1});
        parent.emplace_back(std::make_pair(from, n.slot));
        g.edges.push_back({from, n.slot, id});
        next_frontier.push_back(id);
      }
    }
    frontier = std::move(next_frontier);
    ++depth;
  }
  return g;
}

/// Distinct cluster-variable values over all nodes, frozen ones included.
inline std::set<LaurentPoly> cluster_variables(const ExchangeGraph& g) {
  std::set<LaurentPoly> out;
  for (const auto& n : g.nodes) out.insert(n.seed.values().begin(), n.seed.values().end());
  return out;
}

/// κ: number of cluster variables.
inline std::size_t kappa(const ExchangeGraph& g) {
  if (!g.exhausted()) throw TruncatedGraph();
  return cluster_variables(g).size();
}

/// K: number of clusters.
inline std::size_t cluster_count(const ExchangeGraph& g) {
  if (!g.exhausted()) throw TruncatedGraph();
  return g.nodes.size();
}

/// Bounds for a pair of factors; the glued graph gets product node and sum
/// depth budgets so that it can hold every glued pair of factor clusters.
struct PairBounds {
  std::size_t max_nodes = 2000;
  std::size_t max_depth = 12;
  unsigned threads = 1;
  std::optional<std::size_t> glued_max_nodes;  // default max_nodes²

  ExploreBounds factor() const { return {max_nodes, max_depth, threads, KeyMode::values}; }
  ExploreBounds glued() const {
    return {glued_max_nodes.value_or(max_nodes * max_nodes), 2 * max_depth, threads,
            KeyMode::values};
  }
};

enum class CheckStatus { success, failure, inconclusive };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::success: return "success";
    case CheckStatus::failure: return "failure";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

struct CorrespondenceReport {
  CheckStatus status = CheckStatus::inconclusive;
  GraphStatus left = GraphStatus::exhausted;
  GraphStatus right = GraphStatus::exhausted;
  GraphStatus glued = GraphStatus::exhausted;
  std::size_t left_clusters = 0;
  std::size_t right_clusters = 0;
  std::size_t glued_clusters = 0;
  bool variables_identified = false;  // every glued variable comes from a factor or is z
  bool clusters_bijective = false;    // (C₁, C₂) -> C₁□C₂ is a bijection
  std::vector<std::string> problems;
  PairBounds bounds;
};

namespace detail {

inline std::vector<LaurentPoly> glued_pair_key(const GluedSeed& g, const Seed& c1,
                                               const Seed& c2) {
  std::vector<LaurentPoly> values;
  for (std::uint32_t i = 0; i < c1.size(); ++i)
    if (VariableId{i} != g.left_glued) values.push_back(glued_image_left(g, c1.values()[i]));
  for (std::uint32_t i = 0; i < c2.size(); ++i)
    if (VariableId{i} != g.right_glued) values.push_back(glued_image_right(g, c2.values()[i]));
  values.push_back(LaurentPoly::variable(g.seed.universe(), g.z));
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace detail

/// Checks, on bounded exchange graphs, that every glued cluster variable is a
/// factor cluster variable (or z) and that gluing pairs of factor clusters is
/// a bijection onto glued clusters. `g` may be a modified glued seed.
inline CorrespondenceReport verify_correspondence(const Seed& s1, const Seed& s2,
                                                  const GluedSeed& g,
                                                  const PairBounds& bounds = {}) {
  CorrespondenceReport r;
  r.bounds = bounds;
  auto g1 = enumerate(s1, bounds.factor());
  auto g2 = enumerate(s2, bounds.factor());
  auto gg = enumerate(g.seed, bounds.glued());
  r.left = g1.status;
  r.right = g2.status;
  r.glued = gg.status;
  r.left_clusters = g1.nodes.size();
  r.right_clusters = g2.nodes.size();
  r.glued_clusters = gg.nodes.size();
  if (!g1.exhausted() || !g2.exhausted() || !gg.exhausted()) {
    r.problems.push_back("an exchange graph was truncated by the bounds");
    return r;
  }

  std::set<LaurentPoly> left_images;
  std::set<LaurentPoly> right_images;
  for (const auto& v : cluster_variables(g1)) left_images.insert(glued_image_left(g, v));
  for (const auto& v : cluster_variables(g2)) right_images.insert(glued_image_right(g, v));
  const auto z = LaurentPoly::variable(g.seed.universe(), g.z);
  r.variables_identified = true;
  for (const auto& v : cluster_variables(gg)) {
    if (!left_images.count(v) && !right_images.count(v)) {
      r.variables_identified = false;
      r.problems.push_back("glued variable " + v.to_string() +
                           " is not a factor cluster variable");
    }
  }
  for (const auto& v : left_images) {
    if (v != z && right_images.count(v)) {
      r.variables_identified = false;
      r.problems.push_back("variable " + v.to_string() + " comes from both factors");
    }
  }

  std::set<std::vector<LaurentPoly>> glued_keys;
  for (const auto& n : gg.nodes) glued_keys.insert(cluster_key(n.seed).values);
  std::set<std::vector<LaurentPoly>> pair_keys;
  for (const auto& a : g1.nodes)
    for (const auto& b : g2.nodes) pair_keys.insert(detail::glued_pair_key(g, a.seed, b.seed));
  const bool injective = pair_keys.size() == g1.nodes.size() * g2.nodes.size();
  r.clusters_bijective = injective && pair_keys == glued_keys;
  if (!injective) r.problems.push_back("two factor cluster pairs glue to the same cluster");
  if (pair_keys != glued_keys)
    r.problems.push_back("glued clusters (" + std::to_string(glued_keys.size()) +
                         ") differ from glued pairs of factor clusters (" +
                         std::to_string(pair_keys.size()) + ")");
  r.status = r.variables_identified && r.clusters_bijective ? CheckStatus::success
                                                            : CheckStatus::failure;
  return r;
}

inline CorrespondenceReport verify_correspondence(const Seed& s1, VariableId x,
                                                  const Seed& s2, VariableId y,
                                                  const PairBounds& bounds = {}) {
  return verify_correspondence(s1, s2, glue(s1, x, s2, y), bounds);
}

struct GraphCounts {
  GraphStatus status = GraphStatus::exhausted;
  std::size_t nodes = 0;
  std::optional<std::size_t> kappa;
  std::optional<std::size_t> clusters;
};

inline GraphCounts counts_of(const ExchangeGraph& g) {
  GraphCounts c{g.status, g.nodes.size(), std::nullopt, std::nullopt};
  if (g.exhausted()) {
    c.kappa = kappa(g);
    c.clusters = cluster_count(g);
  }
  return c;
}

struct CorollaryReport {
  CheckStatus status = CheckStatus::inconclusive;
  GraphCounts left;
  GraphCounts right;
  GraphCounts glued;
  /// Glued graph exhausted iff both factor graphs exhausted.
  bool finite_type_consistent = false;
  bool kappa_identity = false;  // κ(A₁□A₂) = κ(A₁) + κ(A₂) - 1
  bool cluster_identity = false;  // K(A₁□A₂) = K(A₁) K(A₂)
  PairBounds bounds;
};

/// Counts both factor graphs and the glued graph independently by BFS and
/// compares the results.
inline CorollaryReport verify_corollary(const Seed& s1, const Seed& s2, const GluedSeed& g,
                                        const PairBounds& bounds = {}) {
  CorollaryReport r;
  r.bounds = bounds;
  r.left = counts_of(enumerate(s1, bounds.factor()));
  r.right = counts_of(enumerate(s2, bounds.factor()));
  r.glued = counts_of(enumerate(g.seed, bounds.glued()));
  const bool factors_finite = r.left.status == GraphStatus::exhausted &&
                              r.right.status == GraphStatus::exhausted;
  r.finite_type_consistent = factors_finite == (r.glued.status == GraphStatus::exhausted);
  if (!factors_finite || r.glued.status != GraphStatus::exhausted) return r;
  r.kappa_identity = *r.glued.kappa + 1 == *r.left.kappa + *r.right.kappa;
  r.cluster_identity = *r.glued.clusters == *r.left.clusters * *r.right.clusters;
  r.status = r.kappa_identity && r.cluster_identity ? CheckStatus::success
                                                    : CheckStatus::failure;
  return r;
}

inline CorollaryReport verify_corollary(const Seed& s1, VariableId x, const Seed& s2,
                                        VariableId y, const PairBounds& bounds = {}) {
  return verify_corollary(s1, s2, glue(s1, x, s2, y), bounds);
}

}  // namespace segre
