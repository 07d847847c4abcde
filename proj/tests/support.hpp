#pragma once

// Shared helpers for the unit tests: fixture paths, WordNet lookup, and a
// brute-force reference model of a small DAG used as an independent oracle.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semsim/semsim.hpp"

namespace testing_support {

inline std::filesystem::path source_dir() { return SEMSIM_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) {
  return source_dir() / "fixtures" / name;
}
inline std::filesystem::path data_file(const std::string& name) {
  return source_dir() / "data" / name;
}

/// WordNet dict directory, or nullopt when the database is not installed.
inline std::optional<std::filesystem::path> wordnet_dir() {
  std::filesystem::path p;
  if (const char* env = std::getenv("SEMSIM_WORDNET_DIR"); env && *env)
    p = env;
  else
    p = SEMSIM_DEFAULT_WORDNET_DIR;
  if (std::filesystem::is_regular_file(p / "data.noun") &&
      std::filesystem::is_regular_file(p / "index.noun"))
    return p;
  return std::nullopt;
}

/// Loaded once per test binary.
inline const semsim::Taxonomy* wordnet() {
  static std::optional<semsim::Taxonomy> t = []() {
    std::optional<semsim::Taxonomy> out;
    if (auto dir = wordnet_dir()) out = semsim::load_wordnet(*dir);
    return out;
  }();
  return t ? &*t : nullptr;
}

inline semsim::Taxonomy from_text(const std::string& text) {
  return semsim::freeze(semsim::parse_edgelist_text(text));
}

inline semsim::NodeIndex idx(const semsim::Taxonomy& t, const std::string& s) {
  return t.index_of(semsim::SynsetId(s));
}

/// Reference model built from labels and child->parent edges with naive
/// algorithms (adjacency matrix closure, plain BFS), independent of the
/// library's CSR and topological passes. Exactly one parentless node is
/// expected.
struct Reference {
  std::vector<std::string> label;
  std::vector<std::vector<int>> parents, children;
  std::vector<std::vector<char>> anc;  // anc[x][a]: a subsumes x (incl. self)
  std::vector<int> min_depth, max_depth;
  int root = -1;

  Reference(std::vector<std::string> labels,
            const std::vector<std::pair<int, int>>& child_parent)
      : label(std::move(labels)) {
    int n = static_cast<int>(label.size());
    parents.assign(n, {});
    children.assign(n, {});
    for (auto [c, p] : child_parent) {
      parents[c].push_back(p);
      children[p].push_back(c);
    }
    for (int i = 0; i < n; ++i)
      if (parents[i].empty()) root = i;
    anc.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) anc[i][i] = 1;
    // Repeated relaxation until nothing changes.
    for (bool changed = true; changed;) {
      changed = false;
      for (int x = 0; x < n; ++x)
        for (int p : parents[x])
          for (int a = 0; a < n; ++a)
            if (anc[p][a] && !anc[x][a]) anc[x][a] = changed = true;
    }
    min_depth.assign(n, -1);
    std::queue<int> q;
    q.push(root);
    min_depth[root] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int c : children[x])
        if (min_depth[c] < 0) {
          min_depth[c] = min_depth[x] + 1;
          q.push(c);
        }
    }
    max_depth.assign(n, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (int x = 0; x < n; ++x)
        for (int p : parents[x])
          if (max_depth[p] + 1 > max_depth[x]) {
            max_depth[x] = max_depth[p] + 1;
            changed = true;
          }
    }
  }

  int size() const { return static_cast<int>(label.size()); }
  bool is_leaf(int x) const { return children[x].empty(); }

  std::set<std::string> subsumers(int x) const {
    std::set<std::string> s;
    for (int a = 0; a < size(); ++a)
      if (anc[x][a]) s.insert(label[a]);
    return s;
  }
  std::vector<int> hyponyms(int x) const {
    std::vector<int> out;
    for (int d = 0; d < size(); ++d)
      if (d != x && anc[d][x]) out.push_back(d);
    return out;
  }
  int leaf_count(int x) const {
    int k = 0;
    for (int d : hyponyms(x)) k += is_leaf(d);
    return k;
  }
  int subsumer_count(int x) const {
    int k = 0;
    for (int a = 0; a < size(); ++a) k += anc[x][a];
    return k;
  }
  double inv_depth_sum(int x) const {
    double s = 0;
    for (int d : hyponyms(x)) s += 1.0 / min_depth[d];
    return s;
  }
  std::vector<int> common(int a, int b) const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (anc[a][x] && anc[b][x]) out.push_back(x);
    return out;
  }
  /// Common subsumers with no other common subsumer strictly below them.
  std::set<std::string> minimal_common(int a, int b) const {
    auto cs = common(a, b);
    std::set<std::string> out;
    for (int x : cs) {
      bool has_lower = false;
      for (int y : cs)
        if (y != x && anc[y][x]) has_lower = true;
      if (!has_lower) out.insert(label[x]);
    }
    return out;
  }
  int node_max() const { return size(); }
  int deep_max() const {
    return *std::max_element(min_depth.begin(), min_depth.end());
  }
  int leaves_max() const {
    int k = 0;
    for (int x = 0; x < size(); ++x) k += is_leaf(x);
    return k;
  }
};

/// Random single-rooted DAG over shuffled labels; node k>0 draws 1..3
/// parents among earlier nodes.
struct RandomDag {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;

  std::string edgelist() const {
    std::string s;
    for (auto [c, p] : edges) s += labels[c] + "\t" + labels[p] + "\n";
    if (edges.empty()) s += labels[0] + "\n";
    return s;
  }
};

inline RandomDag random_dag(std::mt19937& rng, int max_nodes = 50,
                            int max_parents = 3) {
  int n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  RandomDag g;
  for (int i = 0; i < n; ++i) g.labels.push_back("v" + std::to_string(i));
  std::shuffle(g.labels.begin(), g.labels.end(), rng);
  for (int k = 1; k < n; ++k) {
    int np = std::uniform_int_distribution<int>(1, std::min(k, max_parents))(rng);
    std::set<int> ps;
    while (static_cast<int>(ps.size()) < np)
      ps.insert(std::uniform_int_distribution<int>(0, k - 1)(rng));
    for (int p : ps) g.edges.emplace_back(k, p);
  }
  return g;
}

}  // namespace testing_support
