#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semsim/error.hpp"

namespace semsim {

/// Stable concept identifier. WordNet synsets use "<offset>-n"; toy
/// ontologies use the node label. Ordering is lexicographic and drives every
/// deterministic tie-break in the library.
struct SynsetId {
  std::string value;

  SynsetId() = default;
  explicit SynsetId(std::string v) : value(std::move(v)) {}
  explicit SynsetId(std::string_view v) : value(v) {}
  explicit SynsetId(const char* v) : value(v) {}

  const std::string& str() const noexcept { return value; }

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
  friend bool operator==(const SynsetId&, const SynsetId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const SynsetId& id) {
  return os << id.value;
}

/// Dense position of a synset inside a frozen Taxonomy. Indices follow
/// SynsetId order, so sorting indices sorts by id.
using NodeIndex = std::uint32_t;

enum class DepthMode { min, max };

inline constexpr std::string_view kSyntheticRootId = "#root";

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;
  std::string gloss;
  std::vector<NodeIndex> parents;   // direct hypernyms, instance targets included
  std::vector<NodeIndex> children;  // direct hyponyms, instances included
  bool is_instance = false;         // every incoming edge is an instance edge
  bool synthetic = false;
};

struct NodeStats {
  std::uint32_t depth = 0;      // edge distance from root, per DepthMode
  std::uint32_t max_depth = 0;  // longest path from root
  std::uint32_t hypo_count = 0;
  std::uint32_t leaf_count = 0;
  std::uint32_t subsumer_count = 0;
  std::uint32_t nmih = 0;
  double inv_depth_sum = 0.0;  // sum of 1/depth over strict descendants

  friend bool operator==(const NodeStats&, const NodeStats&) = default;
};

struct TaxonomyConstants {
  std::uint32_t node_max = 0;
  std::uint32_t deep_max = 0;
  std::uint32_t leaves_max = 0;
  std::uint32_t max_wn = 0;

  friend bool operator==(const TaxonomyConstants&,
                         const TaxonomyConstants&) = default;
};

/// Lowercase, trim, and map spaces to underscores ("Cell Phone" ->
/// "cell_phone").
inline std::string normalize_lemma(std::string_view word) {
  std::size_t b = 0, e = word.size();
  while (b < e && (word[b] == ' ' || word[b] == '\t')) ++b;
  while (e > b && (word[e - 1] == ' ' || word[e - 1] == '\t')) --e;
  std::string out;
  out.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    char c = word[i];
    if (c == ' ') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

struct RawNode {
  SynsetId id;
  std::vector<std::string> lemmas;
  std::string gloss;
};

struct RawEdge {
  SynsetId child;
  SynsetId parent;
  bool instance = false;
};

/// Unfrozen node/edge collection produced by the ingest layer.
struct RawGraph {
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;
  std::optional<SynsetId> pinned_root;
  /// lemma -> senses in preferred order. When empty, freeze derives the index
  /// from node lemmas.
  std::vector<std::pair<std::string, std::vector<SynsetId>>> word_index;
  std::vector<std::string> warnings;
};

struct FreezeOptions {
  DepthMode depth_mode = DepthMode::min;
};

class Taxonomy;
Taxonomy freeze(RawGraph raw, FreezeOptions options = {});

/// Immutable hypernym DAG with cached per-node statistics. All queries are
/// const and safe to call concurrently.
class Taxonomy {
 public:
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeIndex root() const noexcept { return root_; }
  DepthMode depth_mode() const noexcept { return depth_mode_; }
  const TaxonomyConstants& constants() const noexcept { return constants_; }

  const Synset& node(NodeIndex i) const { return nodes_.at(i); }
  const SynsetId& id(NodeIndex i) const { return nodes_.at(i).id; }
  const NodeStats& stats(NodeIndex i) const { return stats_.at(i); }
  bool is_leaf(NodeIndex i) const { return nodes_.at(i).children.empty(); }

  std::optional<NodeIndex> find(const SynsetId& id) const {
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), id,
        [](const Synset& s, const SynsetId& key) { return s.id < key; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
  }

  NodeIndex index_of(const SynsetId& id) const {
    if (auto i = find(id)) return *i;
    throw Error(ErrorKind::UnknownSynset, id.value);
  }

  /// Ancestors including the node itself, in id order.
  std::span<const NodeIndex> subsumers(NodeIndex i) const {
    check(i);
    return {subsumer_flat_.data() + subsumer_offsets_[i],
            subsumer_offsets_[i + 1] - subsumer_offsets_[i]};
  }

  /// True when `ancestor` is in subsumers(node).
  bool subsumes(NodeIndex ancestor, NodeIndex node) const {
    auto s = subsumers(node);
    return std::binary_search(s.begin(), s.end(), ancestor);
  }

  /// Strict descendants, in id order.
  std::vector<NodeIndex> hyponyms(NodeIndex i) const {
    check(i);
    std::vector<char> seen(size(), 0);
    std::vector<NodeIndex> stack(nodes_[i].children.begin(),
                                 nodes_[i].children.end());
    std::vector<NodeIndex> out;
    while (!stack.empty()) {
      NodeIndex x = stack.back();
      stack.pop_back();
      if (seen[x]) continue;
      seen[x] = 1;
      out.push_back(x);
      for (NodeIndex c : nodes_[x].children)
        if (!seen[c]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Leaf members of hyponyms(i); empty when i is itself a leaf.
  std::vector<NodeIndex> leaves(NodeIndex i) const {
    auto h = hyponyms(i);
    std::erase_if(h, [this](NodeIndex x) { return !is_leaf(x); });
    return h;
  }

  /// Senses of a word (case-insensitive, spaces as underscores). Empty when
  /// the word is unknown.
  std::span<const NodeIndex> senses(std::string_view word) const {
    auto it = word_index_.find(normalize_lemma(word));
    if (it == word_index_.end()) return {};
    return it->second;
  }

  /// Parents before children.
  std::span<const NodeIndex> topological_order() const { return topo_; }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend Taxonomy freeze(RawGraph raw, FreezeOptions options);

  void check(NodeIndex i) const {
    if (i >= nodes_.size())
      throw Error(ErrorKind::UnknownSynset,
                  "node index " + std::to_string(i) + " out of range");
  }

  std::vector<Synset> nodes_;
  std::vector<NodeStats> stats_;
  std::vector<std::size_t> subsumer_offsets_;
  std::vector<NodeIndex> subsumer_flat_;
  std::vector<NodeIndex> topo_;
  std::unordered_map<std::string, std::vector<NodeIndex>> word_index_;
  std::vector<std::string> warnings_;
  TaxonomyConstants constants_;
  NodeIndex root_ = 0;
  DepthMode depth_mode_ = DepthMode::min;
};

namespace detail {

// Follows parent links inside the set of nodes Kahn's pass could not
// consume until a node repeats, then returns that loop in child->parent
// order.
inline std::vector<std::size_t> find_cycle(
    const std::vector<std::vector<std::size_t>>& parents,
    const std::vector<char>& consumed) {
  std::size_t start = 0;
  while (consumed[start]) ++start;
  std::vector<std::size_t> path;
  std::vector<std::size_t> pos(parents.size(), SIZE_MAX);
  std::size_t x = start;
  while (pos[x] == SIZE_MAX) {
    pos[x] = path.size();
    path.push_back(x);
    for (std::size_t p : parents[x]) {
      if (!consumed[p]) {
        x = p;
        break;
      }
    }
  }
  std::vector<std::size_t> cycle(path.begin() + pos[x], path.end());
  cycle.push_back(x);
  return cycle;
}

}  // namespace detail

/// Materializes the DAG: validates acyclicity, attaches a synthetic root
/// above several parentless nodes, and fills NodeStats/TaxonomyConstants.
inline Taxonomy freeze(RawGraph raw, FreezeOptions options) {
  if (raw.nodes.empty()) throw Error(ErrorKind::EmptyGraph, "no nodes");

  // Temporary ids in input order.
  std::unordered_map<std::string, std::size_t> tmp;
  tmp.reserve(raw.nodes.size() * 2);
  for (std::size_t i = 0; i < raw.nodes.size(); ++i) {
    if (!tmp.emplace(raw.nodes[i].id.value, i).second)
      throw Error(ErrorKind::InvalidGraph,
                  "duplicate synset " + raw.nodes[i].id.value);
  }
  auto lookup = [&](const SynsetId& id) {
    auto it = tmp.find(id.value);
    if (it == tmp.end()) throw Error(ErrorKind::UnknownSynset, id.value);
    return it->second;
  };

  std::size_t n = raw.nodes.size();
  std::vector<std::vector<std::size_t>> parents(n), children(n);
  std::vector<std::vector<char>> parent_instance(n);
  for (const RawEdge& e : raw.edges) {
    std::size_t c = lookup(e.child), p = lookup(e.parent);
    if (c == p)
      throw Error(ErrorKind::CycleDetected,
                  e.child.value + " -> " + e.child.value);
    auto& ps = parents[c];
    auto it = std::find(ps.begin(), ps.end(), p);
    if (it != ps.end()) {
      // Same edge declared twice; it is an instance edge only if every
      // declaration says so.
      auto k = static_cast<std::size_t>(it - ps.begin());
      parent_instance[c][k] = parent_instance[c][k] && e.instance;
      continue;
    }
    ps.push_back(p);
    parent_instance[c].push_back(e.instance ? 1 : 0);
    children[p].push_back(c);
  }

  // Acyclicity via Kahn's algorithm over child counts of parents.
  {
    std::vector<std::size_t> pending(n);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
      pending[i] = parents[i].size();
      if (pending[i] == 0) queue.push_back(i);
    }
    std::vector<char> consumed(n, 0);
    std::size_t done = 0;
    while (!queue.empty()) {
      std::size_t x = queue.back();
      queue.pop_back();
      consumed[x] = 1;
      ++done;
      for (std::size_t c : children[x])
        if (--pending[c] == 0) queue.push_back(c);
    }
    if (done != n) {
      auto cycle = detail::find_cycle(parents, consumed);
      std::string msg;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (k) msg += " -> ";
        msg += raw.nodes[cycle[k]].id.value;
      }
      throw Error(ErrorKind::CycleDetected, msg);
    }
  }

  std::vector<std::size_t> parentless;
  for (std::size_t i = 0; i < n; ++i)
    if (parents[i].empty()) parentless.push_back(i);

  bool synthetic_root = false;
  std::size_t root_tmp = 0;
  if (raw.pinned_root) {
    root_tmp = lookup(*raw.pinned_root);
    if (!parents[root_tmp].empty())
      throw Error(ErrorKind::InvalidGraph,
                  "pinned root " + raw.pinned_root->value + " has parents");
  } else if (parentless.size() == 1) {
    root_tmp = parentless.front();
  } else {
    if (tmp.count(std::string(kSyntheticRootId)))
      throw Error(ErrorKind::InvalidGraph,
                  "label " + std::string(kSyntheticRootId) + " is reserved");
    synthetic_root = true;
    root_tmp = n++;
    raw.nodes.push_back(RawNode{SynsetId(kSyntheticRootId), {}, {}});
    parents.emplace_back();
    children.emplace_back();
    parent_instance.emplace_back();
  }
  for (std::size_t i : parentless) {
    if (i == root_tmp) continue;
    parents[i].push_back(root_tmp);
    parent_instance[i].push_back(0);
    children[root_tmp].push_back(i);
  }

  // Final indices follow id order.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw.nodes[a].id < raw.nodes[b].id;
  });
  std::vector<NodeIndex> final_of(n);
  for (std::size_t k = 0; k < n; ++k)
    final_of[order[k]] = static_cast<NodeIndex>(k);

  Taxonomy t;
  t.depth_mode_ = options.depth_mode;
  t.root_ = final_of[root_tmp];
  t.nodes_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t src = order[k];
    Synset& s = t.nodes_[k];
    s.id = std::move(raw.nodes[src].id);
    s.lemmas = std::move(raw.nodes[src].lemmas);
    s.gloss = std::move(raw.nodes[src].gloss);
    s.synthetic = synthetic_root && src == root_tmp;
    for (std::size_t p : parents[src]) s.parents.push_back(final_of[p]);
    for (std::size_t c : children[src]) s.children.push_back(final_of[c]);
    std::sort(s.parents.begin(), s.parents.end());
    std::sort(s.children.begin(), s.children.end());
    const auto& inst = parent_instance[src];
    s.is_instance = !inst.empty() &&
                    std::all_of(inst.begin(), inst.end(),
                                [](char v) { return v != 0; });
  }

  // Topological order (parents first), BFS depth and longest-path depth.
  std::vector<NodeStats>& st = t.stats_;
  st.assign(n, NodeStats{});
  {
    std::vector<std::size_t> pending(n);
    for (std::size_t i = 0; i < n; ++i)
      pending[i] = t.nodes_[i].parents.size();
    std::deque<NodeIndex> queue{t.root_};
    t.topo_.reserve(n);
    while (!queue.empty()) {
      NodeIndex x = queue.front();
      queue.pop_front();
      t.topo_.push_back(x);
      for (NodeIndex c : t.nodes_[x].children) {
        st[c].max_depth = std::max(st[c].max_depth, st[x].max_depth + 1);
        if (--pending[c] == 0) queue.push_back(c);
      }
    }
  }
  std::vector<std::uint32_t> min_depth(n, UINT32_MAX);
  {
    std::deque<NodeIndex> queue{t.root_};
    min_depth[t.root_] = 0;
    while (!queue.empty()) {
      NodeIndex x = queue.front();
      queue.pop_front();
      for (NodeIndex c : t.nodes_[x].children) {
        if (min_depth[c] == UINT32_MAX) {
          min_depth[c] = min_depth[x] + 1;
          queue.push_back(c);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    st[i].depth = options.depth_mode == DepthMode::min ? min_depth[i]
                                                       : st[i].max_depth;
    st[i].nmih = static_cast<std::uint32_t>(t.nodes_[i].parents.size());
  }

  // Ancestor sets in CSR form, built parents-first.
  {
    std::vector<std::vector<NodeIndex>> anc(n);
    std::vector<NodeIndex> merged;
    for (NodeIndex x : t.topo_) {
      merged.clear();
      merged.push_back(x);
      for (NodeIndex p : t.nodes_[x].parents)
        merged.insert(merged.end(), anc[p].begin(), anc[p].end());
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      anc[x] = merged;
    }
    t.subsumer_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
      t.subsumer_offsets_[i + 1] = t.subsumer_offsets_[i] + anc[i].size();
    t.subsumer_flat_.reserve(t.subsumer_offsets_[n]);
    for (std::size_t i = 0; i < n; ++i) {
      t.subsumer_flat_.insert(t.subsumer_flat_.end(), anc[i].begin(),
                              anc[i].end());
      st[i].subsumer_count = static_cast<std::uint32_t>(anc[i].size());
    }
  }

  // Descendant aggregates: each node contributes to every strict ancestor.
  // Iterating in index order fixes the floating-point summation order.
  std::uint32_t leaves_total = 0;
  for (NodeIndex x = 0; x < n; ++x) {
    bool leaf = t.nodes_[x].children.empty();
    if (leaf) ++leaves_total;
    double inv = st[x].depth == 0 ? 0.0 : 1.0 / st[x].depth;
    for (NodeIndex a : t.subsumers(x)) {
      if (a == x) continue;
      ++st[a].hypo_count;
      if (leaf) ++st[a].leaf_count;
      st[a].inv_depth_sum += inv;
    }
  }

  TaxonomyConstants& k = t.constants_;
  k.node_max = static_cast<std::uint32_t>(n);
  k.max_wn = k.node_max;
  k.leaves_max = leaves_total;
  for (const NodeStats& s : st) k.deep_max = std::max(k.deep_max, s.depth);

  // Word index.
  auto add_sense = [&](const std::string& lemma, NodeIndex i) {
    auto& v = t.word_index_[normalize_lemma(lemma)];
    if (std::find(v.begin(), v.end(), i) == v.end()) v.push_back(i);
  };
  if (raw.word_index.empty()) {
    for (NodeIndex i = 0; i < n; ++i) {
      if (t.nodes_[i].synthetic) continue;
      if (t.nodes_[i].lemmas.empty()) add_sense(t.nodes_[i].id.value, i);
      for (const std::string& l : t.nodes_[i].lemmas) add_sense(l, i);
    }
  } else {
    for (const auto& [lemma, ids] : raw.word_index)
      for (const SynsetId& id : ids) add_sense(lemma, t.index_of(id));
  }

  t.warnings_ = std::move(raw.warnings);
  return t;
}

// Id-based queries.

inline std::vector<SynsetId> to_ids(const Taxonomy& t,
                                    std::span<const NodeIndex> idx) {
  std::vector<SynsetId> out;
  out.reserve(idx.size());
  for (NodeIndex i : idx) out.push_back(t.id(i));
  return out;
}

inline std::vector<SynsetId> subsumers(const Taxonomy& t, const SynsetId& c) {
  return to_ids(t, t.subsumers(t.index_of(c)));
}

inline std::vector<SynsetId> hyponyms(const Taxonomy& t, const SynsetId& c) {
  return to_ids(t, t.hyponyms(t.index_of(c)));
}

inline std::vector<SynsetId> leaves(const Taxonomy& t, const SynsetId& c) {
  return to_ids(t, t.leaves(t.index_of(c)));
}

inline std::uint32_t depth(const Taxonomy& t, const SynsetId& c) {
  return t.stats(t.index_of(c)).depth;
}

inline std::vector<SynsetId> senses(const Taxonomy& t, std::string_view word) {
  return to_ids(t, t.senses(word));
}

}  // namespace semsim
