#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsim/error.hpp"
#include "semsim/ic_models.hpp"
#include "semsim/taxonomy.hpp"

namespace semsim {

enum class SimMeasure { resnik, lin, jiang_conrath, faith, batet, proposed };

inline constexpr std::array<SimMeasure, 6> kAllSimMeasures = {
    SimMeasure::resnik, SimMeasure::lin,   SimMeasure::jiang_conrath,
    SimMeasure::faith,  SimMeasure::batet, SimMeasure::proposed};

constexpr std::string_view to_string(SimMeasure m) {
  switch (m) {
    case SimMeasure::resnik: return "resnik";
    case SimMeasure::lin: return "lin";
    case SimMeasure::jiang_conrath: return "jiang_conrath";
    case SimMeasure::faith: return "faith";
    case SimMeasure::batet: return "batet";
    case SimMeasure::proposed: return "proposed";
  }
  return "?";
}

inline std::optional<SimMeasure> parse_sim_measure(std::string_view s) {
  if (s == "jc") return SimMeasure::jiang_conrath;
  for (SimMeasure m : kAllSimMeasures)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// How the least common subsumer is chosen.
enum class LcsRule {
  /// Common subsumers of greatest longest-path depth; the best IC among
  /// them wins.
  deepest,
  /// Best IC over every common subsumer.
  max_ic,
};

struct SimConfig {
  LcsRule lcs_rule = LcsRule::deepest;
};

/// subsumers(a) ∩ subsumers(b), in id order.
inline std::vector<NodeIndex> common_subsumers(const Taxonomy& t, NodeIndex a,
                                               NodeIndex b) {
  auto sa = t.subsumers(a);
  auto sb = t.subsumers(b);
  std::vector<NodeIndex> out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(out));
  return out;
}

/// Common subsumers with the greatest longest-path depth.
inline std::vector<NodeIndex> lcs_set(const Taxonomy& t, NodeIndex a,
                                      NodeIndex b) {
  auto cs = common_subsumers(t, a, b);
  std::uint32_t best = 0;
  for (NodeIndex x : cs) best = std::max(best, t.stats(x).max_depth);
  std::erase_if(cs, [&](NodeIndex x) { return t.stats(x).max_depth != best; });
  return cs;
}

/// IC of the least common subsumer; 0 when a and b share no subsumer.
inline double lcs_ic(const Taxonomy& t, const ICTable& ic, NodeIndex a,
                     NodeIndex b, const SimConfig& cfg = {}) {
  auto cs = cfg.lcs_rule == LcsRule::deepest ? lcs_set(t, a, b)
                                             : common_subsumers(t, a, b);
  double best = 0.0;
  for (NodeIndex x : cs) best = std::max(best, ic[x]);
  return best;
}

struct DcsSet {
  std::vector<SynsetId> members;
  std::pair<SynsetId, SynsetId> for_pair;
};

/// Disjoint common subsumers as node indices. Common subsumers are visited
/// deepest first (longest-path depth, ties by id); a candidate is kept
/// unless an already kept node lies below it. Because every ancestor has a
/// strictly smaller longest-path depth than its descendants, the result is
/// exactly the set of most specific common subsumers.
inline std::vector<NodeIndex> dcs_indices(const Taxonomy& t, NodeIndex a,
                                          NodeIndex b) {
  auto suspects = common_subsumers(t, a, b);
  std::stable_sort(suspects.begin(), suspects.end(),
                   [&](NodeIndex x, NodeIndex y) {
                     return t.stats(x).max_depth > t.stats(y).max_depth;
                   });
  std::vector<NodeIndex> kept;
  for (NodeIndex x : suspects) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](NodeIndex y) {
      return y != x && t.subsumes(x, y);
    });
    if (!covered) kept.push_back(x);
  }
  return kept;
}

inline DcsSet dcs(const Taxonomy& t, const SynsetId& a, const SynsetId& b) {
  NodeIndex ia = t.index_of(a), ib = t.index_of(b);
  return DcsSet{to_ids(t, dcs_indices(t, ia, ib)), {a, b}};
}

inline double sim_resnik(const Taxonomy& t, const ICTable& ic, NodeIndex a,
                         NodeIndex b, const SimConfig& cfg = {}) {
  return lcs_ic(t, ic, a, b, cfg);
}

inline double sim_lin(const Taxonomy& t, const ICTable& ic, NodeIndex a,
                      NodeIndex b, const SimConfig& cfg = {}) {
  double den = ic[a] + ic[b];
  if (den == 0.0) return 0.0;
  return 2.0 * lcs_ic(t, ic, a, b, cfg) / den;
}

/// Jiang-Conrath distance mapped linearly onto a similarity.
inline double sim_jiang_conrath(const Taxonomy& t, const ICTable& ic,
                                NodeIndex a, NodeIndex b,
                                const SimConfig& cfg = {}) {
  double dist = ic[a] + ic[b] - 2.0 * lcs_ic(t, ic, a, b, cfg);
  return 1.0 - dist / 2.0;
}

inline double sim_faith(const Taxonomy& t, const ICTable& ic, NodeIndex a,
                        NodeIndex b, const SimConfig& cfg = {}) {
  double lcs = lcs_ic(t, ic, a, b, cfg);
  double den = ic[a] + ic[b] - lcs;
  if (den == 0.0) return 0.0;
  return lcs / den;
}

inline double sim_batet(const Taxonomy& t, const ICTable& ic, NodeIndex a,
                        NodeIndex b, const SimConfig& cfg = {}) {
  if (!(ic.max_ic() > 0.0))
    throw Error(ErrorKind::DegenerateTable,
                "max IC is 0 for model " + std::string(to_string(ic.model())));
  double dist = ic[a] + ic[b] - 2.0 * lcs_ic(t, ic, a, b, cfg);
  return -detail::log_base((dist + 1.0) / (2.0 * ic.max_ic()),
                           ic.config().log_base);
}

/// Mean over the disjoint common subsumers d of
/// IC(d)/(IC(a)+1) + IC(d)/(IC(b)+1).
inline double sim_proposed(const Taxonomy& t, const ICTable& ic, NodeIndex a,
                           NodeIndex b) {
  if (!ic.bounded())
    throw Error(ErrorKind::UnboundedIC,
                std::string(to_string(ic.model())) +
                    " IC is not confined to [0, 1]; enable normalization");
  auto members = dcs_indices(t, a, b);
  if (members.empty()) return 0.0;
  double sum = 0.0;
  for (NodeIndex d : members)
    sum += ic[d] / (ic[a] + 1.0) + ic[d] / (ic[b] + 1.0);
  return sum / static_cast<double>(members.size());
}

inline double similarity(const Taxonomy& t, const ICTable& ic,
                         SimMeasure measure, NodeIndex a, NodeIndex b,
                         const SimConfig& cfg = {}) {
  switch (measure) {
    case SimMeasure::resnik: return sim_resnik(t, ic, a, b, cfg);
    case SimMeasure::lin: return sim_lin(t, ic, a, b, cfg);
    case SimMeasure::jiang_conrath: return sim_jiang_conrath(t, ic, a, b, cfg);
    case SimMeasure::faith: return sim_faith(t, ic, a, b, cfg);
    case SimMeasure::batet: return sim_batet(t, ic, a, b, cfg);
    case SimMeasure::proposed: return sim_proposed(t, ic, a, b);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown measure");
}

inline double similarity(const Taxonomy& t, const ICTable& ic,
                         SimMeasure measure, const SynsetId& a,
                         const SynsetId& b, const SimConfig& cfg = {}) {
  return similarity(t, ic, measure, t.index_of(a), t.index_of(b), cfg);
}

struct WordSimilarity {
  double value = 0.0;
  NodeIndex sense_a = 0;  // argmax sense pair
  NodeIndex sense_b = 0;
};

/// Polysemous word similarity: best score over all noun sense pairs. Ties
/// keep the first pair in sense order.
inline WordSimilarity word_similarity(const Taxonomy& t, const ICTable& ic,
                                      SimMeasure measure, std::string_view w1,
                                      std::string_view w2,
                                      const SimConfig& cfg = {}) {
  auto s1 = t.senses(w1);
  auto s2 = t.senses(w2);
  if (s1.empty()) throw Error(ErrorKind::UnknownWord, std::string(w1));
  if (s2.empty()) throw Error(ErrorKind::UnknownWord, std::string(w2));
  WordSimilarity best;
  bool first = true;
  for (NodeIndex a : s1) {
    for (NodeIndex b : s2) {
      double v = similarity(t, ic, measure, a, b, cfg);
      if (first || v > best.value) {
        best = WordSimilarity{v, a, b};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace semsim
