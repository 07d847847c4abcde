#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semsim/error.hpp"
#include "semsim/taxonomy.hpp"

namespace semsim {

enum class ICModel {
  seco,
  zhou,
  sanchez2011,
  commonness2012,
  meng,
  qingbo,
  proposed,
};

inline constexpr std::array<ICModel, 7> kAllICModels = {
    ICModel::seco,  ICModel::zhou,   ICModel::sanchez2011,
    ICModel::commonness2012, ICModel::meng, ICModel::qingbo,
    ICModel::proposed};

constexpr std::string_view to_string(ICModel m) {
  switch (m) {
    case ICModel::seco: return "seco";
    case ICModel::zhou: return "zhou";
    case ICModel::sanchez2011: return "sanchez2011";
    case ICModel::commonness2012: return "commonness2012";
    case ICModel::meng: return "meng";
    case ICModel::qingbo: return "qingbo";
    case ICModel::proposed: return "proposed";
  }
  return "?";
}

inline std::optional<ICModel> parse_ic_model(std::string_view s) {
  for (ICModel m : kAllICModels)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// Models whose values lie in [0, 1] by construction.
constexpr bool is_bounded(ICModel m) {
  return m == ICModel::seco || m == ICModel::zhou || m == ICModel::meng ||
         m == ICModel::proposed;
}

struct ICConfig {
  double zhou_k = 0.5;
  /// Base of the logarithms that do not appear as a ratio (Sanchez 2011,
  /// commonness, the middle factor of the proposed model, Batet).
  double log_base = 10.0;
  /// Count a leaf as its own single leaf (Sanchez 2011 only).
  bool leaf_self = false;
  /// Divide unbounded tables by their maximum.
  bool normalize_unbounded = false;

  void validate() const {
    if (!(zhou_k >= 0.0 && zhou_k <= 1.0))
      throw Error(ErrorKind::InvalidArgument, "zhou_k must lie in [0, 1]");
    if (!(log_base > 1.0) || !std::isfinite(log_base))
      throw Error(ErrorKind::InvalidArgument, "log base must be > 1");
  }
};

namespace detail {

// log(x)/log(y); the 0/0 case of a one-node taxonomy reads as 0.
inline double log_ratio(double x, double y) {
  double den = std::log(y);
  return den == 0.0 ? 0.0 : std::log(x) / den;
}

inline double log_base(double x, double base) {
  return std::log(x) / std::log(base);
}

// log(depth)/log(deep_max) over 0-based depths. The numerator vanishes for
// the root and its direct children.
inline double depth_log_ratio(std::uint32_t depth, std::uint32_t deep_max) {
  if (depth <= 1) return 0.0;
  return std::log(static_cast<double>(depth)) /
         std::log(static_cast<double>(deep_max));
}

inline double commonness(const Taxonomy& t, NodeIndex c) {
  if (t.is_leaf(c)) return 1.0 / t.stats(c).subsumer_count;
  double sum = 0.0;
  for (NodeIndex l : t.leaves(c)) sum += 1.0 / t.stats(l).subsumer_count;
  return sum;
}

}  // namespace detail

inline double ic_seco(const Taxonomy& t, NodeIndex c) {
  if (c == t.root()) return 0.0;
  const auto& s = t.stats(c);
  return 1.0 - detail::log_ratio(s.hypo_count + 1.0, t.constants().max_wn);
}

inline double ic_zhou(const Taxonomy& t, NodeIndex c, double k) {
  if (c == t.root()) return 0.0;
  const auto& s = t.stats(c);
  const auto& kc = t.constants();
  double hypo = 1.0 - detail::log_ratio(s.hypo_count + 1.0, kc.node_max);
  return k * hypo + (1.0 - k) * detail::depth_log_ratio(s.depth, kc.deep_max);
}

inline double ic_sanchez2011(const Taxonomy& t, NodeIndex c,
                             const ICConfig& cfg = {}) {
  if (c == t.root()) return 0.0;
  const auto& s = t.stats(c);
  double leaves = s.leaf_count;
  if (cfg.leaf_self && t.is_leaf(c)) leaves = 1.0;
  double x = (leaves / s.subsumer_count + 1.0) /
             (t.constants().leaves_max + 1.0);
  return -detail::log_base(x, cfg.log_base);
}

inline double ic_commonness2012(const Taxonomy& t, NodeIndex c,
                                const ICConfig& cfg = {}) {
  if (c == t.root()) return 0.0;
  return -detail::log_base(
      detail::commonness(t, c) / detail::commonness(t, t.root()),
      cfg.log_base);
}

inline double ic_meng(const Taxonomy& t, NodeIndex c) {
  if (c == t.root()) return 0.0;
  const auto& s = t.stats(c);
  const auto& kc = t.constants();
  return detail::depth_log_ratio(s.depth, kc.deep_max) *
         (1.0 - detail::log_ratio(s.inv_depth_sum + 1.0, kc.node_max));
}

inline double ic_qingbo(const Taxonomy& t, NodeIndex c) {
  if (c == t.root()) return 0.0;
  const auto& s = t.stats(c);
  const auto& kc = t.constants();
  double f_depth = detail::depth_log_ratio(s.depth, kc.deep_max);
  double f_leaves = detail::log_ratio(s.leaf_count + 1.0, kc.leaves_max + 1.0);
  double f_hypernyms =
      detail::log_ratio((s.subsumer_count - 1.0) + 1.0, kc.node_max);
  return f_depth * (1.0 - f_leaves) + f_hypernyms;
}

/// depth factor x (leaf / multiple-inheritance / subsumer factor) x
/// hyponym-depth factor.
inline double ic_proposed(const Taxonomy& t, NodeIndex c,
                          const ICConfig& cfg = {}) {
  if (c == t.root()) return 0.0;
  const auto& s = t.stats(c);
  const auto& kc = t.constants();
  double f_depth = detail::log_ratio(s.depth + 1.0, kc.deep_max + 1.0);
  double spread = (static_cast<double>(s.leaf_count) * s.nmih / kc.leaves_max) /
                  s.subsumer_count;
  double f_inherit = 1.0 - detail::log_base(spread + 1.0, cfg.log_base);
  double f_hypo = 1.0 - detail::log_ratio(s.inv_depth_sum + 1.0, kc.node_max);
  return f_depth * f_inherit * f_hypo;
}

inline double ic_value(const Taxonomy& t, ICModel model, NodeIndex c,
                       const ICConfig& cfg = {}) {
  switch (model) {
    case ICModel::seco: return ic_seco(t, c);
    case ICModel::zhou: return ic_zhou(t, c, cfg.zhou_k);
    case ICModel::sanchez2011: return ic_sanchez2011(t, c, cfg);
    case ICModel::commonness2012: return ic_commonness2012(t, c, cfg);
    case ICModel::meng: return ic_meng(t, c);
    case ICModel::qingbo: return ic_qingbo(t, c);
    case ICModel::proposed: return ic_proposed(t, c, cfg);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown IC model");
}

inline double ic_value(const Taxonomy& t, ICModel model, const SynsetId& c,
                       const ICConfig& cfg = {}) {
  return ic_value(t, model, t.index_of(c), cfg);
}

/// IC of every synset under one model.
class ICTable {
 public:
  ICTable() = default;
  ICTable(ICModel model, ICConfig config, std::vector<double> values,
          bool normalized)
      : model_(model),
        config_(config),
        values_(std::move(values)),
        normalized_(normalized) {
    for (double v : values_) max_ic_ = std::max(max_ic_, v);
  }

  ICModel model() const noexcept { return model_; }
  const ICConfig& config() const noexcept { return config_; }
  double max_ic() const noexcept { return max_ic_; }
  bool normalized() const noexcept { return normalized_; }
  /// True when every value is known to lie in [0, 1].
  bool bounded() const noexcept {
    return (is_bounded(model_) || normalized_) && max_ic_ <= 1.0 + 1e-12;
  }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator[](NodeIndex i) const { return values_[i]; }
  double at(NodeIndex i) const {
    if (i >= values_.size())
      throw Error(ErrorKind::UnknownSynset,
                  "node index " + std::to_string(i) + " out of range");
    return values_[i];
  }
  double at(const Taxonomy& t, const SynsetId& id) const {
    return at(t.index_of(id));
  }

 private:
  ICModel model_ = ICModel::proposed;
  ICConfig config_;
  std::vector<double> values_;
  double max_ic_ = 0.0;
  bool normalized_ = false;
};

inline ICTable ic_table(const Taxonomy& t, ICModel model,
                        const ICConfig& cfg = {}) {
  cfg.validate();
  const std::size_t n = t.size();
  std::vector<double> values(n, 0.0);
  if (model == ICModel::commonness2012) {
    // One pass over leaves instead of a leaves() walk per node.
    std::vector<double> common(n, 0.0);
    for (NodeIndex l = 0; l < n; ++l) {
      if (!t.is_leaf(l)) continue;
      double w = 1.0 / t.stats(l).subsumer_count;
      for (NodeIndex a : t.subsumers(l)) common[a] += w;
    }
    double at_root = common[t.root()];
    for (NodeIndex i = 0; i < n; ++i)
      values[i] = i == t.root()
                      ? 0.0
                      : -detail::log_base(common[i] / at_root, cfg.log_base);
  } else {
    for (NodeIndex i = 0; i < n; ++i) values[i] = ic_value(t, model, i, cfg);
  }

  bool normalized = false;
  if (cfg.normalize_unbounded && !is_bounded(model)) {
    double mx = *std::max_element(values.begin(), values.end());
    if (mx > 0.0) {
      for (double& v : values) v /= mx;
      normalized = true;
    }
  }
  return ICTable(model, cfg, std::move(values), normalized);
}

}  // namespace semsim
