#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semsim/error.hpp"
#include "semsim/ic_models.hpp"
#include "semsim/ingest.hpp"
#include "semsim/similarity.hpp"
#include "semsim/taxonomy.hpp"

namespace semsim {

struct BenchmarkPair {
  std::string word1;
  std::string word2;
  double human = 0.0;
};

struct BenchmarkDataset {
  std::string name;
  std::vector<BenchmarkPair> pairs;
  double scale_min = 0.0;
  double scale_max = 0.0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_real(std::string_view s, double& out) {
  std::string buf(s);
  if (buf.empty()) return false;
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(out);
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s == "-0.000" || s == "-0.00") s.erase(0, 1);
  return s;
}

}  // namespace detail

/// Parses `word1 word2 score` rows separated by tabs (or commas when a row
/// has no tab). `#` lines are comments; a non-numeric score on the first
/// row marks a header.
inline BenchmarkDataset parse_dataset_text(std::string_view text,
                                           std::string name) {
  BenchmarkDataset ds;
  ds.name = std::move(name);
  std::set<std::pair<std::string, std::string>> seen;
  bool first_row = true;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t no,
                                  std::size_t) {
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.starts_with('#')) return;
    char sep = line.find('\t') != std::string_view::npos ? '\t' : ',';
    std::vector<std::string_view> f;
    std::size_t pos = 0;
    while (true) {
      std::size_t k = line.find(sep, pos);
      f.push_back(detail::trim(line.substr(pos, k - pos)));
      if (k == std::string_view::npos) break;
      pos = k + 1;
    }
    bool header = first_row;
    first_row = false;
    double score = 0.0;
    if (f.size() != 3 || f[0].empty() || f[1].empty() ||
        !detail::parse_real(f[2], score)) {
      if (header && f.size() == 3) return;
      throw Error(ErrorKind::MalformedRow,
                  ds.name + " row " + std::to_string(no) +
                      ": expected word1, word2, score");
    }
    std::string a(f[0]), b(f[1]);
    std::string na = normalize_lemma(a), nb = normalize_lemma(b);
    if (nb < na) std::swap(na, nb);
    if (!seen.emplace(na, nb).second)
      throw Error(ErrorKind::MalformedRow, ds.name + " row " +
                                               std::to_string(no) +
                                               ": duplicate pair " + a + "-" + b);
    ds.pairs.push_back(BenchmarkPair{std::move(a), std::move(b), score});
  });
  if (ds.pairs.empty()) throw Error(ErrorKind::EmptyDataset, ds.name);
  auto [lo, hi] = std::minmax_element(
      ds.pairs.begin(), ds.pairs.end(),
      [](const auto& x, const auto& y) { return x.human < y.human; });
  ds.scale_min = lo->human;
  ds.scale_max = hi->human;
  return ds;
}

inline BenchmarkDataset load_dataset(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path))
    throw Error(ErrorKind::MissingFile, path.string());
  return parse_dataset_text(detail::read_file(path), path.stem().string());
}

/// Sample Pearson correlation.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  if (x.size() < 2)
    throw Error(ErrorKind::LengthMismatch, "need at least two observations");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(ErrorKind::ZeroVariance, "constant input vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

struct PairScore {
  BenchmarkPair pair;
  double machine = 0.0;
  bool ok = true;  // false: a word has no noun sense
  std::string skipped_word;
};

struct EvalResult {
  std::string dataset;
  ICModel ic_model = ICModel::proposed;
  SimMeasure measure = SimMeasure::resnik;
  std::vector<PairScore> per_pair;
  double pearson = 0.0;  // rounded to 2 decimals
  double pearson_raw = 0.0;
  std::size_t n_used = 0;
};

/// Scores every pair with word_similarity and correlates the scored pairs
/// with the human ratings. Pairs with an unknown word are kept in
/// `per_pair` but left out of the correlation.
inline EvalResult evaluate(const Taxonomy& t, const BenchmarkDataset& ds,
                           const ICTable& ic, SimMeasure measure,
                           const SimConfig& sim_cfg = {}) {
  if (ds.pairs.empty()) throw Error(ErrorKind::EmptyDataset, ds.name);
  EvalResult r;
  r.dataset = ds.name;
  r.ic_model = ic.model();
  r.measure = measure;
  std::vector<double> machine, human;
  for (const BenchmarkPair& p : ds.pairs) {
    PairScore s{p, 0.0, true, {}};
    if (t.senses(p.word1).empty()) {
      s.ok = false;
      s.skipped_word = p.word1;
    } else if (t.senses(p.word2).empty()) {
      s.ok = false;
      s.skipped_word = p.word2;
    } else {
      s.machine =
          word_similarity(t, ic, measure, p.word1, p.word2, sim_cfg).value;
      machine.push_back(s.machine);
      human.push_back(p.human);
    }
    r.per_pair.push_back(std::move(s));
  }
  r.n_used = machine.size();
  if (r.n_used == 0) throw Error(ErrorKind::AllPairsSkipped, ds.name);
  r.pearson_raw = pearson(machine, human);
  r.pearson = round2(r.pearson_raw);
  return r;
}

inline EvalResult evaluate(const Taxonomy& t, const BenchmarkDataset& ds,
                           ICModel model, SimMeasure measure,
                           const ICConfig& ic_cfg = {},
                           const SimConfig& sim_cfg = {}) {
  return evaluate(t, ds, ic_table(t, model, ic_cfg), measure, sim_cfg);
}

struct Combo {
  ICModel ic;
  SimMeasure measure;
  friend bool operator==(const Combo&, const Combo&) = default;
};

/// Every (IC model, measure) pairing reported for the two benchmarks.
inline std::vector<Combo> reported_grid() {
  std::vector<Combo> out;
  for (ICModel m : kAllICModels)
    for (SimMeasure s : {SimMeasure::resnik, SimMeasure::lin,
                         SimMeasure::jiang_conrath})
      out.push_back({m, s});
  out.push_back({ICModel::proposed, SimMeasure::faith});
  out.push_back({ICModel::proposed, SimMeasure::proposed});
  out.push_back({ICModel::meng, SimMeasure::proposed});
  out.push_back({ICModel::seco, SimMeasure::faith});
  out.push_back({ICModel::sanchez2011, SimMeasure::batet});
  return out;
}

/// Published correlations for methods this toolkit does not implement
/// (corpus IC, edge counting, feature based, distributional). Shown in
/// reports as annotations only.
struct LiteratureBaseline {
  std::string_view method;
  std::string_view type;
  int n_pairs;
  double correlation;
};

inline const std::vector<LiteratureBaseline>& literature_baselines() {
  static const std::vector<LiteratureBaseline> rows = {
      {"Resnik (corpus IC)", "IC (corpora-based)", 28, 0.72},
      {"Lin (corpus IC)", "IC (corpora-based)", 28, 0.70},
      {"Jiang and Conrath (corpus IC)", "IC (corpora-based)", 28, 0.73},
      {"Rada et al.", "Edge-counting", 28, 0.59},
      {"Wu and Palmer", "Edge-counting", 28, 0.74},
      {"Leacock and Chodorow", "Edge-counting", 28, 0.74},
      {"Li et al.", "Edge-counting", 28, 0.82},
      {"Rodriguez and Egenhofer", "Feature-based", 28, 0.71},
      {"Tversky", "Feature-based", 28, 0.73},
      {"Petrakis et al.", "Feature-based", 30, 0.73},
      {"Aida Valls et al.", "Feature-based", 30, 0.83},
      {"Bollegala et al.", "Distributional", 30, 0.83},
      {"Chen et al.", "Distributional", 30, 0.69},
      {"Sahami and Heilman", "Distributional", 30, 0.58},
      {"Gledson", "Distributional", 30, 0.55},
      {"Danushka Bollegala", "WebSnippet and page-count based", 28, 0.87},
  };
  return rows;
}

struct GridReport {
  std::string dataset;
  std::size_t n_pairs = 0;
  ICConfig ic_config;
  SimConfig sim_config;
  std::vector<EvalResult> results;
  bool include_literature = false;
};

inline GridReport grid_report(const Taxonomy& t, const BenchmarkDataset& ds,
                              const std::vector<Combo>& combos,
                              const ICConfig& ic_cfg = {},
                              const SimConfig& sim_cfg = {}) {
  if (combos.empty())
    throw Error(ErrorKind::InvalidArgument, "no (ic, measure) combinations");
  GridReport rep;
  rep.dataset = ds.name;
  rep.n_pairs = ds.pairs.size();
  rep.ic_config = ic_cfg;
  rep.sim_config = sim_cfg;
  std::map<ICModel, ICTable> tables;
  for (const Combo& c : combos) {
    auto it = tables.find(c.ic);
    if (it == tables.end())
      it = tables.emplace(c.ic, ic_table(t, c.ic, ic_cfg)).first;
    rep.results.push_back(evaluate(t, ds, it->second, c.measure, sim_cfg));
  }
  return rep;
}

// Rendering. Similarities and IC print with 3 decimals, correlations with 2.

inline constexpr int kJsonSchemaVersion = 1;

inline nlohmann::ordered_json to_json(const ICConfig& c) {
  return {{"zhou_k", c.zhou_k},
          {"log_base", c.log_base},
          {"leaf_self", c.leaf_self},
          {"normalize_unbounded", c.normalize_unbounded}};
}

inline nlohmann::ordered_json to_json(const EvalResult& r,
                                      bool with_pairs = true) {
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset;
  j["ic"] = std::string(to_string(r.ic_model));
  j["measure"] = std::string(to_string(r.measure));
  j["pearson"] = r.pearson;
  j["pearson_raw"] = r.pearson_raw;
  j["n_used"] = r.n_used;
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  for (const PairScore& p : r.per_pair)
    if (!p.ok)
      skipped.push_back({{"word1", p.pair.word1},
                         {"word2", p.pair.word2},
                         {"unknown_word", p.skipped_word}});
  j["skipped"] = skipped;
  if (with_pairs) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const PairScore& p : r.per_pair) {
      nlohmann::ordered_json e{{"word1", p.pair.word1},
                               {"word2", p.pair.word2},
                               {"human", p.pair.human}};
      if (p.ok) {
        e["machine"] = p.machine;
        e["status"] = "ok";
      } else {
        e["machine"] = nullptr;
        e["status"] = "skipped_unknown_word";
      }
      pairs.push_back(std::move(e));
    }
    j["pairs"] = pairs;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const GridReport& rep,
                                      bool with_pairs = false) {
  nlohmann::ordered_json j;
  j["schema"] = kJsonSchemaVersion;
  j["dataset"] = rep.dataset;
  j["n_pairs"] = rep.n_pairs;
  j["config"] = to_json(rep.ic_config);
  j["config"]["lcs_rule"] =
      rep.sim_config.lcs_rule == LcsRule::deepest ? "deepest" : "max_ic";
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const EvalResult& r : rep.results) {
    auto e = to_json(r, with_pairs);
    e.erase("dataset");
    results.push_back(std::move(e));
  }
  j["results"] = results;
  if (rep.include_literature) {
    nlohmann::ordered_json lit = nlohmann::ordered_json::array();
    for (const auto& b : literature_baselines())
      lit.push_back({{"method", std::string(b.method)},
                     {"type", std::string(b.type)},
                     {"n_pairs", b.n_pairs},
                     {"correlation", b.correlation},
                     {"note", "reported, not computed"}});
    j["literature"] = lit;
  }
  return j;
}

namespace detail {

inline std::string render_columns(
    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c)
      width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out += r[c];
      if (c + 1 < r.size()) {
        out.append(width[c] - r[c].size(), ' ');
        out += '\t';
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline std::string to_tsv(const GridReport& rep) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"ic", "measure", "n_used", "pearson", "pearson_raw"});
  for (const EvalResult& r : rep.results)
    rows.push_back({std::string(to_string(r.ic_model)),
                    std::string(to_string(r.measure)),
                    std::to_string(r.n_used),
                    detail::format_fixed(r.pearson, 2),
                    detail::format_fixed(r.pearson_raw, 4)});
  std::string out = "# dataset: " + rep.dataset +
                    " (" + std::to_string(rep.n_pairs) + " pairs)\n";
  out += detail::render_columns(rows);
  if (rep.include_literature) {
    std::vector<std::vector<std::string>> lit;
    lit.push_back({"method", "type", "n_pairs", "correlation"});
    for (const auto& b : literature_baselines())
      lit.push_back({std::string(b.method), std::string(b.type),
                     std::to_string(b.n_pairs),
                     detail::format_fixed(b.correlation, 2)});
    out += "# literature baselines on M&C (reported, not computed)\n";
    out += detail::render_columns(lit);
  }
  return out;
}

inline std::string pairs_to_tsv(const EvalResult& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"word1", "word2", "human", "machine", "status"});
  for (const PairScore& p : r.per_pair)
    rows.push_back({p.pair.word1, p.pair.word2,
                    detail::format_fixed(p.pair.human, 2),
                    p.ok ? detail::format_fixed(p.machine, 3) : "-",
                    p.ok ? "ok" : "skipped_unknown_word"});
  return detail::render_columns(rows);
}

/// One expected correlation: `ic<TAB>measure<TAB>expected<TAB>tolerance`.
struct GoldenEntry {
  Combo combo;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct GoldenCheck {
  GoldenEntry entry;
  double actual = 0.0;
  bool found = false;
  bool pass = false;
};

inline std::vector<GoldenEntry> parse_golden_text(std::string_view text,
                                                  const std::string& name) {
  std::vector<GoldenEntry> out;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t no,
                                  std::size_t) {
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.starts_with('#')) return;
    std::vector<std::string_view> f;
    std::size_t pos = 0;
    while (true) {
      std::size_t k = line.find('\t', pos);
      f.push_back(detail::trim(line.substr(pos, k - pos)));
      if (k == std::string_view::npos) break;
      pos = k + 1;
    }
    GoldenEntry e;
    auto ic = f.size() == 4 ? parse_ic_model(f[0]) : std::nullopt;
    auto m = f.size() == 4 ? parse_sim_measure(f[1]) : std::nullopt;
    if (!ic || !m || !detail::parse_real(f[2], e.expected) ||
        !detail::parse_real(f[3], e.tolerance))
      throw Error(ErrorKind::MalformedRow,
                  name + " row " + std::to_string(no) +
                      ": expected ic, measure, expected, tolerance");
    e.combo = {*ic, *m};
    out.push_back(e);
  });
  return out;
}

inline std::vector<GoldenEntry> load_golden(const std::filesystem::path& p) {
  if (!std::filesystem::is_regular_file(p))
    throw Error(ErrorKind::MissingFile, p.string());
  return parse_golden_text(detail::read_file(p), p.string());
}

/// Compares the 2-decimal correlations against the golden band.
inline std::vector<GoldenCheck> check_golden(
    const std::vector<EvalResult>& results,
    const std::vector<GoldenEntry>& golden) {
  std::vector<GoldenCheck> out;
  for (const GoldenEntry& g : golden) {
    GoldenCheck c{g, 0.0, false, false};
    for (const EvalResult& r : results) {
      if (r.ic_model == g.combo.ic && r.measure == g.combo.measure) {
        c.found = true;
        c.actual = r.pearson;
        c.pass = std::abs(r.pearson - g.expected) <= g.tolerance + 1e-9;
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace semsim
