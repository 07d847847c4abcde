#pragma once

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "semsim/error.hpp"
#include "semsim/taxonomy.hpp"

namespace semsim {

struct WordNetPointer {
  std::string symbol;  // "@", "@i", "~", "~i", ...
  std::string target_offset;
  char target_pos = 'n';
};

/// One parsed line of data.noun.
struct RawSynsetRecord {
  std::string offset;
  std::vector<std::string> lemmas;
  std::vector<WordNetPointer> pointers;
  std::string gloss;
};

struct WordIndexEntry {
  std::string lemma;
  std::vector<std::string> sense_offsets;
};

struct WordNetData {
  std::vector<RawSynsetRecord> records;
  std::vector<WordIndexEntry> index;
  std::vector<std::string> symmetry_violations;

  /// Synset ids carry the POS suffix: "00001740-n".
  static SynsetId synset_id(std::string_view offset) {
    return SynsetId(std::string(offset) + "-n");
  }

  /// Hypernym (`@`, `@i`) edges become child->parent edges; everything
  /// else is dropped.
  RawGraph to_raw_graph() const {
    RawGraph g;
    g.nodes.reserve(records.size());
    for (const RawSynsetRecord& r : records) {
      g.nodes.push_back(RawNode{synset_id(r.offset), r.lemmas, r.gloss});
      for (const WordNetPointer& p : r.pointers) {
        if (p.target_pos != 'n') continue;
        if (p.symbol == "@" || p.symbol == "@i")
          g.edges.push_back(RawEdge{synset_id(r.offset),
                                    synset_id(p.target_offset),
                                    p.symbol == "@i"});
      }
    }
    g.word_index.reserve(index.size());
    for (const WordIndexEntry& e : index) {
      std::vector<SynsetId> ids;
      ids.reserve(e.sense_offsets.size());
      for (const std::string& o : e.sense_offsets) ids.push_back(synset_id(o));
      g.word_index.emplace_back(e.lemma, std::move(ids));
    }
    g.warnings = symmetry_violations;
    return g;
  }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out, int base = 10) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
  return ec == std::errc() && p == s.data() + s.size();
}

inline bool is_offset(std::string_view s) {
  if (s.size() != 8) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

/// Calls fn(line, line_number, byte_offset) for every line of `text`,
/// with the trailing '\n' / "\r\n" removed.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0, number = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++number, pos);
    pos = end + 1;
  }
}

[[noreturn]] inline void malformed(const std::string& file, std::size_t line,
                                   std::size_t offset, const std::string& why) {
  throw Error(ErrorKind::MalformedLine, file + ":" + std::to_string(line) +
                                            " (byte " + std::to_string(offset) +
                                            "): " + why);
}

}  // namespace detail

/// Parses one data.noun line. `byte_offset` is the position of the line in
/// the file; WNdb requires the leading offset field to equal it.
inline RawSynsetRecord parse_data_line(std::string_view line,
                                       std::size_t line_number,
                                       std::size_t byte_offset,
                                       const std::string& file = "data.noun") {
  using detail::malformed;
  std::string_view body = line, gloss;
  if (auto bar = line.find(" | "); bar != std::string_view::npos) {
    body = line.substr(0, bar);
    gloss = line.substr(bar + 3);
    while (!gloss.empty() && gloss.back() == ' ') gloss.remove_suffix(1);
  }
  auto f = detail::split_spaces(body);
  if (f.size() < 6) malformed(file, line_number, byte_offset, "too few fields");

  RawSynsetRecord r;
  if (!detail::is_offset(f[0]))
    malformed(file, line_number, byte_offset, "bad synset offset");
  std::size_t declared = 0;
  detail::parse_int(f[0], declared);
  if (declared != byte_offset)
    malformed(file, line_number, byte_offset,
              "offset field " + std::string(f[0]) +
                  " does not match byte position");
  r.offset = std::string(f[0]);
  if (f[2] != "n")
    malformed(file, line_number, byte_offset,
              "ss_type '" + std::string(f[2]) + "' is not a noun");

  unsigned w_cnt = 0;
  if (!detail::parse_int(f[3], w_cnt, 16) || w_cnt == 0)
    malformed(file, line_number, byte_offset, "bad w_cnt");
  std::size_t i = 4;
  if (f.size() < i + 2 * w_cnt + 1)
    malformed(file, line_number, byte_offset, "lemma list truncated");
  for (unsigned k = 0; k < w_cnt; ++k, i += 2)
    r.lemmas.emplace_back(f[i]);

  unsigned p_cnt = 0;
  if (!detail::parse_int(f[i], p_cnt))
    malformed(file, line_number, byte_offset, "bad p_cnt");
  ++i;
  if (f.size() < i + 4 * std::size_t{p_cnt})
    malformed(file, line_number, byte_offset, "pointer list truncated");
  for (unsigned k = 0; k < p_cnt; ++k, i += 4) {
    if (!detail::is_offset(f[i + 1]) || f[i + 2].size() != 1 ||
        f[i + 3].size() != 4)
      malformed(file, line_number, byte_offset,
                "bad pointer " + std::to_string(k + 1));
    r.pointers.push_back(WordNetPointer{std::string(f[i]),
                                        std::string(f[i + 1]), f[i + 2][0]});
  }
  r.gloss = std::string(gloss);
  return r;
}

/// Reads data.noun and index.noun from `dir`. Other POS files are ignored.
inline WordNetData parse_wordnet(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path data_path = dir / "data.noun";
  const fs::path index_path = dir / "index.noun";
  for (const auto& p : {data_path, index_path})
    if (!fs::is_regular_file(p)) throw Error(ErrorKind::MissingFile, p.string());

  WordNetData wn;
  const std::string data = detail::read_file(data_path);
  const std::string file = data_path.string();
  detail::for_each_line(data, [&](std::string_view line, std::size_t no,
                                  std::size_t off) {
    if (line.empty() || line.starts_with("  ")) return;  // license header
    wn.records.push_back(parse_data_line(line, no, off, file));
  });

  std::unordered_map<std::string_view, std::size_t> by_offset;
  by_offset.reserve(wn.records.size() * 2);
  for (std::size_t k = 0; k < wn.records.size(); ++k)
    by_offset.emplace(wn.records[k].offset, k);

  // Noun-to-noun pointers must resolve; hyponym pointers must be mirrored by
  // a hypernym pointer of the matching kind.
  std::set<std::pair<std::string_view, std::string_view>> up, up_instance;
  for (const RawSynsetRecord& r : wn.records) {
    for (const WordNetPointer& p : r.pointers) {
      if (p.target_pos != 'n') continue;
      if (!by_offset.count(p.target_offset))
        throw Error(ErrorKind::DanglingPointer,
                    r.offset + " " + p.symbol + " " + p.target_offset);
      if (p.symbol == "@") up.emplace(r.offset, p.target_offset);
      if (p.symbol == "@i") up_instance.emplace(r.offset, p.target_offset);
    }
  }
  for (const RawSynsetRecord& r : wn.records) {
    for (const WordNetPointer& p : r.pointers) {
      if (p.target_pos != 'n') continue;
      if (p.symbol == "~" && !up.count({p.target_offset, r.offset}))
        wn.symmetry_violations.push_back(r.offset + " ~ " + p.target_offset +
                                         " has no reverse @");
      if (p.symbol == "~i" && !up_instance.count({p.target_offset, r.offset}))
        wn.symmetry_violations.push_back(r.offset + " ~i " + p.target_offset +
                                         " has no reverse @i");
    }
  }

  const std::string index = detail::read_file(index_path);
  const std::string ifile = index_path.string();
  detail::for_each_line(index, [&](std::string_view line, std::size_t no,
                                   std::size_t off) {
    if (line.empty() || line.starts_with("  ")) return;
    auto f = detail::split_spaces(line);
    // lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt
    // synset_offset [synset_offset...]
    if (f.size() < 6) detail::malformed(ifile, no, off, "too few fields");
    if (f[1] != "n") detail::malformed(ifile, no, off, "pos is not n");
    unsigned synset_cnt = 0, p_cnt = 0;
    if (!detail::parse_int(f[2], synset_cnt) ||
        !detail::parse_int(f[3], p_cnt))
      detail::malformed(ifile, no, off, "bad counts");
    std::size_t first = 4 + std::size_t{p_cnt} + 2;
    if (f.size() != first + synset_cnt)
      detail::malformed(ifile, no, off, "synset_cnt does not match offsets");
    WordIndexEntry e;
    e.lemma = normalize_lemma(f[0]);
    for (std::size_t k = first; k < f.size(); ++k) {
      if (!detail::is_offset(f[k]))
        detail::malformed(ifile, no, off, "bad synset offset");
      if (!by_offset.count(f[k]))
        throw Error(ErrorKind::DanglingPointer,
                    "index.noun '" + e.lemma + "' -> " + std::string(f[k]));
      e.sense_offsets.emplace_back(f[k]);
    }
    wn.index.push_back(std::move(e));
  });
  return wn;
}

/// Convenience: parse, convert, freeze.
inline Taxonomy load_wordnet(const std::filesystem::path& dir,
                             FreezeOptions options = {}) {
  return freeze(parse_wordnet(dir).to_raw_graph(), options);
}

/// Parses the toy-ontology edge-list text: `child<TAB>parent` per line,
/// `#` comments, optional `!root <label>`. A line holding a single label
/// declares an isolated node.
inline RawGraph parse_edgelist_text(std::string_view text,
                                    const std::string& name = "<edgelist>") {
  RawGraph g;
  std::unordered_map<std::string, std::size_t> seen_nodes;
  std::set<std::pair<std::string, std::string>> seen_edges;
  auto node = [&](std::string_view label) {
    std::string key(label);
    if (!seen_nodes.count(key)) {
      seen_nodes.emplace(key, g.nodes.size());
      g.nodes.push_back(RawNode{SynsetId(key), {key}, {}});
    }
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
      s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
      s.remove_suffix(1);
    return s;
  };
  detail::for_each_line(text, [&](std::string_view raw_line, std::size_t no,
                                  std::size_t off) {
    std::string_view line = trim(raw_line);
    if (line.empty() || line.starts_with('#')) return;
    if (line.starts_with("!root")) {
      std::string_view label = trim(line.substr(5));
      if (label.empty() || label.find('\t') != std::string_view::npos)
        detail::malformed(name, no, off, "bad !root directive");
      if (g.pinned_root)
        detail::malformed(name, no, off, "root pinned twice");
      node(label);
      g.pinned_root = SynsetId(label);
      return;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      if (line.find(' ') != std::string_view::npos)
        detail::malformed(name, no, off, "expected child<TAB>parent");
      node(line);
      return;
    }
    std::string_view child = trim(line.substr(0, tab));
    std::string_view parent = trim(line.substr(tab + 1));
    if (child.empty() || parent.empty() ||
        parent.find('\t') != std::string_view::npos)
      detail::malformed(name, no, off, "expected child<TAB>parent");
    node(child);
    node(parent);
    if (!seen_edges.emplace(std::string(child), std::string(parent)).second) {
      g.warnings.push_back(name + ":" + std::to_string(no) +
                           ": duplicate edge " + std::string(child) + " -> " +
                           std::string(parent) + " ignored");
      return;
    }
    g.edges.push_back(RawEdge{SynsetId(child), SynsetId(parent), false});
  });
  return g;
}

inline RawGraph parse_edgelist(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path))
    throw Error(ErrorKind::MissingFile, path.string());
  return parse_edgelist_text(detail::read_file(path), path.string());
}

inline Taxonomy load_edgelist(const std::filesystem::path& path,
                              FreezeOptions options = {}) {
  return freeze(parse_edgelist(path), options);
}

/// Serializes a frozen taxonomy back to the edge-list format. A synthetic
/// root is left implicit; isolated nodes are written as single labels.
inline std::string write_edgelist(const Taxonomy& t) {
  std::ostringstream out;
  const Synset& root = t.node(t.root());
  if (!root.synthetic) out << "!root " << root.id << '\n';
  for (NodeIndex i = 0; i < t.size(); ++i) {
    const Synset& s = t.node(i);
    if (s.synthetic) continue;
    bool wrote = false;
    for (NodeIndex p : s.parents) {
      if (t.node(p).synthetic) continue;
      out << s.id << '\t' << t.id(p) << '\n';
      wrote = true;
    }
    if (!wrote && i != t.root()) out << s.id << '\n';
  }
  return out.str();
}

}  // namespace semsim
