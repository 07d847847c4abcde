#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semsim/error.hpp"
#include "semsim/ingest.hpp"
#include "semsim/taxonomy.hpp"

// Binary cache of a parsed ontology, keyed by a hash of the source files.
// The layout is host-endian and meant for local reuse only.

namespace semsim {

/// FNV-1a over the concatenated contents (and sizes) of `files`.
inline std::uint64_t content_hash(
    const std::vector<std::filesystem::path>& files) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view bytes) {
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& f : files) {
    std::string data = detail::read_file(f);
    std::uint64_t size = data.size();
    mix(std::string_view(reinterpret_cast<const char*>(&size), sizeof size));
    mix(data);
  }
  return h;
}

namespace detail {

inline constexpr std::string_view kSnapshotMagic = "SEMSIM01";

class SnapshotWriter {
 public:
  explicit SnapshotWriter(std::ofstream& out) : out_(out) {}
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u64(std::uint64_t v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void str(std::string_view s) {
    u64(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ofstream& out_;
};

class SnapshotReader {
 public:
  explicit SnapshotReader(std::string data) : data_(std::move(data)) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint64_t u64() {
    need(sizeof(std::uint64_t));
    std::uint64_t v;
    std::memcpy(&v, data_.data() + pos_, sizeof v);
    pos_ += sizeof v;
    return v;
  }
  std::string str() {
    auto n = u64();
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    std::string_view v(data_.data() + pos_, n);
    pos_ += n;
    return v;
  }

 private:
  void need(std::uint64_t n) const {
    if (pos_ + n > data_.size())
      throw Error(ErrorKind::MalformedLine, "truncated snapshot");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline void save_snapshot(const std::filesystem::path& path,
                          const RawGraph& g, std::uint64_t source_hash) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::MissingFile, path.string());
  detail::SnapshotWriter w(out);
  out.write(detail::kSnapshotMagic.data(), detail::kSnapshotMagic.size());
  w.u64(source_hash);
  w.u64(g.nodes.size());
  for (const RawNode& n : g.nodes) {
    w.str(n.id.value);
    w.u64(n.lemmas.size());
    for (const auto& l : n.lemmas) w.str(l);
    w.str(n.gloss);
  }
  w.u64(g.edges.size());
  for (const RawEdge& e : g.edges) {
    w.str(e.child.value);
    w.str(e.parent.value);
    w.u8(e.instance ? 1 : 0);
  }
  w.u8(g.pinned_root ? 1 : 0);
  if (g.pinned_root) w.str(g.pinned_root->value);
  w.u64(g.word_index.size());
  for (const auto& [lemma, ids] : g.word_index) {
    w.str(lemma);
    w.u64(ids.size());
    for (const auto& id : ids) w.str(id.value);
  }
  w.u64(g.warnings.size());
  for (const auto& s : g.warnings) w.str(s);
  if (!out) throw Error(ErrorKind::MissingFile, "write failed: " + path.string());
}

/// Returns the cached graph, or nullopt when the file is absent, unreadable
/// or was built from different sources.
inline std::optional<RawGraph> load_snapshot(const std::filesystem::path& path,
                                             std::uint64_t source_hash) {
  if (!std::filesystem::is_regular_file(path)) return std::nullopt;
  try {
    detail::SnapshotReader r(detail::read_file(path));
    if (r.raw(detail::kSnapshotMagic.size()) != detail::kSnapshotMagic)
      return std::nullopt;
    if (r.u64() != source_hash) return std::nullopt;
    RawGraph g;
    g.nodes.resize(r.u64());
    for (RawNode& n : g.nodes) {
      n.id = SynsetId(r.str());
      n.lemmas.resize(r.u64());
      for (auto& l : n.lemmas) l = r.str();
      n.gloss = r.str();
    }
    g.edges.resize(r.u64());
    for (RawEdge& e : g.edges) {
      e.child = SynsetId(r.str());
      e.parent = SynsetId(r.str());
      e.instance = r.u8() != 0;
    }
    if (r.u8()) g.pinned_root = SynsetId(r.str());
    g.word_index.resize(r.u64());
    for (auto& [lemma, ids] : g.word_index) {
      lemma = r.str();
      ids.resize(r.u64());
      for (auto& id : ids) id = SynsetId(r.str());
    }
    g.warnings.resize(r.u64());
    for (auto& s : g.warnings) s = r.str();
    return g;
  } catch (const std::exception&) {
    // Corrupt or foreign file: rebuild from the sources.
    return std::nullopt;
  }
}

}  // namespace semsim
