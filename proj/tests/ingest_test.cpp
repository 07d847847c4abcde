#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "support.hpp"

using namespace semsim;
namespace fs = std::filesystem;

namespace {

fs::path mini_dir() {
  return testing_support::source_dir() / "tests" / "data" / "mini_wordnet";
}

// Copies the mini database into a scratch directory so a test can damage it.
fs::path scratch_copy(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("semsim_ingest_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const char* f : {"data.noun", "index.noun"})
    fs::copy_file(mini_dir() / f, dir / f);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

}  // namespace

TEST(ParseDataLine, HypernymPointer) {
  std::string line =
      "00000000 03 n 01 thing 0 001 @ 00001740 n 0000 | a thing  ";
  auto r = parse_data_line(line, 1, 0);
  ASSERT_EQ(r.pointers.size(), 1u);
  EXPECT_EQ(r.pointers[0].symbol, "@");
  EXPECT_EQ(r.pointers[0].target_offset, "00001740");
  EXPECT_EQ(r.pointers[0].target_pos, 'n');
  EXPECT_EQ(r.lemmas, (std::vector<std::string>{"thing"}));
  EXPECT_EQ(r.gloss, "a thing");
}

TEST(ParseDataLine, HexWordCount) {
  std::string line = "00000000 03 n 0a a 0 b 0 c 0 d 0 e 0 f 0 g 0 h 0 i 0 j 0 000 | x";
  EXPECT_EQ(parse_data_line(line, 1, 0).lemmas.size(), 10u);
}

TEST(ParseDataLine, OffsetMustMatchBytePosition) {
  std::string line = "00000010 03 n 01 thing 0 000 | x";
  try {
    parse_data_line(line, 7, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedLine);
    std::string m = e.what();
    EXPECT_NE(m.find("7"), std::string::npos);
    EXPECT_NE(m.find("12"), std::string::npos);
  }
}

TEST(ParseDataLine, TruncatedPointerList) {
  std::string line = "00000000 03 n 01 thing 0 002 @ 00001740 n 0000 | x";
  EXPECT_THROW(parse_data_line(line, 1, 0), Error);
}

TEST(ParseWordnet, MiniDatabase) {
  auto wn = parse_wordnet(mini_dir());
  EXPECT_EQ(wn.records.size(), 9u);
  EXPECT_TRUE(wn.symmetry_violations.empty());
  auto t = freeze(wn.to_raw_graph());
  EXPECT_EQ(t.size(), 9u);
  EXPECT_EQ(t.id(t.root()).value, "00000104-n");
  // Instance hyponym is part of the DAG.
  auto felix = t.index_of(SynsetId("00000944-n"));
  EXPECT_TRUE(t.node(felix).is_instance);
  EXPECT_EQ(t.stats(t.index_of(SynsetId("00000439-n"))).hypo_count, 1u);
  // Two senses of "car", in index order.
  auto car = t.senses("car");
  ASSERT_EQ(car.size(), 2u);
  EXPECT_EQ(t.id(car[0]).value, "00000732-n");
  EXPECT_EQ(t.id(car[1]).value, "00000834-n");
  EXPECT_EQ(t.senses("Domestic Dog").size(), 1u);
}

TEST(ParseWordnet, MissingIndex) {
  auto dir = scratch_copy("missing");
  fs::remove(dir / "index.noun");
  try {
    parse_wordnet(dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingFile);
  }
}

TEST(ParseWordnet, DanglingPointer) {
  auto dir = scratch_copy("dangling");
  std::string d = slurp(dir / "data.noun");
  auto at = d.find("@ 00000325 n");
  ASSERT_NE(at, std::string::npos);
  d.replace(at, 12, "@ 00000326 n");
  spit(dir / "data.noun", d);
  try {
    parse_wordnet(dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DanglingPointer);
  }
}

TEST(ParseWordnet, ShiftedLineReportsOffset) {
  auto dir = scratch_copy("shifted");
  std::string d = slurp(dir / "data.noun");
  auto at = d.find("00000189 03");
  d.insert(at, "X");
  spit(dir / "data.noun", d);
  try {
    parse_wordnet(dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedLine);
  }
}

TEST(ParseWordnet, SymmetryViolationIsAWarning) {
  auto dir = scratch_copy("symmetry");
  std::string d = slurp(dir / "data.noun");
  // dog drops its hypernym; animal still lists it as a hyponym.
  auto at = d.find("domestic_dog 0 001 @ 00000325 n 0000");
  ASSERT_NE(at, std::string::npos);
  d.replace(at, 36, "domestic_dog 0 000                  ");
  spit(dir / "data.noun", d);
  auto wn = parse_wordnet(dir);
  ASSERT_EQ(wn.symmetry_violations.size(), 1u);
  EXPECT_NE(wn.symmetry_violations[0].find("00000532"), std::string::npos);
}

TEST(ParseEdgelist, ChainFromTwoLines) {
  auto t = freeze(parse_edgelist_text("A\tR\nB\tA\n"));
  EXPECT_EQ(t.id(t.root()).value, "R");
  EXPECT_EQ(t.stats(t.index_of(SynsetId("B"))).depth, 2u);
}

TEST(ParseEdgelist, ThreeDcsFixtureLoads) {
  auto t = load_edgelist(testing_support::fixture("three_dcs.tsv"));
  EXPECT_EQ(t.id(t.root()).value, "R");
  EXPECT_EQ(t.size(), 9u);
}

TEST(ParseEdgelist, EmptyFile) {
  try {
    freeze(parse_edgelist_text(""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyGraph);
  }
}

TEST(ParseEdgelist, DuplicateEdgeWarns) {
  auto g = parse_edgelist_text("A\tR\nA\tR\n");
  EXPECT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.warnings.size(), 1u);
}

TEST(ParseEdgelist, MalformedLine) {
  try {
    parse_edgelist_text("A\tB\tC\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedLine);
  }
}

TEST(ParseEdgelist, MissingFile) {
  EXPECT_THROW(parse_edgelist("/nonexistent/file.tsv"), Error);
}

TEST(RoundTrip, EdgelistSerialization) {
  for (const char* f : {"tied_hyponyms.tsv", "tied_leaves.tsv", "three_dcs.tsv", "diamond.tsv"}) {
    auto a = load_edgelist(testing_support::fixture(f));
    auto b = freeze(parse_edgelist_text(write_edgelist(a)));
    ASSERT_EQ(a.size(), b.size()) << f;
    for (NodeIndex i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.id(i), b.id(i));
      EXPECT_EQ(a.stats(i), b.stats(i));
    }
  }
}

TEST(RoundTrip, MiniWordnetThroughEdgelist) {
  auto a = load_wordnet(mini_dir());
  auto b = freeze(parse_edgelist_text(write_edgelist(a)));
  ASSERT_EQ(a.size(), b.size());
  for (NodeIndex i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.id(i), b.id(i));
    std::set<std::string> pa, pb;
    for (auto p : a.node(i).parents) pa.insert(a.id(p).value);
    for (auto p : b.node(i).parents) pb.insert(b.id(p).value);
    EXPECT_EQ(pa, pb);
  }
}

TEST(Snapshot, RoundTripAndInvalidation) {
  auto dir = scratch_copy("snapshot");
  auto cache = dir / "cache.bin";
  std::vector<fs::path> src{dir / "data.noun", dir / "index.noun"};
  auto raw = parse_wordnet(dir).to_raw_graph();
  auto h = content_hash(src);
  save_snapshot(cache, raw, h);
  auto back = load_snapshot(cache, h);
  ASSERT_TRUE(back.has_value());
  auto a = freeze(raw), b = freeze(*back);
  ASSERT_EQ(a.size(), b.size());
  for (NodeIndex i = 0; i < a.size(); ++i) EXPECT_EQ(a.stats(i), b.stats(i));
  EXPECT_EQ(b.senses("car").size(), 2u);

  spit(dir / "index.noun", slurp(dir / "index.noun") + "\n");
  EXPECT_FALSE(load_snapshot(cache, content_hash(src)).has_value());

  spit(cache, "garbage");
  EXPECT_FALSE(load_snapshot(cache, h).has_value());
}
