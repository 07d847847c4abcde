// Scores a few word pairs with every measure under the default IC model.
//
//   wordpair_demo /path/to/wordnet/dict
//   wordpair_demo fixtures/three_dcs.tsv        (edge-list ontologies work too)

#include <iomanip>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "semsim/semsim.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: wordpair_demo <wordnet-dict-dir | edgelist.tsv> "
                 "[word1 word2]...\n";
    return 2;
  }
  std::string src = argv[1];
  try {
    semsim::Taxonomy t = std::filesystem::is_directory(src)
                             ? semsim::load_wordnet(src)
                             : semsim::load_edgelist(src);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 2; i + 1 < argc; i += 2) pairs.emplace_back(argv[i], argv[i + 1]);
    if (pairs.empty())
      pairs = {{"car", "automobile"}, {"magician", "wizard"}, {"coast", "hill"}};

    auto ic = semsim::ic_table(t, semsim::ICModel::proposed);
    std::cout << std::fixed << std::setprecision(3);
    for (const auto& [a, b] : pairs) {
      std::cout << a << " / " << b;
      for (auto m : semsim::kAllSimMeasures)
        std::cout << "  " << semsim::to_string(m) << '='
                  << semsim::word_similarity(t, ic, m, a, b).value;
      std::cout << '\n';
    }
  } catch (const semsim::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
