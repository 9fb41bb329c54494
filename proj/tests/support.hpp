#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "knotscan/knotscan.hpp"

namespace testing_support {

using namespace knotscan;

inline std::string data_path(const std::string& file) { return std::string(KNOTSCAN_TEST_DATA) + "/" + file; }

struct NamedKnot {
  std::string name;
  PlanarDiagram diagram;
};

inline std::vector<NamedKnot> load_knots(const std::string& file) {
  std::vector<NamedKnot> out;
  for (const auto& e : read_corpus_file(data_path(file))) out.push_back({e.name, diagram_from(e.kind, e.payload)});
  return out;
}

inline const std::vector<NamedKnot>& rolfsen() {
  static const auto knots = load_knots("rolfsen_pd.tsv");
  return knots;
}

struct Reference {
  bool alternating = false;
  LaurentPoly1 alexander;
  int tau = 0;
};

/// Alternation flag, Alexander polynomial and tau from knot Floer homology.
inline const std::map<std::string, Reference>& rolfsen_reference() {
  static const auto table = [] {
    std::map<std::string, Reference> out;
    std::ifstream in(data_path("rolfsen_reference.tsv"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string name, alt, terms, tau;
      std::getline(row, name, '\t');
      std::getline(row, alt, '\t');
      std::getline(row, terms, '\t');
      std::getline(row, tau, '\t');
      Reference ref;
      ref.alternating = alt == "1";
      ref.tau = std::stoi(tau);
      std::istringstream ts(terms);
      std::string t;
      while (ts >> t) {
        const auto colon = t.find(':');
        ref.alexander.add_term({std::stoi(t.substr(0, colon))}, std::stoll(t.substr(colon + 1)));
      }
      out.emplace(name, ref);
    }
    return out;
  }();
  return table;
}

inline PlanarDiagram braid_knot(const std::string& text) { return closure(parse_braid(text)); }

inline PlanarDiagram positive_trefoil() { return braid_knot("2 | s1 s1 s1"); }
inline PlanarDiagram figure_eight() { return parse_dt("4 6 8 2"); }

inline const std::string kPretzelBraid = "6 | s1 s2 b(2,4) b(3,6) b(1,4) s5 b(2,5)";

inline std::string torus_2(int n) {
  std::string s = "2 |";
  for (int i = 0; i < n; ++i) s += " s1";
  return s;
}

inline LaurentPoly2 mono(long long c, int v, int z) { return LaurentPoly2::monomial(c, {v, z}); }

}  // namespace testing_support
