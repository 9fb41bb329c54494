// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace knotscan;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::vector<NamedKnot> corpus() {
  auto knots = rolfsen();
  for (auto& k : load_knots("alexander_one.tsv")) knots.push_back(std::move(k));
  return knots;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void positive_diagram_formula(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [text, expected] : {std::pair{"2 | s1 s1 s1", 2}, std::pair{"2 | s1 s1 s1 s1 s1 s1 s1", 6}}) {
    const auto d = braid_knot(text);
    const int formula = static_cast<int>(d.crossing_count()) - seifert_circles(d) + 1;
    const auto s = extract_s(homology_ranks(d));
    o.require(formula == expected, std::string("n-O+1 for ") + text);
    o.require(s == SResult::determined(formula), std::string("s for ") + text);
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 1.0, "runtime under 1 s");
  o.detail << "trefoil 2, T(2,7) 6 in " << elapsed << " s";
}

void unique_decomposition(Outcome& o, const std::vector<NamedKnot>& knots) {
  int checked = 0;
  for (const auto& k : knots) {
    if (k.diagram.crossing_count() > 9) continue;
    const auto r = homology_ranks(k.diagram);
    if (homological_width(r) > 3) continue;
    int lo = r.entries().begin()->first.second, hi = lo;
    for (const auto& [key, c] : r.entries()) {
      lo = std::min(lo, key.second);
      hi = std::max(hi, key.second);
    }
    int solutions = 0;
    for (int s = lo + 1; s - 1 <= hi; s += 2)
      if (decomposition_quotient(r, s)) ++solutions;
    o.require(solutions == 1, k.name + " has " + std::to_string(solutions) + " decompositions");
    o.require(extract_s(r).is_determined(), k.name + " determined");
    ++checked;
  }
  o.detail << checked << " knots with width <= 3";
}

void alternating_signature(Outcome& o) {
  int checked = 0;
  for (const auto& k : rolfsen()) {
    if (!rolfsen_reference().at(k.name).alternating) continue;
    o.require(rasmussen_s(k.diagram) == SResult::determined(signature(k.diagram)), k.name);
    ++checked;
  }
  o.detail << checked << " alternating knots";
}

void mirror_antisymmetry(Outcome& o, const std::vector<NamedKnot>& knots) {
  int checked = 0;
  for (const auto& k : knots) {
    const auto s = rasmussen_s(k.diagram);
    if (!s.is_determined()) continue;
    o.require(rasmussen_s(mirror(k.diagram)) == s.negated(), k.name);
    ++checked;
  }
  o.detail << checked << " knots";
}

void writhe_seifert_inequality(Outcome& o, const std::vector<NamedKnot>& knots) {
  std::mt19937 rng(2024);
  int pairs = 0;
  for (const auto& k : knots) {
    const auto s = rasmussen_s(k.diagram);
    o.require(s.is_determined(), k.name + " determined");
    if (!s.is_determined()) continue;
    auto d = k.diagram;
    o.require(writhe_seifert_lower_bound(d) <= s.value(), k.name);
    ++pairs;
    for (int step = 0; step < 4; ++step) {
      d = add_kink(d, std::uniform_int_distribution<int>(1, d.arc_count())(rng), rng() % 2 ? 1 : -1);
      o.require(writhe_seifert_lower_bound(d) <= s.value(), k.name + " with kinks");
      ++pairs;
    }
    if (d.crossing_count() <= 13) {
      o.require(rasmussen_s(d) == s, k.name + " s of the kinked diagram");
      ++pairs;
    }
  }
  o.detail << pairs << " (diagram, s) pairs including kinked diagrams";
}

void crossing_change(Outcome& o, const std::vector<NamedKnot>& knots) {
  int switches = 0, inconclusive = 0;
  for (const auto& k : knots)
    for (std::size_t i = 0; i < k.diagram.crossing_count(); ++i) {
      const auto r = crossing_change_check(k.diagram, i);
      o.require(r != CrossingChangeResult::Violated, k.name + " crossing " + std::to_string(i));
      inconclusive += r == CrossingChangeResult::Inconclusive;
      ++switches;
    }
  o.detail << switches << " switches, " << inconclusive << " inconclusive";
}

void quasipositive_formula(Outcome& o) {
  const auto b = parse_braid(kPretzelBraid);
  o.require(quasipositive_factors(b) == 7 && b.strands == 6, "b = 7, k = 6");
  o.require(s_quasipositive(b) == 2, "b - k + 1 = 2");
  AnalyzeOptions opts;
  opts.homology.max_crossings = 24;
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = closure(b);
  const auto r = analyze(d, "15n113775", opts);
  o.require(r.s == SResult::determined(2), "s of the closure");
  o.require(r.hw == 3, "hw = 3");
  o.require(r.delta_is_one, "Alexander polynomial 1");
  o.require(r.e == 2 && r.E == 12, "e = 2, E = 12");
  o.require(r.classification == Classification::TopologicallySliceNotSmoothly, "classification");
  o.require(r.qp.can_be_qp == Flag::Yes, "can_be_qp");
  o.detail << d.crossing_count() << "-crossing closure: " << csv_row(r) << " in " << seconds_since(t0) << " s";
}

void morton_bounds(Outcome& o, const std::vector<NamedKnot>& knots) {
  const auto t = positive_trefoil();
  const auto span = v_span(homfly(t));
  const int w = writhe(t), c = seifert_circles(t);
  o.require(w - c + 1 == 2 && span.e == 2 && span.E == 4 && w + c - 1 == 4, "sharp on the positive trefoil");
  for (const auto& k : knots) o.require(morton_check(k.diagram, v_span(homfly(k.diagram))), k.name);
  o.detail << "trefoil 2 <= 2 <= 4 <= 4; " << knots.size() << " corpus diagrams";
}

void skein_consistency(Outcome& o) {
  int crossings = 0;
  for (const auto& k : rolfsen()) {
    const auto& d = k.diagram;
    if (d.crossing_count() > 9) continue;
    const auto here = homfly(d);
    for (std::size_t i = 0; i < d.crossing_count(); ++i) {
      const bool plus = d.crossing(i).sign > 0;
      const auto there = homfly(switch_crossing(d, i));
      const auto& p_plus = plus ? here : there;
      const auto& p_minus = plus ? there : here;
      const auto p_zero = homfly_link(oriented_smoothing(d, i));
      const auto lhs = mono(1, -1, 0) * p_plus - mono(1, 1, 0) * p_minus;
      o.require(lhs == mono(1, 0, 1) * p_zero, k.name + " crossing " + std::to_string(i));
      ++crossings;
    }
  }
  o.detail << crossings << " crossings";
}

void ambiguity(Outcome& o) {
  const BigradedRanks r{{{0, -3}, 1}, {{0, -1}, 1}, {{0, 1}, 1}, {{-1, -7}, 1}};
  o.require(r.at(-1, -7) == 1 && r.at(0, 1) == 1, "pattern h^{-1,-7} = h^{0,1} = 1");
  o.require(!lee_condition(r), "lee_condition false");
  const auto s = extract_s(r);
  o.require(s.candidates().size() == 2, "two candidates");
  o.require(s.candidates().size() == 2 && *s.candidates().rbegin() - *s.candidates().begin() == 2,
            "candidates differ by 2");
  o.detail << "candidates " << s.to_string();
}

}  // namespace

int main() {
  const auto knots = corpus();
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"positive-diagram formula", positive_diagram_formula},
      {"unique decomposition for width <= 3", [&](Outcome& o) { unique_decomposition(o, knots); }},
      {"alternating knots have s = signature", alternating_signature},
      {"mirror antisymmetry", [&](Outcome& o) { mirror_antisymmetry(o, knots); }},
      {"s >= w - O + 1", [&](Outcome& o) { writhe_seifert_inequality(o, knots); }},
      {"crossing-change inequality", [&](Outcome& o) { crossing_change(o, knots); }},
      {"quasipositive formula and the pretzel closure", quasipositive_formula},
      {"HOMFLY v-degree bounds", [&](Outcome& o) { morton_bounds(o, knots); }},
      {"skein consistency", skein_consistency},
      {"ambiguity handling", ambiguity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << "exception: " << ex.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << o.detail.str() << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
