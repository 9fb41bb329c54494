#pragma once

#include <atomic>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "knotscan/braid.hpp"
#include "knotscan/diagram.hpp"
#include "knotscan/dt_code.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/khovanov.hpp"
#include "knotscan/pipeline/cache.hpp"
#include "knotscan/polyinv.hpp"
#include "knotscan/rasmussen.hpp"

namespace knotscan {

/// One corpus line: "name<TAB>kind:payload" with kind one of pd, dt, braid.
/// Bare PD or DT codes without the prefix are accepted too.
struct CorpusEntry {
  std::string name;
  std::string kind;
  std::string payload;
  std::optional<std::string> parse_error;
};

inline std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Split "kind:payload"; a bare PD code ("X(...)...") is accepted as kind pd.
inline std::pair<std::string, std::string> split_knot_spec(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    if (!spec.empty() && (spec[0] == 'X' || spec.substr(0, 3) == "PD[")) return {"pd", std::string(spec)};
    if (!spec.empty() && spec.find_first_not_of("-+0123456789 \t") == std::string_view::npos)
      return {"dt", std::string(spec)};
    throw ParseError("knot must be written kind:payload with kind pd, dt or braid");
  }
  std::string kind(trim(spec.substr(0, colon)));
  if (kind != "pd" && kind != "dt" && kind != "braid") throw ParseError("unknown knot kind '" + kind + "'");
  return {kind, std::string(trim(spec.substr(colon + 1)))};
}

/// Parses one line; blank lines and '#' comments give nullopt. Lines without a
/// tab are named "line<N>".
inline std::optional<CorpusEntry> parse_corpus_line(std::string_view line, std::size_t line_number) {
  const auto t = trim(line);
  if (t.empty() || t[0] == '#') return std::nullopt;
  CorpusEntry e;
  const auto tab = line.find('\t');
  std::string_view body = line;
  if (tab != std::string_view::npos) {
    e.name = std::string(trim(line.substr(0, tab)));
    body = line.substr(tab + 1);
  } else {
    e.name = "line" + std::to_string(line_number);
  }
  try {
    auto [kind, payload] = split_knot_spec(body);
    e.kind = std::move(kind);
    e.payload = std::move(payload);
  } catch (const ParseError& ex) {
    e.payload = std::string(trim(body));
    e.parse_error = ex.what();
  }
  return e;
}

inline std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    if (auto e = parse_corpus_line(line, ++n)) out.push_back(std::move(*e));
  return out;
}

inline std::vector<CorpusEntry> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read corpus file '" + path + "'");
  return read_corpus(in);
}

inline PlanarDiagram diagram_from(std::string_view kind, std::string_view payload) {
  if (kind == "pd") return parse_pd(payload);
  if (kind == "dt") return parse_dt(payload);
  if (kind == "braid") return closure(parse_braid(payload));
  throw ParseError("unknown knot kind '" + std::string(kind) + "'; expected pd, dt or braid");
}

inline PlanarDiagram diagram_from_spec(std::string_view spec) {
  auto [kind, payload] = split_knot_spec(spec);
  return diagram_from(kind, payload);
}

enum class Classification { SmoothlySlicePossible, TopologicallySliceNotSmoothly, NoTopologicalConclusion };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::SmoothlySlicePossible: return "smoothly-slice-possible";
    case Classification::TopologicallySliceNotSmoothly: return "topologically-slice-not-smoothly";
    default: return "no-topological-conclusion";
  }
}

/// Delta = 1 makes a knot topologically slice; s != 0 rules out a smooth slice disk.
inline Classification classify(const SResult& s, bool delta_is_one) {
  if (delta_is_one && s.is_determined() && s.value() != 0) return Classification::TopologicallySliceNotSmoothly;
  if (s.could_be(0)) return Classification::SmoothlySlicePossible;
  return Classification::NoTopologicalConclusion;
}

struct InvariantReport {
  std::string name;
  std::optional<std::string> error;
  SResult s = SResult::determined(0);
  int hw = 0;
  bool delta_is_one = false;
  int e = 0;
  int E = 0;
  Classification classification = Classification::NoTopologicalConclusion;
  QpFlags qp;

  bool ok() const { return !error.has_value(); }
};

struct AnalyzeOptions {
  HomologyOptions homology;
  std::size_t skein_budget = kDefaultSkeinBudget;
};

inline BigradedRanks cached_homology(const PlanarDiagram& d, const AnalyzeOptions& opts, const ResultCache* cache) {
  const std::string key = d.to_pd_string();
  if (cache)
    if (auto hit = cache->get("kh", key)) {
      try {
        return BigradedRanks::from_json(*hit);
      } catch (const ParseError&) {
      }
    }
  auto r = homology_ranks(d, opts.homology);
  if (cache) cache->put("kh", key, r.to_json());
  return r;
}

inline LaurentPoly2 cached_homfly(const PlanarDiagram& d, const AnalyzeOptions& opts, const ResultCache* cache) {
  static constexpr std::array<std::string_view, 2> names{"v", "z"};
  const std::string key = d.to_pd_string();
  if (cache)
    if (auto hit = cache->get("homfly", key)) {
      try {
        return LaurentPoly2::parse(*hit, names);
      } catch (const ParseError&) {
      }
    }
  auto p = homfly(d, opts.skein_budget);
  if (cache) cache->put("homfly", key, p.format(names));
  return p;
}

/// All invariants of one knot. Throws on resource limits or inconsistent data.
inline InvariantReport analyze(const PlanarDiagram& d, std::string name, const AnalyzeOptions& opts = {},
                               const ResultCache* cache = nullptr) {
  InvariantReport r;
  r.name = std::move(name);
  const auto kh = cached_homology(d, opts, cache);
  r.s = extract_s(kh);
  r.hw = homological_width(kh);
  const auto p = cached_homfly(d, opts, cache);
  const auto span = v_span(p);
  r.e = span.e;
  r.E = span.E;
  r.delta_is_one = is_trivial_alexander(alexander(p));
  r.classification = classify(r.s, r.delta_is_one);
  r.qp = qp_obstruction(r.s, span);
  return r;
}

inline InvariantReport analyze_entry(const CorpusEntry& entry, const AnalyzeOptions& opts = {},
                                     const ResultCache* cache = nullptr) {
  try {
    if (entry.parse_error) throw ParseError(*entry.parse_error);
    return analyze(diagram_from(entry.kind, entry.payload), entry.name, opts, cache);
  } catch (const std::exception& ex) {
    InvariantReport r;
    r.name = entry.name;
    r.error = ex.what();
    return r;
  }
}

struct ScanSummary {
  std::size_t total = 0;
  std::size_t errors = 0;
  std::size_t delta_one = 0;
  std::size_t delta_one_s_nonzero = 0;
  std::size_t ambiguous = 0;
  friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

struct ScanOptions {
  AnalyzeOptions analyze;
  unsigned jobs = 1;
};

struct ScanResult {
  std::vector<InvariantReport> reports;
  ScanSummary summary;
};

inline ScanSummary summarize(const std::vector<InvariantReport>& reports) {
  ScanSummary s;
  s.total = reports.size();
  for (const auto& r : reports) {
    if (!r.ok()) {
      ++s.errors;
      continue;
    }
    if (!r.s.is_determined()) ++s.ambiguous;
    if (r.delta_is_one) {
      ++s.delta_one;
      if (r.s.is_determined() && r.s.value() != 0) ++s.delta_one_s_nonzero;
    }
  }
  return s;
}

/// Analyse every entry on a pool of `jobs` threads; reports keep input order.
inline ScanResult scan(const std::vector<CorpusEntry>& entries, const ScanOptions& opts = {},
                       const ResultCache* cache = nullptr) {
  ScanResult out;
  out.reports.resize(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++)
      out.reports[i] = analyze_entry(entries[i], opts.analyze, cache);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(entries.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  out.summary = summarize(out.reports);
  return out;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline constexpr std::string_view kCsvHeader = "name,s,hw,delta1,e,E,classification,qp,mirror_qp";

/// One CSV row; failed knots leave the numeric columns empty and carry
/// "error: <message>" in the classification column.
inline std::string csv_row(const InvariantReport& r) {
  std::ostringstream os;
  os << csv_field(r.name) << ',';
  if (!r.ok()) {
    os << ",,,,," << csv_field("error: " + *r.error) << ",,";
    return os.str();
  }
  os << r.s.to_string() << ',' << r.hw << ',' << (r.delta_is_one ? "true" : "false") << ',' << r.e << ',' << r.E
     << ',' << to_string(r.classification) << ',' << to_string(r.qp.can_be_qp) << ','
     << to_string(r.qp.can_be_mirror_qp);
  return os.str();
}

inline std::string to_csv(const std::vector<InvariantReport>& reports) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : reports) out += csv_row(r) + '\n';
  return out;
}

inline nlohmann::json to_json(const InvariantReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  if (!r.ok()) {
    j["error"] = *r.error;
    return j;
  }
  if (r.s.is_determined())
    j["s"] = r.s.value();
  else
    j["s"] = std::vector<int>(r.s.candidates().begin(), r.s.candidates().end());
  j["hw"] = r.hw;
  j["delta1"] = r.delta_is_one;
  j["e"] = r.e;
  j["E"] = r.E;
  j["classification"] = to_string(r.classification);
  j["qp"] = to_string(r.qp.can_be_qp);
  j["mirror_qp"] = to_string(r.qp.can_be_mirror_qp);
  return j;
}

inline nlohmann::json to_json(const ScanSummary& s) {
  return {{"total", s.total},
          {"errors", s.errors},
          {"delta_one", s.delta_one},
          {"delta_one_s_nonzero", s.delta_one_s_nonzero},
          {"ambiguous", s.ambiguous}};
}

inline std::string to_json(const ScanResult& r) {
  nlohmann::json j;
  j["reports"] = nlohmann::json::array();
  for (const auto& rep : r.reports) j["reports"].push_back(to_json(rep));
  j["summary"] = to_json(r.summary);
  return j.dump(2);
}

}  // namespace knotscan
