// knotscan: Khovanov homology, Rasmussen s, HOMFLY and Alexander polynomials,
// and batch sliceness scans.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "knotscan/knotscan.hpp"

namespace {

using namespace knotscan;

constexpr int kOk = 0;
constexpr int kKnotError = 1;
constexpr int kUsageError = 2;

struct KnotArgs {
  std::string knot;
  std::size_t max_crossings = 16;
  std::string engine = "scan";
};

HomologyOptions homology_options(const KnotArgs& a) {
  HomologyOptions o;
  o.max_crossings = a.max_crossings;
  o.engine = a.engine == "cube" ? HomologyEngine::Cube : HomologyEngine::Scanning;
  return o;
}

void add_knot_args(CLI::App* cmd, KnotArgs& a, bool homology) {
  cmd->add_option("knot", a.knot, "knot as pd:X(...)..., dt:4 6 2 or braid:2 | s1 s1 s1")->required();
  if (homology) {
    cmd->add_option("--max-crossings", a.max_crossings, "crossing limit for homology")->capture_default_str();
    cmd->add_option("--engine", a.engine, "homology engine")
        ->check(CLI::IsMember({"scan", "cube"}))
        ->capture_default_str();
  }
}

int run_braid_s(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read braid file '" << path << "'\n";
    return kKnotError;
  }
  int status = kOk;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::string name = "line" + std::to_string(n);
    std::string_view body = line;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      name = std::string(trim(std::string_view(line).substr(0, tab)));
      body = std::string_view(line).substr(tab + 1);
    }
    body = trim(body);
    if (body.substr(0, 6) == "braid:") body = trim(body.substr(6));
    try {
      const auto b = parse_braid(body);
      if (closure_components(b) != 1) throw InvalidArgument("braid closure is not a knot");
      const int factors = quasipositive_factors(b);
      const int s = s_quasipositive(factors, b.strands);
      std::cout << name << "\ts=" << s << "\tb=" << factors << "\tk=" << b.strands
                << "\tchi=" << bennequin_euler(factors, b.strands) << "\tg4=" << slice_genus_lower_bound(s)
                << "\tstrongly_qp=" << (is_strongly_quasipositive(b) ? "yes" : "no") << '\n';
    } catch (const std::exception& ex) {
      std::cout << name << "\terror: " << ex.what() << '\n';
      status = kKnotError;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knot invariants: Khovanov homology, Rasmussen s, HOMFLY, Alexander, sliceness scans"};
  app.require_subcommand(1);

  KnotArgs kh_args, s_args, homfly_args, alex_args;
  auto* kh = app.add_subcommand("kh", "Poincare polynomial of rational Khovanov homology and its width");
  add_knot_args(kh, kh_args, true);
  auto* s_cmd = app.add_subcommand("s", "Rasmussen invariant extracted from Khovanov homology");
  add_knot_args(s_cmd, s_args, true);
  auto* hf = app.add_subcommand("homfly", "HOMFLY polynomial P(v, z)");
  add_knot_args(hf, homfly_args, false);
  auto* al = app.add_subcommand("alexander", "Alexander polynomial");
  add_knot_args(al, alex_args, false);

  std::string braid_file;
  auto* bs = app.add_subcommand("braid-s", "s = b - k + 1 for quasipositive braid words, one per line");
  bs->add_option("braidfile", braid_file, "file of braid words")->required();

  std::string corpus, cache_dir, format = "csv";
  unsigned jobs = 1;
  std::size_t scan_max_crossings = 16;
  auto* sc = app.add_subcommand("scan", "analyse a corpus of name<TAB>kind:payload lines");
  sc->add_option("corpus", corpus, "corpus file")->required();
  sc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  sc->add_option("--cache", cache_dir, "result cache directory");
  sc->add_option("--max-crossings", scan_max_crossings, "crossing limit for homology")->capture_default_str();
  sc->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  static constexpr std::array<std::string_view, 2> vz{"v", "z"};
  try {
    if (*kh) {
      const auto r = homology_ranks(diagram_from_spec(kh_args.knot), homology_options(kh_args));
      std::cout << "Kh = " << poincare_polynomial(r).pretty({"t", "q"}) << '\n';
      std::cout << "hw = " << homological_width(r) << '\n';
    } else if (*s_cmd) {
      std::cout << rasmussen_s(diagram_from_spec(s_args.knot), homology_options(s_args)).to_string() << '\n';
    } else if (*hf) {
      std::cout << homfly(diagram_from_spec(homfly_args.knot)).format(vz) << '\n';
    } else if (*al) {
      std::cout << alexander(homfly(diagram_from_spec(alex_args.knot))).format({"t"}) << '\n';
    } else if (*bs) {
      return run_braid_s(braid_file);
    } else if (*sc) {
      std::vector<CorpusEntry> entries;
      try {
        entries = read_corpus_file(corpus);
      } catch (const InvalidArgument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kKnotError;
      }
      ScanOptions opts;
      opts.jobs = jobs;
      opts.analyze.homology.max_crossings = scan_max_crossings;
      std::optional<ResultCache> cache;
      if (!cache_dir.empty()) cache.emplace(cache_dir);
      const auto result = scan(entries, opts, cache ? &*cache : nullptr);
      if (format == "json") {
        std::cout << to_json(result) << '\n';
      } else {
        std::cout << to_csv(result.reports);
        const auto& s = result.summary;
        std::cerr << "total=" << s.total << " errors=" << s.errors << " delta1=" << s.delta_one
                  << " delta1_s_nonzero=" << s.delta_one_s_nonzero << " ambiguous=" << s.ambiguous << '\n';
      }
      return result.summary.errors ? kKnotError : kOk;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kKnotError;
  }
  return kOk;
}
