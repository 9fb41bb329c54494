#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace knotscan;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("knotscan-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<CorpusEntry> corpus(const std::string& text) {
  std::istringstream in(text);
  return read_corpus(in);
}

const std::string kSmallCorpus =
    "unknot\tbraid:1 |\n"
    "trefoil\tbraid:2 | s1 s1 s1\n"
    "figure-eight\tdt:4 6 8 2\n";

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(KNOTSCAN_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST(Corpus, ParsesKindsNamesAndComments) {
  const auto entries = corpus(
      "# comment\n\n"
      "a\tpd:X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n"
      "b\tdt: 4 6 2\n"
      "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n"
      "4 6 8 2\n"
      "c\tfoo:bar\n");
  ASSERT_EQ(entries.size(), 5u);
  EXPECT_EQ(entries[0].name, "a");
  EXPECT_EQ(entries[0].kind, "pd");
  EXPECT_EQ(entries[1].kind, "dt");
  EXPECT_EQ(entries[1].payload, "4 6 2");
  EXPECT_EQ(entries[2].name, "line5");
  EXPECT_EQ(entries[2].kind, "pd");
  EXPECT_EQ(entries[3].kind, "dt");
  EXPECT_TRUE(entries[4].parse_error.has_value());
  EXPECT_THROW(read_corpus_file("/nonexistent/corpus.tsv"), InvalidArgument);
}

TEST(Classify, Rules) {
  EXPECT_EQ(classify(SResult::determined(2), true), Classification::TopologicallySliceNotSmoothly);
  EXPECT_EQ(classify(SResult::determined(0), true), Classification::SmoothlySlicePossible);
  EXPECT_EQ(classify(SResult::determined(2), false), Classification::NoTopologicalConclusion);
  EXPECT_EQ(classify(SResult::ambiguous({-2, 0}), true), Classification::SmoothlySlicePossible);
  EXPECT_EQ(classify(SResult::ambiguous({2, 4}), true), Classification::NoTopologicalConclusion);
}

TEST(Analyze, Trefoil) {
  const auto r = analyze(positive_trefoil(), "trefoil");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.s, SResult::determined(2));
  EXPECT_EQ(r.hw, 2);
  EXPECT_FALSE(r.delta_is_one);
  EXPECT_EQ(r.e, 2);
  EXPECT_EQ(r.E, 4);
  EXPECT_EQ(r.classification, Classification::NoTopologicalConclusion);
  EXPECT_EQ(r.qp.can_be_qp, Flag::Yes);
}

TEST(Analyze, Unknot) {
  const auto r = analyze(PlanarDiagram::unknot(), "unknot");
  EXPECT_EQ(r.s, SResult::determined(0));
  EXPECT_TRUE(r.delta_is_one);
  EXPECT_EQ(r.classification, Classification::SmoothlySlicePossible);
}

TEST(Analyze, PretzelClosure) {
  AnalyzeOptions opts;
  opts.homology.max_crossings = 24;
  const auto r = analyze(braid_knot(kPretzelBraid), "pretzel", opts);
  EXPECT_EQ(r.s, SResult::determined(2));
  EXPECT_EQ(r.hw, 3);
  EXPECT_TRUE(r.delta_is_one);
  EXPECT_EQ(r.e, 2);
  EXPECT_EQ(r.E, 12);
  EXPECT_EQ(r.classification, Classification::TopologicallySliceNotSmoothly);
  EXPECT_EQ(r.qp.can_be_qp, Flag::Yes);
  EXPECT_EQ(csv_row(r), "pretzel,2,3,true,2,12,topologically-slice-not-smoothly,yes,no");
}

TEST(Scan, SmallCorpusSummary) {
  const auto result = scan(corpus(kSmallCorpus));
  ASSERT_EQ(result.reports.size(), 3u);
  EXPECT_EQ(result.summary, (ScanSummary{3, 0, 1, 0, 0}));
  EXPECT_EQ(result.reports[0].name, "unknot");
  EXPECT_EQ(result.reports[2].name, "figure-eight");
}

TEST(Scan, EmptyCorpus) {
  const auto result = scan({});
  EXPECT_TRUE(result.reports.empty());
  EXPECT_EQ(result.summary, ScanSummary{});
  EXPECT_EQ(to_csv(result.reports), std::string(kCsvHeader) + "\n");
}

TEST(Scan, ResourceLimitIsPerKnot) {
  const auto entries = corpus(kSmallCorpus + "big\tbraid:" + torus_2(17) + "\n" + "bad\tpd:X(1,2,3)\n");
  ScanOptions opts;
  opts.analyze.homology.max_crossings = 16;
  const auto result = scan(entries, opts);
  ASSERT_EQ(result.reports.size(), 5u);
  EXPECT_FALSE(result.reports[3].ok());
  EXPECT_NE(result.reports[3].error->find("crossings"), std::string::npos);
  EXPECT_FALSE(result.reports[4].ok());
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(result.reports[i].ok());
  EXPECT_EQ(result.summary.errors, 2u);
  EXPECT_EQ(result.summary.delta_one, 1u);
  EXPECT_EQ(csv_row(result.reports[3]).substr(0, 13), "big,,,,,,erro");
}

TEST(Scan, DeterministicAcrossJobCounts) {
  const auto entries = read_corpus_file(data_path("rolfsen_pd.tsv"));
  ScanOptions serial, parallel;
  parallel.jobs = 4;
  const auto a = scan(entries, serial), b = scan(entries, parallel);
  EXPECT_EQ(to_csv(a.reports), to_csv(b.reports));
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.summary.total, 84u);
  EXPECT_EQ(a.summary.errors, 0u);
  EXPECT_EQ(a.summary.ambiguous, 0u);
}

TEST(Scan, AlexanderOneCorpus) {
  const auto result = scan(read_corpus_file(data_path("alexander_one.tsv")));
  EXPECT_EQ(result.summary.errors, 0u);
  EXPECT_EQ(result.summary.delta_one, result.summary.total);
  EXPECT_EQ(result.summary.delta_one_s_nonzero, result.summary.total);
  for (const auto& r : result.reports) {
    EXPECT_EQ(r.classification, Classification::TopologicallySliceNotSmoothly) << r.name;
    EXPECT_TRUE(r.delta_is_one && r.s.is_determined() && r.s.value() != 0) << r.name;
  }
}

TEST(Output, CsvAndJson) {
  const auto result = scan(corpus(kSmallCorpus));
  const auto csv = to_csv(result.reports);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,s,hw,delta1,e,E,classification,qp,mirror_qp");
  EXPECT_NE(csv.find("trefoil,2,2,false,2,4,no-topological-conclusion,yes,no"), std::string::npos);
  const auto j = nlohmann::json::parse(to_json(result));
  EXPECT_EQ(j["summary"]["total"], 3);
  EXPECT_EQ(j["reports"][1]["s"], 2);
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Cache, PutThenGet) {
  TempDir dir;
  ResultCache cache(dir.path());
  EXPECT_FALSE(cache.get("kh", "X(1,2,3,4)").has_value());
  const std::string value = "[[0,1,1],[0,3,1]]\n \"quoted\"\t";
  cache.put("kh", "X(1,2,3,4)", value);
  EXPECT_EQ(cache.get("kh", "X(1,2,3,4)"), value);
  EXPECT_FALSE(cache.get("homfly", "X(1,2,3,4)").has_value());
}

TEST(Cache, VersionBumpMissesEverything) {
  TempDir dir;
  ResultCache v1(dir.path(), 1);
  v1.put("kh", "k", "value");
  ResultCache v2(dir.path(), 2);
  EXPECT_FALSE(v2.get("kh", "k").has_value());
  EXPECT_EQ(v1.get("kh", "k"), "value");
}

TEST(Cache, CorruptEntryIsAMissWithWarning) {
  TempDir dir;
  std::vector<std::string> warnings;
  ResultCache cache(dir.path(), kCacheFormatVersion, [&](const std::string& w) { warnings.push_back(w); });
  cache.put("kh", "k", "value");
  {
    std::ofstream out(cache.path_for("kh", "k"), std::ios::trunc);
    out << "{ not json";
  }
  EXPECT_FALSE(cache.get("kh", "k").has_value());
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("corrupt"), std::string::npos);
  {
    std::ofstream out(cache.path_for("kh", "k"), std::ios::trunc);
    out << R"({"version":1,"kind":"kh","key":"other","value":"x"})";
  }
  EXPECT_FALSE(cache.get("kh", "k").has_value());
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(Cache, ColdAndWarmScansAgree) {
  TempDir dir;
  auto entries = corpus(kSmallCorpus);
  const auto table = read_corpus_file(data_path("rolfsen_pd.tsv"));
  entries.insert(entries.end(), table.begin(), table.begin() + 10);
  ResultCache cache(dir.path());
  const auto cold = scan(entries, {}, &cache);
  const auto files = std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{});
  EXPECT_GT(files, 0);
  const auto warm = scan(entries, {}, &cache);
  EXPECT_EQ(to_csv(cold.reports), to_csv(warm.reports));
  EXPECT_EQ(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{}), files);
}

TEST(Cache, HitBypassesComputation) {
  TempDir dir;
  ResultCache cache(dir.path());
  const auto d = positive_trefoil();
  // A planted entry is returned verbatim, proving the computation was skipped.
  const BigradedRanks fake{{{0, 1}, 1}, {{0, 3}, 1}, {{1, 5}, 2}, {{2, 9}, 2}};
  cache.put("kh", d.to_pd_string(), fake.to_json());
  EXPECT_EQ(cached_homology(d, {}, &cache), fake);
}

TEST(Cache, ConcurrentWritersOfDistinctKeys) {
  TempDir dir;
  ResultCache cache(dir.path());
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 8; ++t)
      threads.emplace_back([&, t] {
        for (int i = 0; i < 50; ++i) cache.put("kh", std::to_string(t) + ":" + std::to_string(i), std::to_string(i));
      });
  }
  for (int t = 0; t < 8; ++t)
    for (int i = 0; i < 50; ++i) EXPECT_EQ(cache.get("kh", std::to_string(t) + ":" + std::to_string(i)), std::to_string(i));
  EXPECT_EQ(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{}), 400);
}

TEST(Cli, SingleKnotCommands) {
  auto r = run_cli("s 'braid:2 | s1 s1 s1'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "2\n");
  r = run_cli("kh 'braid:2 | s1 s1 s1'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "Kh = q + q^3 + t^2*q^5 + t^3*q^9\nhw = 2\n");
  r = run_cli("kh --engine cube 'dt:4 6 8 2'");
  EXPECT_EQ(r.status, 0);
  r = run_cli("alexander 'dt:4 6 8 2'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "-1 t^-1, 3 t^0, -1 t^1\n");
  r = run_cli("homfly 'braid:2 | s1 s1 s1'");
  EXPECT_EQ(r.out, "2 v^2 z^0, 1 v^2 z^2, -1 v^4 z^0\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").status, 2);
  EXPECT_EQ(run_cli("frobnicate").status, 2);
  EXPECT_EQ(run_cli("s").status, 2);
  EXPECT_EQ(run_cli("scan x --format xml").status, 2);
  EXPECT_EQ(run_cli("--help").status, 0);
  EXPECT_EQ(run_cli("s 'pd:X(1,2,3'").status, 1);
  EXPECT_EQ(run_cli("s 'braid:2 | s1 s1'").status, 1);
  EXPECT_EQ(run_cli("s --max-crossings 2 'braid:2 | s1 s1 s1'").status, 1);
  EXPECT_EQ(run_cli("scan /nonexistent/file").status, 1);
}

TEST(Cli, ScanAndBraidS) {
  TempDir dir;
  const auto corpus_file = dir.path() / "corpus.tsv";
  std::ofstream(corpus_file) << kSmallCorpus;
  auto r = run_cli("scan " + corpus_file.string() + " --jobs 2 --cache " + (dir.path() / "cache").string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "name,s,hw,delta1,e,E,classification,qp,mirror_qp\n"
            "unknot,0,2,true,0,0,smoothly-slice-possible,yes,yes\n"
            "trefoil,2,2,false,2,4,no-topological-conclusion,yes,no\n"
            "figure-eight,0,2,false,-2,2,smoothly-slice-possible,no,no\n");
  r = run_cli("scan " + corpus_file.string() + " --format json");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["summary"]["delta_one"], 1);

  std::ofstream(dir.path() / "bad.tsv") << kSmallCorpus << "big\tbraid:" << torus_2(17) << "\n";
  r = run_cli("scan " + (dir.path() / "bad.tsv").string() + " --max-crossings 16");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("big,,,,,"), std::string::npos);

  std::ofstream(dir.path() / "braids.txt") << "pretzel\t" << kPretzelBraid << "\n2 | s1 s1 s1\n";
  r = run_cli("braid-s " + (dir.path() / "braids.txt").string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "pretzel\ts=2\tb=7\tk=6\tchi=-1\tg4=1\tstrongly_qp=yes\n"
            "line2\ts=2\tb=3\tk=2\tchi=-1\tg4=1\tstrongly_qp=yes\n");
}
