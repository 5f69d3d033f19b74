// Copyright 2026 The SEKI Engine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seki/orchestrator.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "seki/errors.hpp"
#include "seki/report.hpp"

using namespace seki;

namespace {

SearchConfig SmallConfig() {
  SearchConfig config;
  config.space_id = SpaceId::kTrans101;
  config.n = 10;
  config.lambda = 7;
  config.gamma = 3;
  config.k = 4;
  config.xi = 2;
  config.seed = 5;
  config.evaluator_spec = "surrogate:seed=42,beta=0.5";
  config.llm_spec = "mock:random";
  return config;
}

std::string TracePath(const std::string& name) {
  return "/tmp/seki_test_trace_" + name + ".jsonl";
}

// Trace file contents with the non-canonical ts field stripped.
std::string CanonicalTraceText(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    j.erase("ts");
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("config validation") {
  SearchConfig config = SmallConfig();
  CHECK_NOTHROW(config.Validate());

  config.lambda = 8;  // 8 + 3 != 10
  CHECK_THROWS_AS(config.Validate(), SekiError);

  config = SmallConfig();
  config.xi = 20;
  CHECK_THROWS_AS(config.Validate(), SekiError);

  config = SmallConfig();
  config.xi = config.k;
  CHECK_NOTHROW(config.Validate());
  CHECK(config.extended_xi_mode());
}

TEST_CASE("phase boundary and budget accounting") {
  const SearchConfig config = SmallConfig();
  const SearchTrace trace = RunSeki(config);
  REQUIRE(trace.iterations.size() == 10);
  for (int i = 0; i < 10; ++i) {
    REQUIRE(trace.iterations[i].iteration == i + 1);
    REQUIRE(trace.iterations[i].phase ==
            (i < 7 ? Phase::kSelfEvolution : Phase::kKnowledgeInspiration));
  }
  // n iteration evaluations plus the alpha_0 init evaluation.
  CHECK(trace.evaluations == 11);
  // Self-evolution renders C and D; inspiration renders E.
  for (int i = 0; i < 7; ++i) {
    REQUIRE_FALSE(trace.iterations[i].prompt_c_digest.empty());
    REQUIRE_FALSE(trace.iterations[i].prompt_d_digest.empty());
    REQUIRE(trace.iterations[i].prompt_e_digest.empty());
  }
  for (int i = 7; i < 10; ++i) {
    REQUIRE(trace.iterations[i].prompt_c_digest.empty());
    REQUIRE_FALSE(trace.iterations[i].prompt_e_digest.empty());
    REQUIRE(static_cast<int>(trace.iterations[i].exemplars.size()) <=
            config.xi);
  }
}

TEST_CASE("best-so-far is non-decreasing and chain anchoring holds") {
  const SearchTrace trace = RunSeki(SmallConfig());
  double prev = trace.init_oriented;
  std::string prev_arch = trace.init_arch;
  for (const auto& rec : trace.iterations) {
    REQUIRE(rec.best_so_far >= prev);
    prev = rec.best_so_far;
    if (rec.phase == Phase::kSelfEvolution) {
      // Chain mode: the anchor is always the previous iteration's output.
      REQUIRE(rec.anchor == prev_arch);
    }
    prev_arch = rec.arch;
  }
}

TEST_CASE("gamma=0 renders no prompt E") {
  SearchConfig config = SmallConfig();
  config.lambda = 10;
  config.gamma = 0;
  const SearchTrace trace = RunSeki(config);
  for (const auto& rec : trace.iterations) {
    REQUIRE(rec.prompt_e_digest.empty());
    REQUIRE(rec.phase == Phase::kSelfEvolution);
  }
}

TEST_CASE("greedy agent on a separable surrogate reaches the oracle best") {
  SearchConfig config;
  config.space_id = SpaceId::kTrans101;
  config.n = 10;
  config.lambda = 10;
  config.gamma = 0;
  config.evaluator_spec = "surrogate:seed=42,beta=0";
  config.llm_spec = "mock:greedy";
  const SearchTrace trace = RunSeki(config);

  const auto& space = DescribeSpace(SpaceId::kTrans101);
  const auto oracle = MakeEvaluator(config.evaluator_spec, config.space_id);
  const auto [best_arch, best_fit] = OracleBest(oracle, space);
  CHECK(trace.best_fitness.oriented_value == best_fit.oriented_value);
  CHECK(trace.best_arch == best_arch.canonical_text);
  CHECK(trace.first_best_iteration <= 6);
}

TEST_CASE("null agent triggers the fallback contract without aborting") {
  SearchConfig config = SmallConfig();
  config.llm_spec = "mock:null";
  config.max_parse_retries = 2;
  const SearchTrace trace = RunSeki(config);
  REQUIRE(trace.iterations.size() == 10);
  for (const auto& rec : trace.iterations) {
    REQUIRE_FALSE(rec.parse_ok);
    REQUIRE(rec.fallback_random);
    REQUIRE(rec.reask_count == 2);
    REQUIRE_FALSE(rec.arch.empty());  // random substitution still evaluated
  }
  CHECK(trace.evaluations == 11);  // budget unchanged by fallbacks
}

TEST_CASE("scripted runs are deterministic; traces byte-identical") {
  const SearchConfig config = SmallConfig();
  const SearchTrace a = RunSeki(config);
  const SearchTrace b = RunSeki(config);
  WriteTrace(a, TracePath("det_a"));
  WriteTrace(b, TracePath("det_b"));
  CHECK(CanonicalTraceText(TracePath("det_a")) ==
        CanonicalTraceText(TracePath("det_b")));
}

TEST_CASE("trace round-trips through the JSONL format") {
  const SearchTrace trace = RunSeki(SmallConfig());
  WriteTrace(trace, TracePath("roundtrip"));
  const SearchTrace loaded = ReadTrace(TracePath("roundtrip"));
  CHECK(loaded.iterations.size() == trace.iterations.size());
  CHECK(loaded.best_arch == trace.best_arch);
  CHECK(loaded.best_fitness == trace.best_fitness);
  CHECK(loaded.config.seed == trace.config.seed);
  CHECK(loaded.config.evaluator_spec == trace.config.evaluator_spec);
}

TEST_CASE("repository reconstruction from trace matches the final state") {
  const SearchTrace trace = RunSeki(SmallConfig());
  const KnowledgeRepository repo = trace.ReconstructRepository();
  CHECK(repo.records().size() == trace.iterations.size() + 1);
  CHECK(repo.Best().arch.canonical_text == trace.best_arch);
  CHECK(repo.Best().fitness.oriented_value ==
        trace.best_fitness.oriented_value);
  CHECK(repo.Best().iteration == trace.best_iteration);
}

TEST_CASE("replay verifies a scripted trace and spots tampering") {
  const SearchTrace trace = RunSeki(SmallConfig());
  WriteTrace(trace, TracePath("replay"));
  const ReplayReport ok = Replay(TracePath("replay"));
  CHECK(ok.ok);

  // Tamper with one fitness value.
  std::ifstream in(TracePath("replay"));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  auto j = nlohmann::json::parse(lines[4]);  // iteration 3
  j["oriented"] = j["oriented"].get<double>() + 1.0;
  lines[4] = j.dump();
  std::ofstream out(TracePath("tampered"));
  for (const auto& l : lines) out << l << "\n";
  out.close();
  const ReplayReport bad = Replay(TracePath("tampered"));
  CHECK_FALSE(bad.ok);
  CHECK(bad.divergence_iteration == 3);
  CHECK(bad.divergence_field == "oriented");

  // Non-replayable source is refused.
  SearchTrace http_trace = trace;
  http_trace.config.llm_spec = "http:endpoint=https://example.com/v1";
  WriteTrace(http_trace, TracePath("http"));
  CHECK_THROWS_AS(Replay(TracePath("http")), SekiError);

  CHECK_THROWS_AS(Replay("/nonexistent/trace.jsonl"), SekiError);
}

TEST_CASE("random baseline: n draws, deterministic, best is the max") {
  SearchConfig config = SmallConfig();
  config.method = SearchMethod::kRandom;
  config.n = 50;
  config.lambda = 35;
  config.gamma = 15;
  const SearchTrace a = RunSearch(config);
  const SearchTrace b = RunSearch(config);
  REQUIRE(a.iterations.size() == 50);
  CHECK(a.evaluations == 51);
  double max_seen = a.init_oriented;
  for (const auto& rec : a.iterations) {
    max_seen = std::max(max_seen, rec.oriented);
  }
  CHECK(a.best_fitness.oriented_value == max_seen);
  WriteTrace(a, TracePath("rand_a"));
  WriteTrace(b, TracePath("rand_b"));
  CHECK(CanonicalTraceText(TracePath("rand_a")) ==
        CanonicalTraceText(TracePath("rand_b")));
}

TEST_CASE("mutation baseline is monotone and converges on a separable "
          "surrogate") {
  int converged = 0;
  const auto& space = DescribeSpace(SpaceId::kTrans101);
  const auto oracle = MakeEvaluator("surrogate:seed=42,beta=0",
                                    SpaceId::kTrans101);
  const double optimum = OracleBest(oracle, space).second.oriented_value;
  for (int seed = 0; seed < 100; ++seed) {
    SearchConfig config;
    config.space_id = SpaceId::kTrans101;
    config.method = SearchMethod::kMutation;
    config.n = 200;
    config.lambda = 200;
    config.gamma = 0;
    config.seed = seed;
    config.evaluator_spec = "surrogate:seed=42,beta=0";
    config.llm_spec = "mock:random";
    const SearchTrace trace = RunSearch(config);
    double prev = trace.init_oriented;
    for (const auto& rec : trace.iterations) {
      REQUIRE(rec.best_so_far >= prev);
      prev = rec.best_so_far;
    }
    if (trace.best_fitness.oriented_value == optimum) ++converged;
  }
  CHECK(converged >= 95);
}

TEST_CASE("ablation sweep grid shapes and skipped cells") {
  SearchConfig base = SmallConfig();
  base.n = 6;
  base.lambda = 4;
  base.gamma = 2;
  base.k = 3;
  base.xi = 2;

  SweepGrid lambda_grid;
  lambda_grid.lambdas = {1, 2, 3, 4, 5, 6};
  const auto lambda_cells = AblationSweep(base, lambda_grid);
  REQUIRE(lambda_cells.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    REQUIRE(lambda_cells[i].gamma == 6 - lambda_cells[i].lambda);
    REQUIRE_FALSE(lambda_cells[i].skipped);
  }

  SweepGrid kxi_grid;
  kxi_grid.ks = {2, 4};
  kxi_grid.xi_ratios = {1.0, 0.5};
  const auto kxi_cells = AblationSweep(base, kxi_grid);
  REQUIRE(kxi_cells.size() == 4);
  CHECK(kxi_cells[0].xi == 2);  // k=2, ratio 1
  CHECK(kxi_cells[1].xi == 1);  // k=2, ratio 0.5

  SweepGrid bad_grid;
  bad_grid.ks = {2};
  bad_grid.xis = {3};  // xi > k
  const auto bad_cells = AblationSweep(base, bad_grid);
  REQUIRE(bad_cells.size() == 1);
  CHECK(bad_cells[0].skipped);

  WriteSweepCsv(kxi_cells, "/tmp/seki_test_sweep.csv");
  std::ifstream csv("/tmp/seki_test_sweep.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "lambda,gamma,k,xi,seed,status,best_fitness,best_iteration,"
        "evaluations");
}

TEST_CASE("report aggregates per method") {
  std::vector<std::string> paths;
  for (int seed = 1; seed <= 4; ++seed) {
    SearchConfig config = SmallConfig();
    config.seed = seed;
    const std::string path = TracePath("report_" + std::to_string(seed));
    WriteTrace(RunSeki(config), path);
    paths.push_back(path);
  }
  const Report report = SummarizeTraces(paths);
  REQUIRE(report.rows.size() == 4);
  REQUIRE(report.aggregates.size() == 1);
  CHECK(report.aggregates[0].method == "seki");
  CHECK(report.aggregates[0].runs == 4);
  double mean = 0;
  for (const auto& row : report.rows) mean += row.best_fitness;
  mean /= 4;
  CHECK(report.aggregates[0].mean_best == doctest::Approx(mean));

  CHECK_THROWS_AS(SummarizeTraces({}), SekiError);
}
