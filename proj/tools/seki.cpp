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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "seki/errors.hpp"
#include "seki/orchestrator.hpp"
#include "seki/report.hpp"

namespace {

using namespace seki;

struct CommonFlags {
  std::string space = "nas201";
  std::string evaluator;
  std::string llm;
  std::string out;
  int n = 50, lambda = 35, gamma = 15, k = 16, xi = 8;
  std::uint64_t seed = 1;
  std::string task;
  std::string anchor_mode = "chain";
  int max_parse_retries = 2;
  std::string template_dir;
  std::string model = "qwen2.5-32b";
  double temperature = 0.7;
  int max_tokens = 2048;
  int timeout_ms = 60000;
  int llm_retries = 3;
};

void AddSearchFlags(CLI::App* cmd, CommonFlags* f, bool needs_llm) {
  cmd->add_option("--space", f->space, "Search space: nas201|trans101|darts")
      ->required();
  cmd->add_option("--evaluator", f->evaluator,
                  "Oracle selector, e.g. surrogate:seed=42,beta=0 or "
                  "tabular:path=t.tsv,metric=cifar10-test")
      ->required();
  if (needs_llm) {
    cmd->add_option("--llm", f->llm,
                    "Backend selector, e.g. mock:greedy, mock:seki, "
                    "http:endpoint=https://host/v1/chat/completions")
        ->required();
  }
  cmd->add_option("--out", f->out, "Trace output path (JSONL)")->required();
  cmd->add_option("--n", f->n, "Total iterations");
  cmd->add_option("--lambda", f->lambda, "Self-evolution iterations");
  cmd->add_option("--gamma", f->gamma, "Knowledge-inspiration iterations");
  cmd->add_option("--k", f->k, "Repository top-k size");
  cmd->add_option("--xi", f->xi, "Exemplar sample size");
  cmd->add_option("--seed", f->seed, "Master RNG seed");
  cmd->add_option("--task", f->task, "Task description override");
  cmd->add_option("--anchor-mode", f->anchor_mode,
                  "Self-evolution anchor: chain (default) | best");
  cmd->add_option("--max-parse-retries", f->max_parse_retries,
                  "Format-reminder re-asks before random fallback");
  cmd->add_option("--templates", f->template_dir,
                  "Directory with prompt_c.txt / prompt_d.txt / prompt_e.txt");
  cmd->add_option("--model", f->model, "Model name sent to HTTP backends");
  cmd->add_option("--temperature", f->temperature, "Sampling temperature");
  cmd->add_option("--max-tokens", f->max_tokens, "Completion token limit");
  cmd->add_option("--timeout-ms", f->timeout_ms, "Per-request timeout");
  cmd->add_option("--llm-retries", f->llm_retries,
                  "Transient-failure retries per request");
}

SearchConfig BuildConfig(const CommonFlags& f, SearchMethod method) {
  SearchConfig config;
  config.space_id = SpaceIdFromName(f.space);
  config.method = method;
  config.n = f.n;
  config.lambda = f.lambda;
  config.gamma = f.gamma;
  config.k = f.k;
  config.xi = f.xi;
  config.seed = f.seed;
  config.evaluator_spec = f.evaluator;
  config.llm_spec = f.llm.empty() ? "mock:random" : f.llm;
  config.task_description = f.task;
  config.max_parse_retries = f.max_parse_retries;
  config.template_dir = f.template_dir;
  if (f.anchor_mode == "best") {
    config.anchor_mode = AnchorMode::kBest;
  } else if (f.anchor_mode != "chain") {
    throw SekiError(ErrorCode::kConfigError,
                    "anchor-mode must be chain or best");
  }
  config.llm_params.model_name = f.model;
  config.llm_params.temperature = f.temperature;
  config.llm_params.max_tokens = f.max_tokens;
  config.llm_params.timeout_ms = f.timeout_ms;
  config.llm_params.max_retries = f.llm_retries;
  config.Validate();
  return config;
}

int RunAndWrite(const SearchConfig& config, const std::string& out) {
  const SearchTrace trace = RunSearch(config);
  WriteTrace(trace, out);
  std::printf("best %s\n", trace.best_arch.c_str());
  std::printf("fitness %.6f (%s, %s) at iteration %d; %llu evaluations\n",
              trace.best_fitness.raw_metric,
              trace.best_fitness.metric_name.c_str(),
              DirectionName(trace.best_fitness.direction),
              trace.best_iteration,
              static_cast<unsigned long long>(trace.evaluations));
  std::printf("trace %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SEKI: two-stage LLM-driven neural architecture search"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Execute a SEKI search");
  AddSearchFlags(run, &run_flags, /*needs_llm=*/true);

  CommonFlags base_flags;
  std::string baseline_method = "random";
  CLI::App* baseline =
      app.add_subcommand("baseline", "Execute a baseline search");
  baseline->add_option("--method", baseline_method, "random | mutation")
      ->required();
  AddSearchFlags(baseline, &base_flags, /*needs_llm=*/false);

  std::string oracle_space = "nas201", oracle_eval;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Brute-force optimum of an enumerable space");
  oracle->add_option("--space", oracle_space)->required();
  oracle->add_option("--evaluator", oracle_eval)->required();

  CommonFlags sweep_flags;
  std::vector<int> grid_lambda, grid_k, grid_xi;
  std::vector<double> grid_xi_ratio;
  std::vector<std::uint64_t> grid_seed;
  CLI::App* sweep = app.add_subcommand("sweep", "Ablation sweep over a grid");
  AddSearchFlags(sweep, &sweep_flags, /*needs_llm=*/true);
  sweep->add_option("--grid-lambda", grid_lambda,
                    "Lambda values; gamma = n - lambda per cell")
      ->delimiter(',');
  sweep->add_option("--grid-k", grid_k, "k values")->delimiter(',');
  sweep->add_option("--grid-xi", grid_xi, "xi values")->delimiter(',');
  sweep->add_option("--grid-xi-ratio", grid_xi_ratio,
                    "xi as a fraction of k (e.g. 1,0.75,0.5,0.25)")
      ->delimiter(',');
  sweep->add_option("--grid-seed", grid_seed, "seeds")->delimiter(',');

  std::string replay_path;
  CLI::App* replay =
      app.add_subcommand("replay", "Re-execute and verify a scripted trace");
  replay->add_option("--trace", replay_path)->required();

  std::vector<std::string> report_traces;
  std::string report_out;
  CLI::App* report = app.add_subcommand("report", "Summarize traces to CSV");
  report->add_option("--out", report_out)->required();
  report->add_option("traces", report_traces, "Trace files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return RunAndWrite(BuildConfig(run_flags, SearchMethod::kSeki),
                         run_flags.out);
    }
    if (*baseline) {
      return RunAndWrite(
          BuildConfig(base_flags, SearchMethodFromName(baseline_method)),
          base_flags.out);
    }
    if (*oracle) {
      const SpaceDescriptor& space =
          DescribeSpace(SpaceIdFromName(oracle_space));
      const EvaluatorHandle handle =
          MakeEvaluator(oracle_eval, space.space_id);
      const auto [arch, fitness] = OracleBest(handle, space);
      std::printf("best %s\n", arch.canonical_text.c_str());
      std::printf("fitness %.6f (%s, %s)\n", fitness.raw_metric,
                  fitness.metric_name.c_str(),
                  DirectionName(fitness.direction));
      std::printf("scanned %llu architectures\n",
                  static_cast<unsigned long long>(handle->call_count()));
      return 0;
    }
    if (*sweep) {
      const SearchConfig base = BuildConfig(sweep_flags, SearchMethod::kSeki);
      SweepGrid grid;
      grid.lambdas = grid_lambda;
      grid.ks = grid_k;
      grid.xis = grid_xi;
      grid.xi_ratios = grid_xi_ratio;
      grid.seeds = grid_seed;
      const auto cells = AblationSweep(base, grid);
      WriteSweepCsv(cells, sweep_flags.out);
      std::printf("sweep wrote %zu rows to %s\n", cells.size(),
                  sweep_flags.out.c_str());
      return 0;
    }
    if (*replay) {
      const ReplayReport rep = Replay(replay_path);
      if (rep.ok) {
        std::printf("replay ok: zero divergences\n");
        return 0;
      }
      std::fprintf(stderr, "error: divergence at iteration %d field %s\n",
                   rep.divergence_iteration, rep.divergence_field.c_str());
      return 1;
    }
    if (*report) {
      WriteReportCsv(SummarizeTraces(report_traces), report_out);
      std::printf("report wrote %s\n", report_out.c_str());
      return 0;
    }
  } catch (const seki::SekiError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
