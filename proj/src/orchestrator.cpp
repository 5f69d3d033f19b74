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

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "seki/errors.hpp"

namespace seki {

namespace {

using nlohmann::json;

constexpr int kTraceVersion = 1;

// ---------------------------------------------------------------------------
// Selector grammar: kind:key=value,key=value,...

struct Selector {
  std::string kind;
  std::map<std::string, std::string> args;
};

Selector ParseSelector(const std::string& spec) {
  Selector sel;
  const size_t colon = spec.find(':');
  sel.kind = spec.substr(0, colon);
  if (colon == std::string::npos) return sel;
  std::istringstream rest(spec.substr(colon + 1));
  std::string pair;
  while (std::getline(rest, pair, ',')) {
    if (pair.empty()) continue;
    const size_t eq = pair.find('=');
    if (eq == std::string::npos) {
      sel.args[pair] = "";
    } else {
      sel.args[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
  }
  return sel;
}

std::string ArgOr(const Selector& sel, const std::string& key,
                  const std::string& fallback) {
  const auto it = sel.args.find(key);
  return it == sel.args.end() ? fallback : it->second;
}

std::string RequiredArg(const Selector& sel, const std::string& key) {
  const auto it = sel.args.find(key);
  if (it == sel.args.end()) {
    throw SekiError(ErrorCode::kConfigError,
                    "selector '" + sel.kind + "' needs " + key + "=...");
  }
  return it->second;
}

std::string TaskFor(const SearchConfig& config) {
  return config.task_description.empty()
             ? DescribeSpace(config.space_id).task_description
             : config.task_description;
}

// ---------------------------------------------------------------------------
// Run scaffolding

constexpr char kFormatReminder[] =
    "Your previous answer did not contain a valid architecture in the "
    "canonical encoding. Answer again and end with exactly one valid "
    "canonical architecture encoding on its own line.";

struct RunState {
  const SpaceDescriptor& space;
  EvaluatorHandle oracle;
  std::unique_ptr<LlmBackend> backend;
  SeededRng init_rng;
  SeededRng xi_rng;
  SeededRng fallback_rng;
  KnowledgeRepository repo;
  SearchTrace trace;
  double best_seen = 0;

  explicit RunState(const SearchConfig& config)
      : space(DescribeSpace(config.space_id)),
        oracle(MakeEvaluator(config.evaluator_spec, config.space_id)),
        backend(MakeBackend(config.llm_spec, config)),
        init_rng(SeededRng(config.seed).Substream("init")),
        xi_rng(SeededRng(config.seed).Substream("xi")),
        fallback_rng(SeededRng(config.seed).Substream("fallback")) {
    trace.config = config;
  }

  ScoredEntry InitStep() {
    Architecture arch = RandomArchitecture(space, init_rng);
    Fitness fit = oracle->Evaluate(arch);
    ScoredEntry entry{arch, fit, 0, Phase::kInit};
    repo.Insert(entry);
    trace.init_arch = arch.canonical_text;
    trace.init_raw = fit.raw_metric;
    trace.init_oriented = fit.oriented_value;
    best_seen = fit.oriented_value;
    trace.first_best_iteration = 0;
    return entry;
  }

  // Evaluates and stores one searched architecture, filling the shared
  // record fields.
  void Record(IterationRecord rec, const Architecture& arch, Phase phase) {
    Fitness fit = oracle->Evaluate(arch);
    const InsertReceipt receipt =
        repo.Insert(ScoredEntry{arch, fit, rec.iteration, phase});
    rec.phase = phase;
    rec.duplicate = receipt.was_duplicate;
    rec.arch = arch.canonical_text;
    rec.raw_metric = fit.raw_metric;
    rec.oriented = fit.oriented_value;
    if (fit.oriented_value > best_seen) {
      best_seen = fit.oriented_value;
      trace.first_best_iteration = rec.iteration;
    }
    rec.best_so_far = repo.Best().fitness.oriented_value;
    trace.iterations.push_back(std::move(rec));
  }

  void Finish() {
    const ScoredEntry best = repo.Best();
    trace.best_arch = best.arch.canonical_text;
    trace.best_fitness = best.fitness;
    trace.best_iteration = best.iteration;
    trace.evaluations = oracle->call_count();
  }

  // Fallback contract: re-ask with a format reminder up to
  // max_parse_retries times, then substitute a random architecture. The
  // iteration always yields an architecture.
  Architecture AskForArchitecture(Prompt prompt, const SearchConfig& config,
                                  IterationRecord& rec) {
    for (int attempt = 0; attempt <= config.max_parse_retries; ++attempt) {
      rec.llm_raw = backend->Complete(prompt, config.llm_params);
      try {
        Architecture arch = ExtractArchitecture(space, rec.llm_raw);
        rec.parse_ok = true;
        rec.reask_count = attempt;
        return arch;
      } catch (const SekiError&) {
        prompt = WithExtraUserMessage(prompt, kFormatReminder);
      }
    }
    rec.parse_ok = false;
    rec.reask_count = config.max_parse_retries;
    rec.fallback_random = true;
    return RandomArchitecture(space, fallback_rng);
  }
};

// ---------------------------------------------------------------------------
// Trace JSON

json FitnessToJson(const Fitness& f) {
  return json{{"oriented", f.oriented_value},
              {"raw", f.raw_metric},
              {"metric", f.metric_name},
              {"direction", DirectionName(f.direction)}};
}

Fitness FitnessFromJson(const json& j) {
  return Fitness{j.at("oriented").get<double>(), j.at("raw").get<double>(),
                 j.at("metric").get<std::string>(),
                 DirectionFromName(j.at("direction").get<std::string>())};
}

json ConfigToJson(const SearchConfig& c) {
  return json{{"type", "config"},
              {"version", kTraceVersion},
              {"space", SpaceIdName(c.space_id)},
              {"method", SearchMethodName(c.method)},
              {"n", c.n},
              {"lambda", c.lambda},
              {"gamma", c.gamma},
              {"k", c.k},
              {"xi", c.xi},
              {"seed", c.seed},
              {"evaluator", c.evaluator_spec},
              {"llm", c.llm_spec},
              {"llm_params",
               {{"model", c.llm_params.model_name},
                {"temperature", c.llm_params.temperature},
                {"max_tokens", c.llm_params.max_tokens},
                {"timeout_ms", c.llm_params.timeout_ms},
                {"max_retries", c.llm_params.max_retries},
                {"backoff_base_ms", c.llm_params.backoff_base_ms}}},
              {"task", c.task_description},
              {"max_parse_retries", c.max_parse_retries},
              {"anchor_mode",
               c.anchor_mode == AnchorMode::kChain ? "chain" : "best"},
              {"template_dir", c.template_dir},
              {"extended_xi", c.extended_xi_mode()}};
}

SearchConfig ConfigFromJson(const json& j) {
  SearchConfig c;
  c.space_id = SpaceIdFromName(j.at("space").get<std::string>());
  c.method = SearchMethodFromName(j.at("method").get<std::string>());
  c.n = j.at("n").get<int>();
  c.lambda = j.at("lambda").get<int>();
  c.gamma = j.at("gamma").get<int>();
  c.k = j.at("k").get<int>();
  c.xi = j.at("xi").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.evaluator_spec = j.at("evaluator").get<std::string>();
  c.llm_spec = j.at("llm").get<std::string>();
  const json& p = j.at("llm_params");
  c.llm_params.model_name = p.at("model").get<std::string>();
  c.llm_params.temperature = p.at("temperature").get<double>();
  c.llm_params.max_tokens = p.at("max_tokens").get<int>();
  c.llm_params.timeout_ms = p.at("timeout_ms").get<int>();
  c.llm_params.max_retries = p.at("max_retries").get<int>();
  c.llm_params.backoff_base_ms = p.at("backoff_base_ms").get<int>();
  c.task_description = j.at("task").get<std::string>();
  c.max_parse_retries = j.at("max_parse_retries").get<int>();
  c.anchor_mode = j.at("anchor_mode").get<std::string>() == "best"
                      ? AnchorMode::kBest
                      : AnchorMode::kChain;
  c.template_dir = j.at("template_dir").get<std::string>();
  return c;
}

json IterationToJson(const IterationRecord& r) {
  return json{{"type", "iter"},
              {"iteration", r.iteration},
              {"phase", PhaseName(r.phase)},
              {"anchor", r.anchor},
              {"exemplars", r.exemplars},
              {"prompt_c", r.prompt_c_digest},
              {"prompt_d", r.prompt_d_digest},
              {"prompt_e", r.prompt_e_digest},
              {"strategy", r.strategy_text},
              {"llm_raw", r.llm_raw},
              {"parse_ok", r.parse_ok},
              {"reasks", r.reask_count},
              {"fallback_random", r.fallback_random},
              {"duplicate", r.duplicate},
              {"arch", r.arch},
              {"raw_metric", r.raw_metric},
              {"oriented", r.oriented},
              {"best_so_far", r.best_so_far}};
}

IterationRecord IterationFromJson(const json& j) {
  IterationRecord r;
  r.iteration = j.at("iteration").get<int>();
  r.phase = PhaseFromName(j.at("phase").get<std::string>());
  r.anchor = j.at("anchor").get<std::string>();
  r.exemplars = j.at("exemplars").get<std::vector<std::string>>();
  r.prompt_c_digest = j.at("prompt_c").get<std::string>();
  r.prompt_d_digest = j.at("prompt_d").get<std::string>();
  r.prompt_e_digest = j.at("prompt_e").get<std::string>();
  r.strategy_text = j.at("strategy").get<std::string>();
  r.llm_raw = j.at("llm_raw").get<std::string>();
  r.parse_ok = j.at("parse_ok").get<bool>();
  r.reask_count = j.at("reasks").get<int>();
  r.fallback_random = j.at("fallback_random").get<bool>();
  r.duplicate = j.at("duplicate").get<bool>();
  r.arch = j.at("arch").get<std::string>();
  r.raw_metric = j.at("raw_metric").get<double>();
  r.oriented = j.at("oriented").get<double>();
  r.best_so_far = j.at("best_so_far").get<double>();
  return r;
}

json InitToJson(const SearchTrace& t) {
  return json{{"type", "init"},
              {"arch", t.init_arch},
              {"raw_metric", t.init_raw},
              {"oriented", t.init_oriented}};
}

json FinalToJson(const SearchTrace& t) {
  return json{{"type", "final"},
              {"best_arch", t.best_arch},
              {"best_fitness", FitnessToJson(t.best_fitness)},
              {"best_iteration", t.best_iteration},
              {"first_best_iteration", t.first_best_iteration},
              {"evaluations", t.evaluations}};
}

// Field-by-field comparison of two canonical JSON objects (the "ts" block
// is the only non-canonical field).
std::string FirstDifferingField(const json& a, const json& b) {
  for (const auto& [key, value] : a.items()) {
    if (key == "ts") continue;
    if (!b.contains(key) || b.at(key) != value) return key;
  }
  for (const auto& [key, value] : b.items()) {
    if (key != "ts" && !a.contains(key)) return key;
  }
  return "";
}

}  // namespace

const char* SearchMethodName(SearchMethod m) {
  switch (m) {
    case SearchMethod::kSeki:
      return "seki";
    case SearchMethod::kRandom:
      return "random";
    case SearchMethod::kMutation:
      return "mutation";
  }
  return "unknown";
}

SearchMethod SearchMethodFromName(const std::string& name) {
  if (name == "seki") return SearchMethod::kSeki;
  if (name == "random") return SearchMethod::kRandom;
  if (name == "mutation") return SearchMethod::kMutation;
  throw SekiError(ErrorCode::kConfigError, "unknown method '" + name + "'");
}

void SearchConfig::Validate() const {
  if (n < 1) throw SekiError(ErrorCode::kConfigError, "n must be >= 1");
  if (lambda < 0 || gamma < 0) {
    throw SekiError(ErrorCode::kConfigError, "lambda and gamma must be >= 0");
  }
  if (lambda + gamma != n) {
    throw SekiError(ErrorCode::kConfigError,
                    "lambda + gamma must equal n (got " +
                        std::to_string(lambda) + " + " + std::to_string(gamma) +
                        " != " + std::to_string(n) + ")");
  }
  if (k < 1) throw SekiError(ErrorCode::kConfigError, "k must be >= 1");
  if (xi < 1 || xi > k) {
    throw SekiError(ErrorCode::kConfigError,
                    "xi must satisfy 1 <= xi <= k (got xi=" +
                        std::to_string(xi) + ", k=" + std::to_string(k) + ")");
  }
  if (max_parse_retries < 0) {
    throw SekiError(ErrorCode::kConfigError, "max_parse_retries must be >= 0");
  }
}

EvaluatorHandle MakeEvaluator(const std::string& spec, SpaceId space_id) {
  const Selector sel = ParseSelector(spec);
  if (sel.kind == "surrogate") {
    const std::uint64_t seed = std::stoull(ArgOr(sel, "seed", "42"));
    const double beta = std::stod(ArgOr(sel, "beta", "0"));
    return std::make_shared<SurrogateEvaluator>(DescribeSpace(space_id), seed,
                                                beta);
  }
  if (sel.kind == "tabular") {
    TabularBenchmark table = LoadTabular(RequiredArg(sel, "path"));
    if (table.space_id != space_id) {
      throw SekiError(ErrorCode::kSpaceMismatch,
                      "tabular file covers " + std::string(SpaceIdName(
                          table.space_id)) + ", run wants " +
                          SpaceIdName(space_id));
    }
    const std::string metric =
        ArgOr(sel, "metric", table.metric_names.front());
    return std::make_shared<TabularEvaluator>(std::move(table), metric);
  }
  throw SekiError(ErrorCode::kConfigError,
                  "unknown evaluator kind '" + sel.kind + "'");
}

std::unique_ptr<LlmBackend> MakeBackend(const std::string& spec,
                                        const SearchConfig& config) {
  const Selector sel = ParseSelector(spec);
  if (sel.kind == "mock") {
    std::string agent = ArgOr(sel, "agent", "");
    if (agent.empty() && sel.args.size() == 1) {
      agent = sel.args.begin()->first;  // shorthand mock:greedy
    }
    const ScriptedKind kind = ScriptedKindFromName(agent);
    EvaluatorHandle agent_oracle;
    if (kind == ScriptedKind::kGreedyMutation ||
        kind == ScriptedKind::kSekiMix) {
      agent_oracle = MakeEvaluator(config.evaluator_spec, config.space_id);
    }
    return MakeScriptedAgent(kind, DescribeSpace(config.space_id),
                             std::move(agent_oracle),
                             SeededRng(config.seed).Substream("agent"));
  }
  if (sel.kind == "http") {
    return MakeHttpBackend(RequiredArg(sel, "endpoint"));
  }
  throw SekiError(ErrorCode::kConfigError,
                  "unknown llm backend kind '" + sel.kind + "'");
}

KnowledgeRepository SearchTrace::ReconstructRepository() const {
  const SpaceDescriptor& space = DescribeSpace(config.space_id);
  KnowledgeRepository repo;
  Fitness init_fit = best_fitness;  // metric name/direction are run-wide
  init_fit.raw_metric = init_raw;
  init_fit.oriented_value = init_oriented;
  repo.Insert(ScoredEntry{ParseArchitecture(space, init_arch), init_fit, 0,
                          Phase::kInit});
  for (const IterationRecord& r : iterations) {
    Fitness fit = best_fitness;
    fit.raw_metric = r.raw_metric;
    fit.oriented_value = r.oriented;
    repo.Insert(ScoredEntry{ParseArchitecture(space, r.arch), fit,
                            r.iteration, r.phase});
  }
  return repo;
}

SearchTrace RunSeki(const SearchConfig& config) {
  config.Validate();
  RunState state(config);
  const TemplateSet templates =
      config.template_dir.empty()
          ? TemplateSet::Defaults()
          : TemplateSet::FromDirectory(config.template_dir);
  const std::string task = TaskFor(config);

  ScoredEntry anchor = state.InitStep();
  for (int i = 1; i <= config.n; ++i) {
    IterationRecord rec;
    rec.iteration = i;
    Architecture arch = anchor.arch;  // placeholder, overwritten below
    Phase phase;
    if (i <= config.lambda) {
      phase = Phase::kSelfEvolution;
      rec.anchor = anchor.arch.canonical_text;
      const Prompt prompt_c = RenderPromptC(templates, task, state.space,
                                            anchor.arch, anchor.fitness);
      rec.prompt_c_digest = prompt_c.content_digest;
      rec.strategy_text =
          state.backend->Complete(prompt_c, config.llm_params);
      OptimizationStrategy strategy{rec.strategy_text, i};
      if (strategy.text.empty()) {
        // A silent model still must not break the loop.
        strategy.text = "Improve the weakest operator choice.";
      }
      const Prompt prompt_d = RenderPromptD(templates, strategy, anchor.arch);
      rec.prompt_d_digest = prompt_d.content_digest;
      arch = state.AskForArchitecture(prompt_d, config, rec);
    } else {
      phase = Phase::kKnowledgeInspiration;
      const auto top = state.repo.TopK(config.k);
      const auto exemplars =
          KnowledgeRepository::SampleXi(top, config.xi, state.xi_rng);
      for (const auto& e : exemplars) {
        rec.exemplars.push_back(e.arch.canonical_text);
      }
      const Prompt prompt_e =
          RenderPromptE(templates, exemplars, task, state.space);
      rec.prompt_e_digest = prompt_e.content_digest;
      arch = state.AskForArchitecture(prompt_e, config, rec);
    }
    state.Record(std::move(rec), arch, phase);
    if (i <= config.lambda) {
      const IterationRecord& done = state.trace.iterations.back();
      if (config.anchor_mode == AnchorMode::kChain) {
        // Algorithm feeds alpha_{i-1} forward unconditionally.
        anchor = ScoredEntry{
            ParseArchitecture(state.space, done.arch),
            Fitness{done.oriented, done.raw_metric,
                    state.oracle->metric_name(), state.oracle->direction()},
            i, Phase::kSelfEvolution};
      } else {
        anchor = state.repo.Best();
      }
    }
  }
  state.Finish();
  return std::move(state.trace);
}

SearchTrace RunRandomBaseline(const SearchConfig& config) {
  config.Validate();
  RunState state(config);
  SeededRng draw_rng = SeededRng(config.seed).Substream("baseline");
  state.InitStep();
  for (int i = 1; i <= config.n; ++i) {
    IterationRecord rec;
    rec.iteration = i;
    const Architecture arch = RandomArchitecture(state.space, draw_rng);
    state.Record(std::move(rec), arch, Phase::kSelfEvolution);
  }
  state.Finish();
  return std::move(state.trace);
}

SearchTrace RunMutationBaseline(const SearchConfig& config) {
  config.Validate();
  RunState state(config);
  SeededRng mut_rng = SeededRng(config.seed).Substream("mutation");
  ScoredEntry current = state.InitStep();
  for (int i = 1; i <= config.n; ++i) {
    IterationRecord rec;
    rec.iteration = i;
    rec.anchor = current.arch.canonical_text;
    const auto neighborhood = Neighbors(current.arch);
    const Architecture& candidate =
        neighborhood[mut_rng.NextBelow(neighborhood.size())];
    state.Record(std::move(rec), candidate, Phase::kSelfEvolution);
    const IterationRecord& done = state.trace.iterations.back();
    if (done.oriented > current.fitness.oriented_value) {
      current = ScoredEntry{
          ParseArchitecture(state.space, done.arch),
          Fitness{done.oriented, done.raw_metric,
                  state.oracle->metric_name(), state.oracle->direction()},
          i, Phase::kSelfEvolution};
    }
  }
  state.Finish();
  return std::move(state.trace);
}

SearchTrace RunSearch(const SearchConfig& config) {
  switch (config.method) {
    case SearchMethod::kSeki:
      return RunSeki(config);
    case SearchMethod::kRandom:
      return RunRandomBaseline(config);
    case SearchMethod::kMutation:
      return RunMutationBaseline(config);
  }
  throw SekiError(ErrorCode::kConfigError, "bad search method");
}

void WriteTrace(const SearchTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw SekiError(ErrorCode::kFileError, "cannot write '" + path + "'");
  }
  json config_line = ConfigToJson(trace.config);
  config_line["ts"] = {
      {"written_unix_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(
           std::chrono::system_clock::now().time_since_epoch())
           .count()}};
  out << config_line.dump() << "\n";
  out << InitToJson(trace).dump() << "\n";
  for (const IterationRecord& r : trace.iterations) {
    out << IterationToJson(r).dump() << "\n";
  }
  out << FinalToJson(trace).dump() << "\n";
  if (!out) {
    throw SekiError(ErrorCode::kFileError, "short write to '" + path + "'");
  }
}

SearchTrace ReadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SekiError(ErrorCode::kTraceUnreadable, "cannot open '" + path + "'");
  }
  SearchTrace trace;
  std::string line;
  bool have_config = false, have_final = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw SekiError(ErrorCode::kTraceUnreadable,
                      "'" + path + "' contains a non-JSON line");
    }
    const std::string type = j.value("type", "");
    try {
      if (type == "config") {
        trace.config = ConfigFromJson(j);
        have_config = true;
      } else if (type == "init") {
        trace.init_arch = j.at("arch").get<std::string>();
        trace.init_raw = j.at("raw_metric").get<double>();
        trace.init_oriented = j.at("oriented").get<double>();
      } else if (type == "iter") {
        trace.iterations.push_back(IterationFromJson(j));
      } else if (type == "final") {
        trace.best_arch = j.at("best_arch").get<std::string>();
        trace.best_fitness = FitnessFromJson(j.at("best_fitness"));
        trace.best_iteration = j.at("best_iteration").get<int>();
        trace.first_best_iteration = j.at("first_best_iteration").get<int>();
        trace.evaluations = j.at("evaluations").get<std::uint64_t>();
        have_final = true;
      } else {
        throw SekiError(ErrorCode::kTraceUnreadable,
                        "unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw SekiError(ErrorCode::kTraceUnreadable,
                      std::string("bad record: ") + e.what());
    }
  }
  if (!have_config || !have_final) {
    throw SekiError(ErrorCode::kTraceUnreadable,
                    "'" + path + "' is missing config or final record");
  }
  return trace;
}

ReplayReport Replay(const std::string& trace_path) {
  const SearchTrace recorded = ReadTrace(trace_path);
  if (recorded.config.llm_spec.rfind("mock:", 0) != 0) {
    throw SekiError(ErrorCode::kConfigError,
                    "trace was produced by a non-replayable backend (" +
                        recorded.config.llm_spec +
                        "); only scripted (mock:) runs replay");
  }
  const SearchTrace fresh = RunSearch(recorded.config);

  ReplayReport report;
  auto diverge = [&](int iteration, const std::string& field) {
    report.ok = false;
    report.divergence_iteration = iteration;
    report.divergence_field = field;
  };
  std::string field = FirstDifferingField(InitToJson(recorded),
                                          InitToJson(fresh));
  if (!field.empty()) {
    diverge(0, field);
    return report;
  }
  const size_t count =
      std::min(recorded.iterations.size(), fresh.iterations.size());
  for (size_t i = 0; i < count; ++i) {
    field = FirstDifferingField(IterationToJson(recorded.iterations[i]),
                                IterationToJson(fresh.iterations[i]));
    if (!field.empty()) {
      diverge(recorded.iterations[i].iteration, field);
      return report;
    }
  }
  if (recorded.iterations.size() != fresh.iterations.size()) {
    diverge(static_cast<int>(count) + 1, "iteration_count");
    return report;
  }
  field = FirstDifferingField(FinalToJson(recorded), FinalToJson(fresh));
  if (!field.empty()) {
    diverge(recorded.config.n + 1, field);
  }
  return report;
}

std::vector<SweepCell> AblationSweep(const SearchConfig& base,
                                     const SweepGrid& grid) {
  std::vector<int> lambdas =
      grid.lambdas.empty() ? std::vector<int>{base.lambda} : grid.lambdas;
  std::vector<int> ks = grid.ks.empty() ? std::vector<int>{base.k} : grid.ks;
  std::vector<std::uint64_t> seeds =
      grid.seeds.empty() ? std::vector<std::uint64_t>{base.seed} : grid.seeds;
  if (!grid.xis.empty() && !grid.xi_ratios.empty()) {
    throw SekiError(ErrorCode::kConfigError,
                    "give either xi values or xi ratios, not both");
  }

  std::vector<SweepCell> cells;
  for (int lambda : lambdas) {
    for (int k : ks) {
      // Each k expands to its xi list (absolute or ratio-derived).
      std::vector<int> xis;
      if (!grid.xi_ratios.empty()) {
        for (double r : grid.xi_ratios) {
          xis.push_back(std::max(1, static_cast<int>(k * r + 0.5)));
        }
      } else if (!grid.xis.empty()) {
        xis = grid.xis;
      } else {
        xis = {base.xi};
      }
      for (int xi : xis) {
        for (std::uint64_t seed : seeds) {
          SweepCell cell;
          cell.lambda = lambda;
          cell.gamma = base.n - lambda;
          cell.k = k;
          cell.xi = xi;
          cell.seed = seed;
          SearchConfig config = base;
          config.lambda = lambda;
          config.gamma = base.n - lambda;
          config.k = k;
          config.xi = xi;
          config.seed = seed;
          try {
            config.Validate();
          } catch (const SekiError& e) {
            cell.skipped = true;
            cell.skip_reason = e.what();
            cells.push_back(cell);
            continue;
          }
          const SearchTrace trace = RunSearch(config);
          cell.best_fitness = trace.best_fitness.oriented_value;
          cell.best_iteration = trace.best_iteration;
          cell.evaluations = trace.evaluations;
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

void WriteSweepCsv(const std::vector<SweepCell>& cells,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw SekiError(ErrorCode::kFileError, "cannot write '" + path + "'");
  }
  out << "lambda,gamma,k,xi,seed,status,best_fitness,best_iteration,"
         "evaluations\n";
  for (const SweepCell& c : cells) {
    out << c.lambda << "," << c.gamma << "," << c.k << "," << c.xi << ","
        << c.seed << "," << (c.skipped ? "skipped" : "ok") << ",";
    if (c.skipped) {
      out << ",,\n";
    } else {
      out << c.best_fitness << "," << c.best_iteration << ","
          << c.evaluations << "\n";
    }
  }
}

}  // namespace seki
