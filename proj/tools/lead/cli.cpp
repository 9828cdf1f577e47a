// Copyright 2026 The lead Authors.
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

#include "lead/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/fmt/fmt.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lead/bibcoupling.hpp"
#include "lead/corpus_cache.hpp"
#include "lead/csv.hpp"
#include "lead/decisions_io.hpp"
#include "lead/errors.hpp"
#include "lead/eval.hpp"
#include "lead/ingest.hpp"
#include "lead/labelspread.hpp"
#include "lead/llm_client.hpp"
#include "lead/llmjudge.hpp"
#include "lead/orchestrator.hpp"
#include "lead/parallel.hpp"
#include "lead/synthkit.hpp"
#include "lead/taxonomy.hpp"

namespace lead::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataOptions {
  std::string dir;
  std::string registry;
  std::string profiles;
  std::string seeds;
  std::string gold;
  std::string gold_columns;
  std::string taxonomy;

  void add(CLI::App* cmd) {
    cmd->add_option("--data", dir, "Directory holding registry.csv, profiles.jsonl, seeds.csv, gold.csv");
    cmd->add_option("--registry", registry, "Registry CSV (overrides --data)");
    cmd->add_option("--profiles", profiles, "Profiles JSONL (overrides --data)");
    cmd->add_option("--seeds", seeds, "Seed alignments CSV (overrides --data)");
    cmd->add_option("--gold", gold, "Gold standard CSV (overrides --data)");
    cmd->add_option("--gold-columns", gold_columns, "Gold header overrides, e.g. record_id=ID,auid=AUID");
    cmd->add_option("--taxonomy", taxonomy, "Taxonomy CSV (default: <data>/taxonomy.csv when present)");
  }

  DatasetPaths paths() const {
    DatasetPaths p;
    if (!dir.empty()) p = DatasetPaths::in_directory(dir);
    if (!registry.empty()) p.registry = registry;
    if (!profiles.empty()) p.profiles = profiles;
    if (!seeds.empty()) p.seeds = seeds;
    if (!gold.empty()) p.gold = fs::path(gold);
    if (p.registry.empty() || p.profiles.empty() || p.seeds.empty())
      throw UsageError("give --data or all of --registry, --profiles and --seeds");
    if (!gold_columns.empty()) p.gold_columns.apply_overrides(gold_columns);
    return p;
  }

  Dataset load() const { return Dataset::load(paths()); }

  std::optional<TaxonomyTable> load_taxonomy() const {
    fs::path path = taxonomy;
    if (path.empty() && !dir.empty() && fs::exists(fs::path(dir) / "taxonomy.csv"))
      path = fs::path(dir) / "taxonomy.csv";
    if (path.empty()) {
      spdlog::info("no taxonomy file; prompts will show raw codes");
      return std::nullopt;
    }
    return TaxonomyTable::load(path);
  }

  ojson to_json() const {
    const auto p = paths();
    ojson j;
    j["registry"] = p.registry.string();
    j["profiles"] = p.profiles.string();
    j["seeds"] = p.seeds.string();
    j["gold"] = p.gold ? ojson(p.gold->string()) : ojson(nullptr);
    j["taxonomy"] = taxonomy.empty() ? ojson(nullptr) : ojson(taxonomy);
    return j;
  }
};

struct SpreadOptions {
  double alpha = 0.2;
  double tol = 1e-3;
  int max_iter = 30;
  std::string weighting = "count";

  void add(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Label spreading alpha");
    cmd->add_option("--tol", tol, "Label spreading tolerance (max-abs change)");
    cmd->add_option("--max-iter", max_iter, "Label spreading iteration cap");
    cmd->add_option("--weighting", weighting, "Co-author edge weights")
        ->check(CLI::IsMember({"count", "binary"}));
  }
  SpreadParams params() const { return SpreadParams{alpha, tol, max_iter}; }
  EdgeWeighting edge_weighting() const {
    return weighting == "binary" ? EdgeWeighting::Binary : EdgeWeighting::CoPublicationCount;
  }
};

Granularity granularity_of(const std::string& s) {
  auto g = parse_granularity(s);
  if (!g) throw UsageError("unknown granularity '" + s + "' (use SA, RFG, RF or AD)");
  return *g;
}

TimeWindow window_of(const std::string& s) {
  try {
    return TimeWindow::parse(s);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

fs::path ensure_dir(const std::string& dir) {
  fs::path p = dir;
  fs::create_directories(p);
  return p;
}

std::optional<double> manifest_elapsed(const fs::path& decisions) {
  const auto m = decisions.parent_path() / "manifest.json";
  if (!fs::exists(m)) return std::nullopt;
  auto j = nlohmann::json::parse(csv::read_text(m), nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  if (auto r = j.find("results"); r != j.end() && r->contains("elapsed_seconds"))
    return (*r)["elapsed_seconds"].get<double>();
  return std::nullopt;
}

ojson method_json(const MethodConfig& config) {
  ojson j;
  j["method"] = std::string(method_name(config));
  auto prompt_json = [](const PromptConfig& p) {
    ojson pj;
    pj["metadata"] = std::string(to_string(p.mode));
    pj["sample_k"] = p.sample ? ojson(p.sample->k) : ojson(nullptr);
    pj["sample_seed"] = p.sample ? ojson(p.sample->seed) : ojson(nullptr);
    pj["with_bc"] = p.enrichment.include_bc;
    pj["with_ls"] = p.enrichment.include_ls;
    return pj;
  };
  if (auto* m = std::get_if<BcOnly>(&config)) {
    j["threshold"] = m->threshold;
    j["window"] = m->window.str();
  } else if (auto* m = std::get_if<LsOnly>(&config)) {
    j["granularity"] = std::string(to_string(m->granularity));
  } else if (auto* m = std::get_if<LlmOnly>(&config)) {
    j["prompt"] = prompt_json(m->prompt);
  } else if (auto* m = std::get_if<LlmEnriched>(&config)) {
    j["window"] = m->window.str();
    j["ls_granularity"] = std::string(to_string(m->ls_granularity));
    j["prompt"] = prompt_json(m->prompt);
  } else if (auto* m = std::get_if<Lead>(&config)) {
    j["threshold"] = m->threshold;
    j["window"] = m->window.str();
    j["ls_granularity"] = std::string(to_string(m->ls_granularity));
    j["prompt"] = prompt_json(m->prompt);
  }
  return j;
}

std::string calls_csv(const std::vector<CallRecord>& calls) {
  std::string out = "record_id,auid,attempts,latency_ms,failed\n";
  for (const auto& c : calls) {
    double total = 0.0;
    for (double ms : c.latency_ms) total += ms;
    out += csv::join_row({c.record_id, c.auid, std::to_string(c.attempts),
                          fmt::format("{:.3f}", total), c.failed ? "1" : "0"}) +
           "\n";
  }
  return out;
}

bool all_labeled(const std::vector<CandidatePair>& pairs) {
  if (pairs.empty()) return false;
  for (const auto& p : pairs)
    if (!p.gold) return false;
  return true;
}

void write_report(const fs::path& out, const std::vector<MetricsReport>& reports) {
  const auto table = format_table(reports);
  write_text_file(out / "report.txt", table.text);
  write_text_file(out / "report.csv", table.csv);
  std::cout << table.text;
}

// Reads `--config FILE` (or --config=FILE) ahead of parsing.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::string config_value(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ",";
      joined += config_value(e);
    }
    return joined;
  }
  return v.dump();
}

// Config values become option defaults, so explicit flags still win.
void apply_config(CLI::App& app, const fs::path& path) {
  auto j = nlohmann::json::parse(csv::read_text(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw UsageError("config file " + path.string() + " is not a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool used = false;
    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
      if (auto* opt = sub->get_option_no_throw("--" + key)) {
        opt->default_val(config_value(value));
        used = true;
      }
    }
    if (!used) throw UsageError("config key '" + key + "' matches no option");
  }
}

void setup_logging(const std::string& level) {
  auto logger = spdlog::get("lead");
  if (!logger) {
    logger = spdlog::stderr_color_mt("lead");
    logger->set_pattern("[%l] %v");
  }
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(level));
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Endpoint: return kEndpoint;
    case ErrorKind::Param: return kUsage;
    default: return kData;
  }
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Author name disambiguation with bibliographic coupling, label spreading and an LLM judge",
               "lead"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string config_path, log_level = "info";
  app.add_option("--config", config_path, "JSON file with option values (flags win)");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  unsigned jobs = default_jobs();
  std::string out_dir = "out";

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Load inputs and report integrity");
  DataOptions validate_data;
  validate_data.add(validate_cmd);

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "Build and cache field citation corpora");
  DataOptions corpus_data;
  corpus_data.add(corpus_cmd);
  std::string corpus_window = "2016:2023", corpus_cache;
  corpus_cmd->add_option("--window", corpus_window, "Citation window start:end, inclusive");
  corpus_cmd->add_option("--cache", corpus_cache, "Cache directory (default: <out>/cache)");
  corpus_cmd->add_option("--out", out_dir, "Output directory");
  corpus_cmd->add_option("--jobs", jobs, "Worker threads");

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Build the co-author graph and spread seed labels");
  DataOptions graph_data;
  graph_data.add(graph_cmd);
  SpreadOptions graph_spread;
  graph_spread.add(graph_cmd);
  std::string graph_granularity = "SA";
  graph_cmd->add_option("--granularity", graph_granularity, "SA, RFG, RF or AD");
  graph_cmd->add_option("--out", out_dir, "Output directory");

  // run
  auto* run_cmd = app.add_subcommand("run", "Decide candidate pairs with one method");
  DataOptions run_data;
  run_data.add(run_cmd);
  SpreadOptions run_spread;
  run_spread.add(run_cmd);
  std::string method = "lead", run_window = "2016:2023", granularity = "SA",
              ls_granularity = "RF", metadata = "keywords_titles", pairs_file, mock_file,
              run_cache;
  double threshold = 0.15;
  bool with_bc = false, with_ls = false, all_papers = false;
  std::size_t sample_k = 10;
  std::uint64_t sample_seed = 0;
  EndpointConfig endpoint;
  int timeout_s = static_cast<int>(endpoint.timeout.count());
  run_cmd->add_option("--method", method, "bc, ls, llm, llm_enriched or lead")
      ->check(CLI::IsMember({"bc", "ls", "llm", "llm_enriched", "lead"}));
  auto* threshold_opt =
      run_cmd->add_option("--threshold", threshold, "Overlap threshold (bc, lead)");
  run_cmd->add_option("--window", run_window, "Citation window start:end, inclusive");
  auto* granularity_opt =
      run_cmd->add_option("--granularity", granularity, "Label spreading level for ls: SA, RFG, RF or AD");
  run_cmd->add_option("--ls-granularity", ls_granularity, "Label spreading level for prompt evidence");
  auto* with_bc_opt = run_cmd->add_flag("--with-bc", with_bc, "Add citation overlap evidence to the prompt (lead: both when neither is given)");
  auto* with_ls_opt = run_cmd->add_flag("--with-ls", with_ls, "Add label spreading evidence to the prompt");
  run_cmd->add_option("--metadata", metadata, "keywords, keywords_titles or keywords_titles_abstracts")
      ->check(CLI::IsMember({"keywords", "keywords_titles", "keywords_titles_abstracts"}));
  run_cmd->add_option("--sample-k", sample_k, "Papers shown per candidate");
  run_cmd->add_option("--sample-seed", sample_seed, "Paper sampling seed");
  run_cmd->add_flag("--all-papers", all_papers, "Show every paper instead of sampling");
  run_cmd->add_option("--pairs", pairs_file, "Pair CSV (record_id,auid[,correct]); default: gold");
  auto* mock_opt = run_cmd->add_option("--mock", mock_file, "Replay fixture JSONL instead of an endpoint");
  auto* endpoint_opt = run_cmd->add_option("--endpoint", endpoint.base_url, "LLM server base URL");
  run_cmd->add_option("--endpoint-path", endpoint.path, "Chat completions path");
  run_cmd->add_option("--model", endpoint.model_name, "Model name sent to the endpoint");
  run_cmd->add_option("--top-k", endpoint.decode.top_k, "Decoding top_k");
  run_cmd->add_option("--max-length", endpoint.decode.max_length, "Generation cap (max_tokens)");
  run_cmd->add_option("--timeout", timeout_s, "Request timeout in seconds");
  run_cmd->add_option("--max-retries", endpoint.max_retries, "Attempts per pair");
  run_cmd->add_option("--max-concurrent", endpoint.max_concurrent, "Concurrent LLM requests");
  run_cmd->add_option("--api-key-env", endpoint.api_key_env, "Environment variable holding the API key");
  run_cmd->add_option("--cache", run_cache, "Corpus cache directory (off when empty)");
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--jobs", jobs, "Worker threads");
  mock_opt->excludes(endpoint_opt);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Bibliographic coupling over thresholds x windows");
  DataOptions sweep_data;
  sweep_data.add(sweep_cmd);
  std::vector<double> thresholds = default_sweep_thresholds();
  std::vector<std::string> windows;
  for (const auto& w : default_sweep_windows()) windows.push_back(w.str());
  std::string sweep_cache;
  sweep_cmd->add_option("--thresholds", thresholds, "Thresholds, comma separated")->delimiter(',');
  sweep_cmd->add_option("--windows", windows, "Windows start:end, comma separated")->delimiter(',');
  sweep_cmd->add_option("--cache", sweep_cache, "Corpus cache directory (off when empty)");
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score decisions against the gold standard");
  DataOptions eval_data;
  eval_data.add(eval_cmd);
  std::string eval_decisions, eval_name;
  eval_cmd->add_option("--decisions", eval_decisions, "decisions.jsonl to score")->required();
  eval_cmd->add_option("--name", eval_name, "Row label (default: method of the first decision)");
  eval_cmd->add_option("--out", out_dir, "Output directory");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth::SynthParams sp;
  synth_cmd->add_option("--seed", sp.rng_seed, "RNG seed");
  synth_cmd->add_option("--n-fields", sp.n_fields, "Recruitment fields");
  synth_cmd->add_option("--seeds-per-field", sp.seeds_per_field, "Seed authors per field");
  synth_cmd->add_option("--candidates-per-field", sp.candidates_per_field, "Registry records per field");
  synth_cmd->add_option("--homonym-rate", sp.homonym_rate, "Chance a record also gets a homonym");
  synth_cmd->add_option("--papers-min", sp.papers_per_author.lo, "Papers per author, lower bound");
  synth_cmd->add_option("--papers-max", sp.papers_per_author.hi, "Papers per author, upper bound");
  synth_cmd->add_option("--refs-min", sp.refs_per_paper.lo, "References per paper, lower bound");
  synth_cmd->add_option("--refs-max", sp.refs_per_paper.hi, "References per paper, upper bound");
  synth_cmd->add_option("--pool-size", sp.field_pool_size, "Reference pool per field");
  synth_cmd->add_option("--noise", sp.cross_field_ref_noise, "Cross-field reference noise");
  synth_cmd->add_option("--coauthors-min", sp.coauthor_degree.lo, "Co-authors per paper, lower bound");
  synth_cmd->add_option("--coauthors-max", sp.coauthor_degree.hi, "Co-authors per paper, upper bound");
  synth_cmd->add_option("--out", out_dir, "Output directory");

  // report
  auto* report_cmd = app.add_subcommand("report", "Table of several decision sets");
  DataOptions report_data;
  report_data.add(report_cmd);
  std::vector<std::string> inputs;
  report_cmd->add_option("--input", inputs, "NAME=decisions.jsonl, repeatable, in row order")->required();
  report_cmd->add_option("--out", out_dir, "Output directory");

  std::vector<std::string> argv_store{"lead"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    if (auto cfg = find_config(args)) apply_config(app, *cfg);
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }

  setup_logging(log_level);
  jobs = std::max(1u, jobs);

  try {
    if (*validate_cmd) {
      const auto data = validate_data.load();
      const auto taxonomy = validate_data.load_taxonomy();
      std::size_t pos = 0, neg = 0;
      for (const auto& g : data.gold()) (g.gold.value_or(false) ? pos : neg)++;
      std::cout << fmt::format(
          "registry records: {}\nprofiles: {}\nseed alignments: {} ({} fields)\n"
          "gold pairs: {} ({} positive, {} negative)\n",
          data.records().size(), data.profiles().size(), data.seeds().size(),
          data.seed_fields().size(), data.gold().size(), pos, neg);
      if (taxonomy) std::cout << fmt::format("taxonomy fields: {}\n", taxonomy->rf_labels().size());
      std::cout << "ok\n";
      return kOk;
    }

    if (*corpus_cmd) {
      const auto data = corpus_data.load();
      const auto window = window_of(corpus_window);
      const auto out = ensure_dir(out_dir);
      CorpusCache cache(corpus_cache.empty() ? out / "cache" : fs::path(corpus_cache));
      std::string summary = "rf,window,seed_hash,n_seed_authors,n_papers,n_references\n";
      for (const auto& rf : data.seed_fields()) {
        const auto seeds = data.seed_profiles(rf);
        std::vector<std::string> ids;
        for (const auto* p : seeds) ids.push_back(p->auid);
        auto corpus = cache.get(rf, window, seed_set_hash(ids));
        if (!corpus) {
          corpus = build_field_corpus(seeds, rf, window, std::nullopt, jobs);
          cache.put(*corpus);
        }
        summary += csv::join_row({rf.str(), window.str(), corpus->seed_hash,
                                  std::to_string(corpus->n_seed_authors),
                                  std::to_string(corpus->n_papers),
                                  std::to_string(corpus->references.size())}) +
                   "\n";
      }
      write_text_file(out / "corpora.csv", summary);
      std::cout << summary;
      return kOk;
    }

    if (*graph_cmd) {
      const auto data = graph_data.load();
      const auto level = granularity_of(graph_granularity);
      const auto out = ensure_dir(out_dir);
      const auto model =
          LabelModel::build(data, level, graph_spread.params(), graph_spread.edge_weighting());
      write_text_file(out / "graph_edges.csv", model.graph().edge_list_csv());
      std::string labels = "auid,class_id,confidence,tie\n";
      for (const auto& auid : model.graph().nodes()) {
        const auto p = model.predict(auid);
        labels += csv::join_row({auid, p.class_id.value_or(""), fmt::format("{:.6f}", p.confidence),
                                 p.tie ? "1" : "0"}) +
                  "\n";
      }
      write_text_file(out / "soft_labels.csv", labels);
      std::cout << fmt::format("nodes: {}\nedges: {}\nclasses: {}\niterations: {}\nconverged: {}\n",
                               model.graph().size(), model.graph().weights().nonZeros() / 2,
                               model.seeds().classes.size(), model.soft().iterations_used,
                               model.soft().converged ? "yes" : "no");
      return kOk;
    }

    if (*run_cmd) {
      const bool prompt_method = method == "llm_enriched" || method == "lead";
      if ((with_bc_opt->count() || with_ls_opt->count()) && !prompt_method)
        throw UsageError("--with-bc/--with-ls apply only to llm_enriched and lead");
      if (threshold_opt->count() && method != "bc" && method != "lead")
        throw UsageError("--threshold applies only to bc and lead");
      if (granularity_opt->count() && method != "ls")
        throw UsageError("--granularity applies only to ls; use --ls-granularity for evidence");
      if (method == "llm_enriched" && !with_bc && !with_ls)
        throw UsageError("llm_enriched needs --with-bc and/or --with-ls");

      PromptConfig prompt;
      prompt.mode = *parse_metadata_mode(metadata);
      prompt.sample = all_papers ? std::nullopt : std::optional<PaperSample>(PaperSample{sample_k, sample_seed});
      prompt.enrichment = Enrichment{with_bc, with_ls};
      if (method == "lead" && !with_bc && !with_ls) prompt.enrichment = Enrichment{true, true};
      const auto window = window_of(run_window);
      MethodConfig config;
      if (method == "bc") config = BcOnly{threshold, window};
      else if (method == "ls") config = LsOnly{granularity_of(granularity)};
      else if (method == "llm") config = LlmOnly{prompt};
      else if (method == "llm_enriched") config = LlmEnriched{prompt, window, granularity_of(ls_granularity)};
      else config = Lead{threshold, window, prompt, granularity_of(ls_granularity)};
      try {
        validate(config);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }

      const auto data = run_data.load();
      const auto taxonomy = run_data.load_taxonomy();
      std::vector<CandidatePair> pairs;
      if (!pairs_file.empty()) pairs = data.resolve(load_pairs(pairs_file));
      else if (!data.gold().empty()) pairs = data.gold();
      else raise(ErrorKind::Prerequisite, "no pairs: give --pairs or a gold file");

      endpoint.timeout = std::chrono::seconds(timeout_s);
      std::unique_ptr<ChatClient> client;
      if (!mock_file.empty()) client = ReplayMockClient::from_file(mock_file);
      else if (method != "bc" && method != "ls") client = std::make_unique<HttpChatClient>(endpoint);

      RunOptions options;
      options.jobs = jobs;
      if (!run_cache.empty()) options.cache_dir = fs::path(run_cache);
      options.spread = run_spread.params();
      options.weighting = run_spread.edge_weighting();
      Engine engine(data, taxonomy ? &*taxonomy : nullptr, client.get(), endpoint, options);
      const auto result = engine.run(pairs, config);

      const auto out = ensure_dir(out_dir);
      write_decisions(out / "decisions.jsonl", result.decisions);
      if (client) write_text_file(out / "calls.csv", calls_csv(result.calls));

      ojson manifest;
      manifest["tool"] = "lead";
      manifest["command"] = "run";
      manifest["config"] = method_json(config);
      manifest["data"] = run_data.to_json();
      manifest["pairs"] = pairs_file.empty() ? ojson("gold") : ojson(pairs_file);
      if (client) {
        manifest["llm"] = {{"client", client->identity()},
                           {"model", endpoint.model_name},
                           {"top_k", endpoint.decode.top_k},
                           {"max_length", endpoint.decode.max_length},
                           {"max_retries", endpoint.max_retries}};
      }
      manifest["spread"] = {{"alpha", run_spread.alpha},
                            {"tol", run_spread.tol},
                            {"max_iter", run_spread.max_iter},
                            {"weighting", run_spread.weighting}};
      manifest["jobs"] = jobs;
      manifest["results"] = {{"pairs", pairs.size()},
                             {"llm_calls", result.llm_calls},
                             {"llm_attempts", result.llm_attempts},
                             {"escalated_pairs", result.escalated_pairs},
                             {"llm_failures", result.llm_failures},
                             {"endpoint_failures", result.endpoint_failures},
                             {"elapsed_seconds", result.elapsed_seconds},
                             {"artifact_seconds", result.artifact_seconds}};
      write_text_file(out / "manifest.json", manifest.dump(2) + "\n");

      if (all_labeled(pairs))
        write_report(out, {metrics(confusion(result.decisions, pairs), std::string(method_name(config)),
                                   result.elapsed_seconds)});
      if (result.endpoint_failures > 0) {
        spdlog::error("{} pairs fell back to 'no' after endpoint failures", result.endpoint_failures);
        return kEndpoint;
      }
      return kOk;
    }

    if (*sweep_cmd) {
      std::vector<TimeWindow> parsed;
      for (const auto& w : windows) parsed.push_back(window_of(w));
      for (double t : thresholds)
        if (!(t > 0.0 && t < 1.0)) throw UsageError(fmt::format("threshold {} outside (0, 1)", t));
      const auto data = sweep_data.load();
      if (data.gold().empty()) raise(ErrorKind::Prerequisite, "sweep needs a gold file");
      RunOptions options;
      options.jobs = jobs;
      if (!sweep_cache.empty()) options.cache_dir = fs::path(sweep_cache);
      Engine engine(data, nullptr, nullptr, EndpointConfig{}, options);
      std::vector<SweepCell> cells;
      for (double t : thresholds) {
        for (const auto& w : parsed) {
          auto r = engine.run(data.gold(), BcOnly{t, w});
          cells.push_back(SweepCell{t, w, metrics(confusion(r.decisions, data.gold()), "bc", r.elapsed_seconds)});
        }
      }
      const auto out = ensure_dir(out_dir);
      write_text_file(out / "sweep.csv", sweep_csv(cells));
      const auto grid = sweep_grid(cells);
      write_text_file(out / "sweep.txt", grid);
      std::cout << grid;
      return kOk;
    }

    if (*eval_cmd) {
      const auto data = eval_data.load();
      if (data.gold().empty()) raise(ErrorKind::Prerequisite, "eval needs a gold file");
      const auto decisions = read_decisions(eval_decisions);
      std::string name = eval_name;
      if (name.empty() && !decisions.empty()) name = std::string(to_string(decisions.front().method));
      const auto report =
          metrics(confusion(decisions, data.gold()), name, manifest_elapsed(eval_decisions));
      const auto out = ensure_dir(out_dir);
      write_report(out, {report});
      if (report.matrix.abstain_count)
        spdlog::info("{} abstentions counted as 'no'", report.matrix.abstain_count);
      return kOk;
    }

    if (*synth_cmd) {
      try {
        synth::validate(sp);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      const auto files = synth::generate(sp);
      synth::write_dataset(files, ensure_dir(out_dir));
      spdlog::info("synthetic dataset written to {}", out_dir);
      return kOk;
    }

    if (*report_cmd) {
      const auto data = report_data.load();
      if (data.gold().empty()) raise(ErrorKind::Prerequisite, "report needs a gold file");
      std::vector<MetricsReport> reports;
      for (const auto& in : inputs) {
        const auto eq = in.find('=');
        if (eq == std::string::npos || eq == 0)
          throw UsageError("--input expects NAME=decisions.jsonl, got '" + in + "'");
        const fs::path path = in.substr(eq + 1);
        reports.push_back(metrics(confusion(read_decisions(path), data.gold()), in.substr(0, eq),
                                  manifest_elapsed(path)));
      }
      write_report(ensure_dir(out_dir), reports);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return kData;
  }
  return kUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace lead::cli
