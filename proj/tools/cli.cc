// Copyright 2026 The FieldSense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "fieldsense/dataset.h"
#include "fieldsense/ensemble.h"
#include "fieldsense/field_extractor.h"
#include "fieldsense/forest.h"
#include "fieldsense/io.h"
#include "fieldsense/pipeline.h"
#include "fieldsense/rules.h"
#include "fieldsense/service.h"
#include "fieldsense/synthetic.h"
#include "fieldsense/text_pipeline.h"
#include "fieldsense/url.h"
#include "json.hpp"

namespace fieldsense::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bad flags or inputs the user must fix; exits with kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Report { kTable, kJson };

void add_report_option(CLI::App* sub, Report* report) {
  static const std::map<std::string, Report> kNames = {{"table", Report::kTable},
                                                       {"json", Report::kJson}};
  sub->add_option("--report", *report, "Output format: table or json")
      ->transform(CLI::CheckedTransformer(kNames, CLI::ignore_case));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  return read_file(path);
}

void write_output(const std::string& path, std::string_view contents, std::ostream& out) {
  if (path == "-") {
    out << contents;
  } else {
    write_file(path, contents);
  }
}

std::vector<DatasetRow> load_dataset(const std::string& path) {
  return load_csv(read_input(path));
}

StopLists stop_lists_from(const std::string& words_path, const std::string& url_words_path) {
  if (words_path.empty() && url_words_path.empty()) return StopLists::defaults();
  const std::string words =
      words_path.empty() ? std::string(StopLists::default_words()) : read_file(words_path);
  const std::string url_words = url_words_path.empty()
                                    ? std::string(StopLists::default_url_words())
                                    : read_file(url_words_path);
  return StopLists::from_text(words, url_words);
}

std::optional<std::string> mode_flag(const std::string& mode) {
  try {
    return parse_training_mode(mode);
  } catch (const Error& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
}

// --- extract -----------------------------------------------------------------

struct ExtractOptions {
  std::string html;
  std::string url_map;
  std::string out = "-";
  Report report = Report::kTable;
};

// filename<TAB>url per line; '#' starts a comment.
std::map<std::string, std::string> load_url_map(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw UsageError(std::string("--url-map: ") + e.what());
  }
  std::map<std::string, std::string> map;
  std::istringstream lines(text);
  std::string line;
  for (std::size_t line_no = 1; std::getline(lines, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    const std::string where = path + ":" + std::to_string(line_no);
    if (tab == std::string::npos || tab == 0) {
      throw UsageError(where + ": expected filename<TAB>url");
    }
    std::string url = line.substr(tab + 1);
    if (!parse_url(url)) throw UsageError(where + ": malformed URL '" + url + "'");
    map[line.substr(0, tab)] = std::move(url);
  }
  return map;
}

int run_extract(const ExtractOptions& o, std::ostream& out, std::ostream& err) {
  const std::map<std::string, std::string> url_map = load_url_map(o.url_map);
  std::vector<fs::path> files;
  if (fs::is_directory(o.html)) {
    for (const auto& entry : fs::directory_iterator(o.html)) {
      const std::string ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".html" || ext == ".htm")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(o.html)) {
    files.emplace_back(o.html);
  } else {
    throw UsageError("--html: no such file or directory '" + o.html + "'");
  }

  std::vector<DatasetRow> rows;
  std::vector<std::string> errors;
  for (const fs::path& file : files) {
    const std::string key = file.filename().string();
    auto it = url_map.find(key);
    if (it == url_map.end()) {
      errors.push_back(key + ": no entry in the URL map");
      continue;
    }
    for (FieldFeatures& f : parse_document(read_file(file.string()), it->second)) {
      rows.push_back(DatasetRow{std::move(f), ""});
    }
  }
  write_output(o.out, write_csv(rows), out);

  // Keep stdout clean when it carries the CSV.
  std::ostream& summary = o.out == "-" ? err : out;
  if (o.report == Report::kJson) {
    summary << json{{"files", files.size()}, {"fields", rows.size()}, {"errors", errors}}.dump()
            << "\n";
  } else {
    summary << "extracted " << rows.size() << " fields from " << files.size() << " files\n";
  }
  for (const std::string& e : errors) err << "error: " << e << "\n";
  return errors.empty() ? kExitOk : kExitRuntime;
}

// --- train -------------------------------------------------------------------

struct TrainOptions {
  std::string data;
  std::string mode = "multiclass";
  ForestParams params;
  int min_frequency = 1;
  double train_fraction = 0.7;
  bool no_stratify = false;
  std::string stopwords;
  std::string url_stopwords;
  std::string model_version;
  std::string out;
  Report report = Report::kTable;
};

int run_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  TrainingOptions options;
  options.binary_target = mode_flag(o.mode);
  options.params = o.params;
  try {
    options.params.validate();
  } catch (const InvalidParamsError& e) {
    throw UsageError(e.what());
  }
  options.min_frequency = o.min_frequency;
  options.train_fraction = o.train_fraction;
  options.stratified = !o.no_stratify;
  options.stop_lists = stop_lists_from(o.stopwords, o.url_stopwords);
  options.model_version = o.model_version;

  const std::vector<DatasetRow> rows =
      prepare_rows(load_dataset(o.data), options.binary_target);
  const SplitResult parts =
      split(rows, options.train_fraction, options.params.seed, options.stratified);
  for (const std::string& w : parts.warnings) err << "warning: " << w << "\n";

  const auto started = std::chrono::steady_clock::now();
  const ForestModel model = fit(parts.train, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_file(o.out, save(model));
  spdlog::info("event=trained trees={} width={} rows={} seconds={:.3f}", model.trees.size(),
               model.vocabulary.total_width(), parts.train.size(), seconds);

  std::optional<Metrics> holdout;
  if (!parts.test.empty()) holdout = evaluate(forest_predictor(model), parts.test);

  if (o.report == Report::kJson) {
    json report{{"model", o.out},
                {"model_version", model.model_version},
                {"mode", options.binary_target ? "binary:" + *options.binary_target
                                               : std::string(mode_name(model.mode))},
                {"class_names", model.class_names},
                {"vocabulary_width", model.vocabulary.total_width()},
                {"train_rows", parts.train.size()},
                {"test_rows", parts.test.size()},
                {"holdout", holdout ? to_json(*holdout) : json(nullptr)}};
    out << report.dump() << "\n";
  } else {
    out << "model " << o.out << " (" << model.model_version << ")\n"
        << "train rows " << parts.train.size() << ", test rows " << parts.test.size()
        << ", vocabulary width " << model.vocabulary.total_width() << "\n";
    if (holdout) {
      out << to_table(*holdout);
    } else {
      out << "no holdout rows; metrics skipped\n";
    }
  }
  return kExitOk;
}

// --- eval --------------------------------------------------------------------

struct EvalOptions {
  std::string data;
  std::string model;
  std::string rules;
  std::string lookup;
  bool ensemble = false;
  bool full = false;
  double train_fraction = 0.7;
  std::optional<std::uint64_t> seed;
  bool no_stratify = false;
  double threshold = 0.5;
  Report report = Report::kTable;
};

int run_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  const ForestModel model = load(read_file(o.model));
  std::optional<std::string> binary_target;
  if (model.mode == ForestMode::kBinary) binary_target = model.class_names.front();
  const std::vector<DatasetRow> rows = prepare_rows(load_dataset(o.data), binary_target);

  // The training seed reproduces the training holdout by default.
  std::vector<DatasetRow> test;
  if (o.full) {
    test = rows;
  } else {
    SplitResult parts =
        split(rows, o.train_fraction, o.seed.value_or(model.params.seed), !o.no_stratify);
    for (const std::string& w : parts.warnings) err << "warning: " << w << "\n";
    test = std::move(parts.test);
  }

  std::optional<RuleSet> rules;
  if (!o.rules.empty()) {
    rules = RuleSet::load(read_file(o.rules));
  } else if (o.ensemble) {
    rules = RuleSet::defaults();
  }
  std::optional<LookupTable> lookup;
  if (!o.lookup.empty()) lookup = LookupTable::load(read_file(o.lookup));

  EnsemblePolicy policy;
  policy.forest_confidence_threshold = o.threshold;
  try {
    policy.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("--threshold: ") + e.what());
  }

  std::vector<std::pair<std::string, Metrics>> results;
  results.emplace_back("forest", evaluate(forest_predictor(model), test));
  if (rules) {
    results.emplace_back("rules", evaluate(rules_predictor(*rules, model, policy.fallback_class),
                                           test));
  }
  if (o.ensemble) {
    results.emplace_back(
        "ensemble",
        evaluate(ensemble_predictor(lookup ? &*lookup : nullptr, &*rules, model, policy), test));
  }

  if (o.report == Report::kJson) {
    json report{{"model_version", model.model_version}, {"test_rows", test.size()}};
    for (const auto& [name, metrics] : results) report[name] = to_json(metrics);
    out << report.dump() << "\n";
  } else {
    out << "model " << model.model_version << ", test rows " << test.size() << "\n";
    for (const auto& [name, metrics] : results) out << "\n[" << name << "]\n" << to_table(metrics);
    out << "\n" << std::left << std::setw(10) << "source" << std::right << std::setw(12)
        << "micro_acc" << std::setw(12) << "macro_prec" << "\n";
    for (const auto& [name, metrics] : results) {
      out << std::left << std::setw(10) << name << std::right << std::fixed
          << std::setprecision(4) << std::setw(12) << metrics.micro_accuracy << std::setw(12)
          << metrics.macro_precision << "\n";
    }
  }
  return kExitOk;
}

// --- predict -----------------------------------------------------------------

struct PredictOptions {
  SnapshotSources sources;
  std::string fields = "-";
  Report report = Report::kJson;
};

int run_predict(const PredictOptions& o, std::ostream& out, std::ostream&) {
  const std::shared_ptr<const Snapshot> snap = load_snapshot(o.sources);
  std::vector<FieldFeatures> fields;
  try {
    fields = parse_predict_request(read_input(o.fields));
  } catch (const RequestError& e) {
    throw Error("--fields" + e.path() + ": " + e.what());
  }

  json predictions = json::array();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const EnsemblePrediction p = ensemble_predict(fields[i], snap->lookup.get(),
                                                  snap->rules.get(), snap->model.get(),
                                                  snap->policy);
    predictions.push_back(prediction_to_json(i, p, snap->model.get()));
  }
  if (o.report == Report::kJson) {
    out << json{{"model_version", snap->model->model_version},
                {"predictions", predictions}}
               .dump()
        << "\n";
  } else {
    out << std::left << std::setw(6) << "index" << std::setw(16) << "class" << std::setw(12)
        << "confidence" << "source\n";
    for (const json& p : predictions) {
      std::string source = p["source"].get<std::string>();
      if (p.contains("rule_id")) source += " (" + p["rule_id"].get<std::string>() + ")";
      out << std::left << std::setw(6) << p["field_index"].get<std::size_t>() << std::setw(16)
          << p["class_name"].get<std::string>() << std::setw(12) << std::fixed
          << std::setprecision(4) << p["confidence"].get<double>() << source << "\n";
    }
  }
  return kExitOk;
}

// --- serve -------------------------------------------------------------------

struct ServeOptions {
  SnapshotSources sources;
  std::string host = "0.0.0.0";
  int port = 8080;
  int threads = 8;
  bool log_requests = false;
};

int run_serve(const ServeOptions& o, std::ostream&, std::ostream& err) {
  // Block the signals before any thread starts so only the waiter sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGHUP);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  PredictionService service({.log_requests = o.log_requests, .threads = o.threads});
  try {
    service.swap(load_snapshot(o.sources));
  } catch (const Error& e) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    throw;
  }
  const int port = service.bind(o.host, o.port);
  if (port < 0) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    err << "error: cannot bind " << o.host << ":" << o.port << "\n";
    return kExitRuntime;
  }
  spdlog::info("event=listening host={} port={} model_version={}", o.host, port,
               service.snapshot()->model->model_version);

  std::thread waiter([&] {
    for (;;) {
      int sig = 0;
      if (sigwait(&signals, &sig) != 0) continue;
      if (sig != SIGHUP) break;
      try {
        service.swap(load_snapshot(o.sources));
        spdlog::info("event=reload status=ok model_version={}",
                     service.snapshot()->model->model_version);
      } catch (const std::exception& e) {
        // Keep serving the previous snapshot.
        spdlog::error("event=reload status=failed error=\"{}\"", e.what());
      }
    }
    service.stop();
  });
  const bool served = service.serve();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  spdlog::info("event=stopped");
  return served ? kExitOk : kExitRuntime;
}

// --- gen-corpus --------------------------------------------------------------

struct GenCorpusOptions {
  std::size_t n = 2000;
  double noise = 0.1;
  std::uint64_t seed = 0;
  std::string profile;
  std::optional<std::size_t> classes;
  std::string out = "-";
};

int run_gen_corpus(const GenCorpusOptions& o, std::ostream& out, std::ostream&) {
  ClassProfile profile = o.profile.empty() ? ClassProfile::defaults()
                                           : ClassProfile::from_json(read_file(o.profile));
  if (o.classes) {
    if (*o.classes == 0 || *o.classes > profile.classes.size()) {
      throw UsageError("--classes must be between 1 and " +
                       std::to_string(profile.classes.size()));
    }
    profile.classes.resize(*o.classes);
  }
  write_output(o.out, write_csv(gen_synthetic(profile, o.n, o.noise, o.seed)), out);
  return kExitOk;
}

// --- rules-check -------------------------------------------------------------

struct RulesCheckOptions {
  std::string rules;
  std::string probe;
  Report report = Report::kTable;
};

struct RuleUsage {
  std::string rule_id;
  std::size_t matched = 0;
  std::size_t decided = 0;
};

int run_rules_check(const RulesCheckOptions& o, std::ostream& out, std::ostream&) {
  std::vector<json> errors;
  std::optional<RuleSet> rules;
  if (o.rules.empty()) {
    rules = RuleSet::defaults();
  } else {
    const std::string text = read_file(o.rules);
    // Compile rules one at a time so every bad pattern gets reported.
    json entries;
    try {
      entries = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(std::string("rules file is not valid JSON: ") + e.what());
    }
    if (entries.is_array()) {
      for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
          RuleSet::load(json::array({entries[i]}).dump());
        } catch (const RuleParseError& e) {
          errors.push_back({{"index", i},
                            {"rule_id", e.rule_id()},
                            {"position", e.position()},
                            {"error", e.what()}});
        }
      }
    }
    if (errors.empty()) {
      try {
        rules = RuleSet::load(text);
      } catch (const RuleParseError& e) {
        errors.push_back(
            {{"rule_id", e.rule_id()}, {"position", e.position()}, {"error", e.what()}});
      }
    }
  }

  std::vector<RuleUsage> usage;
  std::size_t probe_rows = 0;
  if (rules) {
    const std::vector<DatasetRow> probe =
        o.probe.empty() ? gen_synthetic(ClassProfile::defaults(), 2000, 0.0, 0)
                        : load_csv(read_file(o.probe), {.allow_unlabeled = true});
    probe_rows = probe.size();
    for (const Rule& r : rules->rules()) usage.push_back({r.rule_id});
    for (const DatasetRow& row : probe) {
      for (std::size_t i = 0; i < usage.size(); ++i) {
        if (rule_matches(rules->rules()[i], row.features)) ++usage[i].matched;
      }
      if (auto first = rules->first_match(row.features)) ++usage[*first].decided;
    }
  }

  std::vector<std::string> shadowed;
  std::vector<std::string> unexercised;
  for (const RuleUsage& u : usage) {
    if (u.matched == 0) {
      unexercised.push_back(u.rule_id);
    } else if (u.decided == 0) {
      shadowed.push_back(u.rule_id);
    }
  }

  if (o.report == Report::kJson) {
    json per_rule = json::array();
    for (const RuleUsage& u : usage) {
      per_rule.push_back({{"rule_id", u.rule_id}, {"matched", u.matched}, {"decided", u.decided}});
    }
    out << json{{"errors", errors},
                {"rules", per_rule},
                {"probe_rows", probe_rows},
                {"shadowed", shadowed},
                {"unexercised", unexercised}}
               .dump()
        << "\n";
  } else {
    for (const json& e : errors) {
      out << "error: rule " << e["rule_id"].get<std::string>() << ": "
          << e["error"].get<std::string>() << "\n";
    }
    if (rules) {
      out << std::left << std::setw(16) << "rule" << std::right << std::setw(10) << "matched"
          << std::setw(10) << "decided" << "\n";
      for (const RuleUsage& u : usage) {
        out << std::left << std::setw(16) << u.rule_id << std::right << std::setw(10)
            << u.matched << std::setw(10) << u.decided << "\n";
      }
      for (const std::string& id : shadowed) out << "warning: rule " << id << " is shadowed\n";
      for (const std::string& id : unexercised) {
        out << "warning: rule " << id << " matched nothing in the probe corpus\n";
      }
    }
    out << errors.size() << " errors, " << shadowed.size() << " shadowed, "
        << unexercised.size() << " unexercised over " << probe_rows << " probe rows\n";
  }
  return errors.empty() ? kExitOk : kExitRuntime;
}

// --- lookup-import -----------------------------------------------------------

struct LookupImportOptions {
  std::string data;
  std::string lookup;
  std::string out;
  Report report = Report::kTable;
};

int run_lookup_import(const LookupImportOptions& o, std::ostream& out, std::ostream&) {
  const std::vector<DatasetRow> rows = load_dataset(o.data);
  if (has_binary_targets(rows)) {
    throw Error("lookup entries need class names, not 0/1 flags");
  }
  LookupTable table = o.lookup.empty() ? LookupTable() : LookupTable::load(read_file(o.lookup));
  const std::size_t before = table.size();
  for (const DatasetRow& row : rows) {
    FieldSignature sig = signature(row.features);
    if (sig.origin.empty()) continue;
    table.put(sig, row.target);
  }
  write_file(o.out, table.save());
  if (o.report == Report::kJson) {
    out << json{{"rows", rows.size()}, {"entries", table.size()}, {"added", table.size() - before}}
               .dump()
        << "\n";
  } else {
    out << "imported " << rows.size() << " rows; table has " << table.size() << " entries ("
        << table.size() - before << " new)\n";
  }
  return kExitOk;
}

// --- wiring ------------------------------------------------------------------

void add_snapshot_options(CLI::App* sub, SnapshotSources* s, bool env) {
  auto* model = sub->add_option("--model", s->model_path, "Model file")->required();
  auto* rules = sub->add_option("--rules", s->rules_path, "Rules file (default: shipped rules)");
  auto* lookup = sub->add_option("--lookup", s->lookup_path, "Lookup table file");
  auto* threshold = sub->add_option("--threshold", s->threshold,
                                    "Forest confidence needed to decide")
                        ->check(CLI::Range(0.0, 1.0))
                        ->capture_default_str();
  if (env) {
    model->envname("FIELDSENSE_MODEL");
    rules->envname("FIELDSENSE_RULES");
    lookup->envname("FIELDSENSE_LOOKUP");
    threshold->envname("FIELDSENSE_THRESHOLD");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FieldSense: form-field label prediction", "fieldsense"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with flag values; flags win");

  ExtractOptions extract;
  CLI::App* extract_cmd = app.add_subcommand("extract", "Extract form fields from HTML to CSV");
  extract_cmd->add_option("--html", extract.html, "HTML file or directory")->required();
  extract_cmd->add_option("--url-map", extract.url_map, "filename<TAB>url per line")
      ->required();
  extract_cmd->add_option("--out", extract.out, "Output CSV, '-' for stdout")
      ->capture_default_str();
  add_report_option(extract_cmd, &extract.report);

  TrainOptions train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a forest on a labelled CSV");
  train_cmd->add_option("--data", train.data, "Labelled CSV ('-' for stdin)")->required();
  train_cmd->add_option("--mode", train.mode, "multiclass or binary:<class>")
      ->capture_default_str();
  train_cmd->add_option("--trees", train.params.tree_count)->capture_default_str();
  train_cmd->add_option("--depth", train.params.max_depth)->capture_default_str();
  train_cmd->add_option("--splits", train.params.random_splits_per_node)->capture_default_str();
  train_cmd->add_option("--min-leaf", train.params.min_samples_per_leaf)->capture_default_str();
  train_cmd->add_option("--seed", train.params.seed)->capture_default_str();
  train_cmd->add_option("--min-freq", train.min_frequency, "Minimum token count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--split", train.train_fraction, "Training fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train_cmd->add_flag("--no-stratify", train.no_stratify, "Split without stratifying by class");
  train_cmd->add_option("--stopwords", train.stopwords, "Stop list for text channels");
  train_cmd->add_option("--url-stopwords", train.url_stopwords, "Stop list for the URL channel");
  train_cmd->add_option("--model-version", train.model_version,
                        "Version tag (default: content hash)");
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  add_report_option(train_cmd, &train.report);

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a model, rules and the ensemble");
  eval_cmd->add_option("--data", eval.data, "Labelled CSV ('-' for stdin)")->required();
  eval_cmd->add_option("--model", eval.model, "Model file")->required();
  eval_cmd->add_option("--rules", eval.rules, "Rules file; also reports rules alone");
  eval_cmd->add_option("--lookup", eval.lookup, "Lookup table for the ensemble");
  eval_cmd->add_flag("--ensemble", eval.ensemble, "Also report rules alone and the ensemble");
  eval_cmd->add_flag("--full", eval.full, "Evaluate on every row instead of the holdout");
  eval_cmd->add_option("--split", eval.train_fraction, "Training fraction of the split")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Split seed (default: the model's seed)");
  eval_cmd->add_flag("--no-stratify", eval.no_stratify);
  eval_cmd->add_option("--threshold", eval.threshold, "Forest confidence needed to decide")
      ->capture_default_str();
  add_report_option(eval_cmd, &eval.report);

  PredictOptions predict_opts;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Predict labels for a JSON field list");
  add_snapshot_options(predict_cmd, &predict_opts.sources, false);
  predict_cmd->add_option("--fields", predict_opts.fields,
                          "JSON {\"fields\": [...]} file, '-' for stdin")
      ->capture_default_str();
  add_report_option(predict_cmd, &predict_opts.report);

  ServeOptions serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve predictions over HTTP");
  add_snapshot_options(serve_cmd, &serve.sources, true);
  serve_cmd->add_option("--host", serve.host)->envname("FIELDSENSE_HOST")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "0 picks a free port")
      ->envname("FIELDSENSE_PORT")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--threads", serve.threads)
      ->envname("FIELDSENSE_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve_cmd->add_flag("--log-requests", serve.log_requests, "Log status and latency per request")
      ->envname("FIELDSENSE_LOG_REQUESTS");

  GenCorpusOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-corpus", "Generate a synthetic labelled CSV");
  gen_cmd->add_option("--n", gen.n, "Rows")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Fraction of rows with a decoy attribute")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--profile", gen.profile, "JSON class profile");
  gen_cmd->add_option("--classes", gen.classes, "Use only the first N profile classes");
  gen_cmd->add_option("--out", gen.out, "Output CSV, '-' for stdout")->capture_default_str();

  RulesCheckOptions check;
  CLI::App* check_cmd = app.add_subcommand("rules-check", "Lint a rules file");
  check_cmd->add_option("--rules", check.rules, "Rules file (default: shipped rules)");
  check_cmd->add_option("--probe", check.probe, "CSV of fields to probe (default: synthetic)");
  add_report_option(check_cmd, &check.report);

  LookupImportOptions import;
  CLI::App* import_cmd =
      app.add_subcommand("lookup-import", "Add labelled fields to a lookup table");
  import_cmd->add_option("--data", import.data, "Labelled CSV")->required();
  import_cmd->add_option("--lookup", import.lookup, "Existing table to extend");
  import_cmd->add_option("--out", import.out, "Table file to write")->required();
  add_report_option(import_cmd, &import.report);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract_cmd) return run_extract(extract, out, err);
    if (*train_cmd) return run_train(train, out, err);
    if (*eval_cmd) return run_eval(eval, out, err);
    if (*predict_cmd) return run_predict(predict_opts, out, err);
    if (*serve_cmd) return run_serve(serve, out, err);
    if (*gen_cmd) return run_gen_corpus(gen, out, err);
    if (*check_cmd) return run_rules_check(check, out, err);
    if (*import_cmd) return run_lookup_import(import, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace fieldsense::cli
