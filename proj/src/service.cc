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

#include "fieldsense/service.h"

#include <algorithm>
#include <cctype>
#include <chrono>

#include <spdlog/spdlog.h>

#include "fieldsense/io.h"
#include "fieldsense/url.h"
#include "httplib.h"

namespace fieldsense {
namespace {

using nlohmann::json;

constexpr std::string_view kJsonType = "application/json";
constexpr std::size_t kMaxBodyBytes = 4 << 20;

std::string error_body(std::string_view message, std::string_view path = {}) {
  json j{{"error", message}};
  if (!path.empty()) j["path"] = path;
  return j.dump();
}

std::string string_member(const json& object, const char* key,
                          const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) return {};
  if (!it->is_string()) {
    throw RequestError(400, path + "/" + key, std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

bool is_json_content_type(std::string_view content_type) {
  if (content_type.empty()) return true;
  std::string lowered(content_type.substr(0, content_type.find(';')));
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  while (!lowered.empty() && lowered.back() == ' ') lowered.pop_back();
  return lowered == kJsonType;
}

}  // namespace

std::shared_ptr<const Snapshot> load_snapshot(const SnapshotSources& sources) {
  auto snapshot = std::make_shared<Snapshot>();
  snapshot->model =
      std::make_shared<const ForestModel>(load(read_file(sources.model_path)));
  snapshot->rules = sources.rules_path.empty()
                        ? std::make_shared<const RuleSet>(RuleSet::defaults())
                        : std::make_shared<const RuleSet>(
                              RuleSet::load(read_file(sources.rules_path)));
  snapshot->lookup = sources.lookup_path.empty()
                         ? std::make_shared<const LookupTable>()
                         : std::make_shared<const LookupTable>(
                               LookupTable::load(read_file(sources.lookup_path)));
  snapshot->policy.forest_confidence_threshold = sources.threshold;
  snapshot->policy.validate();
  return snapshot;
}

std::vector<FieldFeatures> parse_predict_request(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw RequestError(400, "", std::string("body is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw RequestError(400, "", "body must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "fields") throw RequestError(400, "/" + key, "unknown key '" + key + "'");
  }
  auto it = j.find("fields");
  if (it == j.end() || !it->is_array()) {
    throw RequestError(400, "/fields", "'fields' must be an array");
  }
  if (it->empty()) throw RequestError(400, "/fields", "'fields' must not be empty");
  if (it->size() > kMaxFieldsPerRequest) {
    throw RequestError(413, "/fields",
                       "at most " + std::to_string(kMaxFieldsPerRequest) +
                           " fields per request");
  }

  std::vector<FieldFeatures> fields;
  fields.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string path = "/fields/" + std::to_string(i);
    const json& entry = (*it)[i];
    if (!entry.is_object()) throw RequestError(400, path, "field must be an object");
    for (const auto& [key, value] : entry.items()) {
      if (key != "label" && key != "name" && key != "id" &&
          key != "control_type" && key != "url") {
        throw RequestError(400, path + "/" + key, "unknown key '" + key + "'");
      }
    }
    FieldFeatures f;
    f.label_text = string_member(entry, "label", path);
    f.name = string_member(entry, "name", path);
    f.id = string_member(entry, "id", path);
    std::string type = string_member(entry, "control_type", path);
    std::transform(type.begin(), type.end(), type.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    f.control_type = type.empty() ? "text" : std::move(type);
    f.page_url = string_member(entry, "url", path);
    if (!parse_url(f.page_url)) {
      throw RequestError(400, path + "/url", "'url' must be an absolute URL");
    }
    if (f.label_text.empty() && f.name.empty() && f.id.empty()) {
      throw RequestError(400, path, "one of label, name, id must be non-empty");
    }
    fields.push_back(std::move(f));
  }
  return fields;
}

json prediction_to_json(std::size_t field_index, const EnsemblePrediction& p,
                        const ForestModel* model) {
  json out{{"field_index", field_index},
           {"class_name", p.class_name},
           {"confidence", p.confidence},
           {"source", std::string(source_name(p.source))}};
  if (p.source == Source::kRules) out["rule_id"] = p.rule_id;
  if (model != nullptr && !p.scores.empty()) {
    json scores = json::object();
    for (std::size_t c = 0; c < p.scores.size(); ++c) {
      scores[model->class_names[c]] = p.scores[c];
    }
    out["scores"] = std::move(scores);
  }
  return out;
}

struct PredictionService::Http {
  httplib::Server server;
};

PredictionService::PredictionService() : PredictionService(Options{}) {}

PredictionService::PredictionService(Options options)
    : options_(options), http_(std::make_unique<Http>()) {
  httplib::Server& server = http_->server;
  const int threads = std::max(1, options_.threads);
  server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  server.set_payload_max_length(kMaxBodyBytes);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  auto reply = [](httplib::Response& res, const HttpResult& result) {
    res.status = result.status;
    res.set_content(result.body, std::string(kJsonType));
  };
  server.Post("/v1/predict", [this, reply](const httplib::Request& req,
                                           httplib::Response& res) {
    reply(res, handle_predict(req.body, req.get_header_value("Content-Type")));
  });
  server.Options("/v1/predict", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server.Get("/healthz", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, handle_healthz());
  });
  server.Get("/v1/model", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, handle_model());
  });
}

PredictionService::~PredictionService() { stop(); }

void PredictionService::swap(std::shared_ptr<const Snapshot> snapshot) {
  std::lock_guard lock(mu_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const Snapshot> PredictionService::snapshot() const {
  std::lock_guard lock(mu_);
  return snapshot_;
}

HttpResult PredictionService::handle_predict(std::string_view body,
                                             std::string_view content_type) const {
  const auto started = std::chrono::steady_clock::now();
  const std::shared_ptr<const Snapshot> snap = snapshot();
  HttpResult result;
  std::size_t field_count = 0;
  if (!snap || !snap->model) {
    result = {503, error_body("model not loaded")};
  } else if (!is_json_content_type(content_type)) {
    result = {415, error_body("Content-Type must be application/json")};
  } else {
    try {
      const std::vector<FieldFeatures> fields = parse_predict_request(body);
      field_count = fields.size();
      json predictions = json::array();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const EnsemblePrediction p =
            ensemble_predict(fields[i], snap->lookup.get(), snap->rules.get(),
                             snap->model.get(), snap->policy);
        predictions.push_back(prediction_to_json(i, p, snap->model.get()));
      }
      result.body = json{{"model_version", snap->model->model_version},
                         {"predictions", std::move(predictions)}}
                        .dump();
    } catch (const RequestError& e) {
      result = {e.status(), error_body(e.what(), e.path())};
    }
  }
  if (options_.log_requests) {
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    // Counts and timings only; request text is never logged.
    spdlog::info("event=predict status={} fields={} latency_us={}", result.status,
                 field_count, micros);
  }
  return result;
}

HttpResult PredictionService::handle_healthz() const {
  const auto snap = snapshot();
  if (!snap || !snap->model) return {503, json{{"status", "unavailable"}}.dump()};
  return {200, json{{"status", "ok"}}.dump()};
}

HttpResult PredictionService::handle_model() const {
  const auto snap = snapshot();
  if (!snap || !snap->model) return {503, error_body("model not loaded")};
  const ForestModel& m = *snap->model;
  json params{{"tree_count", m.params.tree_count},
              {"max_depth", m.params.max_depth},
              {"random_splits_per_node", m.params.random_splits_per_node},
              {"min_samples_per_leaf", m.params.min_samples_per_leaf},
              {"resampling", "bagging"},
              {"seed", m.params.seed}};
  return {200, json{{"model_version", m.model_version},
                    {"mode", std::string(mode_name(m.mode))},
                    {"class_names", m.class_names},
                    {"vocabulary_width", m.vocabulary.total_width()},
                    {"params", std::move(params)}}
                   .dump()};
}

int PredictionService::bind(const std::string& host, int port) {
  if (port == 0) return http_->server.bind_to_any_port(host);
  return http_->server.bind_to_port(host, port) ? port : -1;
}

bool PredictionService::serve() { return http_->server.listen_after_bind(); }

void PredictionService::wait_until_ready() const { http_->server.wait_until_ready(); }

void PredictionService::stop() {
  if (http_ && http_->server.is_running()) http_->server.stop();
}

}  // namespace fieldsense
