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

#ifndef FIELDSENSE_SERVICE_H_
#define FIELDSENSE_SERVICE_H_

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/ensemble.h"
#include "fieldsense/errors.h"
#include "fieldsense/field_extractor.h"
#include "fieldsense/forest.h"
#include "fieldsense/rules.h"
#include "json.hpp"

namespace fieldsense {

inline constexpr std::size_t kMaxFieldsPerRequest = 256;

// Everything a request needs. Immutable once published.
struct Snapshot {
  std::shared_ptr<const ForestModel> model;
  std::shared_ptr<const RuleSet> rules;
  std::shared_ptr<const LookupTable> lookup;
  EnsemblePolicy policy;
};

struct SnapshotSources {
  std::string model_path;
  std::string rules_path;   // empty: shipped default rules
  std::string lookup_path;  // empty: no lookup table
  double threshold = 0.5;
};

// Reads the files named in `sources`; throws on any I/O or format error.
std::shared_ptr<const Snapshot> load_snapshot(const SnapshotSources& sources);

struct HttpResult {
  int status = 200;
  std::string body;
};

class RequestError : public Error {
 public:
  RequestError(int status, std::string path, const std::string& what)
      : Error(what), status_(status), path_(std::move(path)) {}
  int status() const { return status_; }
  // JSON pointer to the offending part of the body.
  const std::string& path() const { return path_; }

 private:
  int status_;
  std::string path_;
};

// Validates a /v1/predict body. Field objects may only carry label, name, id,
// control_type and url; there is no slot for form values.
std::vector<FieldFeatures> parse_predict_request(std::string_view body);

nlohmann::json prediction_to_json(std::size_t field_index,
                                  const EnsemblePrediction& prediction,
                                  const ForestModel* model);

// Serves the ensemble over HTTP:
//   POST /v1/predict   fields in, aligned predictions out
//   GET  /healthz      200 once a snapshot is loaded, 503 before
//   GET  /v1/model     metadata of the loaded model
// Requests read one snapshot each; swap() publishes a new one atomically.
class PredictionService {
 public:
  struct Options {
    bool log_requests = false;
    int threads = 8;
  };

  PredictionService();
  explicit PredictionService(Options options);
  ~PredictionService();

  PredictionService(const PredictionService&) = delete;
  PredictionService& operator=(const PredictionService&) = delete;

  void swap(std::shared_ptr<const Snapshot> snapshot);
  std::shared_ptr<const Snapshot> snapshot() const;

  HttpResult handle_predict(std::string_view body,
                            std::string_view content_type) const;
  HttpResult handle_healthz() const;
  HttpResult handle_model() const;

  // Binds to host:port (0 picks a free port) and returns the bound port, or
  // -1 on failure.
  int bind(const std::string& host, int port);
  // Serves on the bound socket until stop(). Blocks.
  bool serve();
  // Blocks until serve() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Http;

  Options options_;
  mutable std::mutex mu_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::unique_ptr<Http> http_;
};

}  // namespace fieldsense

#endif  // FIELDSENSE_SERVICE_H_
