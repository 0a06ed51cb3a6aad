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

#include "fieldsense/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "fieldsense/random.h"

namespace fieldsense {
namespace {

class CsvReader {
 public:
  explicit CsvReader(std::string_view in) : in_(in) {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") in_.remove_prefix(3);
  }

  bool done() const { return pos_ >= in_.size(); }
  std::size_t line() const { return line_; }

  // Reads one record; a trailing newline at EOF yields no extra record.
  std::vector<std::string> next_record() {
    std::vector<std::string> fields;
    std::string field;
    for (;;) {
      if (pos_ < in_.size() && in_[pos_] == '"') {
        read_quoted(field);
      } else {
        while (pos_ < in_.size() && in_[pos_] != ',' && in_[pos_] != '\n' &&
               in_[pos_] != '\r') {
          if (in_[pos_] == '"') throw CsvError(line_, "quote inside unquoted field");
          field += in_[pos_++];
        }
      }
      fields.push_back(std::move(field));
      field.clear();
      if (pos_ >= in_.size()) return fields;
      const char c = in_[pos_++];
      if (c == ',') continue;
      if (c == '\r' && pos_ < in_.size() && in_[pos_] == '\n') ++pos_;
      ++line_;
      return fields;
    }
  }

 private:
  void read_quoted(std::string& field) {
    const std::size_t start_line = line_;
    ++pos_;
    for (;;) {
      if (pos_ >= in_.size()) {
        throw CsvError(start_line, "unterminated quoted field");
      }
      const char c = in_[pos_++];
      if (c == '"') {
        if (pos_ < in_.size() && in_[pos_] == '"') {
          field += '"';
          ++pos_;
          continue;
        }
        if (pos_ < in_.size() && in_[pos_] != ',' && in_[pos_] != '\n' &&
            in_[pos_] != '\r') {
          throw CsvError(line_, "unexpected character after closing quote");
        }
        return;
      }
      if (c == '\n') ++line_;
      field += c;
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

void append_csv_field(std::string& out, std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += value;
    return;
  }
  out += '"';
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::string format_fraction(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

}  // namespace

std::vector<DatasetRow> load_csv(std::string_view source, CsvOptions options) {
  CsvReader reader(source);
  if (reader.done()) throw CsvError(1, "missing header row");
  const std::vector<std::string> header = reader.next_record();
  std::string joined;
  for (std::size_t i = 0; i < header.size(); ++i) {
    joined += (i ? "," : "") + header[i];
  }
  if (joined != kCsvHeader) {
    throw CsvError(1, "expected header '" + std::string(kCsvHeader) +
                          "', found '" + joined + "'");
  }

  std::vector<DatasetRow> rows;
  while (!reader.done()) {
    const std::size_t line = reader.line();
    std::vector<std::string> record = reader.next_record();
    if (record.size() == 1 && record[0].empty()) continue;  // blank line
    if (record.size() != 6) {
      throw CsvError(line, "expected 6 fields, found " + std::to_string(record.size()));
    }
    DatasetRow row;
    row.features.label_text = std::move(record[0]);
    row.features.name = std::move(record[1]);
    row.features.id = std::move(record[2]);
    row.features.control_type = record[3].empty() ? "text" : std::move(record[3]);
    row.features.page_url = std::move(record[4]);
    row.target = std::move(record[5]);
    if (row.target.empty() && !options.allow_unlabeled) {
      throw CsvError(line, "empty target");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_csv(std::span<const DatasetRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const DatasetRow& row : rows) {
    const FieldFeatures& f = row.features;
    for (const std::string* value :
         {&f.label_text, &f.name, &f.id, &f.control_type, &f.page_url}) {
      append_csv_field(out, *value);
      out += ',';
    }
    append_csv_field(out, row.target);
    out += '\n';
  }
  return out;
}

bool has_binary_targets(std::span<const DatasetRow> rows) {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const DatasetRow& r) {
    return r.target == "0" || r.target == "1";
  });
}

std::vector<DatasetRow> to_binary(std::span<const DatasetRow> rows,
                                  std::string_view target_class) {
  std::vector<DatasetRow> out(rows.begin(), rows.end());
  for (DatasetRow& row : out) {
    const bool positive = row.target == "1" || row.target == target_class;
    row.target = positive ? std::string(target_class) : "other";
  }
  return out;
}

std::vector<std::string> class_names_of(std::span<const DatasetRow> rows) {
  std::vector<std::string> names;
  for (const DatasetRow& r : rows) names.push_back(r.target);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

SplitResult split(std::span<const DatasetRow> rows, double train_fraction,
                  std::uint64_t seed, bool stratified) {
  if (rows.empty()) throw Error("cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("train fraction must be in (0, 1)");
  }
  auto quota = [&](std::size_t count) {
    // The epsilon keeps 0.7 * 10 from rounding up to 8.
    return static_cast<std::size_t>(
        std::ceil(static_cast<double>(count) * train_fraction - 1e-9));
  };

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  SplitResult result;
  std::map<std::string, std::size_t> remaining;
  if (stratified) {
    std::map<std::string, std::size_t> counts;
    for (const DatasetRow& r : rows) ++counts[r.target];
    for (const auto& [name, count] : counts) {
      remaining[name] = quota(count);
      if (count == 1) {
        result.warnings.push_back("class '" + name +
                                  "' has a single row; it goes to train");
      }
    }
  } else {
    remaining[""] = quota(rows.size());
  }
  for (std::size_t i : order) {
    std::size_t& left = remaining[stratified ? rows[i].target : ""];
    if (left > 0) {
      --left;
      result.train.push_back(rows[i]);
    } else {
      result.test.push_back(rows[i]);
    }
  }
  return result;
}

const ClassMetrics* Metrics::find(std::string_view class_name) const {
  for (const ClassMetrics& m : per_class) {
    if (m.class_name == class_name) return &m;
  }
  return nullptr;
}

Metrics compute_metrics(std::span<const std::string> actual,
                        std::span<const std::string> predicted) {
  if (actual.size() != predicted.size()) {
    throw Error("actual and predicted label counts differ");
  }
  if (actual.empty()) throw EmptyTestSetError();

  Metrics m;
  m.classes.assign(actual.begin(), actual.end());
  m.classes.insert(m.classes.end(), predicted.begin(), predicted.end());
  std::sort(m.classes.begin(), m.classes.end());
  m.classes.erase(std::unique(m.classes.begin(), m.classes.end()), m.classes.end());
  auto index = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::lower_bound(m.classes.begin(), m.classes.end(), name) - m.classes.begin());
  };

  const std::size_t k = m.classes.size();
  m.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ++m.confusion[index(actual[i])][index(predicted[i])];
  }
  m.total = actual.size();

  std::size_t correct = 0;
  double precision_sum = 0.0;
  std::size_t supported = 0;
  for (std::size_t c = 0; c < k; ++c) {
    ClassMetrics cm;
    cm.class_name = m.classes[c];
    cm.true_positives = m.confusion[c][c];
    for (std::size_t o = 0; o < k; ++o) {
      cm.support += m.confusion[c][o];
      cm.predicted += m.confusion[o][c];
    }
    if (cm.predicted > 0) {
      cm.precision = static_cast<double>(cm.true_positives) / cm.predicted;
    }
    if (cm.support > 0) {
      cm.recall = static_cast<double>(cm.true_positives) / cm.support;
      precision_sum += cm.precision.value_or(0.0);
      ++supported;
    }
    correct += cm.true_positives;
    m.per_class.push_back(std::move(cm));
  }
  m.micro_accuracy = static_cast<double>(correct) / m.total;
  m.macro_precision = supported > 0 ? precision_sum / supported : 0.0;
  return m;
}

Metrics evaluate(const Predictor& predictor, std::span<const DatasetRow> test) {
  if (test.empty()) throw EmptyTestSetError();
  std::vector<std::string> actual;
  std::vector<std::string> predicted;
  for (const DatasetRow& row : test) {
    actual.push_back(row.target);
    predicted.push_back(predictor(row.features));
  }
  return compute_metrics(actual, predicted);
}

nlohmann::json to_json(const Metrics& m) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const ClassMetrics& c : m.per_class) {
    per_class.push_back({{"class", c.class_name},
                         {"support", c.support},
                         {"predicted", c.predicted},
                         {"true_positives", c.true_positives},
                         {"precision", c.precision ? nlohmann::json(*c.precision) : nullptr},
                         {"recall", c.recall ? nlohmann::json(*c.recall) : nullptr}});
  }
  return {{"classes", m.classes},
          {"confusion", m.confusion},
          {"per_class", std::move(per_class)},
          {"total", m.total},
          {"macro_precision", m.macro_precision},
          {"micro_accuracy", m.micro_accuracy}};
}

std::string to_table(const Metrics& m) {
  std::size_t width = 5;
  for (const auto& c : m.classes) width = std::max(width, c.size());
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s %9s %9s %8s %9s\n",
                static_cast<int>(width), "class", "precision", "recall",
                "support", "predicted");
  out += line;
  for (const ClassMetrics& c : m.per_class) {
    std::snprintf(line, sizeof(line), "%-*s %9s %9s %8zu %9zu\n",
                  static_cast<int>(width), c.class_name.c_str(),
                  format_fraction(c.precision).c_str(),
                  format_fraction(c.recall).c_str(), c.support, c.predicted);
    out += line;
  }
  std::snprintf(line, sizeof(line),
                "macro precision %.4f  micro accuracy %.4f  (n=%zu)\n",
                m.macro_precision, m.micro_accuracy, m.total);
  out += line;
  return out;
}

}  // namespace fieldsense
