/*
 * Copyright (C) 2026 The DroidTrace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "droidtrace/report.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

using nlohmann::ordered_json;

std::string format_percentage(std::uint32_t count, std::uint32_t total) {
  if (total == 0) throw ValidationError("percentage total must be positive");
  if (count > total) {
    throw ValidationError("count " + std::to_string(count) +
                          " exceeds total " + std::to_string(total));
  }
  if (count == 0) return "0";
  // Exact ratio scaled to hundredths of a percent; integer division
  // truncates toward zero.
  std::uint64_t scaled =
      static_cast<std::uint64_t>(count) * 10000ull / total;
  std::string whole = std::to_string(scaled / 100);
  std::uint64_t frac = scaled % 100;
  std::string out = whole + ".";
  if (frac < 10) out += '0';
  out += std::to_string(frac);
  return out;
}

namespace {

struct LabelIndex {
  std::vector<std::string> labels;  // ascending
  std::map<std::string, std::size_t> index;
};

LabelIndex label_index(const std::vector<SessionResult>& results) {
  LabelIndex li;
  for (const SessionResult& r : results) {
    if (li.index.emplace(r.label, 0).second) li.labels.push_back(r.label);
  }
  std::sort(li.labels.begin(), li.labels.end());
  for (std::size_t i = 0; i < li.labels.size(); ++i) {
    li.index[li.labels[i]] = i;
  }
  return li;
}

const FeatureVector& features_of(const SessionResult& r) {
  if (!r.features) {
    throw ValidationError("completed result for '" + r.app_id +
                          "' carries no feature vector; run attach_features");
  }
  return *r.features;
}

std::map<std::string, std::vector<std::uint32_t>> pack_incidence(
    const LabelIndex& li, const std::vector<std::uint32_t>& flat,
    std::size_t nfeatures) {
  std::map<std::string, std::vector<std::uint32_t>> out;
  for (std::size_t l = 0; l < li.labels.size(); ++l) {
    out[li.labels[l]] = std::vector<std::uint32_t>(
        flat.begin() + static_cast<std::ptrdiff_t>(l * nfeatures),
        flat.begin() + static_cast<std::ptrdiff_t>((l + 1) * nfeatures));
  }
  return out;
}

}  // namespace

std::map<std::string, std::vector<std::uint32_t>> incidence_counts_serial(
    const std::vector<SessionResult>& results, const FeatureCatalog& catalog) {
  const LabelIndex li = label_index(results);
  const std::size_t nf = catalog.size();
  std::vector<std::uint32_t> flat(li.labels.size() * nf, 0);
  for (const SessionResult& r : results) {
    if (!r.completed) continue;
    const FeatureVector& v = features_of(r);
    if (v.counts.size() != nf) {
      throw ValidationError("feature vector size mismatch for '" + r.app_id +
                            "'");
    }
    const std::size_t base = li.index.at(r.label) * nf;
    for (std::size_t f = 0; f < nf; ++f) {
      if (v.counts[f] > 0) ++flat[base + f];
    }
  }
  return pack_incidence(li, flat, nf);
}

std::map<std::string, std::vector<std::uint32_t>> incidence_counts(
    const std::vector<SessionResult>& results, const FeatureCatalog& catalog) {
#ifdef _OPENMP
  const LabelIndex li = label_index(results);
  const std::size_t nf = catalog.size();
  const std::size_t cells = li.labels.size() * nf;
  std::vector<std::uint32_t> flat(cells, 0);
  std::exception_ptr error;
#pragma omp parallel
  {
    std::vector<std::uint32_t> local(cells, 0);
#pragma omp for nowait schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(results.size());
         ++i) {
      const SessionResult& r = results[static_cast<std::size_t>(i)];
      if (!r.completed) continue;
      try {
        const FeatureVector& v = features_of(r);
        if (v.counts.size() != nf) {
          throw ValidationError("feature vector size mismatch for '" +
                                r.app_id + "'");
        }
        const std::size_t base = li.index.at(r.label) * nf;
        for (std::size_t f = 0; f < nf; ++f) {
          if (v.counts[f] > 0) ++local[base + f];
        }
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
#pragma omp critical
    for (std::size_t c = 0; c < cells; ++c) flat[c] += local[c];
  }
  if (error) std::rethrow_exception(error);
  return pack_incidence(li, flat, nf);
#else
  return incidence_counts_serial(results, catalog);
#endif
}

CorpusComparison aggregate_comparison(const std::vector<SessionResult>& results,
                                      const FeatureCatalog& catalog,
                                      std::string_view primary_label) {
  if (results.empty()) throw ValidationError("empty corpus");
  const LabelIndex li = label_index(results);
  if (!li.index.count(std::string(primary_label))) {
    throw ValidationError("unknown primary label '" +
                          std::string(primary_label) + "'");
  }

  CorpusComparison comparison;
  comparison.labels = li.labels;
  comparison.primary_label = std::string(primary_label);
  comparison.class_sizes.assign(li.labels.size(), 0);
  for (const SessionResult& r : results) {
    if (r.completed) ++comparison.class_sizes[li.index.at(r.label)];
  }
  for (std::size_t l = 0; l < li.labels.size(); ++l) {
    if (comparison.class_sizes[l] == 0) {
      throw ValidationError("label '" + li.labels[l] +
                            "' has no completed sessions");
    }
  }

  auto incidence = incidence_counts(results, catalog);

  std::vector<FeatureId> order(catalog.size());
  std::iota(order.begin(), order.end(), 0);
  const std::vector<std::uint32_t>& primary_counts =
      incidence.at(comparison.primary_label);
  std::sort(order.begin(), order.end(), [&](FeatureId a, FeatureId b) {
    if (primary_counts[a] != primary_counts[b]) {
      return primary_counts[a] > primary_counts[b];
    }
    return a < b;  // catalog order breaks ties
  });

  comparison.rows.reserve(order.size());
  for (FeatureId id : order) {
    ComparisonRow row;
    row.feature = catalog.def(id).name;
    for (std::size_t l = 0; l < li.labels.size(); ++l) {
      std::uint32_t count = incidence.at(li.labels[l])[id];
      row.counts.push_back(count);
      row.percentages.push_back(
          format_percentage(count, comparison.class_sizes[l]));
    }
    comparison.rows.push_back(std::move(row));
  }
  return comparison;
}

ordered_json comparison_to_json(const CorpusComparison& comparison) {
  ordered_json out = ordered_json::object();
  ordered_json sizes = ordered_json::object();
  for (std::size_t l = 0; l < comparison.labels.size(); ++l) {
    sizes[comparison.labels[l]] = comparison.class_sizes[l];
  }
  out["class_sizes"] = std::move(sizes);
  out["primary_label"] = comparison.primary_label;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < comparison.rows.size(); ++i) {
    const ComparisonRow& row = comparison.rows[i];
    ordered_json entry = ordered_json::object();
    entry["rank"] = i + 1;
    entry["feature"] = row.feature;
    ordered_json counts = ordered_json::object();
    ordered_json percentages = ordered_json::object();
    for (std::size_t l = 0; l < comparison.labels.size(); ++l) {
      counts[comparison.labels[l]] = row.counts[l];
      percentages[comparison.labels[l]] = row.percentages[l];
    }
    entry["counts"] = std::move(counts);
    entry["percentages"] = std::move(percentages);
    rows.push_back(std::move(entry));
  }
  out["rows"] = std::move(rows);
  return out;
}

std::string render_comparison_text(const CorpusComparison& comparison) {
  const std::size_t nlabels = comparison.labels.size();
  std::vector<std::string> headers = {"rank", "feature"};
  for (const std::string& label : comparison.labels) headers.push_back(label);
  for (const std::string& label : comparison.labels) {
    headers.push_back("%" + label);
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back(headers);
  for (std::size_t i = 0; i < comparison.rows.size(); ++i) {
    const ComparisonRow& row = comparison.rows[i];
    std::vector<std::string> line = {std::to_string(i + 1), row.feature};
    for (std::size_t l = 0; l < nlabels; ++l) {
      line.push_back(std::to_string(row.counts[l]));
    }
    for (std::size_t l = 0; l < nlabels; ++l) {
      line.push_back(row.percentages[l]);
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(headers.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      widths[c] = std::max(widths[c], line[c].size());
    }
  }

  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << "  ";
      if (c == 1) {  // feature column is left-aligned
        out << line[c] << std::string(widths[c] - line[c].size(), ' ');
      } else {
        out << std::string(widths[c] - line[c].size(), ' ') << line[c];
      }
    }
    out << '\n';
  }
  return std::move(out).str();
}

ordered_json per_app_report(const SessionResult& result,
                            const FeatureCatalog& catalog) {
  ordered_json out = ordered_json::object();
  out["app_id"] = result.app_id;
  if (!result.completed) {
    out["status"] = "failed";
    out["reason"] = result.failure
                        ? std::string(to_string(*result.failure))
                        : std::string(to_string(FailureReason::kInternal));
    return out;
  }
  out["status"] = "completed";

  const BehaviorReport* report =
      result.artifacts ? &result.artifacts->report : nullptr;
  if (report && report->hashes) {
    out["hashes"] = {{"md5", report->hashes->md5},
                     {"sha1", report->hashes->sha1},
                     {"sha256", report->hashes->sha256}};
  }

  FeatureVector features;
  if (result.features) {
    features = *result.features;
  } else if (result.artifacts) {
    features = extract_features(result.artifacts->report,
                                result.artifacts->api_calls, catalog,
                                result.app_id);
  } else {
    throw ValidationError("result for '" + result.app_id +
                          "' has neither artifacts nor features");
  }
  if (features.counts.size() != catalog.size()) {
    throw ValidationError("feature vector does not match catalog size");
  }

  ordered_json report_key = ordered_json::object();
  ordered_json intent_action = ordered_json::object();
  ordered_json api_call = ordered_json::object();
  for (FeatureId id = 0; id < catalog.size(); ++id) {
    if (features.counts[id] == 0) continue;
    const FeatureDef& def = catalog.def(id);
    switch (def.kind) {
      case FeatureKind::kReportKey: report_key[def.name] = features.counts[id]; break;
      case FeatureKind::kIntentAction: intent_action[def.name] = features.counts[id]; break;
      case FeatureKind::kApiCall: api_call[def.name] = features.counts[id]; break;
    }
  }
  ordered_json grouped = ordered_json::object();
  grouped["report_key"] = std::move(report_key);
  grouped["intent_action"] = std::move(intent_action);
  grouped["api_call"] = std::move(api_call);
  out["features"] = std::move(grouped);
  out["raw"] = report ? report->to_json() : ordered_json::object();
  return out;
}

std::string export_matrix(const std::vector<SessionResult>& results,
                          const FeatureCatalog& catalog, MatrixMode mode) {
  std::string out = "app_id,label";
  for (const FeatureDef& def : catalog.defs()) {
    out += ',';
    out += def.name;
  }
  out += '\n';
  for (const SessionResult& r : results) {
    if (!r.completed) continue;
    if (!is_safe_identifier(r.app_id)) {
      throw ValidationError("app id not exportable: '" + r.app_id + "'");
    }
    if (!is_safe_identifier(r.label)) {
      throw ValidationError("label not exportable: '" + r.label + "'");
    }
    const FeatureVector& v = features_of(r);
    if (v.counts.size() != catalog.size()) {
      throw ValidationError("feature vector size mismatch for '" + r.app_id +
                            "'");
    }
    out += r.app_id;
    out += ',';
    out += r.label;
    for (std::uint32_t c : v.counts) {
      out += ',';
      out += std::to_string(mode == MatrixMode::kBinary ? (c > 0 ? 1u : 0u) : c);
    }
    out += '\n';
  }
  return out;
}

std::vector<MatrixRow> import_matrix(std::string_view csv,
                                     const FeatureCatalog& catalog) {
  auto lines = split_lines(csv);
  if (lines.empty()) throw ParseError("matrix is empty");

  auto split_row = [](std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        fields.emplace_back(line.substr(start));
        break;
      }
      fields.emplace_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    return fields;
  };

  std::string expected_header = "app_id,label";
  for (const FeatureDef& def : catalog.defs()) {
    expected_header += ',';
    expected_header += def.name;
  }
  std::string_view header = lines[0];
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  if (header != expected_header) {
    throw ParseError("matrix header does not match the catalog");
  }

  std::vector<MatrixRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split_row(line);
    if (fields.size() != catalog.size() + 2) {
      throw ParseError("matrix row " + std::to_string(i + 1) +
                       " has the wrong field count");
    }
    MatrixRow row;
    row.app_id = fields[0];
    row.label = fields[1];
    for (std::size_t f = 2; f < fields.size(); ++f) {
      if (!all_digits(fields[f])) {
        throw ParseError("matrix row " + std::to_string(i + 1) +
                         ": count is not a non-negative integer");
      }
      row.counts.push_back(
          static_cast<std::uint32_t>(std::stoul(fields[f])));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace droidtrace
