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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/session.hpp"
#include "json.hpp"

namespace droidtrace {

// Exact ratio x100 truncated (not rounded) to two decimals; an exact zero
// prints "0". Throws ValidationError when total is zero or count > total.
std::string format_percentage(std::uint32_t count, std::uint32_t total);

struct ComparisonRow {
  std::string feature;
  std::vector<std::uint32_t> counts;       // aligned to labels
  std::vector<std::string> percentages;    // aligned to labels
};

// Labeled-corpus incidence table. Rows cover the whole catalog, sorted by
// descending primary-label count with ties broken by catalog order.
struct CorpusComparison {
  std::vector<std::string> labels;         // ascending
  std::vector<std::uint32_t> class_sizes;  // completed apps per label
  std::string primary_label;
  std::vector<ComparisonRow> rows;
};

// Per-label, per-feature count of completed apps whose binarized feature
// value is 1. incidence_counts is OpenMP-parallel when available;
// incidence_counts_serial is the reference implementation.
std::map<std::string, std::vector<std::uint32_t>> incidence_counts(
    const std::vector<SessionResult>& results, const FeatureCatalog& catalog);
std::map<std::string, std::vector<std::uint32_t>> incidence_counts_serial(
    const std::vector<SessionResult>& results, const FeatureCatalog& catalog);

// Aggregates labeled results. Failed sessions are excluded from counts and
// class sizes. Throws ValidationError on an empty corpus, an unknown
// primary label, or a label with no completed sessions.
CorpusComparison aggregate_comparison(const std::vector<SessionResult>& results,
                                      const FeatureCatalog& catalog,
                                      std::string_view primary_label);

nlohmann::ordered_json comparison_to_json(const CorpusComparison& comparison);

// Aligned plain-text table: rank, feature, one count and one percentage
// column per label.
std::string render_comparison_text(const CorpusComparison& comparison);

// Readable per-app document: {app_id, status, hashes?, features grouped by
// kind (nonzero counts only), raw report echo}. Failed results yield a
// status-only stub.
nlohmann::ordered_json per_app_report(const SessionResult& result,
                                      const FeatureCatalog& catalog);

enum class MatrixMode { kCounts, kBinary };

// Classifier-ready CSV: header "app_id,label,<features...>" in catalog
// order, one row per completed result, LF line endings.
std::string export_matrix(const std::vector<SessionResult>& results,
                          const FeatureCatalog& catalog, MatrixMode mode);

struct MatrixRow {
  std::string app_id;
  std::string label;
  std::vector<std::uint32_t> counts;
};

// Inverse of export_matrix; validates the header against the catalog.
std::vector<MatrixRow> import_matrix(std::string_view csv,
                                     const FeatureCatalog& catalog);

}  // namespace droidtrace
