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

// Batch-oriented entry point wiring the pipeline end to end:
//   analyze    one app bundle -> per-app report
//   batch      corpus dir -> per-app reports, results.jsonl, comparison
//   aggregate  stored results -> comparison table
//   export     stored results -> classifier-ready CSV matrix
//   catalog    print/validate the feature catalog
//   parse      debug-parse logs, payloads, reports, signature lists

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "droidtrace/corpusgen.hpp"
#include "droidtrace/error.hpp"
#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/io.hpp"
#include "droidtrace/report.hpp"
#include "droidtrace/session.hpp"
#include "droidtrace/sim_device.hpp"
#include "droidtrace/text.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using droidtrace::FeatureCatalog;
using nlohmann::ordered_json;

struct CommonOptions {
  std::string corpus_dir;
  std::string signatures_file;
  std::string profile_file;
  std::string out_dir;
  std::string catalog_file;
  std::string label = "malware";
  std::string mode = "binary";
  std::int64_t timeout_ms = droidtrace::kDefaultSessionTimeoutMs;
  std::size_t events = droidtrace::kMaxEvents;
  std::uint64_t seed = 0;
};

FeatureCatalog load_catalog(const CommonOptions& opt) {
  if (!opt.catalog_file.empty()) {
    return FeatureCatalog::from_json(
        droidtrace::read_text_file(opt.catalog_file));
  }
  std::string list = opt.signatures_file.empty()
                         ? std::string(droidtrace::default_signature_list())
                         : droidtrace::read_text_file(opt.signatures_file);
  return droidtrace::default_catalog(droidtrace::load_signature_list(list));
}

droidtrace::BatchConfig make_config(const CommonOptions& opt,
                                    const FeatureCatalog& catalog) {
  droidtrace::BatchConfig config;
  config.timeout_ms = opt.timeout_ms;
  config.event_count = opt.events;
  config.seed = opt.seed;
  config.catalog = &catalog;
  if (!opt.profile_file.empty()) {
    config.profile = droidtrace::parse_device_profile(
        droidtrace::read_text_file(opt.profile_file));
  }
  return config;
}

void write_batch_outputs(const std::vector<droidtrace::SessionResult>& results,
                         const FeatureCatalog& catalog,
                         const CommonOptions& opt) {
  fs::create_directories(opt.out_dir);
  const fs::path out(opt.out_dir);
  for (const droidtrace::SessionResult& result : results) {
    droidtrace::write_text_file(
        out / (result.app_id + ".json"),
        droidtrace::per_app_report(result, catalog).dump(2) + "\n");
  }
  droidtrace::write_text_file(out / "results.jsonl",
                              droidtrace::session_results_to_jsonl(results));
  droidtrace::write_text_file(out / "catalog.json",
                              catalog.to_json().dump(2) + "\n");

  // Comparison artifacts are best-effort at batch time: a corpus whose
  // labels cannot be aggregated (e.g. a label with no completed sessions)
  // still yields reports and results.jsonl with exit 0.
  try {
    auto comparison =
        droidtrace::aggregate_comparison(results, catalog, opt.label);
    droidtrace::write_text_file(out / "comparison.json",
                                comparison_to_json(comparison).dump(2) + "\n");
    droidtrace::write_text_file(out / "comparison.txt",
                                render_comparison_text(comparison));
  } catch (const droidtrace::ValidationError& e) {
    std::cerr << "note: skipping comparison artifacts: " << e.what() << "\n";
  }
}

int run_analyze(const CommonOptions& opt, const std::string& app_file) {
  FeatureCatalog catalog = load_catalog(opt);
  ordered_json doc = ordered_json::parse(droidtrace::read_text_file(app_file),
                                         nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw droidtrace::ParseError("malformed JSON in bundle: " + app_file);
  }
  droidtrace::AppBundle bundle = droidtrace::bundle_from_json(doc);

  droidtrace::SimDevice device;
  auto corpus = droidtrace::stage_corpus(device, {bundle});
  auto results = run_batch(device, corpus, make_config(opt, catalog));

  ordered_json report = droidtrace::per_app_report(results.at(0), catalog);
  if (opt.out_dir.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    fs::create_directories(opt.out_dir);
    droidtrace::write_text_file(
        fs::path(opt.out_dir) / (results[0].app_id + ".json"),
        report.dump(2) + "\n");
  }
  return 0;
}

int run_batch_verb(const CommonOptions& opt) {
  FeatureCatalog catalog = load_catalog(opt);
  auto bundles = droidtrace::load_corpus_dir(opt.corpus_dir);
  droidtrace::SimDevice device;
  auto corpus = droidtrace::stage_corpus(device, bundles);
  auto results = run_batch(device, corpus, make_config(opt, catalog));
  write_batch_outputs(results, catalog, opt);
  std::size_t completed = 0;
  for (const auto& r : results) completed += r.completed ? 1 : 0;
  std::cout << "analyzed " << results.size() << " apps (" << completed
            << " completed) -> " << opt.out_dir << "\n";
  return 0;
}

std::vector<droidtrace::SessionResult> load_results(const CommonOptions& opt) {
  const fs::path dir(opt.out_dir);
  return droidtrace::session_results_from_jsonl(
      droidtrace::read_text_file(dir / "results.jsonl"));
}

FeatureCatalog load_pinned_catalog(const CommonOptions& opt) {
  if (!opt.catalog_file.empty()) {
    return FeatureCatalog::from_json(
        droidtrace::read_text_file(opt.catalog_file));
  }
  return FeatureCatalog::from_json(
      droidtrace::read_text_file(fs::path(opt.out_dir) / "catalog.json"));
}

int run_aggregate(const CommonOptions& opt) {
  FeatureCatalog catalog = load_pinned_catalog(opt);
  auto results = load_results(opt);
  auto comparison = droidtrace::aggregate_comparison(results, catalog, opt.label);
  const fs::path dir(opt.out_dir);
  droidtrace::write_text_file(dir / "comparison.json",
                              comparison_to_json(comparison).dump(2) + "\n");
  droidtrace::write_text_file(dir / "comparison.txt",
                              render_comparison_text(comparison));
  std::cout << render_comparison_text(comparison);
  return 0;
}

int run_export(const CommonOptions& opt) {
  FeatureCatalog catalog = load_pinned_catalog(opt);
  auto results = load_results(opt);
  auto mode = opt.mode == "counts" ? droidtrace::MatrixMode::kCounts
                                   : droidtrace::MatrixMode::kBinary;
  std::string csv = droidtrace::export_matrix(results, catalog, mode);
  droidtrace::write_text_file(fs::path(opt.out_dir) / "matrix.csv", csv);
  std::cout << "wrote " << (fs::path(opt.out_dir) / "matrix.csv").string()
            << "\n";
  return 0;
}

int run_catalog(const CommonOptions& opt) {
  FeatureCatalog catalog = load_catalog(opt);
  std::cout << catalog.to_json().dump(2) << "\n";
  return 0;
}

int run_parse(const std::string& kind, const std::string& input) {
  if (kind == "payload") {
    droidtrace::ApiCallRecord record = droidtrace::parse_api_call_payload(input);
    ordered_json doc = ordered_json::object();
    doc["class"] = record.owner.class_name();
    doc["method"] = record.method;
    ordered_json args = ordered_json::array();
    for (const auto& arg : record.args) {
      args.push_back(
          ordered_json{{"descriptor", render_field_descriptor(arg.descriptor)},
                       {"value", arg.value}});
    }
    doc["args"] = std::move(args);
    doc["return"] = record.return_descriptor
                        ? render_field_descriptor(*record.return_descriptor)
                        : std::string("V");
    if (record.return_value) doc["return_value"] = *record.return_value;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  if (kind == "logline") {
    auto entry = droidtrace::parse_logcat_line(input);
    if (!entry) {
      std::cout << "(line does not match the log grammar)\n";
      return 0;
    }
    ordered_json doc = {{"timestamp_ms", entry->timestamp_ms},
                        {"tag", entry->tag},
                        {"payload", entry->payload}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  if (kind == "log") {
    std::string text = droidtrace::read_text_file(input);
    std::size_t matched = 0, skipped = 0, api_calls = 0;
    for (std::string_view line : droidtrace::split_lines(text)) {
      auto entry = droidtrace::parse_logcat_line(line);
      if (!entry) {
        if (!droidtrace::trim(line).empty()) ++skipped;
        continue;
      }
      ++matched;
      if (entry->tag == droidtrace::kApiMonitorTag) {
        try {
          droidtrace::parse_api_call_payload(entry->payload);
          ++api_calls;
        } catch (const droidtrace::ParseError&) {
        }
      }
    }
    std::cout << "entries: " << matched << ", skipped lines: " << skipped
              << ", parsed api calls: " << api_calls << "\n";
    return 0;
  }
  if (kind == "report") {
    auto report =
        droidtrace::parse_behavior_report(droidtrace::read_text_file(input));
    std::cout << report.to_json().dump(2) << "\n";
    return 0;
  }
  if (kind == "signatures") {
    auto set =
        droidtrace::load_signature_list(droidtrace::read_text_file(input));
    std::cout << "loaded " << set.size() << " signatures\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
      std::cout << i << "\t"
                << droidtrace::render_api_signature(
                       set.at(static_cast<droidtrace::SignatureId>(i)))
                << "\n";
    }
    return 0;
  }
  throw droidtrace::ValidationError("unknown parse kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-analysis pipeline for scripted app corpora"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string app_file;
  std::string parse_kind = "logline";
  std::string parse_input;

  auto add_catalog_opts = [&opt](CLI::App* cmd) {
    cmd->add_option("--signatures", opt.signatures_file,
                    "Signature list file (defaults to the built-in list)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--catalog", opt.catalog_file,
                    "Pinned catalog JSON (overrides --signatures)")
        ->check(CLI::ExistingFile);
  };
  auto add_session_opts = [&opt](CLI::App* cmd) {
    cmd->add_option("--timeout", opt.timeout_ms, "Session timeout in ms")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--events", opt.events, "Events per session (max 3000)")
        ->check(CLI::Range(static_cast<std::size_t>(0), droidtrace::kMaxEvents));
    cmd->add_option("--seed", opt.seed, "Exerciser seed");
    cmd->add_option("--profile", opt.profile_file, "Device profile JSON")
        ->check(CLI::ExistingFile);
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze one app bundle");
  analyze->add_option("--app", app_file, "App bundle JSON")
      ->required()
      ->check(CLI::ExistingFile);
  add_catalog_opts(analyze);
  add_session_opts(analyze);
  analyze->add_option("--out", opt.out_dir, "Output directory (default: stdout)");

  CLI::App* batch = app.add_subcommand("batch", "Analyze a corpus directory");
  batch->add_option("--corpus", opt.corpus_dir, "Corpus directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  batch->add_option("--out", opt.out_dir, "Output directory")->required();
  add_catalog_opts(batch);
  add_session_opts(batch);
  batch->add_option("--label", opt.label,
                    "Primary label for the comparison table");

  CLI::App* aggregate =
      app.add_subcommand("aggregate", "Aggregate stored results");
  aggregate->add_option("--out", opt.out_dir, "Batch output directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  aggregate->add_option("--label", opt.label, "Primary label");
  aggregate->add_option("--catalog", opt.catalog_file, "Pinned catalog JSON")
      ->check(CLI::ExistingFile);

  CLI::App* exp = app.add_subcommand("export", "Export the feature matrix");
  exp->add_option("--out", opt.out_dir, "Batch output directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  exp->add_option("--mode", opt.mode, "counts or binary")
      ->check(CLI::IsMember({"counts", "binary"}));
  exp->add_option("--catalog", opt.catalog_file, "Pinned catalog JSON")
      ->check(CLI::ExistingFile);

  CLI::App* catalog = app.add_subcommand("catalog", "Print the feature catalog");
  add_catalog_opts(catalog);

  CLI::App* parse = app.add_subcommand("parse", "Debug-parse an input");
  parse->add_option("--kind", parse_kind,
                    "logline | payload | log | report | signatures")
      ->check(CLI::IsMember({"logline", "payload", "log", "report",
                             "signatures"}));
  parse->add_option("input", parse_input, "Literal text or file path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(opt, app_file);
    if (*batch) return run_batch_verb(opt);
    if (*aggregate) return run_aggregate(opt);
    if (*exp) return run_export(opt);
    if (*catalog) return run_catalog(opt);
    if (*parse) return run_parse(parse_kind, parse_input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
