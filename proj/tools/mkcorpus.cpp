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

// Writes a small labeled demo corpus (plus a signature list and a device
// profile) that the main CLI can analyze end to end.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "droidtrace/corpusgen.hpp"
#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/io.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

// Demo incidence profile: a handful of features with a visible
// benign/malware skew, scaled to the corpus size.
std::vector<droidtrace::FeatureIncidence> demo_targets(std::uint32_t apps) {
  auto scaled = [apps](double share) {
    return static_cast<std::uint32_t>(share * apps + 0.5);
  };
  return {
      {"PHONE_STATE", {{"benign", scaled(0.55)}, {"malware", scaled(0.93)}}},
      {"servicestart", {{"benign", scaled(0.62)}, {"malware", scaled(0.86)}}},
      {"BOOT_COMPLETED", {{"benign", scaled(0.15)}, {"malware", scaled(0.55)}}},
      {"opennet", {{"benign", scaled(0.30)}, {"malware", scaled(0.48)}}},
      {"deviceId", {{"benign", scaled(0.23)}, {"malware", scaled(0.37)}}},
      {"dataleaks", {{"benign", scaled(0.15)}, {"malware", scaled(0.29)}}},
      {"SimSerialNumber", {{"benign", scaled(0.01)}, {"malware", scaled(0.21)}}},
      {"runtime.exec", {{"benign", scaled(0.04)}, {"malware", scaled(0.07)}}},
      {"sendsms", {{"benign", 0}, {"malware", scaled(0.02)}}},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate a demo corpus for the analysis pipeline"};
  std::string out_dir;
  std::uint32_t apps = 12;
  app.add_option("--out", out_dir, "Corpus output directory")->required();
  app.add_option("--apps", apps, "Apps per label")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    auto catalog = droidtrace::default_catalog(
        droidtrace::load_signature_list(droidtrace::default_signature_list()));
    auto bundles = droidtrace::build_incidence_corpus(
        {"benign", "malware"}, apps, demo_targets(apps), catalog);
    // Bundles live in a subdirectory; batch treats every *.json in its
    // --corpus directory as an app bundle.
    const fs::path corpus = fs::path(out_dir) / "corpus";
    droidtrace::write_corpus_dir(bundles, corpus);

    droidtrace::write_text_file(
        fs::path(out_dir) / "signatures.txt",
        std::string(droidtrace::default_signature_list()));
    nlohmann::ordered_json profile = {{"imei", "122456862965532"},
                                      {"imsi", "310260123456789"},
                                      {"sim_serial", "89014103211118510720"},
                                      {"phone_number", "15555215554"}};
    droidtrace::write_text_file(fs::path(out_dir) / "profile.json",
                                profile.dump(2) + "\n");

    std::cout << "wrote " << bundles.size() << " app bundles to "
              << corpus.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
