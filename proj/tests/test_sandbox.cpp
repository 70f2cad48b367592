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

#include <atomic>
#include <random>

#include "doctest.h"
#include "droidtrace/corpusgen.hpp"
#include "droidtrace/error.hpp"
#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/io.hpp"
#include "droidtrace/session.hpp"
#include "droidtrace/sim_device.hpp"
#include "support/testutil.hpp"

using namespace droidtrace;

namespace {

AppDescriptor one_activity_app(const std::string& package) {
  AppDescriptor app;
  app.package = package;
  app.main_activity = "Main";
  app.activities = {"Main"};
  return app;
}

DeviceProfile realistic_profile() {
  DeviceProfile p;
  p.imei = "122456862965532";
  p.imsi = "310260123456789";
  p.sim_serial = "89014103211118510720";
  p.phone_number = "15555215554";
  return p;
}

FeatureCatalog make_catalog() {
  return default_catalog(load_signature_list(default_signature_list()));
}

// Asserts that no two device interactions overlap in time.
class OverlapProbe final : public DeviceEndpoint {
 public:
  explicit OverlapProbe(DeviceEndpoint& inner) : inner_(inner) {}

  int max_depth() const { return max_depth_; }

  void install(const AppDescriptor& app) override {
    Guard g(*this);
    inner_.install(app);
  }
  void launch(const std::string& component) override {
    Guard g(*this);
    inner_.launch(component);
  }
  void send_event(const UiEvent& event) override {
    Guard g(*this);
    inner_.send_event(event);
  }
  void push_file(const std::filesystem::path& local,
                 const std::string& remote) override {
    Guard g(*this);
    inner_.push_file(local, remote);
  }
  std::vector<LogEntry> read_log_stream() override {
    Guard g(*this);
    return inner_.read_log_stream();
  }
  BehaviorReport read_behavior_report() override {
    Guard g(*this);
    return inner_.read_behavior_report();
  }
  void reset() override {
    Guard g(*this);
    inner_.reset();
  }
  void set_identity(const DeviceProfile& identity) override {
    Guard g(*this);
    inner_.set_identity(identity);
  }
  DeviceProfile identity() const override { return inner_.identity(); }

 private:
  struct Guard {
    explicit Guard(OverlapProbe& probe) : probe_(probe) {
      int depth = ++probe_.depth_;
      int expected = probe_.max_depth_.load();
      while (depth > expected &&
             !probe_.max_depth_.compare_exchange_weak(expected, depth)) {
      }
    }
    ~Guard() { --probe_.depth_; }
    OverlapProbe& probe_;
  };

  DeviceEndpoint& inner_;
  std::atomic<int> depth_{0};
  std::atomic<int> max_depth_{0};
};

}  // namespace

TEST_CASE("the default session budget is three minutes") {
  CHECK(kDefaultSessionTimeoutMs == 180000);
}

TEST_CASE("apply_profile installs identity and contacts") {
  testutil::TempDir tmp("profile");
  auto contacts = tmp.path() / "contacts.vcf";
  write_text_file(contacts, "BEGIN:VCARD\nEND:VCARD\n");

  SimDevice device;
  CHECK(device.identity().imei == kDefaultEmulatorImei);

  DeviceProfile profile = realistic_profile();
  profile.contacts_path = contacts;
  apply_profile(device, profile);
  CHECK(device.identity().imei == "122456862965532");
  REQUIRE(device.pushed_files().count("/sdcard/contacts.vcf") == 1);
  CHECK(device.pushed_files().at("/sdcard/contacts.vcf") == contacts);
}

TEST_CASE("apply_profile rejects a bad IMEI before touching the device") {
  SimDevice device;
  DeviceProfile profile = realistic_profile();
  profile.imei = "12345678901234";  // 14 digits
  CHECK_THROWS_AS(apply_profile(device, profile), ValidationError);
  CHECK(device.identity().imei == kDefaultEmulatorImei);

  profile.imei = "12345678901234x";
  CHECK_THROWS_AS(apply_profile(device, profile), ValidationError);
}

TEST_CASE("profile JSON parsing") {
  DeviceProfile p = parse_device_profile(R"({
    "imei": "122456862965532", "imsi": "310260123456789",
    "sim_serial": "89014103211118510720", "phone_number": "15555215554"
  })");
  CHECK(p.imei == "122456862965532");
  CHECK(!p.contacts_path.has_value());
  CHECK_THROWS_AS(parse_device_profile(R"({"imei": "1"})"), ParseError);
}

TEST_CASE("sim script parsing is strict") {
  SimAppScript script = parse_sim_script(R"({
    "install": "ok",
    "on_launch": ["100 ApiMonitor: Lfoo/A;->f()V"],
    "on_event_every_k": {"k": 3, "line": "200 Tag: x"},
    "profile_conditional": [{"requires": "realistic_imei", "lines": []}],
    "behavior_report": {"sendsms": []},
    "event_delay_ms": 0
  })");
  CHECK(script.install_ok);
  CHECK(script.on_launch.size() == 1);
  REQUIRE(script.on_event.has_value());
  CHECK(script.on_event->every_k == 3);

  CHECK_THROWS_AS(parse_sim_script(R"({"install": "maybe"})"), ParseError);
  CHECK_THROWS_AS(parse_sim_script(R"({"unknown_key": 1})"), ParseError);
  CHECK_THROWS_AS(parse_sim_script(R"({"on_event_every_k": {"k": 0, "line": ""}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_sim_script(
                      R"({"profile_conditional": [{"requires": "wrong", "lines": []}]})"),
                  ParseError);
}

TEST_CASE("run_session collects scripted api calls") {
  SimDevice device;
  device.register_app("com.sample.sms", parse_sim_script(R"({
    "on_launch": [
      "100 ApiMonitor: Landroid/telephony/SmsManager;->sendTextMessage(Ljava/lang/String;:=1782|Ljava/lang/String;:=null|Ljava/lang/String;:=532711|Landroid/app/PendingIntent;:=null|Landroid/app/PendingIntent;:=null)V",
      "150 ApiMonitor: Ljava/lang/Runtime;->exec([Ljava/lang/String;:={asroot})Ljava/lang/Process;:=Process[id=541]"
    ]
  })"));
  AppDescriptor app = one_activity_app("com.sample.sms");
  SessionResult result = run_session(device, app, build_plan(app, 1, 0), 5000);
  REQUIRE(result.completed);
  REQUIRE(result.artifacts.has_value());
  CHECK(result.artifacts->entries.size() == 2);
  REQUIRE(result.artifacts->api_calls.size() == 2);
  CHECK(result.artifacts->api_calls[0].method == "sendTextMessage");
  CHECK(result.artifacts->api_calls[1].return_value == "Process[id=541]");
}

TEST_CASE("a silent app completes with empty artifacts") {
  SimDevice device;
  device.register_app("com.sample.silent", SimAppScript{});
  AppDescriptor app = one_activity_app("com.sample.silent");
  SessionResult result = run_session(device, app, build_plan(app, 1, 0), 5000);
  REQUIRE(result.completed);
  CHECK(result.artifacts->entries.empty());
  CHECK(result.artifacts->report.empty());

  // Unless the no-output policy is enabled.
  device.reset();
  SessionResult strict =
      run_session(device, app, build_plan(app, 1, 0), 5000, true);
  CHECK(!strict.completed);
  CHECK(strict.failure == FailureReason::kNoOutputPolicy);
}

TEST_CASE("scripted install and launch failures") {
  SimDevice device;
  device.register_app("com.fail.install",
                      parse_sim_script(R"({"install": "fail"})"));
  device.register_app("com.fail.launch",
                      parse_sim_script(R"({"launch": "fail"})"));

  AppDescriptor bad_install = one_activity_app("com.fail.install");
  SessionResult r1 =
      run_session(device, bad_install, build_plan(bad_install, 1, 0), 5000);
  CHECK(!r1.completed);
  CHECK(r1.failure == FailureReason::kInstallError);
  CHECK(!r1.artifacts.has_value());

  device.reset();
  AppDescriptor bad_launch = one_activity_app("com.fail.launch");
  SessionResult r2 =
      run_session(device, bad_launch, build_plan(bad_launch, 1, 0), 5000);
  CHECK(!r2.completed);
  CHECK(r2.failure == FailureReason::kLaunchError);
}

TEST_CASE("DroidBox-tagged fragments merge into the report") {
  SimDevice device;
  device.register_app("com.sample.frag", parse_sim_script(R"({
    "on_launch": [
      "100 DroidBox: {\"sendsms\": [{\"number\": \"1782\"}]}",
      "150 DroidBox: {\"recvaction\": [[\"r.A\", \"android.intent.action.BOOT_COMPLETED\"]]}",
      "160 DroidBox: not json at all",
      "170 Other: ignored tag"
    ],
    "behavior_report": {"opennet": [{"ip": "10.0.0.1"}]}
  })"));
  AppDescriptor app = one_activity_app("com.sample.frag");
  SessionResult result = run_session(device, app, build_plan(app, 1, 0), 5000);
  REQUIRE(result.completed);
  const BehaviorReport& report = result.artifacts->report;
  CHECK(report.entry_count("opennet") == 1);
  CHECK(report.entry_count("sendsms") == 1);
  CHECK(report.entry_count("recvaction") == 1);
}

TEST_CASE("malformed ApiMonitor payloads are skipped") {
  SimDevice device;
  device.register_app("com.sample.bad", parse_sim_script(R"({
    "on_launch": [
      "100 ApiMonitor: Lfoo/A;->ok()V",
      "110 ApiMonitor: ((((not a payload",
      "120 ApiMonitor: Lfoo/A;->alsoOk()V"
    ]
  })"));
  AppDescriptor app = one_activity_app("com.sample.bad");
  SessionResult result = run_session(device, app, build_plan(app, 1, 0), 5000);
  CHECK(result.artifacts->entries.size() == 3);
  CHECK(result.artifacts->api_calls.size() == 2);
}

TEST_CASE("event triggers fire every k events") {
  SimDevice device;
  device.register_app("com.sample.events", parse_sim_script(R"({
    "on_event_every_k": {"k": 10, "line": "500 ApiMonitor: Lfoo/A;->tick()V"}
  })"));
  AppDescriptor app = one_activity_app("com.sample.events");
  SessionResult result = run_session(device, app, build_plan(app, 1, 25), 5000);
  CHECK(result.artifacts->api_calls.size() == 2);  // events 10 and 20
}

TEST_CASE("log timestamps are clamped to non-decreasing") {
  SimDevice device;
  device.register_app("com.sample.clock", parse_sim_script(R"({
    "on_launch": [
      "200 Tag: a",
      "100 Tag: b",
      "300 Tag: c"
    ]
  })"));
  AppDescriptor app = one_activity_app("com.sample.clock");
  SessionResult result = run_session(device, app, build_plan(app, 1, 0), 5000);
  const auto& entries = result.artifacts->entries;
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].timestamp_ms == 200);
  CHECK(entries[1].timestamp_ms == 200);
  CHECK(entries[2].timestamp_ms == 300);
}

TEST_CASE("session timeout bounds the event loop") {
  SimDevice device;
  device.register_app("com.sample.slow", parse_sim_script(R"({
    "event_delay_ms": 5,
    "on_event_every_k": {"k": 1, "line": "1 Tag: tick"}
  })"));
  AppDescriptor app = one_activity_app("com.sample.slow");
  const std::int64_t timeout_ms = 200;
  SessionResult result =
      run_session(device, app, build_plan(app, 1, 3000), timeout_ms);
  REQUIRE(result.completed);
  // Within timeout + 10% grace, and far below the 15s a full run would take.
  CHECK(result.duration_ms <= timeout_ms + timeout_ms / 10);
  CHECK(result.artifacts->entries.size() < 3000);
}

TEST_CASE("run_batch preserves order and isolates failures") {
  SimDevice device;
  device.register_app("app.a", parse_sim_script(R"({
    "on_launch": ["100 ApiMonitor: Ljava/lang/Runtime;->exec(Ljava/lang/String;:=ls)V"]
  })"));
  device.register_app("app.b", parse_sim_script(R"({"install": "fail"})"));
  device.register_app("app.c", parse_sim_script(R"({
    "on_launch": ["100 ApiMonitor: Ljava/lang/Class;->getMethod()V"]
  })"));

  std::vector<LabeledApp> corpus = {
      {one_activity_app("app.a"), "benign"},
      {one_activity_app("app.b"), "benign"},
      {one_activity_app("app.c"), "malware"},
  };
  FeatureCatalog catalog = make_catalog();
  BatchConfig config;
  config.event_count = 0;
  config.catalog = &catalog;
  auto results = run_batch(device, corpus, config);
  REQUIRE(results.size() == 3);
  CHECK(results[0].app_id == "app.a");
  CHECK(results[1].app_id == "app.b");
  CHECK(results[2].app_id == "app.c");
  CHECK(results[0].completed);
  CHECK(!results[1].completed);
  CHECK(results[1].failure == FailureReason::kInstallError);
  CHECK(results[2].completed);
  CHECK(results[2].label == "malware");

  // Device reset between sessions: app.a's lines do not leak into app.c.
  REQUIRE(results[2].features.has_value());
  CHECK(results[2].features->counts[*catalog.find("getMethod")] == 1);
  CHECK(results[2].features->counts[*catalog.find("runtime.exec")] == 0);

  CHECK(run_batch(device, {}, config).empty());
}

TEST_CASE("batch extraction matches the serial reference") {
  FeatureCatalog catalog = make_catalog();
  auto bundles = build_stress_corpus(60, 25, catalog, 17);
  SimDevice device;
  auto corpus = stage_corpus(device, bundles);
  BatchConfig config;
  config.event_count = 0;
  auto results = run_batch(device, corpus, config);

  auto serial = results;
  auto parallel = results;
  attach_features_serial(serial, catalog);
  attach_features(parallel, catalog);
  for (std::size_t i = 0; i < results.size(); ++i) {
    REQUIRE(serial[i].features.has_value());
    CHECK(serial[i].features == parallel[i].features);
  }
}

TEST_CASE("device interactions never interleave across a batch") {
  FeatureCatalog catalog = make_catalog();
  auto bundles = build_stress_corpus(20, 5, catalog, 3);
  SimDevice device;
  auto corpus = stage_corpus(device, bundles);
  OverlapProbe probe(device);
  BatchConfig config;
  config.event_count = 32;
  config.catalog = &catalog;
  auto results = run_batch(probe, corpus, config);
  CHECK(results.size() == corpus.size());
  CHECK(probe.max_depth() == 1);
}

TEST_CASE("profile-conditional behavior appears only with a realistic identity") {
  SimDevice device;
  device.register_app("com.kungfu.sample", parse_sim_script(R"({
    "on_launch": ["100 ApiMonitor: Landroid/telephony/TelephonyManager;->getDeviceId()V"],
    "profile_conditional": [{
      "requires": "realistic_imei",
      "lines": ["200 ApiMonitor: Ljava/lang/Runtime;->exec(Ljava/lang/String;:=su)V"]
    }]
  })"));
  AppDescriptor app = one_activity_app("com.kungfu.sample");

  apply_profile(device, default_emulator_profile());
  SessionResult stock = run_session(device, app, build_plan(app, 1, 0), 5000);
  CHECK(stock.artifacts->api_calls.size() == 1);

  device.reset();
  apply_profile(device, realistic_profile());
  SessionResult enhanced = run_session(device, app, build_plan(app, 1, 0), 5000);
  CHECK(enhanced.artifacts->api_calls.size() == 2);
}

TEST_CASE("contacts_present condition keys off the pushed file") {
  testutil::TempDir tmp("contacts");
  auto contacts = tmp.path() / "contacts.vcf";
  write_text_file(contacts, "BEGIN:VCARD\nEND:VCARD\n");

  SimDevice device;
  device.register_app("com.sample.contacts", parse_sim_script(R"({
    "profile_conditional": [{
      "requires": "contacts_present",
      "lines": ["100 ApiMonitor: Landroid/content/ContentResolver;->query()V"]
    }]
  })"));
  AppDescriptor app = one_activity_app("com.sample.contacts");

  SessionResult without = run_session(device, app, build_plan(app, 1, 0), 5000);
  CHECK(without.artifacts->api_calls.empty());

  device.reset();
  DeviceProfile profile = realistic_profile();
  profile.contacts_path = contacts;
  apply_profile(device, profile);
  SessionResult with = run_session(device, app, build_plan(app, 1, 0), 5000);
  CHECK(with.artifacts->api_calls.size() == 1);
}

TEST_CASE("profile sensitivity over a scripted corpus") {
  FeatureCatalog catalog = make_catalog();
  auto bundles = build_sensitivity_corpus(
      8,
      {{"deviceId", 2, 1}, {"runtime.exec", 1, 3}},
      catalog);
  SimDevice device;
  auto corpus = stage_corpus(device, bundles);
  std::vector<AppDescriptor> apps;
  for (const auto& item : corpus) apps.push_back(item.app);

  BatchConfig base;
  base.event_count = 0;
  auto rows = profile_sensitivity_run(device, apps, default_emulator_profile(),
                                      realistic_profile(), catalog, base);
  REQUIRE(rows.size() == catalog.size());
  for (const SensitivityRow& row : rows) {
    CHECK(row.after >= row.before);  // conditional behavior only adds
    if (row.feature == "deviceId") {
      CHECK(row.before == 2);
      CHECK(row.after == 3);
    }
    if (row.feature == "runtime.exec") {
      CHECK(row.before == 1);
      CHECK(row.after == 4);
    }
  }

  // All-unconditional corpora see no movement.
  auto flat_bundles = build_sensitivity_corpus(5, {{"deviceId", 3, 0}}, catalog);
  SimDevice flat_device;
  auto flat_corpus = stage_corpus(flat_device, flat_bundles);
  std::vector<AppDescriptor> flat_apps;
  for (const auto& item : flat_corpus) flat_apps.push_back(item.app);
  auto flat_rows =
      profile_sensitivity_run(flat_device, flat_apps, default_emulator_profile(),
                              realistic_profile(), catalog, base);
  for (const SensitivityRow& row : flat_rows) {
    CHECK(row.before == row.after);
  }

  std::string table = render_sensitivity_table(rows);
  CHECK(table.find("deviceId") != std::string::npos);
  CHECK(table.find("before") != std::string::npos);
  // Zero rows are elided by default.
  CHECK(table.find("dexclass") == std::string::npos);
}

TEST_CASE("session results round trip through JSON lines") {
  FeatureCatalog catalog = make_catalog();
  auto bundles = build_stress_corpus(5, 3, catalog, 29);
  SimDevice device;
  auto corpus = stage_corpus(device, bundles);
  BatchConfig config;
  config.event_count = 0;
  config.catalog = &catalog;
  auto results = run_batch(device, corpus, config);

  std::string jsonl = session_results_to_jsonl(results);
  auto loaded = session_results_from_jsonl(jsonl);
  REQUIRE(loaded.size() == results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(loaded[i].app_id == results[i].app_id);
    CHECK(loaded[i].label == results[i].label);
    CHECK(loaded[i].completed == results[i].completed);
    REQUIRE(loaded[i].features.has_value());
    CHECK(loaded[i].features->counts == results[i].features->counts);
    CHECK(!loaded[i].artifacts.has_value());  // artifacts are not stored
  }
}
