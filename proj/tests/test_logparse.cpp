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

#include <random>
#include <string>

#include "doctest.h"
#include "droidtrace/api_call.hpp"
#include "droidtrace/behavior_report.hpp"
#include "droidtrace/error.hpp"
#include "droidtrace/intent_actions.hpp"
#include "droidtrace/log_entry.hpp"
#include "droidtrace/text.hpp"
#include "support/testutil.hpp"

using namespace droidtrace;

TEST_CASE("log line grammar") {
  auto entry = parse_logcat_line(
      "1250 ApiMonitor: Landroid/telephony/SmsManager;->sendTextMessage(...)V");
  REQUIRE(entry.has_value());
  CHECK(entry->timestamp_ms == 1250);
  CHECK(entry->tag == "ApiMonitor");
  CHECK(entry->payload ==
        "Landroid/telephony/SmsManager;->sendTextMessage(...)V");

  CHECK(!parse_logcat_line("").has_value());
  CHECK(!parse_logcat_line("garbage without separator").has_value());
  CHECK(!parse_logcat_line("-5 TAG: x").has_value());
  CHECK(!parse_logcat_line("12x TAG: x").has_value());
  CHECK(!parse_logcat_line("1250 no colon here").has_value());
  CHECK(!parse_logcat_line("1250 Bad Tag: x").has_value());
  CHECK(!parse_logcat_line(" 1250 TAG: x").has_value());
  CHECK(!parse_logcat_line("99999999999999999999999 TAG: x").has_value());

  auto crlf = parse_logcat_line("7 DroidBox: {}\r");
  REQUIRE(crlf.has_value());
  CHECK(crlf->payload == "{}");

  auto empty_payload = parse_logcat_line("3 T:");
  REQUIRE(empty_payload.has_value());
  CHECK(empty_payload->payload.empty());

  LogEntry e{42, "Tag", "payload text"};
  CHECK(parse_logcat_line(render_logcat_line(e)) == e);
}

namespace {

constexpr const char* kSmsPayload =
    "Landroid/telephony/SmsManager;->sendTextMessage(Ljava/lang/String;:=1782"
    "|Ljava/lang/String;:=null|Ljava/lang/String;:=532711"
    "|Landroid/app/PendingIntent;:=null|Landroid/app/PendingIntent;:=null)V";

constexpr const char* kExecPayload =
    "Ljava/lang/Runtime;->exec([Ljava/lang/String;:="
    "{/data/data/org.zenthought.flashrec/cache/asroot,"
    "/data/data/org.zenthought.flashrec/cache/explXXXXXX,"
    "/data/data/org.zenthought.flashrec/cache/dumpimage,recovery,"
    "/mnt/sdcard/recovery-backup.img})Ljava/lang/Process;:=Process[id=541]";

}  // namespace

TEST_CASE("sendTextMessage payload parses to the structured record") {
  ApiCallRecord record = parse_api_call_payload(kSmsPayload);
  CHECK(record.owner.class_name() == "android/telephony/SmsManager");
  CHECK(record.method == "sendTextMessage");
  REQUIRE(record.args.size() == 5);
  CHECK(record.args[0].value == "1782");
  CHECK(record.args[1].value == "null");
  CHECK(record.args[2].value == "532711");
  CHECK(record.args[3].value == "null");
  CHECK(record.args[4].value == "null");
  CHECK(!record.return_descriptor.has_value());
  CHECK(!record.return_value.has_value());
}

TEST_CASE("exec payload: array argument and valued return") {
  ApiCallRecord record = parse_api_call_payload(kExecPayload);
  CHECK(record.owner.class_name() == "java/lang/Runtime");
  CHECK(record.method == "exec");
  REQUIRE(record.args.size() == 1);
  CHECK(record.args[0].descriptor.array_depth() == 1);
  CHECK(record.args[0].descriptor.class_name() == "java/lang/String");
  REQUIRE(record.return_descriptor.has_value());
  CHECK(record.return_descriptor->class_name() == "java/lang/Process");
  REQUIRE(record.return_value.has_value());
  CHECK(*record.return_value == "Process[id=541]");
}

TEST_CASE("payload tolerates whitespace around tokens") {
  ApiCallRecord spaced = parse_api_call_payload(
      "Lfoo/A;  ->  f ( I := 1 | I := 2 ) V");
  CHECK(spaced.method == "f");
  REQUIRE(spaced.args.size() == 2);
  CHECK(spaced.args[0].value == "1");
  CHECK(spaced.args[1].value == "2");
}

TEST_CASE("spaced renderings parse after whitespace stripping") {
  // Descriptor tokens typeset with internal spaces are out of grammar;
  // strip_whitespace canonicalizes them first.
  std::string spaced =
      "Landroid / telephony / SmsManager; -> sendTextMessage "
      "( Ljava / lang / String ;:= 1782 | Ljava / lang / String ;:= null "
      "| Ljava / lang / String ;:= 532711 | Landroid / app / Pending Intent "
      ";:= null | Landroid / app / Pending Intent ;:= null ) V";
  CHECK(parse_api_call_payload(strip_whitespace(spaced)) ==
        parse_api_call_payload(kSmsPayload));
}

TEST_CASE("empty argument list payload") {
  ApiCallRecord record = parse_api_call_payload("Lfoo/A;->f()V");
  CHECK(record.args.empty());
  CHECK(!record.return_descriptor.has_value());
  CHECK(!record.return_value.has_value());
}

TEST_CASE("payload errors") {
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;f()V"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f(I:=1"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f(I:=1]V"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f(Q:=1)V"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f(I)V"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f()"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f()V:=x"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("Lfoo/A;->f()V junk"), ParseError);
  CHECK_THROWS_AS(parse_api_call_payload("[I->f()V"), ParseError);
  // A '|' inside a value splits; the stray tail fails descriptor parsing
  // instead of misparsing silently.
  CHECK_THROWS_AS(
      parse_api_call_payload("Lfoo/A;->f(Ljava/lang/String;:=a|b)V"),
      ParseError);
}

TEST_CASE("payload round trip on '|'-free values") {
  CHECK(render_api_call_payload(parse_api_call_payload(kSmsPayload)) ==
        kSmsPayload);
  CHECK(render_api_call_payload(parse_api_call_payload(kExecPayload)) ==
        kExecPayload);

  std::mt19937_64 rng(5);
  static constexpr char kValueChars[] =
      "abcdefghijklmnopqrstuvwxyz0123456789._/=,:";
  for (int iter = 0; iter < 300; ++iter) {
    ApiCallRecord record;
    record.owner =
        FieldDescriptor::of_class(testutil::random_class_name(rng));
    record.method = testutil::random_method(rng);
    std::size_t nargs = rng() % 4;
    for (std::size_t i = 0; i < nargs; ++i) {
      std::string value;
      std::size_t len = rng() % 10;
      for (std::size_t c = 0; c < len; ++c) {
        value += kValueChars[rng() % (sizeof(kValueChars) - 1)];
      }
      record.args.push_back({testutil::random_descriptor(rng), value});
    }
    if (rng() % 2 == 0) {
      record.return_descriptor = testutil::random_descriptor(rng);
      if (rng() % 2 == 0) record.return_value = "ret";
    }
    CHECK(parse_api_call_payload(render_api_call_payload(record)) == record);
  }
}

TEST_CASE("behavior report parsing") {
  BehaviorReport empty = parse_behavior_report("{}");
  CHECK(empty.sections.empty());
  CHECK(!empty.recvaction_present);
  CHECK(empty.empty());

  BehaviorReport sms = parse_behavior_report(
      R"({"sendsms": [{"number": "1782", "message": "532711"}]})");
  CHECK(sms.entry_count("sendsms") == 1);
  CHECK(sms.entry_count("SENDSMS") == 1);  // keys are case-insensitive
  CHECK(sms.entry_count("phonecalls") == 0);

  CHECK_THROWS_AS(parse_behavior_report("not json"), ParseError);
  CHECK_THROWS_AS(parse_behavior_report("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_behavior_report(R"({"recvaction": 5})"), ParseError);
  CHECK_THROWS_AS(parse_behavior_report(R"({"recvaction": {"a": 1}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_behavior_report(R"({"sendsms": {"0.1": {}}})"),
                  ParseError);
}

TEST_CASE("recvaction object and array encodings") {
  BehaviorReport obj = parse_behavior_report(R"({
    "recvaction": {
      "com.google.search.Receiver": "Android.intent.action.BOOT_COMPLETED",
      "com.Android.view.custom.BaseABroadcastReceiver":
        "Android.intent.action.UMS_DISCONNECTED"
    }
  })");
  REQUIRE(obj.recvaction.size() == 2);
  CHECK(obj.recvaction[0].receiver == "com.google.search.Receiver");
  CHECK(obj.recvaction[0].action == "Android.intent.action.BOOT_COMPLETED");

  // The array form expresses duplicate receiver classes.
  BehaviorReport arr = parse_behavior_report(R"({
    "recvaction": [["r.A", "android.intent.action.SMS_RECEIVED"],
                   ["r.A", "android.intent.action.SMS_RECEIVED"]]
  })");
  CHECK(arr.recvaction.size() == 2);
  CHECK(arr.entry_count("recvaction") == 2);
}

TEST_CASE("unknown report keys are preserved") {
  BehaviorReport report = parse_behavior_report(
      R"({"sendsms": [], "custom_key": {"x": 1}, "apkName": "app.apk"})");
  CHECK(report.sections.count("sendsms") == 1);  // present though empty
  CHECK(report.entry_count("sendsms") == 0);
  CHECK(report.extras.contains("custom_key"));
  CHECK(report.extras.contains("apkName"));
  auto echo = report.to_json();
  CHECK(echo.contains("custom_key"));
  CHECK(echo.contains("sendsms"));
}

TEST_CASE("hashes object and array forms") {
  BehaviorReport obj = parse_behavior_report(
      R"({"hashes": {"md5": "aa", "sha1": "bb", "sha256": "cc"}})");
  REQUIRE(obj.hashes.has_value());
  CHECK(obj.hashes->md5 == "aa");
  BehaviorReport arr =
      parse_behavior_report(R"({"hashes": ["aa", "bb", "cc"]})");
  REQUIRE(arr.hashes.has_value());
  CHECK(arr.hashes->sha256 == "cc");
  CHECK_THROWS_AS(parse_behavior_report(R"({"hashes": 3})"), ParseError);
}

TEST_CASE("report fragment merge") {
  BehaviorReport base = parse_behavior_report(R"({"sendsms": [{"n": 1}]})");
  BehaviorReport frag = parse_behavior_report(
      R"({"sendsms": [{"n": 2}], "opennet": [{"ip": "10.0.0.1"}],
          "recvaction": [["r.B", "android.intent.action.BOOT_COMPLETED"]],
          "hashes": ["x", "y", "z"]})");
  base.merge_fragment(frag);
  CHECK(base.entry_count("sendsms") == 2);
  CHECK(base.entry_count("opennet") == 1);
  CHECK(base.entry_count("recvaction") == 1);
  REQUIRE(base.hashes.has_value());
  CHECK(base.hashes->md5 == "x");
}

TEST_CASE("intent action canonicalization") {
  IntentAction boot = canonicalize_action("Android.intent.action.BOOT_COMPLETED");
  REQUIRE(boot.canonical.has_value());
  CHECK(*boot.canonical == "BOOT_COMPLETED");
  CHECK(*boot.group == EventGroup::kBoot);

  IntentAction ums = canonicalize_action("Android.intent.action.UMS_DISCONNECTED");
  CHECK(*ums.canonical == "UMS_DISCONNECTED");
  CHECK(*ums.group == EventGroup::kUsb);

  IntentAction custom = canonicalize_action("com.example.CUSTOM_ACTION");
  CHECK(custom.raw == "com.example.CUSTOM_ACTION");
  CHECK(!custom.canonical.has_value());
  CHECK(!custom.group.has_value());

  // Case folding: figure-style capitalization and lowercase agree.
  CHECK(canonicalize_action("android.intent.action.boot_completed").canonical ==
        boot.canonical);
  // Bare constant names resolve too.
  CHECK(canonicalize_action("SIG_STR").group == EventGroup::kSys);
  CHECK(canonicalize_action("PACKAGE_INSTALL").group == EventGroup::kPkg);
}

TEST_CASE("extract_intent_actions yields one action per pair") {
  BehaviorReport report = parse_behavior_report(R"({
    "recvaction": [["a", "android.intent.action.BOOT_COMPLETED"],
                   ["b", "com.custom.THING"],
                   ["c", "android.intent.action.SMS_RECEIVED"]]
  })");
  auto actions = extract_intent_actions(report);
  REQUIRE(actions.size() == 3);
  CHECK(actions[0].canonical == "BOOT_COMPLETED");
  CHECK(!actions[1].canonical.has_value());
  CHECK(actions[2].canonical == "SMS_RECEIVED");
  for (const auto& action : actions) {
    if (action.canonical) {
      CHECK(find_intent_event(*action.canonical).has_value());
    }
  }
}

TEST_CASE("parsers survive fuzzed input") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 2000; ++i) {
    std::string bytes = testutil::random_bytes(rng, 80);
    parse_logcat_line(bytes);  // optional-returning, must not throw
    try {
      parse_api_call_payload(bytes);
    } catch (const ParseError&) {
    }
    try {
      parse_behavior_report(bytes);
    } catch (const ParseError&) {
    }
  }
}
