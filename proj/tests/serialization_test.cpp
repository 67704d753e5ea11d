// Copyright 2026 The magicsquare Authors
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

#include "serialization.hpp"

#include "gtest/gtest.h"

#include "errors.hpp"
#include "verification.hpp"

using namespace msq;

TEST(hex16, round_trip_and_width) {
  EXPECT_EQ(hex16(0xdeadbeef), "00000000deadbeef");
  EXPECT_EQ(parse_hex16("00000000deadbeef"), 0xdeadbeefu);
  EXPECT_EQ(parse_hex16(hex16(~0ull)), ~0ull);
  EXPECT_THROW(parse_hex16("xyz"), Error);
  EXPECT_THROW(parse_hex16("123"), Error);
}

TEST(record_json, schema) {
  RoundRecord r;
  r.round_index = 4;
  r.alice_setting = Setting::R2;
  r.bob_setting = Setting::C3;
  r.alice_panels = PanelGrid(Setting::R2, {Color::Red, Color::Green, Color::Red});
  r.bob_panels = PanelGrid(Setting::C3, {Color::Green, Color::Red, Color::Green});
  r.seed_fingerprint = 0xabc;
  const Json j = record_to_json(r);
  EXPECT_EQ(j["round"], 4);
  EXPECT_EQ(j["alice"]["setting"], "R2");
  EXPECT_EQ(j["alice"]["panels"].size(), 3u);
  EXPECT_EQ(j["alice"]["panels"][0], (Json{{"row", 2}, {"col", 1}, {"color", "red"}}));
  EXPECT_EQ(j["bob"]["panels"][1], (Json{{"row", 2}, {"col", 3}, {"color", "red"}}));
  EXPECT_EQ(j["seed_fingerprint"], "0000000000000abc");
  std::vector<std::string> keys;
  for (auto &[k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"round", "alice", "bob", "seed_fingerprint"}));
}

// Property: every simulated record survives a JSON round trip, including a
// pass through text.
TEST(record_json, property_round_trip) {
  for (Variant v : {Variant::Standard, Variant::SignedSymmetric}) {
    const BatchReport b = run_batch(500, SettingPolicy::uniform(), v, 2026);
    for (const RoundRecord &r : b.records) {
      const Json j = Json::parse(record_to_json(r).dump());
      ASSERT_EQ(record_from_json(j), r);
    }
  }
}

TEST(record_json, rejects_malformed_records) {
  const RoundRecord r = run_round(SettingPolicy::fixed(Setting::R1, Setting::C1), Variant::Standard, 1, 0);
  const Json good = record_to_json(r);
  auto expect_invalid = [](const Json &j) {
    try {
      record_from_json(j);
      FAIL() << j.dump();
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
  };
  Json bad = good;
  bad["alice"]["setting"] = "R9";
  expect_invalid(bad);
  bad = good;
  bad["alice"]["panels"][0]["color"] = "blue";
  expect_invalid(bad);
  bad = good;
  bad["alice"]["panels"][0]["row"] = 3;  // not lit by R1
  expect_invalid(bad);
  bad = good;
  bad["bob"]["panels"].erase(0);
  expect_invalid(bad);
  bad = good;
  bad.erase("seed_fingerprint");
  expect_invalid(bad);
  expect_invalid(Json::array());
}

TEST(batch_json, header_and_frequencies) {
  const BatchReport b = run_batch(200, SettingPolicy::fixed(Setting::R1, Setting::C2), Variant::Standard, 5);
  const Json j = batch_to_json(b);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["policy"], "fixed:R1:C2");
  EXPECT_EQ(j["variant"], "standard");
  EXPECT_EQ(j["rounds"], 200);
  EXPECT_EQ(j["parity_violations"], 0);
  EXPECT_EQ(j["correlation_violations"], 0);
  EXPECT_EQ(j["records"].size(), 200u);
  const Json &r1 = j["frequencies"]["alice"]["R1"];
  EXPECT_EQ(r1["uses"], 200);
  std::uint64_t sum = 0;
  for (const Json &o : r1["outcomes"]) sum += o["count"].get<std::uint64_t>();
  EXPECT_EQ(sum, 200u);
  EXPECT_EQ(r1["outcomes"][0]["colors"], "GGG");
  EXPECT_NE(batch_to_text(b).find("fixed:R1:C2"), std::string::npos);
}

TEST(report_json, verify_and_classical) {
  const VerifyReport v = run_verification(Variant::Standard);
  EXPECT_TRUE(v.all_passed());
  const Json vj = verify_to_json(v);
  EXPECT_TRUE(vj.contains("checks"));
  const ClassicalSummary c = classical_summary(Variant::Standard);
  const std::string text = classical_to_text(c);
  EXPECT_NE(text.find("512 colorings, 0 satisfy all constraints, max satisfied 5"), std::string::npos);
  EXPECT_NE(text.find("3x3 game: classical 8/9, quantum 1"), std::string::npos);
  EXPECT_NE(text.find("6x6 game: classical 34/36, quantum 1"), std::string::npos);
  const Json cj = classical_to_json(c);
  EXPECT_EQ(cj.dump().find("NaN"), std::string::npos);
}

TEST(report_json, signed_verification_reports_literal_mask_discrepancy) {
  const VerifyReport v = run_verification(Variant::SignedSymmetric);
  EXPECT_TRUE(v.all_passed());
  const std::string text = verify_to_text(v);
  EXPECT_NE(text.find("(3,2)(3,3)"), std::string::npos);
  EXPECT_NE(text.find("sign-mask"), std::string::npos);
}

TEST(constraint_json, lists_violations) {
  const Json j = constraint_report_to_json(check_coloring(Coloring{}, Variant::Standard));
  EXPECT_EQ(j["satisfied_count"], 5);
  EXPECT_EQ(j["all_satisfied"], false);
  EXPECT_EQ(j["violated"], (Json::array({"C3"})));
}
