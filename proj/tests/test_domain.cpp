/*
 * Copyright (C) 2026 The smartlearn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "test_support.hpp"

namespace smartlearn {
namespace {

using test::must_validate;
using test::small_document;

bool has_error(const ValidationResult& r, ErrorKind kind) {
  return std::any_of(r.errors.begin(), r.errors.end(), [&](const ValidationError& e) { return e.kind == kind; });
}

TEST(ValidateScenario, NormalizedMixResolves) {
  auto r = validate_scenario(small_document());
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.errors.empty());
  const auto& s = *r.scenario;
  ASSERT_EQ(s.mix().size(), 2u);
  EXPECT_EQ(s.mix()[0].first, 0u);
  EXPECT_EQ(s.mix()[1].first, 1u);
  EXPECT_EQ(s.bundle(0).size(), 2u);
  EXPECT_EQ(s.learning_params(0).p_threshold, 0.85);
}

TEST(ValidateScenario, MixNotNormalized) {
  auto doc = small_document();
  doc.config.archetype_mix = {{"A", 0.6}, {"B", 0.5}};
  auto r = validate_scenario(doc);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, ErrorKind::MixNotNormalized));
}

TEST(ValidateScenario, MixToleranceIsOneInABillion) {
  auto doc = small_document();
  doc.config.archetype_mix = {{"A", 0.6 + 5e-10}, {"B", 0.4}};
  EXPECT_TRUE(validate_scenario(doc).ok());
  doc.config.archetype_mix = {{"A", 0.6 + 5e-9}, {"B", 0.4}};
  EXPECT_TRUE(has_error(validate_scenario(doc), ErrorKind::MixNotNormalized));
}

TEST(ValidateScenario, BadWindowWhenReturnPrecedesLeave) {
  auto doc = small_document();
  doc.archetypes[0] = test::archetype("A", "17:00", "18:00", "08:00", "09:00", {{"fridge", 1}});
  auto r = validate_scenario(doc);
  EXPECT_TRUE(has_error(r, ErrorKind::BadWindow));
}

TEST(ValidateScenario, BadWindowOnReversedOrTouchingWindows) {
  auto doc = small_document();
  doc.archetypes[0] = test::archetype("A", "09:30", "08:30", "17:30", "18:30", {});
  EXPECT_TRUE(has_error(validate_scenario(doc), ErrorKind::BadWindow));
  doc.archetypes[0] = test::archetype("A", "08:30", "12:00", "12:00", "18:30", {});
  EXPECT_TRUE(has_error(validate_scenario(doc), ErrorKind::BadWindow));
  doc.archetypes[0] = test::archetype("A", "08:30", "08:30", "12:00", "12:00", {});
  EXPECT_TRUE(validate_scenario(doc).ok());
}

TEST(ValidateScenario, UnknownReferences) {
  auto doc = small_document();
  doc.config.archetype_mix = {{"A", 0.6}, {"C", 0.4}};
  doc.archetypes[0].appliances.push_back({"toaster", 1});
  auto r = validate_scenario(doc);
  EXPECT_TRUE(has_error(r, ErrorKind::UnknownArchetype));
  EXPECT_TRUE(has_error(r, ErrorKind::UnknownAppliance));
}

TEST(ValidateScenario, BadProfileLength) {
  auto doc = small_document();
  doc.appliances[1].usage_profile.resize(47);
  EXPECT_TRUE(has_error(validate_scenario(doc), ErrorKind::BadProfileLength));
}

TEST(ValidateScenario, CollectsEveryViolation) {
  auto doc = small_document();
  doc.config.archetype_mix = {{"A", 0.6}, {"B", 0.5}};
  doc.appliances[1].usage_profile.resize(3);
  doc.appliances[0].power_watts = 0.0;
  doc.config.tick_minutes = 7;
  doc.config.network_mean_degree = 3;
  auto r = validate_scenario(doc);
  EXPECT_TRUE(has_error(r, ErrorKind::MixNotNormalized));
  EXPECT_TRUE(has_error(r, ErrorKind::BadProfileLength));
  EXPECT_TRUE(has_error(r, ErrorKind::InvalidValue));
  EXPECT_TRUE(has_error(r, ErrorKind::BadDegree));
  EXPECT_GE(r.errors.size(), 5u);
}

TEST(ValidateScenario, RangeChecks) {
  auto doc = small_document();
  doc.archetypes[0].awareness = 1.5;
  doc.archetypes[1].learning_rate = 0.0;
  doc.archetypes[1].max_level = 1.2;
  doc.config.p_threshold = 0.0;
  doc.config.network_mean_degree = 50;  // == population
  auto r = validate_scenario(doc);
  EXPECT_EQ(std::count_if(r.errors.begin(), r.errors.end(),
                          [](const auto& e) { return e.kind == ErrorKind::InvalidValue; }),
            4);
  EXPECT_TRUE(has_error(r, ErrorKind::BadDegree));
}

TEST(ValidateScenario, SeedingExperiencedNeedsReachableThreshold) {
  auto doc = small_document();
  doc.archetypes[1].max_level = 0.85;
  EXPECT_TRUE(validate_scenario(doc).ok());
  doc.config.initial_experienced_fraction = 0.5;
  EXPECT_TRUE(has_error(validate_scenario(doc), ErrorKind::UnreachableThreshold));
}

TEST(ParseScenario, SampleConfigParsesAndValidates) {
  auto doc = test::sample_document();
  EXPECT_EQ(doc.config.population, 1000);
  EXPECT_EQ(doc.config.tick_minutes, 10);
  EXPECT_DOUBLE_EQ(doc.config.p_threshold, 0.85);
  ASSERT_EQ(doc.archetypes.size(), 2u);
  EXPECT_EQ(doc.archetypes[0].leave_start, TimeOfDay::hm(8, 30));
  EXPECT_EQ(doc.archetypes[0].return_end, TimeOfDay::hm(18, 30));
  EXPECT_TRUE(validate_scenario(doc).ok());
}

TEST(ParseScenario, ReportsMalformedFields) {
  auto r = parse_scenario_json(R"({"scenario": {"population": "many", "archetype_mix": 3},
                                   "archetypes": [{"id": "x", "leave_window": ["8:30", "09:30"]}],
                                   "appliances": [{}]})");
  EXPECT_FALSE(r.document);
  EXPECT_GE(r.errors.size(), 5u);
  for (const auto& e : r.errors) {
    EXPECT_EQ(e.kind, ErrorKind::Malformed) << e.message;
  }
}

TEST(ParseScenario, RejectsNonJson) {
  EXPECT_FALSE(parse_scenario_json("{not json").document);
  EXPECT_FALSE(parse_scenario_json("[]").document);
  EXPECT_FALSE(parse_scenario_json("").document);
}

// Totality: truncations and byte corruptions of a valid document must yield
// a scenario or errors, never an exception or crash.
TEST(ParseScenario, TotalOverCorruptedInputs) {
  const auto text = read_text_file(SMARTLEARN_SAMPLE_CONFIG);
  Rng rng(2024);
  const std::string junk = "{}[]\",:0-9.eE x\n";
  for (int trial = 0; trial < 400; ++trial) {
    std::string mutated = text;
    if (trial % 4 == 0) {
      mutated.resize(static_cast<std::size_t>(uniform_below(rng, mutated.size())));
    } else {
      for (int k = 0; k < 1 + trial % 5; ++k) {
        auto pos = static_cast<std::size_t>(uniform_below(rng, mutated.size()));
        mutated[pos] = junk[static_cast<std::size_t>(uniform_below(rng, junk.size()))];
      }
    }
    ASSERT_NO_THROW({
      auto parsed = parse_scenario_json(mutated);
      if (parsed.document) {
        auto validated = validate_scenario(*parsed.document);
        EXPECT_TRUE(validated.ok() || !validated.errors.empty());
      } else {
        EXPECT_FALSE(parsed.errors.empty());
      }
    });
  }
}

TEST(ParseScenario, ConfigEchoRoundTrips) {
  auto doc = test::sample_document();
  nlohmann::json wrapped = nlohmann::json::parse(read_text_file(SMARTLEARN_SAMPLE_CONFIG));
  wrapped["scenario"] = config_to_json(doc.config);
  auto again = parse_scenario_json(wrapped.dump());
  ASSERT_TRUE(again.document);
  EXPECT_EQ(config_to_json(again.document->config), config_to_json(doc.config));
}

} // namespace
} // namespace smartlearn
