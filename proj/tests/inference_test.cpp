// Copyright 2026 The intentbn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "intentbn/inference.hpp"
#include "test_support.hpp"

namespace intentbn {
namespace {

constexpr const char* kSprinkler = "turn on sprinkler";

const CompiledNetwork& weather() {
  static const CompiledNetwork net = compile(testing::load_fixture("weather.yaml"));
  return net;
}

Evidence sunny_day() { return Evidence().observe("weather", "sunny").observe("time_of_day", "day"); }
Evidence sunny() { return Evidence().observe("weather", "sunny"); }

// --- fixture values (hand-computed) ---------------------------------------

TEST(Infer, WeatherHardEvidence) {
  const auto r = infer(weather(), sunny_day());
  EXPECT_NEAR(r.posterior(kSprinkler), 0.625, 1e-12);
  EXPECT_EQ(r.decision, std::optional<std::string>(kSprinkler));
}

TEST(Infer, WeatherPartialEvidence) {
  const auto r = infer(weather(), sunny());
  EXPECT_NEAR(r.posterior(kSprinkler), 0.535, 1e-12);  // 0.6*0.625 + 0.4*0.400
  EXPECT_FALSE(r.decision.has_value());
}

TEST(Infer, WeatherEmptyEvidence) {
  const auto r = infer(weather(), Evidence{});
  EXPECT_NEAR(r.posterior(kSprinkler), 0.3725, 1e-12);  // (0.425 + 0.32) / 2
}

TEST(Infer, SoftEvidence) {
  Distribution d{{"cloudy", 0.5}, {"sunny", 0.5}};
  const auto r = infer(weather(), Evidence().observe("weather", d).observe("time_of_day", "night"));
  // weather term 0.5*0.25 + 0.5*0.75 = 0.5; night 0.05
  EXPECT_NEAR(r.posterior(kSprinkler), 0.275, 1e-12);
}

TEST(Infer, ThresholdExtremes) {
  auto c = testing::load_fixture("weather.yaml");
  c.decision_threshold = 0.0;
  EXPECT_TRUE(infer(compile(c), Evidence{}).decision.has_value());
  c.decision_threshold = 1.0;
  EXPECT_FALSE(infer(compile(c), sunny_day()).decision.has_value());
}

TEST(Infer, ThresholdIsStrict) {
  auto c = testing::load_fixture("weather.yaml");
  c.decision_threshold = 0.625;
  const auto r = infer(compile(c), sunny_day());
  ASSERT_EQ(r.posterior(kSprinkler), 0.625);
  EXPECT_FALSE(r.decision.has_value());
}

TEST(Infer, ZeroPosteriorsNormalizeUniformly) {
  ScenarioConfig c;
  c.contexts.push_back({"A", {{"x", 0.5}, {"y", 0.5}}});
  for (const char* name : {"i", "j"})
    c.intentions.push_back({name, {{"A", {{"x", LikertValue(0)}, {"y", LikertValue(0)}}}}});
  c.decision_threshold = 0.0;
  const auto r = infer(compile(c), Evidence{});
  EXPECT_EQ(r.normalized[0].second, 0.5);
  EXPECT_EQ(r.normalized[1].second, 0.5);
  EXPECT_FALSE(r.decision.has_value());  // 0 is not > 0
  EXPECT_TRUE(r.tie);
}

TEST(Infer, TieBreaksByDeclarationOrder) {
  ScenarioConfig c;
  c.contexts.push_back({"A", {{"x", 0.5}, {"y", 0.5}}});
  for (const char* name : {"later declared first", "declared second"})
    c.intentions.push_back({name, {{"A", {{"x", LikertValue(4)}, {"y", LikertValue(2)}}}}});
  c.decision_threshold = 0.1;
  const auto r = infer(compile(c), Evidence().observe("A", "x"));
  EXPECT_TRUE(r.tie);
  EXPECT_EQ(r.decision, std::optional<std::string>("later declared first"));
}

TEST(Infer, NormalizedSumsToOne) {
  const auto net = compile(testing::load_fixture("kimmi_workshop.yaml"));
  const auto r = infer(net, Evidence()
                                .observe("hand opening", "open")
                                .observe("human pose", "kneeling")
                                .observe("location of interest", "work station")
                                .observe("speech commands", "bring"));
  EXPECT_NEAR(r.posterior("robot bring tool"), (0.75 + 0.75 + 0.75 + 0.95) / 4, 1e-12);
  double sum = 0.0;
  for (const auto& [name, p] : r.normalized) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_EQ(r.decision, std::optional<std::string>("robot bring tool"));
  EXPECT_FALSE(r.tie);
}

TEST(Infer, EvidenceErrors) {
  auto code_of = [](const Evidence& e) {
    try {
      infer(weather(), e);
    } catch (const EvidenceError& ex) {
      return ex.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of(Evidence().observe("humidity", "high")), "UNKNOWN_CONTEXT");
  EXPECT_EQ(code_of(Evidence().observe("weather", "foggy")), "UNKNOWN_INSTANTIATION");
  EXPECT_EQ(code_of(Evidence().observe("weather", Distribution{{"sunny", 0.5}})), "NOT_NORMALIZED");
  EXPECT_EQ(code_of(Evidence().observe("weather", Distribution{{"sunny", 1.5}, {"rainy", -0.5}})),
            "INVALID_WEIGHT");
}

TEST(Infer, MugScenarioFlipsAtNight) {
  const auto net = compile(testing::load_fixture("mug.yaml"));
  auto top = [&](const char* time) {
    const auto r = infer(net, Evidence().observe("action", "grasp mug").observe("time", time));
    std::string best;
    double p = -1;
    for (const auto& [name, v] : r.posteriors)
      if (v > p) p = v, best = name;
    return best;
  };
  EXPECT_EQ(top("day"), "make coffee");
  EXPECT_EQ(top("night"), "store mug");
}

TEST(Infer, SpeechAndDirectedBeatsEitherAlone) {
  const auto net = compile(testing::load_fixture("speech_command.yaml"));
  const double both = infer(net, Evidence()
                                     .observe("speech_command", "pick_up")
                                     .observe("speech_directed", "yes"))
                          .posterior("pick up tool");
  const double command_only = infer(net, Evidence()
                                             .observe("speech_command", "pick_up")
                                             .observe("speech_directed", "no"))
                                  .posterior("pick up tool");
  const double directed_only = infer(net, Evidence()
                                              .observe("speech_command", "other")
                                              .observe("speech_directed", "yes"))
                                   .posterior("pick up tool");
  EXPECT_EQ(both, 0.95);
  EXPECT_GT(both, command_only);
  EXPECT_GT(both, directed_only);
}

// --- oracle ---------------------------------------------------------------

TEST(BruteForce, WeatherValues) {
  EXPECT_NEAR(brute_force_posterior(weather(), kSprinkler, sunny()), 0.535, 1e-12);
  EXPECT_NEAR(brute_force_posterior(weather(), kSprinkler, Evidence{}), 0.3725, 1e-12);
  EXPECT_EQ(brute_force_posterior(weather(), kSprinkler, sunny_day()),
            conditional_probability(weather(), kSprinkler,
                                    {{"weather", "sunny"}, {"time_of_day", "day"}}));
}

TEST(BruteForce, ConstantIntegrand) {
  for (int v = 0; v <= 5; ++v) {
    ScenarioConfig c;
    for (const char* name : {"A", "B"})
      c.contexts.push_back({name, {{"x", 1.0 / 3}, {"y", 1.0 / 3}, {"z", 1.0 / 3}}});
    IntentionDef def{"go", {}};
    for (const auto& ctx : c.contexts)
      def.influences.push_back(
          {ctx.name, {{"x", LikertValue(v)}, {"y", LikertValue(v)}, {"z", LikertValue(v)}}});
    c.intentions.push_back(def);
    c.decision_threshold = 0.5;
    EXPECT_NEAR(brute_force_posterior(compile(c), "go", Evidence{}), likert_to_probability(v),
                1e-15);
  }
}

TEST(BruteForce, RefusesHugeSpaces) {
  ScenarioConfig c;
  for (int k = 0; k < 11; ++k) {
    ContextDef ctx{"c" + std::to_string(k), {}};
    for (int l = 0; l < 4; ++l) ctx.instantiations.push_back({"v" + std::to_string(l), 0.25});
    c.contexts.push_back(ctx);
  }
  IntentionDef def{"go", {}};
  for (const auto& ctx : c.contexts) {
    ContextInfluence ci{ctx.name, {}};
    for (const auto& inst : ctx.instantiations) ci.values.emplace_back(inst.name, LikertValue(2));
    def.influences.push_back(ci);
  }
  c.intentions.push_back(def);
  c.decision_threshold = 0.5;
  const auto net = compile(c);
  EXPECT_THROW(brute_force_posterior(net, "go", Evidence{}), QueryError);
  // The factorized path has no such limit.
  EXPECT_NEAR(infer(net, Evidence{}).posterior("go"), 0.25, 1e-15);
}

TEST(Infer, AgreesWithBothOracles) {
  std::mt19937_64 rng(5150);
  for (int n = 0; n < 300; ++n) {
    const auto c = testing::random_scenario(rng, {.max_combined = 2});
    const auto net = compile(c);
    const auto e = testing::random_evidence(rng, c);
    const auto r = infer(net, e);
    for (const auto& i : c.intentions) {
      const double p = r.posterior(i.name);
      EXPECT_NEAR(p, brute_force_posterior(net, i.name, e), 1e-9);
      EXPECT_NEAR(p, testing::reference_posterior(c, i.name, e), 1e-9);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 0.95);
    }
  }
}

TEST(Infer, HardEvidenceOnEveryContextIsTheConditional) {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 200; ++n) {
    const auto c = testing::random_scenario(rng, {.max_combined = 2});
    const auto net = compile(c);
    const auto a = testing::random_assignment(rng, c);
    Evidence e;
    for (const auto& [ctx, inst] : a) e.observe(ctx, inst);
    const auto r = infer(net, e);
    for (const auto& i : c.intentions)
      EXPECT_NEAR(r.posterior(i.name),
                  conditional_probability(net, i.name, Assignment(a.begin(), a.end())), 1e-15);
  }
}

TEST(Infer, ExplicitPriorsEqualEmptyEvidence) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 200; ++n) {
    const auto c = testing::random_scenario(rng, {.max_combined = 2});
    const auto net = compile(c);
    Evidence priors;
    for (const auto& ctx : c.contexts) {
      Distribution d;
      for (const auto& inst : ctx.instantiations) d[inst.name] = inst.prior;
      priors.observe(ctx.name, d);
    }
    const auto a = infer(net, Evidence{});
    const auto b = infer(net, priors);
    EXPECT_EQ(a.posteriors, b.posteriors);
  }
}

TEST(Infer, ComplementSumsToOne) {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 200; ++n) {
    const auto c = testing::random_scenario(rng);
    const auto r = infer(compile(c), testing::random_evidence(rng, c));
    for (const auto& [name, p] : r.posteriors) EXPECT_EQ(p + r.complement(name), 1.0);
  }
}

TEST(Infer, RaisingThresholdNeverChangesTheArgmax) {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 200; ++n) {
    auto c = testing::random_scenario(rng, {.max_combined = 1});
    const auto e = testing::random_evidence(rng, c);
    c.decision_threshold = 0.0;
    const auto low = infer(compile(c), e);
    for (double t : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      c.decision_threshold = t;
      const auto high = infer(compile(c), e);
      if (high.decision) {
        EXPECT_EQ(high.decision, low.decision);
      }
      if (!low.decision) {
        EXPECT_FALSE(high.decision);
      }
    }
  }
}

// --- explanation ------------------------------------------------------------

TEST(Explain, SunnyOnly) {
  const auto ex = explain(weather(), sunny());
  const auto& ie = ex.at(kSprinkler);
  ASSERT_EQ(ie.terms.size(), 2u);
  EXPECT_EQ(ie.terms[0].context, "weather");
  EXPECT_NEAR(ie.terms[0].expected_observed, 0.75, 1e-15);
  EXPECT_NEAR(ie.terms[0].expected_prior, 0.425, 1e-15);
  EXPECT_NEAR(ie.terms[0].delta, 0.1625, 1e-15);
  EXPECT_NEAR(ie.terms[1].delta, 0.0, 1e-15);
  EXPECT_NEAR(ie.posterior - ie.baseline, 0.1625, 1e-12);
  EXPECT_EQ(ie.ranked_terms().front().context, "weather");
}

TEST(Explain, EmptyEvidenceHasNoDeltas) {
  const auto ex = explain(weather(), Evidence{});
  const auto& ie = ex.at(kSprinkler);
  for (const auto& t : ie.terms) EXPECT_EQ(t.delta, 0.0);
  EXPECT_EQ(ie.posterior, ie.baseline);
}

TEST(Explain, DecompositionIdentities) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 300; ++n) {
    const auto c = testing::random_scenario(rng, {.max_combined = 2});
    const auto net = compile(c);
    const auto e = testing::random_evidence(rng, c);
    const auto ex = explain(net, e);
    const double k = static_cast<double>(c.contexts.size());
    for (const auto& ie : ex.intentions) {
      double observed = 0.0, deltas = 0.0, corrections = 0.0;
      for (const auto& t : ie.terms) observed += t.expected_observed, deltas += t.delta;
      for (const auto& cc : ie.corrections) corrections += cc.correction;
      EXPECT_NEAR(observed / k + corrections, ie.posterior, 1e-12);
      EXPECT_NEAR(ie.posterior, testing::reference_posterior(c, ie.intention, e), 1e-9);
      if (ie.corrections.empty()) {
        EXPECT_NEAR(ie.posterior - ie.baseline, deltas, 1e-12);
      }
    }
  }
}

TEST(Explain, CombinedCorrectionClosesTheGap) {
  const auto c = testing::load_fixture("speech_command.yaml");
  const auto net = compile(c);
  const auto e = Evidence().observe("speech_command", "pick_up");
  const auto ex = explain(net, e);
  const auto& ie = ex.at("pick up tool");
  ASSERT_EQ(ie.corrections.size(), 1u);
  // P(directed=yes) * (0.95 - (0.75 + 0.05) / 2)
  EXPECT_NEAR(ie.corrections[0].correction, 0.3 * (0.95 - 0.4), 1e-12);
  double observed = 0.0;
  for (const auto& t : ie.terms) observed += t.expected_observed;
  EXPECT_NEAR(observed / 2 + ie.corrections[0].correction,
              brute_force_posterior(net, "pick up tool", e), 1e-12);
}

TEST(Explain, FlatContextsContributeNothing) {
  std::mt19937_64 rng(37);
  for (int n = 0; n < 100; ++n) {
    auto c = testing::random_scenario(rng);
    const LikertValue flat(static_cast<int>(n % 6));
    for (auto& [inst, v] : c.intentions[0].influences[0].values) v = flat;
    const auto ex = explain(compile(c), testing::random_evidence(rng, c));
    EXPECT_NEAR(ex.intentions[0].terms[0].delta, 0.0, 1e-15);
  }
}

// --- temporal step ------------------------------------------------------------

TEST(Step, WithoutPreviousIntentionContextIsInfer) {
  const auto out = step(weather(), std::string("turn on sprinkler"), sunny_day());
  EXPECT_EQ(out.result.posteriors, infer(weather(), sunny_day()).posteriors);
  EXPECT_EQ(out.state, std::optional<std::string>(kSprinkler));
}

TEST(Step, InjectsPreviousDecision) {
  const auto c = testing::load_fixture("tool_handover_temporal.yaml");
  const auto net = compile(c);

  const auto first =
      step(net, std::nullopt, Evidence().observe("speech commands", "bring").observe("hand opening", "open"));
  EXPECT_EQ(first.state, std::optional<std::string>("robot bring tool"));
  EXPECT_NEAR(first.result.posterior("robot bring tool"), (0.95 + 0.75 + 0.5) / 3, 1e-12);

  const auto quiet = Evidence().observe("speech commands", "silence").observe("hand opening", "closed");
  const auto second = step(net, first.state, quiet);
  auto expected = quiet;
  expected.observe("previous_intention", "robot bring tool");
  EXPECT_EQ(second.result.posteriors, infer(net, expected).posteriors);
  EXPECT_NEAR(second.result.posterior("robot store tool"),
              brute_force_posterior(net, "robot store tool", expected), 1e-12);
  EXPECT_EQ(second.state, std::optional<std::string>("robot store tool"));

  // Same observation without history does not reach the threshold.
  EXPECT_FALSE(step(net, std::nullopt, quiet).state.has_value());
}

TEST(Step, ExplicitObservationWins) {
  const auto net = compile(testing::load_fixture("tool_handover_temporal.yaml"));
  auto e = Evidence().observe("speech commands", "silence").observe("previous_intention", "none");
  const auto out = step(net, std::string("robot bring tool"), e);
  EXPECT_EQ(out.result.posteriors, infer(net, e).posteriors);
}

// --- wire format ----------------------------------------------------------------

TEST(ResultJson, Shape) {
  const auto j = to_json(infer(weather(), sunny()));
  EXPECT_TRUE(j["decision"].is_null());
  EXPECT_FALSE(j["tie"].get<bool>());
  EXPECT_NEAR(j["posteriors"][kSprinkler].get<double>(), 0.535, 1e-12);
  EXPECT_NEAR(j["explanation"][kSprinkler]["contexts"]["weather"]["delta"].get<double>(), 0.1625,
              1e-12);
  EXPECT_TRUE(j.contains("normalized"));
}

TEST(EvidenceJson, HardAndSoft) {
  const auto e = parse_evidence(R"({"weather": {"sunny": 0.25, "rainy": 0.75}, "time_of_day": "day"})");
  EXPECT_EQ(e, Evidence()
                   .observe("weather", Distribution{{"sunny", 0.25}, {"rainy", 0.75}})
                   .observe("time_of_day", "day"));
  EXPECT_THROW(parse_evidence("[1, 2]"), EvidenceError);
  EXPECT_THROW(parse_evidence("{\"weather\": 3}"), EvidenceError);
  EXPECT_THROW(parse_evidence("{\"weather\": {\"sunny\": \"a lot\"}}"), EvidenceError);
  EXPECT_THROW(parse_evidence("{not json"), EvidenceError);
}

}  // namespace
}  // namespace intentbn
