#include <cmath>
#include <cstring>
#include <stdexcept>

#include <catch_amalgamated.hpp>

#include "rlc/montecarlo.hpp"

using rlc::ChannelMode;
using rlc::CodingConfig;
using rlc::EstimateRow;
using rlc::ModelOptions;
using rlc::TrialPlan;

namespace {

CodingConfig small_config() {
    CodingConfig cfg;
    cfg.packet_count = 10;
    cfg.symbols_per_packet = 20;
    cfg.info_symbols = 20;
    cfg.field_bits = 1;
    cfg.snr_db = 3.5;
    return cfg;
}

bool same_estimate(const EstimateRow& a, const EstimateRow& b) {
    return a.trials == b.trials && a.mean_t == b.mean_t &&
           a.stderr_t == b.stderr_t && a.s_hat == b.s_hat &&
           a.r_hat == b.r_hat && a.stderr_s == b.stderr_s &&
           a.stderr_r == b.stderr_r && a.ci95_s == b.ci95_s &&
           a.ci95_r == b.ci95_r;
}

}  // namespace

TEST_CASE("identical plans produce bit-identical estimates", "[montecarlo]") {
    TrialPlan plan;
    plan.config = small_config();
    plan.mode = ChannelMode::SymbolLevel;
    plan.trials = 2000;
    plan.base_seed = 111;
    const EstimateRow a = rlc::run_trials(plan);
    const EstimateRow b = rlc::run_trials(plan);
    CHECK(same_estimate(a, b));

    plan.threads = 3;  // chunking must not change the outcome
    const EstimateRow c = rlc::run_trials(plan);
    CHECK(same_estimate(a, c));

    plan.threads = 1;
    plan.base_seed = 112;
    const EstimateRow d = rlc::run_trials(plan);
    CHECK_FALSE(same_estimate(a, d));
}

TEST_CASE("plan validation", "[montecarlo]") {
    TrialPlan plan;
    plan.config = small_config();
    plan.trials = 0;
    plan.base_seed = 1;
    CHECK_THROWS_AS(rlc::run_trials(plan), std::invalid_argument);

    plan.trials = 10;
    plan.mode = ChannelMode::SymbolLevel;
    plan.options.const_epsilon = 0.5;
    CHECK_THROWS_AS(rlc::run_trials(plan), std::invalid_argument);

    CHECK_THROWS_AS(
        rlc::validate_against_model(plan.config, plan.options, 10, 1),
        std::invalid_argument);
}

TEST_CASE("trial cap aborts near-certain erasure", "[montecarlo]") {
    TrialPlan plan;
    plan.config = small_config();
    plan.options.const_epsilon = 1.0;
    plan.trials = 1;
    plan.base_seed = 3;
    plan.trial_cap = 1000;
    CHECK_THROWS_AS(rlc::run_trials(plan), rlc::TrialCapExceeded);
}

TEST_CASE("erasure-free channel needs E[N] transmissions", "[montecarlo]") {
    // packet mode with a fixed zero erasure probability and a large
    // alphabet: the mean transmission count collapses onto K
    TrialPlan plan;
    plan.config = small_config();
    plan.config.field_bits = 16;
    plan.options.const_epsilon = 0.0;
    plan.trials = 20'000;
    plan.base_seed = 42;
    const EstimateRow est = rlc::run_trials(plan);
    const double expected =
        rlc::expected_combinations(10, std::ldexp(1.0, 16));
    CHECK(std::abs(est.mean_t - expected) < 3.0 * est.stderr_t + 1e-9);
    CHECK(est.mean_t >= 10.0);
}

TEST_CASE("packet erasures thin the survivor stream", "[montecarlo]") {
    TrialPlan plan;
    plan.config = small_config();
    plan.options.const_epsilon = 0.5;
    plan.trials = 100'000;
    plan.base_seed = 2025;
    const EstimateRow est = rlc::run_trials(plan);
    const double expected = rlc::expected_combinations(10, 2.0) / 0.5;
    CHECK(std::abs(est.mean_t - expected) < 3.0 * est.stderr_t);
    CHECK(est.s_hat >= 0.0);
    CHECK(est.s_hat <= 1.0);
    CHECK(est.stderr_s >= 0.0);
}

TEST_CASE("error-free symbols reduce to the combination count",
          "[montecarlo]") {
    TrialPlan plan;
    plan.config = small_config();
    plan.config.snr_db = 1000.0;  // symbol error 0: no packet ever lost
    plan.mode = ChannelMode::SymbolLevel;
    plan.trials = 20'000;
    plan.base_seed = 5;
    const EstimateRow est = rlc::run_trials(plan);
    const double expected = rlc::expected_combinations(10, 2.0);
    CHECK(std::abs(est.mean_t - expected) < 3.0 * est.stderr_t);
}

TEST_CASE("both channel modes estimate the same throughput", "[montecarlo]") {
    CodingConfig cfg;
    cfg.packet_count = 10;
    cfg.symbols_per_packet = 20;
    cfg.info_symbols = 20;
    cfg.field_bits = 2;
    cfg.snr_db = 3.5;

    TrialPlan plan;
    plan.config = cfg;
    plan.trials = 20'000;
    plan.base_seed = 900;
    plan.mode = ChannelMode::PacketErasure;
    const EstimateRow packet = rlc::run_trials(plan);
    plan.mode = ChannelMode::SymbolLevel;
    const EstimateRow symbol = rlc::run_trials(plan);

    const double spread = std::hypot(packet.stderr_s, symbol.stderr_s);
    CHECK(std::abs(packet.s_hat - symbol.s_hat) < 4.0 * spread);
}

TEST_CASE("disjoint seed ranges are statistically compatible",
          "[montecarlo]") {
    TrialPlan plan;
    plan.config = small_config();
    plan.options.const_epsilon = 0.25;
    plan.trials = 20'000;
    plan.base_seed = 1'000'000;
    const EstimateRow a = rlc::run_trials(plan);
    plan.base_seed = 2'000'000;
    const EstimateRow b = rlc::run_trials(plan);
    const double spread = std::hypot(a.stderr_t, b.stderr_t);
    CHECK(std::abs(a.mean_t - b.mean_t) < 4.0 * spread);
}

TEST_CASE("validation agrees with the model at a pre-coded point",
          "[montecarlo]") {
    CodingConfig cfg;
    cfg.packet_count = 80;
    cfg.symbols_per_packet = 200;
    cfg.info_symbols = 100;
    cfg.field_bits = 3;
    cfg.snr_db = 3.5;
    cfg.precode = true;
    const auto rows =
        rlc::validate_against_model(cfg, ModelOptions{}, 3000, 77);
    REQUIRE(rows.size() == 2);
    for (const auto& v : rows) {
        INFO("mode " << rlc::to_string(v.mode) << " z_s=" << v.z_s);
        CHECK(std::abs(v.z_s) < 4.0);
        CHECK(v.agrees);
        CHECK(v.estimate.s_hat >= 0.0);
        CHECK(v.estimate.s_hat <= 1.0);
    }
}
