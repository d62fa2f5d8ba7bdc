#include <cmath>
#include <cstdint>
#include <vector>

#include <catch_amalgamated.hpp>

#include "rlc/coding.hpp"
#include "rlc/model.hpp"

using rlc::CodedPacket;
using rlc::Decoder;
using rlc::Field;
using rlc::Generation;
using rlc::Symbol;

TEST_CASE("encode with zero and unit coefficient vectors", "[coding]") {
    Field f(3);
    Generation gen = Generation::random(f, 4, 6, 1234);
    std::vector<Symbol> zeros(4, 0);
    CodedPacket pkt = rlc::encode(f, gen, zeros);
    CHECK(pkt.payload == std::vector<Symbol>(6, 0));

    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<Symbol> unit(4, 0);
        unit[i] = 1;
        pkt = rlc::encode(f, gen, unit);
        CHECK(std::equal(pkt.payload.begin(), pkt.payload.end(),
                         gen.packet(i).begin()));
    }
}

TEST_CASE("encode over GF(2) is per-position xor", "[coding]") {
    Field f(1);
    Generation gen(2, 2);
    gen.packet(0)[0] = 1;  // s1 = (1, 0)
    gen.packet(1)[0] = 1;  // s2 = (1, 1)
    gen.packet(1)[1] = 1;
    const std::vector<Symbol> alpha = {1, 1};
    CodedPacket pkt = rlc::encode(f, gen, alpha);
    CHECK(pkt.payload == std::vector<Symbol>{0, 1});
}

TEST_CASE("encode rejects coefficient length mismatch", "[coding]") {
    Field f(2);
    Generation gen(3, 4);
    std::vector<Symbol> short_coeffs(2, 1);
    CHECK_THROWS_AS(rlc::encode(f, gen, short_coeffs), std::invalid_argument);
}

TEST_CASE("encode_random is deterministic per seed", "[coding]") {
    Field f(4);
    Generation gen = Generation::random(f, 8, 16, 99);
    CodedPacket a = rlc::encode_random(f, gen, 42);
    CodedPacket b = rlc::encode_random(f, gen, 42);
    CHECK(a == b);
    CodedPacket c = rlc::encode_random(f, gen, 43);
    CHECK(a.coefficients != c.coefficients);
}

TEST_CASE("random coefficients are uniform", "[coding]") {
    Field f(2);
    Generation gen(4, 1);
    std::size_t counts[4] = {0, 0, 0, 0};
    const int packets = 25'000;  // 100k coefficient draws
    for (int i = 0; i < packets; ++i) {
        CodedPacket pkt = rlc::encode_random(f, gen, 1000 + i);
        for (Symbol s : pkt.coefficients) {
            ++counts[s];
        }
    }
    const double total = 4.0 * packets;
    const double expected = total / 4.0;
    const double sigma = std::sqrt(total * 0.25 * 0.75);
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(std::abs(static_cast<double>(counts[v]) - expected) <
              5.0 * sigma);
    }
}

TEST_CASE("zero coefficient vectors appear at the uniform rate", "[coding]") {
    Field f(1);
    Generation gen(1, 1);
    int zero_vectors = 0;
    const int packets = 100'000;
    for (int i = 0; i < packets; ++i) {
        if (rlc::encode_random(f, gen, 5000 + i).coefficients[0] == 0) {
            ++zero_vectors;
        }
    }
    const double sigma = std::sqrt(packets * 0.25);
    CHECK(std::abs(zero_vectors - packets / 2.0) < 5.0 * sigma);
}

TEST_CASE("absorb reports innovation and rank", "[coding]") {
    Field f(1);
    Decoder dec(f, 2, 0);
    const std::vector<Symbol> v11 = {1, 1};
    const std::vector<Symbol> v01 = {0, 1};
    CHECK(dec.absorb(v11));
    CHECK(dec.rank() == 1);
    CHECK_FALSE(dec.absorb(v11));  // duplicate row
    CHECK(dec.absorb(v01));
    CHECK(dec.rank() == 2);
    CHECK(dec.complete());

    const std::vector<Symbol> zero = {0, 0};
    Decoder fresh(f, 2, 0);
    CHECK_FALSE(fresh.absorb(zero));  // never filtered, never innovative
    CHECK(fresh.rank() == 0);
}

TEST_CASE("absorbing unit vectors gives full rank", "[coding]") {
    Field f(8);
    Generation gen = Generation::random(f, 5, 3, 7);
    Decoder dec(f, 5, 3);
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<Symbol> unit(5, 0);
        unit[i] = 1;
        CHECK(dec.absorb(rlc::encode(f, gen, unit)));
    }
    CHECK(dec.rank() == 5);
    CHECK(dec.recover() == gen);
}

TEST_CASE("absorb rejects dimension mismatch", "[coding]") {
    Field f(2);
    Decoder dec(f, 3, 2);
    const std::vector<Symbol> coeffs = {1, 0};
    CHECK_THROWS_AS(dec.absorb(coeffs), std::invalid_argument);
}

TEST_CASE("recover requires full rank", "[coding]") {
    Field f(2);
    Generation gen = Generation::random(f, 3, 4, 21);
    Decoder dec(f, 3, 4);
    std::vector<Symbol> unit(3, 0);
    unit[0] = 1;
    dec.absorb(rlc::encode(f, gen, unit));
    unit[0] = 0;
    unit[1] = 1;
    dec.absorb(rlc::encode(f, gen, unit));
    CHECK(dec.rank() == 2);
    CHECK_THROWS_AS(dec.recover(), std::logic_error);
}

TEST_CASE("random packets round-trip the generation", "[coding]") {
    for (unsigned u : {1u, 2u, 3u, 8u}) {
        Field f(u);
        for (std::size_t packet_count : {1u, 2u, 5u, 10u}) {
            Generation gen =
                Generation::random(f, packet_count, 8, 31 * u + packet_count);
            Decoder dec(f, packet_count, 8);
            std::uint64_t seed = 1000;
            std::size_t previous_rank = 0;
            while (!dec.complete()) {
                const bool innovative =
                    dec.absorb(rlc::encode_random(f, gen, seed++));
                CHECK(dec.rank() == previous_rank + (innovative ? 1 : 0));
                CHECK(dec.rank() <= packet_count);
                previous_rank = dec.rank();
            }
            REQUIRE(dec.recover() == gen);
        }
    }
}

TEST_CASE("combination count is at least the generation size", "[coding]") {
    Field f(2);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CHECK(rlc::simulate_combinations_needed(f, 4, seed) >= 4);
    }
}

TEST_CASE("mean combinations for K=1 over GF(2) is near 2", "[coding]") {
    Field f(1);
    const int trials = 100'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double n = static_cast<double>(
            rlc::simulate_combinations_needed(f, 1, 40'000 + i));
        sum += n;
        sum_sq += n * n;
    }
    const double mean = sum / trials;
    const double stderr_mean =
        std::sqrt((sum_sq - sum * sum / trials) / (trials - 1.0) / trials);
    CHECK(std::abs(mean - 2.0) < 3.0 * stderr_mean);
}

TEST_CASE("Pr(N <= 2) for K=2 over GF(2) matches 6/16", "[coding]") {
    Field f(1);
    const int trials = 100'000;
    int decoded_in_two = 0;
    for (int i = 0; i < trials; ++i) {
        if (rlc::simulate_combinations_needed(f, 2, 90'000 + i) <= 2) {
            ++decoded_in_two;
        }
    }
    const double p_hat = static_cast<double>(decoded_in_two) / trials;
    const double se = std::sqrt(0.375 * 0.625 / trials);
    CHECK(std::abs(p_hat - 0.375) < 3.0 * se);
}

TEST_CASE("empirical rank distribution matches the product formula",
          "[coding]") {
    const int trials = 100'000;
    for (unsigned u : {1u, 2u, 3u}) {
        Field f(u);
        for (std::size_t packet_count : {3u, 10u}) {
            std::vector<std::uint64_t> counts;
            for (int i = 0; i < trials; ++i) {
                const std::uint64_t n = rlc::simulate_combinations_needed(
                    f, packet_count,
                    7'000'000 + 1'000'000 * u + 131 * packet_count + 7 * i);
                if (counts.size() < n + 1) {
                    counts.resize(n + 1, 0);
                }
                ++counts[n];
            }
            std::uint64_t at_most = 0;
            for (std::uint64_t j = packet_count; j < packet_count + 4; ++j) {
                if (j < counts.size()) {
                    at_most += counts[j];
                }
                const double expected = rlc::rank_cdf(
                    static_cast<std::uint32_t>(packet_count),
                    static_cast<double>(f.size()), j);
                const double p_hat = static_cast<double>(at_most) / trials;
                const double se = std::sqrt(
                    std::max(expected * (1.0 - expected), 1e-12) / trials);
                INFO("u=" << u << " K=" << packet_count << " j=" << j);
                CHECK(std::abs(p_hat - expected) < 3.0 * se + 1e-9);
            }
        }
    }
}
