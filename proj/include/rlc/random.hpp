#pragma once

// Deterministic randomness. Every randomized operation takes an explicit
// seed; per-trial streams are derived by mixing a base seed with the trial
// index, so trials can run in any order (or in parallel) with identical
// results. Raw engine words are consumed directly -- no std distributions --
// to keep output bit-identical across platforms.

#include <cstdint>
#include <random>
#include <span>

#include "rlc/field.hpp"

namespace rlc {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::uint64_t index) noexcept {
    return splitmix64(base + index * 0x9E3779B97F4A7C15ULL);
}

// Draws u-bit symbols and unit-interval doubles from one seeded engine.
// fill() packs floor(64/u) symbols per engine word and discards leftover
// bits at the end of each call, so a vector of coefficients consumes a
// fixed number of words regardless of how it is consumed downstream.
class SymbolSource {
public:
    SymbolSource(unsigned bits, std::uint64_t seed)
        : bits_(bits),
          mask_((std::uint64_t{1} << bits) - 1),
          per_word_(64 / bits),
          engine_(seed) {}

    void fill(std::span<Symbol> out) {
        std::size_t i = 0;
        while (i < out.size()) {
            std::uint64_t word = engine_();
            for (unsigned s = 0; s < per_word_ && i < out.size(); ++s) {
                out[i++] = static_cast<Symbol>(word & mask_);
                word >>= bits_;
            }
        }
    }

    Symbol draw() { return static_cast<Symbol>(engine_() & mask_); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    unsigned bits_;
    std::uint64_t mask_;
    unsigned per_word_;
    std::mt19937_64 engine_;
};

}  // namespace rlc
