#pragma once

// Named sweep configurations used for the shipped result tables. Each
// preset is a complete SweepSpec; tests and the CLI share these records so
// a regenerated CSV always matches what the tests checked.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rlc/sweep.hpp"

namespace rlc {

inline std::vector<std::uint32_t> arithmetic_grid(std::uint32_t lo,
                                                  std::uint32_t hi,
                                                  std::uint32_t step = 1) {
    if (step == 0 || lo > hi) {
        throw std::invalid_argument("bad arithmetic grid");
    }
    std::vector<std::uint32_t> grid;
    for (std::uint64_t v = lo; v <= hi; v += step) {
        grid.push_back(static_cast<std::uint32_t>(v));
    }
    return grid;
}

// lo * 2^(i/2), rounded, deduplicated; two points per doubling.
inline std::vector<std::uint32_t> half_power_grid(std::uint32_t lo,
                                                  std::uint32_t hi) {
    if (lo == 0 || lo > hi) {
        throw std::invalid_argument("bad geometric grid");
    }
    std::vector<std::uint32_t> grid;
    for (unsigned i = 0;; ++i) {
        const double value =
            static_cast<double>(lo) * std::exp2(static_cast<double>(i) / 2.0);
        if (value > static_cast<double>(hi) + 0.5) {
            break;
        }
        const auto n = static_cast<std::uint32_t>(std::llround(value));
        if (grid.empty() || n > grid.back()) {
            grid.push_back(n);
        }
    }
    return grid;
}

// Shared baseline of the shipped configurations: K = 80 source packets,
// QAM over AWGN at 3.5 dB SNR per bit.
//
//   fig1: throughput/data rate vs n;  q = 8, no pre-code, n in [1, 2000]
//   fig2: vs u at n = 200, no pre-code
//   fig3: vs u at n = 200 with a rate-1/2 pre-code (k = 100)
//   fig4a: vs n, pre-code of fixed rate 1/2, n up to 32768
//   fig4b: vs n, pre-code with fixed k = 400, n up to 204800
inline SweepSpec figure_preset(std::string_view name) {
    SweepSpec spec;
    spec.base.packet_count = 80;
    spec.base.snr_db = 3.5;
    if (name == "1") {
        spec.base.field_bits = 3;
        spec.variable = SweepVariable::PacketLength;
        spec.precode_mode = PrecodeSweepMode::None;
        spec.grid = arithmetic_grid(1, 2000);
    } else if (name == "2") {
        spec.base.symbols_per_packet = 200;
        spec.base.info_symbols = 200;
        spec.variable = SweepVariable::FieldBits;
        spec.grid = arithmetic_grid(1, 16);
    } else if (name == "3") {
        spec.base.symbols_per_packet = 200;
        spec.base.info_symbols = 100;
        spec.base.precode = true;
        spec.variable = SweepVariable::FieldBits;
        spec.grid = arithmetic_grid(1, 16);
    } else if (name == "4a") {
        spec.base.field_bits = 3;
        spec.base.precode = true;
        spec.variable = SweepVariable::PacketLength;
        spec.precode_mode = PrecodeSweepMode::FixedRate;
        spec.precode_rate = 0.5;
        spec.grid = half_power_grid(2, 32768);
    } else if (name == "4b") {
        spec.base.field_bits = 3;
        spec.base.info_symbols = 400;
        spec.base.precode = true;
        spec.variable = SweepVariable::PacketLength;
        spec.precode_mode = PrecodeSweepMode::FixedInfo;
        spec.grid = half_power_grid(400, 204800);
    } else {
        throw std::invalid_argument("unknown figure preset '" +
                                    std::string(name) +
                                    "'; expected 1, 2, 3, 4a or 4b");
    }
    return spec;
}

inline const std::vector<std::string>& figure_preset_names() {
    static const std::vector<std::string> names = {"1", "2", "3", "4a", "4b"};
    return names;
}

}  // namespace rlc
