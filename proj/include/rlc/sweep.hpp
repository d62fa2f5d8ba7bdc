#pragma once

// Parameter sweeps over packet length, field exponent, or pre-code
// dimension, with exhaustive-scan optimization. Grid points are evaluated
// independently; each row equals a direct single-point model call.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rlc/model.hpp"

namespace rlc {

enum class SweepVariable {
    PacketLength,  // n
    FieldBits,     // u, so q = 2^u stays a power of two
    InfoSymbols,   // k
};

inline const char* to_string(SweepVariable v) noexcept {
    switch (v) {
        case SweepVariable::PacketLength: return "n";
        case SweepVariable::FieldBits: return "u";
        default: return "k";
    }
}

enum class PrecodeSweepMode {
    None,       // k tracks n; no pre-code
    FixedRate,  // k = ceil(rate * n) at every grid point
    FixedInfo,  // k stays at the base value
};

struct SweepSpec {
    CodingConfig base;
    ModelOptions options;
    SweepVariable variable = SweepVariable::PacketLength;
    std::vector<std::uint32_t> grid;
    PrecodeSweepMode precode_mode = PrecodeSweepMode::None;
    double precode_rate = 0.0;  // FixedRate only

    void validate() const {
        if (grid.empty()) {
            throw std::invalid_argument("sweep grid must be non-empty");
        }
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (grid[i] <= grid[i - 1]) {
                throw std::invalid_argument(
                    "sweep grid must be strictly increasing");
            }
        }
        if (precode_mode == PrecodeSweepMode::FixedRate &&
            (precode_rate <= 0.0 || precode_rate > 1.0)) {
            throw std::invalid_argument("pre-code rate must be in (0, 1]");
        }
    }
};

// Materializes the configuration for one grid point.
inline CodingConfig config_at(const SweepSpec& spec, std::uint32_t value) {
    CodingConfig cfg = spec.base;
    switch (spec.variable) {
        case SweepVariable::PacketLength:
            cfg.symbols_per_packet = value;
            switch (spec.precode_mode) {
                case PrecodeSweepMode::None:
                    cfg.info_symbols = value;
                    cfg.precode = false;
                    break;
                case PrecodeSweepMode::FixedRate:
                    cfg.info_symbols = static_cast<std::uint32_t>(
                        std::ceil(spec.precode_rate *
                                  static_cast<double>(value)));
                    cfg.precode = true;
                    break;
                case PrecodeSweepMode::FixedInfo:
                    cfg.info_symbols = spec.base.info_symbols;
                    cfg.precode = true;
                    break;
            }
            break;
        case SweepVariable::FieldBits:
            cfg.field_bits = value;
            break;
        case SweepVariable::InfoSymbols:
            cfg.info_symbols = value;
            cfg.precode = true;
            break;
    }
    return cfg;
}

struct SweepResult {
    std::vector<std::uint32_t> grid;
    std::vector<MetricsRow> rows;
    std::uint32_t argmax_s = 0;  // grid value maximizing throughput
    std::uint32_t argmax_r = 0;  // grid value maximizing data rate
};

// Evaluates the model at every grid point. Ties in the argmax break toward
// the smaller grid value.
inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.grid = spec.grid;
    result.rows.reserve(spec.grid.size());
    std::size_t best_s = 0;
    std::size_t best_r = 0;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        result.rows.push_back(
            throughput(config_at(spec, spec.grid[i]), spec.options));
        if (result.rows[i].s > result.rows[best_s].s) {
            best_s = i;
        }
        if (result.rows[i].r > result.rows[best_r].r) {
            best_r = i;
        }
    }
    result.argmax_s = spec.grid[best_s];
    result.argmax_r = spec.grid[best_r];
    return result;
}

enum class Objective { Throughput, DataRate };

struct OptimizeResult {
    std::uint32_t best = 0;
    MetricsRow row;
};

// Exhaustive scan of the integer range [lo, hi]; exact on the scanned
// range. When varying n on a pre-coded base, k stays at the base value.
inline OptimizeResult optimize(const CodingConfig& base,
                               const ModelOptions& options,
                               SweepVariable variable, std::uint32_t lo,
                               std::uint32_t hi,
                               Objective objective = Objective::Throughput) {
    if (lo > hi) {
        throw std::invalid_argument("optimize range is empty");
    }
    SweepSpec spec;
    spec.base = base;
    spec.options = options;
    spec.variable = variable;
    spec.precode_mode = base.precode ? PrecodeSweepMode::FixedInfo
                                     : PrecodeSweepMode::None;
    OptimizeResult result;
    bool first = true;
    for (std::uint32_t v = lo;; ++v) {
        const MetricsRow row = throughput(config_at(spec, v), options);
        const double value = objective == Objective::Throughput ? row.s : row.r;
        const double incumbent =
            objective == Objective::Throughput ? result.row.s : result.row.r;
        if (first || value > incumbent) {
            result.best = v;
            result.row = row;
            first = false;
        }
        if (v == hi) {
            break;
        }
    }
    return result;
}

}  // namespace rlc
