#pragma once

// Seeded Monte Carlo estimation of the transmissions needed to decode, and
// of the resulting throughput and data rate, by direct simulation of the
// coding process. Serves as the empirical cross-check for the analytic
// model.
//
// Per-trial seeds are derived from the base seed and the trial index, and
// per-trial transmission counts are aggregated as exact integer sums, so an
// identical plan produces bit-identical estimates for any thread count or
// execution order.

#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rlc/coding.hpp"
#include "rlc/field.hpp"
#include "rlc/model.hpp"
#include "rlc/random.hpp"

namespace rlc {

enum class ChannelMode {
    PacketErasure,  // whole packets dropped with the model's erasure prob
    SymbolLevel,    // per-symbol corruption, dropped when errors exceed t
};

inline const char* to_string(ChannelMode mode) noexcept {
    return mode == ChannelMode::PacketErasure ? "packet" : "symbol";
}

struct TrialPlan {
    CodingConfig config;
    ModelOptions options;
    ChannelMode mode = ChannelMode::PacketErasure;
    std::uint64_t trials = 0;
    std::uint64_t base_seed = 0;
    unsigned threads = 1;
    // A single trial aborts once it exceeds this many transmissions; such a
    // configuration has a near-one erasure probability.
    std::uint64_t trial_cap = 100'000'000;

    void validate() const {
        config.validate();
        if (trials < 1) {
            throw std::invalid_argument("trial count must be >= 1");
        }
        if (trial_cap < 1) {
            throw std::invalid_argument("trial cap must be >= 1");
        }
        if (mode == ChannelMode::SymbolLevel && options.const_epsilon) {
            throw std::invalid_argument(
                "const epsilon applies to packet-erasure mode only");
        }
    }
};

struct EstimateRow {
    std::uint64_t trials = 0;
    double mean_t = 0.0;    // mean transmissions until decode
    double stderr_t = 0.0;
    double s_hat = 0.0;     // empirical throughput
    double r_hat = 0.0;     // empirical data rate
    double stderr_s = 0.0;
    double stderr_r = 0.0;
    double ci95_s = 0.0;    // 95% confidence half-widths
    double ci95_r = 0.0;
};

class TrialCapExceeded : public std::runtime_error {
public:
    explicit TrialCapExceeded(std::uint64_t cap)
        : std::runtime_error(
              "trial exceeded " + std::to_string(cap) +
              " transmissions; erasure probability is too close to 1") {}
};

namespace detail {

struct TrialSums {
    std::uint64_t count = 0;
    std::uint64_t sum_t = 0;
    unsigned __int128 sum_t2 = 0;

    void add(std::uint64_t t) noexcept {
        ++count;
        sum_t += t;
        sum_t2 += static_cast<unsigned __int128>(t) * t;
    }
    void merge(const TrialSums& other) noexcept {
        count += other.count;
        sum_t += other.sum_t;
        sum_t2 += other.sum_t2;
    }
};

class TrialRunner {
public:
    TrialRunner(const TrialPlan& plan, const Field& field,
                const MetricsRow& row)
        : plan_(plan), field_(field),
          decoder_(field, plan.config.packet_count, 0),
          coefficients_(plan.config.packet_count),
          erasure_(row.erasure), symbol_error_(row.symbol_error),
          correctable_(row.correctable) {}

    std::uint64_t run(std::uint64_t trial_index) {
        SymbolSource source(field_.bits(),
                            derive_seed(plan_.base_seed, trial_index));
        decoder_.reset();
        std::uint64_t sent = 0;
        while (!decoder_.complete()) {
            if (sent == plan_.trial_cap) {
                throw TrialCapExceeded(plan_.trial_cap);
            }
            ++sent;
            if (erased(source)) {
                continue;
            }
            source.fill(coefficients_);
            decoder_.absorb(coefficients_);
        }
        return sent;
    }

private:
    bool erased(SymbolSource& source) {
        if (plan_.mode == ChannelMode::PacketErasure) {
            return source.uniform01() < erasure_;
        }
        // Count corrupted symbols; the packet is lost once more than t of
        // its n symbols are in error. Corrupted values themselves are never
        // needed, only the count.
        std::uint32_t corrupt = 0;
        for (std::uint32_t s = 0; s < plan_.config.symbols_per_packet; ++s) {
            if (source.uniform01() < symbol_error_) {
                if (++corrupt > correctable_) {
                    return true;
                }
            }
        }
        return false;
    }

    const TrialPlan& plan_;
    const Field& field_;
    Decoder decoder_;
    std::vector<Symbol> coefficients_;
    double erasure_;
    double symbol_error_;
    std::uint32_t correctable_;
};

}  // namespace detail

inline EstimateRow run_trials(const TrialPlan& plan) {
    plan.validate();
    const MetricsRow row = throughput(plan.config, plan.options);
    const Field field(plan.config.field_bits);

    const unsigned threads =
        std::max(1u, std::min<unsigned>(plan.threads,
                                        static_cast<unsigned>(plan.trials)));
    std::vector<detail::TrialSums> partial(threads);
    std::exception_ptr failure;

    auto worker = [&](unsigned index) {
        const std::uint64_t chunk = plan.trials / threads;
        const std::uint64_t extra = plan.trials % threads;
        const std::uint64_t begin =
            index * chunk + std::min<std::uint64_t>(index, extra);
        const std::uint64_t end = begin + chunk + (index < extra ? 1 : 0);
        detail::TrialRunner runner(plan, field, row);
        for (std::uint64_t t = begin; t < end; ++t) {
            partial[index].add(runner.run(t));
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back([&, i] {
                try {
                    worker(i);
                } catch (...) {
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    detail::TrialSums sums;
    for (const auto& p : partial) {
        sums.merge(p);
    }

    const auto& cfg = plan.config;
    const double m = static_cast<double>(sums.count);
    EstimateRow est;
    est.trials = sums.count;
    est.mean_t = static_cast<double>(sums.sum_t) / m;
    if (sums.count > 1) {
        const double sum_t = static_cast<double>(sums.sum_t);
        const double sum_t2 = static_cast<double>(sums.sum_t2);
        const double var = (sum_t2 - sum_t * sum_t / m) / (m - 1.0);
        est.stderr_t = std::sqrt(std::max(var, 0.0) / m);
    }
    const double scale = static_cast<double>(cfg.packet_count) *
                         static_cast<double>(cfg.info_symbols) /
                         (static_cast<double>(cfg.symbols_per_packet) +
                          static_cast<double>(cfg.packet_count));
    est.s_hat = scale / est.mean_t;
    est.stderr_s = scale * est.stderr_t / (est.mean_t * est.mean_t);
    const double bits = static_cast<double>(cfg.info_symbols) *
                        static_cast<double>(cfg.field_bits);
    est.r_hat = est.s_hat * bits;
    est.stderr_r = est.stderr_s * bits;
    est.ci95_s = 1.959963985 * est.stderr_s;
    est.ci95_r = 1.959963985 * est.stderr_r;
    return est;
}

struct ValidationRow {
    ChannelMode mode;
    EstimateRow estimate;
    double s_model = 0.0;
    double r_model = 0.0;
    double z_s = 0.0;
    double z_r = 0.0;
    bool agrees = false;  // |z| < 4
};

// Runs both channel modes against the same analytic operating point and
// reports z-scores of the empirical throughput against the model. In
// symbol-level mode with a pre-code the target is the lower bound with the
// same t; the binomial-tail model is exact for the simulated
// bounded-distance decoder, so agreement is two-sided.
inline std::vector<ValidationRow> validate_against_model(
    const CodingConfig& config, const ModelOptions& options,
    std::uint64_t trials, std::uint64_t base_seed, unsigned threads = 1) {
    if (options.const_epsilon) {
        throw std::invalid_argument(
            "validation runs both modes; const epsilon is not supported");
    }
    const MetricsRow row = throughput(config, options);
    std::vector<ValidationRow> out;
    for (ChannelMode mode :
         {ChannelMode::PacketErasure, ChannelMode::SymbolLevel}) {
        TrialPlan plan;
        plan.config = config;
        plan.options = options;
        plan.mode = mode;
        plan.trials = trials;
        plan.base_seed = base_seed;
        plan.threads = threads;
        ValidationRow v;
        v.mode = mode;
        v.estimate = run_trials(plan);
        v.s_model = row.s;
        v.r_model = row.r;
        v.z_s = (v.estimate.s_hat - v.s_model) / v.estimate.stderr_s;
        v.z_r = (v.estimate.r_hat - v.r_model) / v.estimate.stderr_r;
        v.agrees = std::abs(v.z_s) < 4.0 && std::abs(v.z_r) < 4.0;
        out.push_back(v);
    }
    return out;
}

}  // namespace rlc
