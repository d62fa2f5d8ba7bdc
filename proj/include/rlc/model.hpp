#pragma once

// Closed-form performance model: full-rank probability of random matrices
// over GF(q), the expected number of coded combinations, QAM symbol error,
// length-dependent packet erasure, Gilbert-Varshamov distance for the
// pre-code, and the resulting throughput / data-rate figures.
//
// Numerical strategy: products of (1 - q^-m) go through summed log1p,
// (1-p)^n through exp(n*log1p(-p)), and binomial sums through log-gamma,
// so packet lengths in the thousands evaluate without underflow. The
// Gilbert-Varshamov scan switches to exact big-integer arithmetic for
// n <= 64, where floating point cannot separate ties against q^(n-k).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rlc {

// The full parameter set of one operating point.
struct CodingConfig {
    std::uint32_t packet_count = 0;       // generation size K
    std::uint32_t symbols_per_packet = 0; // n
    std::uint32_t info_symbols = 0;       // k; equals n without a pre-code
    unsigned field_bits = 0;              // u, with q = 2^u
    double snr_db = 0.0;                  // SNR per bit in dB
    bool precode = false;

    double field_size() const noexcept {
        return std::ldexp(1.0, static_cast<int>(field_bits));
    }

    void validate() const {
        if (packet_count < 1) {
            throw std::invalid_argument("generation size must be >= 1");
        }
        if (symbols_per_packet < 1) {
            throw std::invalid_argument("symbols per packet must be >= 1");
        }
        if (field_bits < 1 || field_bits > 63) {
            throw std::invalid_argument("field exponent u must be in [1, 63]");
        }
        if (info_symbols < 1 || info_symbols > symbols_per_packet) {
            throw std::invalid_argument(
                "info symbols k must satisfy 1 <= k <= n");
        }
        if (!precode && info_symbols != symbols_per_packet) {
            throw std::invalid_argument(
                "k must equal n when no pre-code is used");
        }
    }
};

struct ModelOptions {
    // Evaluate the QAM symbol-error expression with the Q-function argument
    // taken verbatim (no square root). Default applies the square root, the
    // optimum-detector form.
    bool eq4_literal = false;
    // Use the infimum form of the Gilbert-Varshamov distance (one above the
    // largest strictly-feasible distance). Default is the existence-safe
    // guarantee.
    bool gv_literal = false;
    // Fixed channel erasure probability, overriding the length-dependent
    // model. Used for constant-erasure baselines.
    std::optional<double> const_epsilon;
};

// All closed-form quantities of one operating point. `success` carries the
// per-transmission decode success probability (1 - erasure) at full
// precision; tiny throughputs would be lost if recomputed from `erasure`.
struct MetricsRow {
    double symbol_error = 0.0;    // P_q
    double erasure = 0.0;         // epsilon
    double success = 1.0;         // 1 - epsilon
    double expected_n = 0.0;      // E[N], coded combinations needed
    double s = 0.0;               // throughput, packets per transmission
    double r = 0.0;               // data rate, bits per transmission
    std::uint32_t distance = 1;   // GV lower bound on pre-code distance
    std::uint32_t correctable = 0;// t = floor((d-1)/2)
    double s_lb = 0.0;            // pre-coded lower bounds (== s, r without
    double r_lb = 0.0;            // a pre-code)
};

// Gaussian tail probability, Q(x) = P(Z > x).
inline double q_function(double x) noexcept {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// (1 - p)^n evaluated in log space.
inline double pow_one_minus(double p, double n) noexcept {
    if (p >= 1.0) {
        return 0.0;
    }
    return std::exp(n * std::log1p(-p));
}

// Symbol error probability of square q-ary QAM over AWGN at a given SNR per
// bit. Exact for even log2 q; an approximation otherwise. The literal flag
// skips the square root on the Q-function argument.
inline double qam_symbol_error(double q, double snr_db,
                               bool literal = false) noexcept {
    const double gamma_b = std::pow(10.0, snr_db / 10.0);
    const double arg = 3.0 * gamma_b * std::log2(q) / (q - 1.0);
    const double x = literal ? arg : std::sqrt(arg);
    // 1 - (1 - c)^2 written as c(2 - c); the direct form cancels badly
    // when c is small
    const double c = 2.0 * (1.0 - 1.0 / std::sqrt(q)) * q_function(x);
    return std::clamp(c * (2.0 - c), 0.0, 1.0);
}

// Erasure probability of an n-symbol packet when every symbol must arrive
// intact: 1 - (1 - P_q)^n.
inline double packet_erasure_prob(std::uint32_t n,
                                  double symbol_error) noexcept {
    return -std::expm1(static_cast<double>(n) * std::log1p(-symbol_error));
}

// Pr(N <= j): the probability that j uniform random coefficient vectors of
// length K over GF(q) span the full space, prod_{i=0}^{K-1} (1 - q^(i-j)).
inline double rank_cdf(std::uint32_t packet_count, double q,
                       std::uint64_t j) noexcept {
    if (j < packet_count) {
        return 0.0;
    }
    const double log_q = std::log(q);
    double log_prod = 0.0;
    for (std::uint32_t i = 0; i < packet_count; ++i) {
        const double m =
            static_cast<double>(j) - static_cast<double>(i);  // >= 1
        log_prod += std::log1p(-std::exp(-m * log_q));
    }
    return std::exp(log_prod);
}

// E[N] = sum_{i=1}^{K} 1 / (1 - q^-i).
inline double expected_combinations(std::uint32_t packet_count,
                                    double q) noexcept {
    const double log_q = std::log(q);
    double sum = 0.0;
    for (std::uint32_t i = 1; i <= packet_count; ++i) {
        sum += 1.0 / -std::expm1(-static_cast<double>(i) * log_q);
    }
    return sum;
}

// The same expectation through its tail-series form,
// K + sum_{j>=K} (1 - Pr(N <= j)), truncated once a term drops below
// tail_tol. Kept as an algebraically distinct route for cross-checking.
inline double expected_combinations_series(std::uint32_t packet_count,
                                           double q,
                                           double tail_tol = 1e-12) {
    const double log_q = std::log(q);
    double sum = static_cast<double>(packet_count);
    for (std::uint64_t j = packet_count;; ++j) {
        double log_prod = 0.0;
        for (std::uint32_t i = 0; i < packet_count; ++i) {
            const double m = static_cast<double>(j) - static_cast<double>(i);
            log_prod += std::log1p(-std::exp(-m * log_q));
        }
        const double term = -std::expm1(log_prod);  // 1 - Pr(N <= j)
        if (term < tail_tol) {
            break;
        }
        sum += term;
    }
    return sum;
}

namespace detail {

inline double log_add_exp(double a, double b) noexcept {
    if (a == -std::numeric_limits<double>::infinity()) {
        return b;
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// Exact sphere-counting scan: first d (in [2, n+1]) whose Gilbert-Varshamov
// sum reaches q^(n-k).
inline std::uint32_t gv_first_failing_exact(std::uint32_t n, std::uint32_t k,
                                            std::uint64_t q) {
    using boost::multiprecision::cpp_int;
    const cpp_int threshold = boost::multiprecision::pow(
        cpp_int(q), static_cast<unsigned>(n - k));
    cpp_int sum = 0;
    cpp_int term = 1;  // C(n-1, i) (q-1)^i at i = 0
    for (std::uint32_t d = 2; d <= n + 1; ++d) {
        const std::uint32_t i = d - 2;
        if (i > 0) {
            term *= (n - i);
            term /= i;
            term *= (q - 1);
        }
        sum += term;
        if (sum >= threshold) {
            return d;
        }
    }
    return n + 2;  // unreachable for k >= 1
}

inline std::uint32_t gv_first_failing_log(std::uint32_t n, std::uint32_t k,
                                          std::uint64_t q) {
    const double log_threshold =
        static_cast<double>(n - k) * std::log(static_cast<double>(q));
    const double log_q1 = std::log(static_cast<double>(q) - 1.0);
    double log_term = 0.0;
    double log_sum = -std::numeric_limits<double>::infinity();
    for (std::uint32_t d = 2; d <= n + 1; ++d) {
        const std::uint32_t i = d - 2;
        if (i > 0) {
            log_term += std::log(static_cast<double>(n - i)) -
                        std::log(static_cast<double>(i)) + log_q1;
        }
        log_sum = log_add_exp(log_sum, log_term);
        if (log_sum >= log_threshold) {
            return d;
        }
    }
    return n + 2;
}

}  // namespace detail

// Gilbert-Varshamov distance guarantee for a q-ary (n, k) code: the largest
// d with sum_{i=0}^{d-2} C(n-1, i)(q-1)^i < q^(n-k). A code with minimum
// distance >= d exists. The literal flag returns the smallest d whose sum
// meets the threshold instead (one higher). Both forms are clamped to
// [1, n].
inline std::uint32_t gv_distance(std::uint32_t n, std::uint32_t k,
                                 std::uint64_t q, bool literal = false) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("gv_distance needs 1 <= k <= n");
    }
    if (q < 2) {
        throw std::invalid_argument("gv_distance needs q >= 2");
    }
    const std::uint32_t first_failing =
        n <= 64 ? detail::gv_first_failing_exact(n, k, q)
                : detail::gv_first_failing_log(n, k, q);
    const std::uint32_t d = literal ? first_failing : first_failing - 1;
    return std::clamp<std::uint32_t>(d, 1, n);
}

// P(X <= t) for X ~ Binomial(n, p): the probability that a bounded-distance
// decoder correcting t symbol errors succeeds.
inline double binomial_decode_success(std::uint32_t n, std::uint32_t t,
                                      double p) noexcept {
    if (t >= n) {
        return 1.0;
    }
    if (p <= 0.0) {
        return 1.0;
    }
    if (p >= 1.0) {
        return 0.0;
    }
    if (t == 0) {
        return pow_one_minus(p, static_cast<double>(n));
    }
    const double log_p = std::log(p);
    const double log_1m = std::log1p(-p);
    double log_term = static_cast<double>(n) * log_1m;
    double sum = std::exp(log_term);
    for (std::uint32_t i = 1; i <= t; ++i) {
        log_term += std::log(static_cast<double>(n - i + 1)) -
                    std::log(static_cast<double>(i)) + log_p - log_1m;
        sum += std::exp(log_term);
    }
    return std::min(sum, 1.0);
}

// Evaluates the full model at one operating point. Without a pre-code,
//   S = (K / E[N]) * (n / (n + K)) * (1 - eps),  R = S n log2 q,
// with eps = 1 - (1 - P_q)^n. With a pre-code of rate k/n the success
// probability becomes the binomial tail up to t = floor((d-1)/2) correctable
// errors with d from the Gilbert-Varshamov guarantee, and
//   S_LB = (K / E[N]) * (k / (n + K)) * P(X <= t),  R_LB = S_LB k log2 q.
// The pre-coded S, R are only available as these bounds, so s == s_lb.
inline MetricsRow throughput(const CodingConfig& config,
                             const ModelOptions& options = {}) {
    config.validate();
    if (options.const_epsilon &&
        (*options.const_epsilon < 0.0 || *options.const_epsilon > 1.0)) {
        throw std::invalid_argument("const epsilon must be in [0, 1]");
    }
    const double q = config.field_size();
    const double n = config.symbols_per_packet;
    const double k = config.info_symbols;
    const double big_k = config.packet_count;

    MetricsRow row;
    row.symbol_error = qam_symbol_error(q, config.snr_db, options.eq4_literal);
    row.expected_n = expected_combinations(config.packet_count, q);

    if (config.precode) {
        row.distance =
            gv_distance(config.symbols_per_packet, config.info_symbols,
                        std::uint64_t{1} << config.field_bits,
                        options.gv_literal);
        row.correctable = (row.distance - 1) / 2;
        row.success = binomial_decode_success(
            config.symbols_per_packet, row.correctable, row.symbol_error);
    } else {
        row.distance = 1;
        row.correctable = 0;
        row.success = pow_one_minus(row.symbol_error, n);
    }
    if (options.const_epsilon) {
        row.success = 1.0 - *options.const_epsilon;
    }
    row.erasure = 1.0 - row.success;

    row.s = (big_k / row.expected_n) * (k / (n + big_k)) * row.success;
    row.r = row.s * k * static_cast<double>(config.field_bits);
    row.s_lb = row.s;
    row.r_lb = row.r;
    return row;
}

}  // namespace rlc
