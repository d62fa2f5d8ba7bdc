#pragma once

// Random linear coding over GF(2^u): a generation of packets, coded
// combinations, and an incremental Gaussian-elimination decoder that
// reports whether each received combination was innovative.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlc/field.hpp"
#include "rlc/random.hpp"

namespace rlc {

class Generation {
public:
    Generation(std::size_t packet_count, std::size_t packet_length)
        : count_(packet_count), length_(packet_length),
          data_(packet_count * packet_length, 0) {
        if (packet_count == 0) {
            throw std::invalid_argument("generation needs at least 1 packet");
        }
        if (packet_length == 0) {
            throw std::invalid_argument("packets need at least 1 symbol");
        }
    }

    static Generation random(const Field& field, std::size_t packet_count,
                             std::size_t packet_length, std::uint64_t seed) {
        Generation gen(packet_count, packet_length);
        SymbolSource source(field.bits(), seed);
        source.fill(gen.data_);
        return gen;
    }

    std::size_t packet_count() const noexcept { return count_; }
    std::size_t packet_length() const noexcept { return length_; }

    std::span<const Symbol> packet(std::size_t i) const {
        return {data_.data() + i * length_, length_};
    }
    std::span<Symbol> packet(std::size_t i) {
        return {data_.data() + i * length_, length_};
    }

    friend bool operator==(const Generation&, const Generation&) = default;

private:
    std::size_t count_;
    std::size_t length_;
    std::vector<Symbol> data_;
};

struct CodedPacket {
    std::vector<Symbol> coefficients;
    std::vector<Symbol> payload;

    friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

inline CodedPacket encode(const Field& field, const Generation& gen,
                          std::span<const Symbol> coefficients) {
    if (coefficients.size() != gen.packet_count()) {
        throw std::invalid_argument("coefficient count does not match "
                                    "generation size");
    }
    CodedPacket pkt;
    pkt.coefficients.assign(coefficients.begin(), coefficients.end());
    pkt.payload.assign(gen.packet_length(), 0);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const Symbol c = coefficients[i];
        if (c == 0) {
            continue;
        }
        std::span<const Symbol> src = gen.packet(i);
        for (std::size_t j = 0; j < src.size(); ++j) {
            pkt.payload[j] =
                field.add(pkt.payload[j], field.mul(c, src[j]));
        }
    }
    return pkt;
}

inline CodedPacket encode_random(const Field& field, const Generation& gen,
                                 std::uint64_t seed) {
    SymbolSource source(field.bits(), seed);
    std::vector<Symbol> coefficients(gen.packet_count());
    source.fill(coefficients);
    return encode(field, gen, coefficients);
}

// Accumulates coded packets into a row-reduced system. Rows are stored by
// pivot position with a leading 1; rank never decreases and is bounded by
// the generation size. payload_length may be zero when only the rank
// evolution matters (e.g. counting combinations in a simulation).
class Decoder {
public:
    Decoder(const Field& field, std::size_t packet_count,
            std::size_t payload_length)
        : field_(&field), count_(packet_count), payload_(payload_length),
          width_(packet_count + payload_length), rank_(0),
          rows_(count_ * width_, 0), has_pivot_(count_, 0), work_(width_) {
        if (packet_count == 0) {
            throw std::invalid_argument("decoder needs at least 1 packet");
        }
        if (field.size() <= kMulTableLimit) {
            const std::uint32_t q = field.size();
            mul_table_.resize(std::size_t{q} * q);
            for (std::uint32_t a = 0; a < q; ++a) {
                for (std::uint32_t b = 0; b < q; ++b) {
                    mul_table_[a * q + b] = field.mul(
                        static_cast<Symbol>(a), static_cast<Symbol>(b));
                }
            }
        }
    }

    std::size_t packet_count() const noexcept { return count_; }
    std::size_t payload_length() const noexcept { return payload_; }
    std::size_t rank() const noexcept { return rank_; }
    bool complete() const noexcept { return rank_ == count_; }

    void reset() noexcept {
        rank_ = 0;
        has_pivot_.assign(count_, 0);
    }

    bool absorb(const CodedPacket& pkt) {
        return absorb(pkt.coefficients, pkt.payload);
    }

    // Returns true iff the packet was innovative (its coefficient vector is
    // independent of everything absorbed so far). The all-zero vector is a
    // valid, non-innovative input.
    bool absorb(std::span<const Symbol> coefficients,
                std::span<const Symbol> payload = {}) {
        if (coefficients.size() != count_ || payload.size() != payload_) {
            throw std::invalid_argument("packet dimensions do not match "
                                        "decoder state");
        }
        std::copy(coefficients.begin(), coefficients.end(), work_.begin());
        std::copy(payload.begin(), payload.end(), work_.begin() + count_);

        for (std::size_t pos = 0; pos < count_; ++pos) {
            const Symbol lead = work_[pos];
            if (lead == 0) {
                continue;
            }
            if (has_pivot_[pos]) {
                eliminate(lead, row(pos), pos);
                continue;
            }
            // New pivot: normalize to a leading 1 and store.
            const Symbol scale = field_->inv(lead);
            Symbol* dst = row(pos);
            scale_suffix(scale, pos);
            std::copy(work_.begin() + pos, work_.end(), dst + pos);
            std::fill(dst, dst + pos, 0);
            has_pivot_[pos] = 1;
            ++rank_;
            return true;
        }
        return false;
    }

    // Completes the elimination by back-substitution and returns the
    // original generation. Requires full rank.
    Generation recover() const {
        if (rank_ < count_) {
            throw std::logic_error("decoder rank " + std::to_string(rank_) +
                                   " below generation size " +
                                   std::to_string(count_) +
                                   ": not decodable");
        }
        if (payload_ == 0) {
            throw std::logic_error("decoder carries no payload to recover");
        }
        std::vector<Symbol> m(rows_);
        for (std::size_t r = count_; r-- > 0;) {
            for (std::size_t c = r + 1; c < count_; ++c) {
                const Symbol f = m[r * width_ + c];
                if (f == 0) {
                    continue;
                }
                for (std::size_t j = c; j < width_; ++j) {
                    m[r * width_ + j] = field_->add(
                        m[r * width_ + j], field_->mul(f, m[c * width_ + j]));
                }
            }
        }
        Generation out(count_, payload_);
        for (std::size_t r = 0; r < count_; ++r) {
            std::span<Symbol> dst = out.packet(r);
            std::copy(m.begin() + r * width_ + count_,
                      m.begin() + (r + 1) * width_, dst.begin());
        }
        return out;
    }

private:
    static constexpr std::uint32_t kMulTableLimit = 64;

    Symbol* row(std::size_t pos) noexcept { return rows_.data() + pos * width_; }
    const Symbol* row(std::size_t pos) const noexcept {
        return rows_.data() + pos * width_;
    }

    // work[j] ^= factor * src[j] for j >= pos. src has a leading 1 at pos,
    // so work[pos] becomes zero.
    void eliminate(Symbol factor, const Symbol* src, std::size_t pos) {
        if (!mul_table_.empty()) {
            const Symbol* t = mul_table_.data() +
                              std::size_t{factor} * field_->size();
            for (std::size_t j = pos; j < width_; ++j) {
                work_[j] = static_cast<Symbol>(work_[j] ^ t[src[j]]);
            }
        } else {
            for (std::size_t j = pos; j < width_; ++j) {
                work_[j] = static_cast<Symbol>(
                    work_[j] ^ field_->mul(factor, src[j]));
            }
        }
    }

    void scale_suffix(Symbol factor, std::size_t pos) {
        if (!mul_table_.empty()) {
            const Symbol* t = mul_table_.data() +
                              std::size_t{factor} * field_->size();
            for (std::size_t j = pos; j < width_; ++j) {
                work_[j] = t[work_[j]];
            }
        } else {
            for (std::size_t j = pos; j < width_; ++j) {
                work_[j] = field_->mul(factor, work_[j]);
            }
        }
    }

    const Field* field_;
    std::size_t count_;
    std::size_t payload_;
    std::size_t width_;
    std::size_t rank_;
    std::vector<Symbol> rows_;
    std::vector<std::uint8_t> has_pivot_;
    std::vector<Symbol> work_;
    std::vector<Symbol> mul_table_;
};

// Draws uniform coefficient vectors into a fresh decoder and returns how
// many it took to reach full rank. Always >= packet_count.
inline std::uint64_t simulate_combinations_needed(const Field& field,
                                                  std::size_t packet_count,
                                                  std::uint64_t seed) {
    Decoder decoder(field, packet_count, 0);
    SymbolSource source(field.bits(), seed);
    std::vector<Symbol> coefficients(packet_count);
    std::uint64_t drawn = 0;
    while (!decoder.complete()) {
        source.fill(coefficients);
        ++drawn;
        decoder.absorb(coefficients);
    }
    return drawn;
}

}  // namespace rlc
