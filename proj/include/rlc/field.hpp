#pragma once

// Arithmetic in GF(2^u) for 1 <= u <= 16, the symbol alphabet of all
// coding operations. Addition is bitwise XOR. Multiplication uses
// log/antilog tables for u <= 8 and a carry-less multiply with polynomial
// reduction for u > 8.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlc {

using Symbol = std::uint16_t;

// One fixed primitive polynomial per field size, indexed by u. Bit i is the
// coefficient of x^i, including the leading x^u term.
//
//   u=1  x+1                u=9   x^9+x^4+1
//   u=2  x^2+x+1            u=10  x^10+x^3+1
//   u=3  x^3+x+1            u=11  x^11+x^2+1
//   u=4  x^4+x+1            u=12  x^12+x^6+x^4+x+1
//   u=5  x^5+x^2+1          u=13  x^13+x^4+x^3+x+1
//   u=6  x^6+x+1            u=14  x^14+x^10+x^6+x+1
//   u=7  x^7+x^3+1          u=15  x^15+x+1
//   u=8  x^8+x^4+x^3+x^2+1  u=16  x^16+x^12+x^3+x+1
inline constexpr std::array<std::uint32_t, 17> kReductionPoly = {
    0,      0x3,    0x7,    0xB,    0x13,  0x25,   0x43,   0x89,  0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

class Field {
public:
    static constexpr unsigned kMaxBits = 16;

    explicit Field(unsigned bits) : bits_(bits) {
        if (bits < 1 || bits > kMaxBits) {
            throw std::invalid_argument("field bits must be in [1, " +
                                        std::to_string(kMaxBits) + "], got " +
                                        std::to_string(bits));
        }
        size_ = std::uint32_t{1} << bits;
        poly_ = kReductionPoly[bits];
        if (bits_ <= 8) {
            build_tables();
        }
    }

    unsigned bits() const noexcept { return bits_; }
    std::uint32_t size() const noexcept { return size_; }
    std::uint32_t reduction_poly() const noexcept { return poly_; }

    Symbol add(Symbol a, Symbol b) const noexcept {
        return static_cast<Symbol>(a ^ b);
    }

    Symbol mul(Symbol a, Symbol b) const noexcept {
        if (bits_ <= 8) {
            if (a == 0 || b == 0) {
                return 0;
            }
            return exp_[log_[a] + log_[b]];
        }
        return mul_carryless(a, b);
    }

    // Reference bit-level product: shift-and-add followed by reduction
    // modulo the fixed polynomial. Also the working path for u > 8.
    Symbol mul_carryless(Symbol a, Symbol b) const noexcept {
        std::uint32_t acc = 0;
        std::uint32_t aa = a;
        std::uint32_t bb = b;
        while (bb != 0) {
            if (bb & 1u) {
                acc ^= aa;
            }
            aa <<= 1;
            bb >>= 1;
        }
        for (int i = 2 * static_cast<int>(bits_) - 2;
             i >= static_cast<int>(bits_); --i) {
            if (acc >> i & 1u) {
                acc ^= poly_ << (i - bits_);
            }
        }
        return static_cast<Symbol>(acc);
    }

    Symbol inv(Symbol a) const {
        if (a == 0) {
            throw std::domain_error("inverse of zero in GF(2^" +
                                    std::to_string(bits_) + ")");
        }
        if (bits_ <= 8) {
            return exp_[(size_ - 1) - log_[a]];
        }
        // a^(q-2) by square and multiply.
        Symbol result = 1;
        Symbol base = a;
        std::uint32_t e = size_ - 2;
        while (e != 0) {
            if (e & 1u) {
                result = mul_carryless(result, base);
            }
            base = mul_carryless(base, base);
            e >>= 1;
        }
        return result;
    }

private:
    void build_tables() {
        const std::uint32_t order = size_ - 1;
        exp_.assign(2 * order, 0);
        log_.assign(size_, 0);
        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < order; ++i) {
            exp_[i] = static_cast<Symbol>(x);
            exp_[i + order] = static_cast<Symbol>(x);
            log_[x] = static_cast<Symbol>(i);
            x <<= 1;
            if (x & size_) {
                x ^= poly_;
            }
        }
        // The polynomials above are primitive, so powers of x visit every
        // nonzero element before returning to 1.
        if (x != 1) {
            throw std::logic_error("reduction polynomial is not primitive");
        }
    }

    unsigned bits_;
    std::uint32_t size_;
    std::uint32_t poly_;
    std::vector<Symbol> log_;
    std::vector<Symbol> exp_;
};

}  // namespace rlc
