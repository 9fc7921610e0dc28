#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gpexp/errors.hpp"

namespace gpexp {

// Arbitrary-precision unsigned integer, base 2^32 limbs, little endian.
// Just enough arithmetic for exact multinomial coefficients and powers.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v) {
        limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffULL));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }

    void mul_u32(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            const std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    void mul_u64(std::uint64_t m) {
        const std::uint32_t lo = static_cast<std::uint32_t>(m & 0xffffffffULL);
        const std::uint32_t hi = static_cast<std::uint32_t>(m >> 32);
        if (hi == 0) {
            mul_u32(lo);
            return;
        }
        BigUint high_part = *this;
        high_part.mul_u32(hi);
        high_part.shift_limbs(1);
        mul_u32(lo);
        add(high_part);
    }

    // Divides by a nonzero u32, returning the remainder.
    std::uint32_t div_u32(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            const std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    void div_u32_exact(std::uint32_t d) {
        if (div_u32(d) != 0) throw SolverError("inexact big integer division");
    }

    void add(const BigUint& other) {
        const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
        limbs_.resize(n, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) + carry;
            if (i < other.limbs_.size()) cur += other.limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    void mul_big(const BigUint& other) {
        if (is_zero() || other.is_zero()) {
            limbs_.assign(1, 0);
            return;
        }
        std::vector<std::uint32_t> out(limbs_.size() + other.limbs_.size(), 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
                const std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) *
                                              other.limbs_[j] +
                                          out[i + j] + carry;
                out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
            }
            out[i + other.limbs_.size()] = static_cast<std::uint32_t>(carry);
        }
        limbs_ = std::move(out);
        trim();
    }

    bool fits_u64() const { return limbs_.size() <= 2; }

    std::uint64_t to_u64() const {
        if (!fits_u64()) throw SolverError("big integer exceeds 64 bits");
        std::uint64_t v = limbs_[0];
        if (limbs_.size() == 2) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
        return v;
    }

    double to_double() const {
        double v = 0.0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
        return v;
    }

    double log2() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        const std::size_t top = limbs_.size() - 1;
        double head = limbs_[top];
        if (top >= 1) head = head * 4294967296.0 + limbs_[top - 1];
        if (top >= 2) head = head * 4294967296.0 + limbs_[top - 2];
        const std::size_t dropped = top >= 2 ? top - 2 : 0;
        return std::log2(head) + 32.0 * static_cast<double>(dropped);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        BigUint tmp = *this;
        std::vector<std::uint32_t> chunks;
        while (!tmp.is_zero()) chunks.push_back(tmp.div_u32(1000000000U));
        std::string out = std::to_string(chunks.back());
        for (std::size_t i = chunks.size() - 1; i-- > 0;) {
            std::string part = std::to_string(chunks[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

    bool operator==(const BigUint& other) const { return limbs_ == other.limbs_; }

    static BigUint pow(std::uint64_t base, std::uint64_t exponent) {
        BigUint result(1);
        for (std::uint64_t i = 0; i < exponent; ++i) result.mul_u64(base);
        return result;
    }

    // n! / (c_1! ... c_k!) for counts summing to n, built from binomials so
    // every intermediate division is exact.
    static BigUint multinomial(const std::vector<std::int64_t>& counts) {
        BigUint result(1);
        std::int64_t partial = 0;
        for (const std::int64_t c : counts) {
            for (std::int64_t j = 1; j <= c; ++j) {
                result.mul_u64(static_cast<std::uint64_t>(partial + j));
                result.div_u32_exact(static_cast<std::uint32_t>(j));
            }
            partial += c;
        }
        return result;
    }

    static BigUint multinomial(const std::vector<int>& counts) {
        return multinomial(std::vector<std::int64_t>(counts.begin(), counts.end()));
    }

private:
    void shift_limbs(std::size_t k) {
        if (is_zero()) return;
        limbs_.insert(limbs_.begin(), k, 0);
    }

    void trim() {
        while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_;
};

} // namespace gpexp
