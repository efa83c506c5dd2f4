/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semiconv {

/// Arbitrary-precision natural number.
///
/// Limbs are base 10^9, little-endian, with no trailing zero limbs; the
/// empty limb vector denotes zero. Only the operations needed for counting
/// weights are provided: addition, multiplication, comparison and decimal
/// conversion.
class BigNat {
public:
    BigNat() = default;

    explicit BigNat(std::uint64_t v) {
        while (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
            v /= kBase;
        }
    }

    static BigNat from_decimal(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigNat: empty decimal string");
        BigNat out;
        BigNat ten(10);
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("BigNat: bad digit");
            out = out * ten + BigNat(static_cast<std::uint64_t>(c - '0'));
        }
        return out;
    }

    bool is_zero() const { return limbs_.empty(); }

    BigNat operator+(const BigNat& o) const {
        const auto& a = limbs_;
        const auto& b = o.limbs_;
        BigNat out;
        out.limbs_.resize(std::max(a.size(), b.size()) + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
            std::uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            out.limbs_[i] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        out.trim();
        return out;
    }

    BigNat operator*(const BigNat& o) const {
        if (is_zero() || o.is_zero()) return BigNat{};
        const auto& a = limbs_;
        const auto& b = o.limbs_;
        BigNat out;
        out.limbs_.assign(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = out.limbs_[i + j] +
                                    static_cast<std::uint64_t>(a[i]) * b[j] + carry;
                out.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
            }
            std::size_t k = i + b.size();
            while (carry != 0) {
                std::uint64_t cur = out.limbs_[k] + carry;
                out.limbs_[k] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
                ++k;
            }
        }
        out.trim();
        return out;
    }

    bool operator==(const BigNat& o) const { return limbs_ == o.limbs_; }

    std::strong_ordering operator<=>(const BigNat& o) const {
        if (limbs_.size() != o.limbs_.size())
            return limbs_.size() <=> o.limbs_.size();
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] <=> o.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::string out = std::to_string(limbs_.back());
        for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
            std::string part = std::to_string(limbs_[i]);
            out += std::string(9 - part.size(), '0');
            out += part;
        }
        return out;
    }

private:
    static constexpr std::uint64_t kBase = 1'000'000'000;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_;
};

} // namespace semiconv
