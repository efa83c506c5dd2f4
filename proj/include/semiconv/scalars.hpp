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

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "semiconv/bignat.hpp"

namespace semiconv {

/// A semiring value: commutative addition with identity zero(), associative
/// multiplication with identity one(), multiplication distributing over
/// addition and annihilated by zero. is_zero/is_one are required so the
/// scaling shortcut and the smart constructors work uniformly.
template <typename B>
concept Semiring = requires(const B a, const B b) {
    { B::zero() } -> std::convertible_to<B>;
    { B::one() } -> std::convertible_to<B>;
    { a + b } -> std::convertible_to<B>;
    { a * b } -> std::convertible_to<B>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

/// Semiring with a closure satisfying star(p) = 1 + p*star(p).
template <typename B>
concept StarSemiring = Semiring<B> && requires(const B a) {
    { star(a) } -> std::convertible_to<B>;
};

/// Left-semimodule action of a scalar on itself, with the zero/one shortcuts.
template <Semiring B>
B scale(const B& s, const B& b) {
    if (s.is_zero()) return B::zero();
    if (s.is_one()) return b;
    return s * b;
}

// ---------------------------------------------------------------------------
// Booleans: add = or, mul = and.

struct BoolRing {
    bool value = false;

    static BoolRing zero() { return {false}; }
    static BoolRing one() { return {true}; }
    static BoolRing from_natural(std::uint64_t n) { return {n != 0}; }

    BoolRing operator+(BoolRing o) const { return {value || o.value}; }
    BoolRing operator*(BoolRing o) const { return {value && o.value}; }
    bool operator==(const BoolRing&) const = default;
    bool is_zero() const { return !value; }
    bool is_one() const { return value; }
};

inline BoolRing star(BoolRing) { return BoolRing::one(); }

inline std::string scalar_to_string(BoolRing b) { return b.value ? "1" : "0"; }

// ---------------------------------------------------------------------------
// Counting naturals: unbounded, so adversarial match counts cannot overflow.

class NatCount {
public:
    NatCount() = default;
    explicit NatCount(std::uint64_t v) : n_(v) {}
    explicit NatCount(BigNat n) : n_(std::move(n)) {}

    static NatCount zero() { return NatCount{}; }
    static NatCount one() { return NatCount{1}; }
    static NatCount from_natural(std::uint64_t n) { return NatCount{n}; }
    static NatCount from_decimal(std::string_view s) {
        return NatCount{BigNat::from_decimal(s)};
    }

    NatCount operator+(const NatCount& o) const { return NatCount{n_ + o.n_}; }
    NatCount operator*(const NatCount& o) const { return NatCount{n_ * o.n_}; }
    bool operator==(const NatCount&) const = default;
    auto operator<=>(const NatCount&) const = default;

    bool is_zero() const { return n_.is_zero(); }
    bool is_one() const { return n_ == BigNat(1); }

    const BigNat& raw() const { return n_; }
    std::string to_string() const { return n_.to_string(); }

private:
    BigNat n_;
};

// Sum of p^i diverges in the naturals for p > 0, so closure exists only at 0.
inline NatCount star(const NatCount& p) {
    if (!p.is_zero())
        throw std::domain_error("NatCount star is defined only at 0");
    return NatCount::one();
}

/// Positivity test; a semiring homomorphism onto the booleans.
inline BoolRing positive(const NatCount& n) { return BoolRing{!n.is_zero()}; }

inline std::string scalar_to_string(const NatCount& n) { return n.to_string(); }

// ---------------------------------------------------------------------------
// 64-bit reals.

struct Real64 {
    double value = 0.0;

    static Real64 zero() { return {0.0}; }
    static Real64 one() { return {1.0}; }
    static Real64 from_natural(std::uint64_t n) {
        return {static_cast<double>(n)};
    }

    Real64 operator+(Real64 o) const { return {value + o.value}; }
    Real64 operator*(Real64 o) const { return {value * o.value}; }
    Real64 operator-() const { return {-value}; }
    Real64 operator/(Real64 o) const { return {value / o.value}; }
    bool operator==(const Real64&) const = default;
    bool is_zero() const { return value == 0.0; }
    bool is_one() const { return value == 1.0; }
};

// star p = 1/(1-p), the closed form of the geometric sum, valid for |p| < 1.
inline Real64 star(Real64 p) {
    if (!(std::fabs(p.value) < 1.0))
        throw std::domain_error("Real64 star requires |p| < 1");
    return {1.0 / (1.0 - p.value)};
}

inline std::string scalar_to_string(Real64 r) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), r.value);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Exact rationals over 64-bit integers.
//
// Always in lowest terms with positive denominator. Intermediate products use
// 128-bit arithmetic; results that cannot be reduced back into 64 bits raise
// overflow_error rather than silently losing exactness.

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    static Rational zero() { return Rational{}; }
    static Rational one() { return Rational{1}; }
    static Rational from_natural(std::uint64_t n) {
        if (n > static_cast<std::uint64_t>(INT64_MAX))
            throw std::overflow_error("Rational: natural too large");
        return Rational{static_cast<std::int64_t>(n)};
    }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    Rational operator+(const Rational& o) const {
        using I = __int128;
        std::int64_t g = std::gcd(den_, o.den_);
        I l = static_cast<I>(den_ / g) * o.den_;
        I n = static_cast<I>(num_) * (o.den_ / g) +
              static_cast<I>(o.num_) * (den_ / g);
        return make128(n, l);
    }

    Rational operator-() const { return makeRaw(-num_, den_); }
    Rational operator-(const Rational& o) const { return *this + (-o); }

    Rational operator*(const Rational& o) const {
        // Cross-reduce before multiplying to keep intermediates small.
        std::int64_t g1 = std::gcd(abs64(num_), o.den_);
        std::int64_t g2 = std::gcd(abs64(o.num_), den_);
        using I = __int128;
        I n = static_cast<I>(num_ / g1) * (o.num_ / g2);
        I d = static_cast<I>(den_ / g2) * (o.den_ / g1);
        return make128(n, d);
    }

    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational division by zero");
        // Reciprocal of a reduced fraction is already reduced.
        std::int64_t rn = o.den_;
        std::int64_t rd = o.num_;
        if (rd < 0) {
            rn = -rn;
            rd = -rd;
        }
        return *this * makeRaw(rn, rd);
    }

    bool operator==(const Rational&) const = default;

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

    static Rational makeRaw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational make(std::int64_t n, std::int64_t d) {
        return make128(static_cast<__int128>(n), static_cast<__int128>(d));
    }

    static Rational make128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        return makeRaw(static_cast<std::int64_t>(n),
                       static_cast<std::int64_t>(d));
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::string scalar_to_string(const Rational& r) { return r.to_string(); }

namespace detail {
// Name-lookup shim: lets member functions named `star` reach the scalar
// closure via ADL.
template <typename B>
B star_adl(const B& b) {
    return star(b);
}
} // namespace detail

// Additive inverses exist for Rational/Real64 only; used by the series code.
template <typename B>
concept Ring = Semiring<B> && requires(const B a) {
    { -a } -> std::convertible_to<B>;
};

template <typename B>
concept DivisionRing = Ring<B> && requires(const B a, const B b) {
    { a / b } -> std::convertible_to<B>;
};

} // namespace semiconv
