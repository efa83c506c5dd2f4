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

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiconv/keyed_vector.hpp"
#include "semiconv/keys.hpp"
#include "semiconv/scalars.hpp"

namespace semiconv {

namespace detail {

template <typename B>
struct scalar_sign {
    static bool negative(const B&) { return false; }
    static B negate(const B& b) { return b; }
};

template <>
struct scalar_sign<Rational> {
    static bool negative(const Rational& r) { return r.is_negative(); }
    static Rational negate(const Rational& r) { return -r; }
};

template <>
struct scalar_sign<Real64> {
    static bool negative(Real64 r) { return r.value < 0.0; }
    static Real64 negate(Real64 r) { return -r; }
};

/// Join rendered terms with " + " / " - ", folding signs into separators.
template <typename B>
std::string join_terms(const std::vector<std::pair<B, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [coeff, body] : terms) {
        B c = coeff;
        bool neg = scalar_sign<B>::negative(c);
        if (neg) c = scalar_sign<B>::negate(c);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (body.empty()) {
            out += scalar_to_string(c);
        } else {
            if (!c.is_one()) out += scalar_to_string(c);
            out += body;
        }
    }
    return out;
}

} // namespace detail

/// Sparse univariate polynomial: exponent |-> coefficient. Multiplication is
/// Nat-key convolution inherited from the monoid semiring.
template <Semiring B>
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(KeyedVector<Nat, B> coeffs) : c_(std::move(coeffs)) {}

    static Poly1 zero() { return {}; }
    static Poly1 one() { return constant(B::one()); }
    static Poly1 constant(B b) {
        return Poly1{KeyedVector<Nat, B>::value(std::move(b))};
    }
    static Poly1 x() { return monomial(1, B::one()); }
    static Poly1 monomial(std::uint64_t exp, B coeff) {
        return Poly1{KeyedVector<Nat, B>::singleton(Nat{exp}, std::move(coeff))};
    }

    Poly1 operator+(const Poly1& o) const { return Poly1{c_ + o.c_}; }
    Poly1 operator*(const Poly1& o) const { return Poly1{c_ * o.c_}; }
    bool operator==(const Poly1&) const = default;
    bool is_zero() const { return c_.is_zero(); }
    bool is_one() const { return c_.is_one(); }

    Poly1 pow(std::uint64_t n) const {
        Poly1 acc = one();
        for (std::uint64_t i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    B coefficient(std::uint64_t exp) const { return c_.index(Nat{exp}); }
    const KeyedVector<Nat, B>& coeffs() const { return c_; }

    /// Sum of c_i * x^i; requires commutative scalar multiplication for the
    /// evaluation homomorphism to hold.
    B eval(const B& x) const {
        B acc = B::zero();
        B xp = B::one();
        std::uint64_t cur = 0;
        for (const auto& [k, c] : c_) {
            while (cur < k.value) {
                xp = xp * x;
                ++cur;
            }
            acc = acc + c * xp;
        }
        return acc;
    }

    /// Terms in decreasing exponent; unit coefficients and exponents elided.
    std::string to_string(const std::string& var = "x") const {
        std::vector<std::pair<B, std::string>> terms;
        for (auto it = c_.end(); it != c_.begin();) {
            --it;
            const auto& [k, c] = *it;
            std::string body;
            if (k.value > 0) {
                body = var;
                if (k.value > 1) body += "^" + std::to_string(k.value);
            }
            terms.emplace_back(c, body);
        }
        return detail::join_terms(terms);
    }

private:
    KeyedVector<Nat, B> c_;
};

/// Coefficient-wise left scalar action.
template <Semiring B>
Poly1<B> scale(const B& s, const Poly1<B>& p) {
    return Poly1<B>{scale(s, p.coeffs())};
}

/// Dense coefficient list, position = exponent, trailing zeros trimmed.
/// Addition keeps ragged tails; multiplication is long multiplication.
template <Semiring B>
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(std::vector<B> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DensePoly zero() { return {}; }
    static DensePoly one() { return DensePoly{{B::one()}}; }
    static DensePoly constant(B b) { return DensePoly{{std::move(b)}}; }

    DensePoly operator+(const DensePoly& o) const {
        const auto& a = c_;
        const auto& b = o.c_;
        std::vector<B> out(std::max(a.size(), b.size()), B::zero());
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < a.size()) out[i] = out[i] + a[i];
            if (i < b.size()) out[i] = out[i] + b[i];
        }
        return DensePoly{std::move(out)};
    }

    // (a : dp) * q = a.q + (0 : dp*q), unrolled to the usual double loop so
    // the recursion depth does not track the degree.
    DensePoly operator*(const DensePoly& o) const {
        const auto& a = c_;
        const auto& b = o.c_;
        if (a.empty() || b.empty()) return {};
        std::vector<B> out(a.size() + b.size() - 1, B::zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = out[i + j] + a[i] * b[j];
        return DensePoly{std::move(out)};
    }

    bool operator==(const DensePoly&) const = default;
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    B coefficient(std::size_t i) const {
        return i < c_.size() ? c_[i] : B::zero();
    }
    std::size_t size() const { return c_.size(); }
    const std::vector<B>& coeffs() const { return c_; }

    B eval(const B& x) const {
        B acc = B::zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<B> c_;
};

template <Semiring B>
DensePoly<B> scale(const B& s, const DensePoly<B>& p) {
    if (s.is_zero()) return DensePoly<B>::zero();
    if (s.is_one()) return p;
    std::vector<B> out;
    out.reserve(p.size());
    for (const B& c : p.coeffs()) out.push_back(s * c);
    return DensePoly<B>{std::move(out)};
}

/// Monomial: variable name |-> positive exponent; the key monoid for
/// multivariate polynomials (combine adds exponents pointwise).
struct Monomial {
    std::map<std::string, std::uint64_t> exps;

    static Monomial var(std::string name) {
        Monomial m;
        m.exps.emplace(std::move(name), 1);
        return m;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [name, e] : exps) d += e;
        return d;
    }

    auto operator<=>(const Monomial&) const = default;
};

template <>
struct key_traits<Monomial> {
    static Monomial identity() { return {}; }

    static Monomial combine(const Monomial& a, const Monomial& b) {
        Monomial out = a;
        for (const auto& [name, e] : b.exps) out.exps[name] += e;
        return out;
    }

    static std::string format(const Monomial& m) {
        std::string out;
        for (const auto& [name, e] : m.exps) {
            out += name;
            if (e > 1) out += "^" + std::to_string(e);
        }
        return out;
    }
};

namespace detail {

// Display order within a degree class: walk variable names ascending and put
// the larger exponent first.
inline bool monomial_display_less(const Monomial& a, const Monomial& b) {
    auto ia = a.exps.begin();
    auto ib = b.exps.begin();
    while (ia != a.exps.end() || ib != b.exps.end()) {
        if (ia == a.exps.end()) return false;
        if (ib == b.exps.end()) return true;
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
        ++ia;
        ++ib;
    }
    return false;
}

} // namespace detail

/// Multivariate polynomial over string-named variables: a keyed vector whose
/// keys are monomials.
template <Semiring B>
class PolyM {
public:
    PolyM() = default;
    explicit PolyM(KeyedVector<Monomial, B> terms) : t_(std::move(terms)) {}

    static PolyM zero() { return {}; }
    static PolyM one() { return constant(B::one()); }
    static PolyM constant(B b) {
        return PolyM{KeyedVector<Monomial, B>::value(std::move(b))};
    }

    /// var = single . single
    static PolyM var(std::string name) {
        return PolyM{KeyedVector<Monomial, B>::single(Monomial::var(std::move(name)))};
    }

    PolyM operator+(const PolyM& o) const { return PolyM{t_ + o.t_}; }
    PolyM operator*(const PolyM& o) const { return PolyM{t_ * o.t_}; }
    bool operator==(const PolyM&) const = default;
    bool is_zero() const { return t_.is_zero(); }
    bool is_one() const { return t_.is_one(); }

    PolyM pow(std::uint64_t n) const {
        PolyM acc = one();
        for (std::uint64_t i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    B coefficient(const Monomial& m) const { return t_.index(m); }
    const KeyedVector<Monomial, B>& terms() const { return t_; }

    /// Sum over terms of coeff * prod of env[v]^e. Every variable occurring
    /// in the polynomial must be assigned.
    B eval(const std::map<std::string, B>& env) const {
        B acc = B::zero();
        for (const auto& [m, c] : t_) {
            B w = c;
            for (const auto& [name, e] : m.exps) {
                auto it = env.find(name);
                if (it == env.end())
                    throw std::invalid_argument("unbound variable: " + name);
                for (std::uint64_t i = 0; i < e; ++i) w = w * it->second;
            }
            acc = acc + w;
        }
        return acc;
    }

    /// Terms in decreasing total degree, then by variable order within a
    /// degree class.
    std::string to_string() const {
        std::vector<std::pair<Monomial, B>> terms(t_.begin(), t_.end());
        std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
            std::uint64_t dx = x.first.total_degree();
            std::uint64_t dy = y.first.total_degree();
            if (dx != dy) return dx > dy;
            return detail::monomial_display_less(x.first, y.first);
        });
        std::vector<std::pair<B, std::string>> rendered;
        for (const auto& [m, c] : terms)
            rendered.emplace_back(c, key_traits<Monomial>::format(m));
        return detail::join_terms(rendered);
    }

private:
    KeyedVector<Monomial, B> t_;
};

} // namespace semiconv
