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
#include <string>
#include <utility>
#include <vector>

#include "semiconv/utf8.hpp"

namespace semiconv {

/// A word over an alphabet of Unicode scalar values; the free monoid.
using Word = std::u32string;

/// Natural numbers as an additive monoid key.
struct Nat {
    std::uint64_t value = 0;
    auto operator<=>(const Nat&) const = default;
};

/// Monoid structure of a key type: identity, combine, and (where the monoid
/// is splittable) a complete duplicate-free enumeration of factorizations.
template <typename K>
struct key_traits;

template <>
struct key_traits<Word> {
    static Word identity() { return {}; }
    static Word combine(const Word& a, const Word& b) { return a + b; }

    // splits [] = [([],[])]; splits (c:cs) keeps the cut point moving right.
    static std::vector<std::pair<Word, Word>> splits(const Word& w) {
        std::vector<std::pair<Word, Word>> out;
        out.reserve(w.size() + 1);
        for (std::size_t i = 0; i <= w.size(); ++i)
            out.emplace_back(w.substr(0, i), w.substr(i));
        return out;
    }

    static std::string format(const Word& w) { return utf8::encode(w); }
};

template <>
struct key_traits<Nat> {
    static Nat identity() { return {}; }
    static Nat combine(Nat a, Nat b) { return {a.value + b.value}; }

    // splits n = [(i, n-i) | i <- [0..n]]
    static std::vector<std::pair<Nat, Nat>> splits(Nat n) {
        std::vector<std::pair<Nat, Nat>> out;
        out.reserve(n.value + 1);
        for (std::uint64_t i = 0; i <= n.value; ++i)
            out.emplace_back(Nat{i}, Nat{n.value - i});
        return out;
    }

    static std::string format(Nat n) { return std::to_string(n.value); }
};

// Products combine componentwise; splittings are the cartesian product of the
// component splittings. Higher arity is reached by nesting pairs.
template <typename A, typename B>
struct key_traits<std::pair<A, B>> {
    using P = std::pair<A, B>;

    static P identity() {
        return {key_traits<A>::identity(), key_traits<B>::identity()};
    }

    static P combine(const P& x, const P& y) {
        return {key_traits<A>::combine(x.first, y.first),
                key_traits<B>::combine(x.second, y.second)};
    }

    static std::vector<std::pair<P, P>> splits(const P& p) {
        std::vector<std::pair<P, P>> out;
        for (const auto& [a1, a2] : key_traits<A>::splits(p.first))
            for (const auto& [b1, b2] : key_traits<B>::splits(p.second))
                out.emplace_back(P{a1, b1}, P{a2, b2});
        return out;
    }

    static std::string format(const P& p) {
        return "(" + key_traits<A>::format(p.first) + "," +
               key_traits<B>::format(p.second) + ")";
    }
};

} // namespace semiconv
