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

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semiconv/keys.hpp"
#include "semiconv/scalars.hpp"

namespace semiconv {

/// Finite map from keys to nonzero scalars: the computable stand-in for a
/// total function that is zero off a finite support.
///
/// Canonical sparse form is maintained on every construction (no stored value
/// is zero), so structural equality coincides with extensional equality.
/// Addition is pointwise; multiplication is monoid-semiring convolution over
/// the key monoid. This module is the semantic reference: convolution
/// materializes the full |p|*|q| double sum with no shortcuts.
template <typename K, typename B>
class KeyedVector {
public:
    using key_type = K;
    using value_type = B;
    using map_type = std::map<K, B>;

    KeyedVector() = default;

    static KeyedVector zero() { return {}; }

    static KeyedVector one() {
        return singleton(key_traits<K>::identity(), B::one());
    }

    static KeyedVector singleton(K k, B b) {
        KeyedVector out;
        if (!b.is_zero()) out.entries_.emplace(std::move(k), std::move(b));
        return out;
    }

    /// value b = eps |-> b
    static KeyedVector value(B b) {
        return singleton(key_traits<K>::identity(), std::move(b));
    }

    /// single k = k |-> 1
    static KeyedVector single(K k) { return singleton(std::move(k), B::one()); }

    /// Unassigned keys denote zero.
    B index(const K& k) const {
        auto it = entries_.find(k);
        return it == entries_.end() ? B::zero() : it->second;
    }

    KeyedVector operator+(const KeyedVector& o) const {
        KeyedVector out = *this;
        for (const auto& [k, v] : o.entries_) out.add_at(k, v);
        return out;
    }

    /// Convolution: sum of u<>v |-> p!u * q!v over all key pairs.
    KeyedVector operator*(const KeyedVector& o) const {
        KeyedVector out;
        for (const auto& [u, pv] : entries_)
            for (const auto& [v, qv] : o.entries_)
                out.add_at(key_traits<K>::combine(u, v), pv * qv);
        return out;
    }

    bool operator==(const KeyedVector&) const = default;

    bool is_zero() const { return entries_.empty(); }

    bool is_one() const {
        return entries_.size() == 1 &&
               entries_.begin()->first == key_traits<K>::identity() &&
               entries_.begin()->second.is_one();
    }

    std::size_t size() const { return entries_.size(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    /// Accumulate w at key k, dropping the entry if the sum cancels to zero.
    void add_at(const K& k, const B& w) {
        if (w.is_zero()) return;
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            entries_.emplace(k, w);
        } else {
            it->second = it->second + w;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    /// Sorted `key<TAB>weight` lines; the CLI golden-test format.
    std::string to_tsv() const {
        std::string out;
        for (const auto& [k, v] : entries_) {
            out += key_traits<K>::format(k);
            out += '\t';
            out += scalar_to_string(v);
            out += '\n';
        }
        return out;
    }

private:
    map_type entries_;
};

/// Splits-based convolution at a single key: the independent oracle for
/// operator*. Equals index(p*q, w) whenever splits enumerates completely.
template <typename K, typename B>
B convolve_by_splits(const KeyedVector<K, B>& p, const KeyedVector<K, B>& q,
                     const K& w) {
    B acc = B::zero();
    for (const auto& [u, v] : key_traits<K>::splits(w))
        acc = acc + p.index(u) * q.index(v);
    return acc;
}

/// Left scalar action: every stored weight multiplied on the left, with the
/// zero/one shortcuts applied up front.
template <typename K, typename B>
KeyedVector<K, B> scale(const B& s, const KeyedVector<K, B>& p) {
    if (s.is_zero()) return KeyedVector<K, B>::zero();
    if (s.is_one()) return p;
    KeyedVector<K, B> out;
    for (const auto& [k, v] : p) out.add_at(k, s * v);
    return out;
}

/// curry of {(a,x) |-> c} is {a |-> {x |-> c}}; a semiring homomorphism.
template <typename K1, typename K2, typename B>
KeyedVector<K1, KeyedVector<K2, B>> curry_vec(
    const KeyedVector<std::pair<K1, K2>, B>& p) {
    KeyedVector<K1, KeyedVector<K2, B>> out;
    for (const auto& [k, v] : p)
        out.add_at(k.first, KeyedVector<K2, B>::singleton(k.second, v));
    return out;
}

template <typename K1, typename K2, typename B>
KeyedVector<std::pair<K1, K2>, B> uncurry_vec(
    const KeyedVector<K1, KeyedVector<K2, B>>& p) {
    KeyedVector<std::pair<K1, K2>, B> out;
    for (const auto& [a, inner] : p)
        for (const auto& [x, v] : inner) out.add_at({a, x}, v);
    return out;
}

/// Functor map over keys; weights of colliding images combine by addition.
template <typename K2, typename K1, typename B, typename H>
KeyedVector<K2, B> vmap(H&& h, const KeyedVector<K1, B>& p) {
    KeyedVector<K2, B> out;
    for (const auto& [k, v] : p) out.add_at(h(k), v);
    return out;
}

/// Lifted binary key operation: sum of h(a,b) |-> p!a * q!b. Specializing h
/// to the key monoid operation recovers convolution.
template <typename K3, typename K1, typename K2, typename B, typename H>
KeyedVector<K3, B> vlift2(H&& h, const KeyedVector<K1, B>& p,
                          const KeyedVector<K2, B>& q) {
    KeyedVector<K3, B> out;
    for (const auto& [a, pv] : p)
        for (const auto& [b, qv] : q) out.add_at(h(a, b), pv * qv);
    return out;
}

/// Free-semimodule-monad bind: sum of m!a . h(a) over the support of m.
template <typename K2, typename K1, typename B, typename H>
KeyedVector<K2, B> vbind(const KeyedVector<K1, B>& m, H&& h) {
    KeyedVector<K2, B> out;
    for (const auto& [a, w] : m) {
        KeyedVector<K2, B> hv = scale(w, h(a));
        for (const auto& [k, v] : hv) out.add_at(k, v);
    }
    return out;
}

/// Finite sets of keys as an additive monoid (union) with intersection as
/// multiplication; the value type for preimage vectors.
template <typename K>
struct KeySet {
    std::set<K> elems;

    static KeySet zero() { return {}; }

    KeySet operator+(const KeySet& o) const {
        KeySet out = *this;
        out.elems.insert(o.elems.begin(), o.elems.end());
        return out;
    }

    KeySet operator*(const KeySet& o) const {
        KeySet out;
        for (const K& k : elems)
            if (o.elems.count(k)) out.elems.insert(k);
        return out;
    }

    bool operator==(const KeySet&) const = default;
    bool is_zero() const { return elems.empty(); }
};

/// Exact fibers of h over an explicit finite domain.
template <typename K2, typename K1, typename H>
KeyedVector<K2, KeySet<K1>> preimage(H&& h, const std::vector<K1>& domain) {
    KeyedVector<K2, KeySet<K1>> out;
    for (const K1& a : domain) {
        KeySet<K1> fiber;
        fiber.elems.insert(a);
        out.add_at(h(a), fiber);
    }
    return out;
}

} // namespace semiconv
