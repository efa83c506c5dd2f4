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
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "semiconv/scalars.hpp"

namespace semiconv {

/// Power series as an on-demand coefficient producer with a grow-only cache.
///
/// Producers may reference other series, and self-reference is legal as long
/// as coefficient n only depends on indices < n — which integral guarantees
/// by shifting everything one index up. That is what makes the ODE
/// definitions (sin = integral cos, ...) productive in a strict language.
template <typename B>
class Series {
    struct State {
        std::mutex m;
        std::vector<B> cache;
        std::function<B(std::size_t)> produce;
    };

    std::shared_ptr<State> st_;

public:
    explicit Series(std::function<B(std::size_t)> produce) {
        st_ = std::make_shared<State>();
        st_->produce = std::move(produce);
    }

    static Series constant(B b) {
        return Series([b](std::size_t n) { return n == 0 ? b : B::zero(); });
    }

    static Series from_coefficients(std::vector<B> cs) {
        return Series([cs = std::move(cs)](std::size_t n) {
            return n < cs.size() ? cs[n] : B::zero();
        });
    }

    /// A series resolved on first use; the back-door for mutual recursion.
    static Series deferred(std::function<Series()> resolve) {
        struct Slot {
            std::mutex m;
            std::optional<Series> s;
            std::function<Series()> f;
        };
        auto slot = std::make_shared<Slot>();
        slot->f = std::move(resolve);
        return Series([slot](std::size_t n) {
            Series src = [&] {
                std::lock_guard g(slot->m);
                if (!slot->s) {
                    slot->s = slot->f();
                    slot->f = nullptr;
                }
                return *slot->s;
            }();
            return src.coefficient(n);
        });
    }

    /// Coefficient n, computed at most once per index. The producer runs
    /// outside the lock so recursive pulls cannot deadlock; cache entries are
    /// appended strictly in index order.
    B coefficient(std::size_t n) const {
        auto st = st_;
        for (;;) {
            std::size_t have;
            {
                std::lock_guard g(st->m);
                if (n < st->cache.size()) return st->cache[n];
                have = st->cache.size();
            }
            B v = st->produce(have);
            {
                std::lock_guard g(st->m);
                if (st->cache.size() == have) st->cache.push_back(std::move(v));
            }
        }
    }

    std::vector<B> coefficients(std::size_t count) const {
        std::vector<B> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(coefficient(i));
        return out;
    }

    Series operator+(const Series& o) const {
        Series a = *this;
        Series b = o;
        return Series(
            [a, b](std::size_t n) { return a.coefficient(n) + b.coefficient(n); });
    }

    static Series scaled(B s, const Series& t) {
        Series a = t;
        return Series([s, a](std::size_t n) { return s * a.coefficient(n); });
    }

    /// integral: coefficient 0 is produced before the argument is consulted;
    /// coefficient n is arg[n-1] / n. Needs exact division by positive
    /// integers (Rational, Real64).
    Series integral() const {
        Series a = *this;
        return Series([a](std::size_t n) {
            if (n == 0) return B::zero();
            return a.coefficient(n - 1) / B::from_natural(n);
        });
    }

    /// derivative: coefficient n is (n+1) * arg[n+1].
    Series derivative() const {
        Series a = *this;
        return Series([a](std::size_t n) {
            return B::from_natural(n + 1) * a.coefficient(n + 1);
        });
    }
};

struct OdeSeriesTable {
    Series<Rational> sin, cos, exp;
};

/// sin, cos, exp defined by their ODEs:
///   sin = integral cos;  cos = 1 - integral sin;  exp = 1 + integral exp.
/// Subtraction is realized as adding the (-1)-scaled series.
inline OdeSeriesTable ode_series() {
    using S = Series<Rational>;
    auto sin_slot = std::make_shared<std::optional<S>>();
    auto cos_slot = std::make_shared<std::optional<S>>();
    auto exp_slot = std::make_shared<std::optional<S>>();
    S sin_ref = S::deferred([sin_slot] { return **sin_slot; });
    S cos_ref = S::deferred([cos_slot] { return **cos_slot; });
    S exp_ref = S::deferred([exp_slot] { return **exp_slot; });

    S sin = cos_ref.integral();
    S cos = S::constant(Rational(1)) +
            S::scaled(Rational(-1), sin_ref.integral());
    S exp = S::constant(Rational(1)) + exp_ref.integral();

    *sin_slot = sin;
    *cos_slot = cos;
    *exp_slot = exp;
    return {sin, cos, exp};
}

} // namespace semiconv
