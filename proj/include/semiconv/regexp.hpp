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

#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>

#include "semiconv/keys.hpp"
#include "semiconv/scalars.hpp"

namespace semiconv {

/// Raised when a recursive definition has no productive base case, e.g. a
/// grammar that reaches itself again without consuming a symbol.
struct UnproductiveRecursion : std::runtime_error {
    explicit UnproductiveRecursion(const std::string& what)
        : std::runtime_error(what) {}
};

/// Generalized regular expression denoting a weighted language Word -> B.
///
/// Matching is Brzozowski's algorithm: differentiate with respect to each
/// symbol of the candidate word, then take the empty-word weight of the
/// residual expression. Values are immutable shared syntax DAGs; Defer nodes
/// carry a force-once thunk so that recursive (context-free) definitions can
/// be written in a strict language.
template <Semiring B>
class RegExp {
public:
    using Symbol = char32_t;
    using DerivMap = std::map<Symbol, RegExp>;

    enum class Kind { Char, Value, Sum, Prod, Star, Defer };

private:
    struct Node;
    using P = std::shared_ptr<const Node>;

    struct SumN {
        P l, r;
    };
    struct ProdN {
        P l, r;
    };
    struct StarN {
        P inner;
    };

    struct DeferState {
        std::string name;
        std::function<RegExp()> thunk;
        mutable std::mutex m;
        mutable std::condition_variable cv;
        mutable std::optional<RegExp> forced;
        mutable bool forcing = false;
        mutable std::thread::id forcer;
        mutable std::optional<B> eps_cache;
    };
    using DeferP = std::shared_ptr<DeferState>;

    struct Node {
        std::variant<Symbol, B, SumN, ProdN, StarN, DeferP> v;
    };

    explicit RegExp(P root) : root_(std::move(root)) {}

    P root_;

public:
    RegExp() : RegExp(value(B::zero())) {}

    // -- constructors -------------------------------------------------------

    static RegExp value(B b) {
        return RegExp{std::make_shared<const Node>(Node{std::move(b)})};
    }

    static RegExp chr(Symbol c) {
        return RegExp{std::make_shared<const Node>(Node{c})};
    }

    /// w |-> b, as b times the product of the characters of w.
    static RegExp word_to(const Word& w, B b) {
        RegExp acc = value(B::one());
        for (std::size_t i = w.size(); i-- > 0;) acc = mul(chr(w[i]), acc);
        return mul(value(std::move(b)), acc);
    }

    static RegExp single(const Word& w) { return word_to(w, B::one()); }

    /// Smart sum: zero children are dropped on either side.
    static RegExp add(const RegExp& p, const RegExp& q) {
        if (p.is_zero()) return q;
        if (q.is_zero()) return p;
        return RegExp{std::make_shared<const Node>(Node{SumN{p.root_, q.root_}})};
    }

    /// Smart product. Only the left argument is inspected: checking the right
    /// one for zero/one leads to non-termination in right-recursive grammars.
    static RegExp mul(const RegExp& p, const RegExp& q) {
        if (p.is_zero()) return value(B::zero());
        if (p.is_one()) return q;
        return RegExp{std::make_shared<const Node>(Node{ProdN{p.root_, q.root_}})};
    }

    static RegExp star(const RegExp& p) {
        return RegExp{std::make_shared<const Node>(Node{StarN{p.root_}})};
    }

    /// Named deferred expression; the thunk is forced at most once.
    static RegExp defer(std::string name, std::function<RegExp()> thunk) {
        auto ds = std::make_shared<DeferState>();
        ds->name = std::move(name);
        ds->thunk = std::move(thunk);
        return RegExp{std::make_shared<const Node>(Node{ds})};
    }

    /// Knot-tying helper: the definition body may reference the value being
    /// defined, e.g. anbn = 1 + a * anbn * b.
    static RegExp recursive(std::string name,
                            std::function<RegExp(RegExp)> body) {
        auto ds = std::make_shared<DeferState>();
        ds->name = std::move(name);
        RegExp self{std::make_shared<const Node>(Node{ds})};
        ds->thunk = [body = std::move(body), self] { return body(self); };
        return self;
    }

    RegExp operator+(const RegExp& o) const { return add(*this, o); }
    RegExp operator*(const RegExp& o) const { return mul(*this, o); }

    // -- observers ----------------------------------------------------------

    Kind kind() const {
        switch (root_->v.index()) {
            case 0: return Kind::Char;
            case 1: return Kind::Value;
            case 2: return Kind::Sum;
            case 3: return Kind::Prod;
            case 4: return Kind::Star;
            default: return Kind::Defer;
        }
    }

    /// Syntactic zero/one tests (a Value leaf only; Defer is never inspected).
    bool is_zero() const {
        const B* b = std::get_if<B>(&root_->v);
        return b != nullptr && b->is_zero();
    }

    bool is_one() const {
        const B* b = std::get_if<B>(&root_->v);
        return b != nullptr && b->is_one();
    }

    // -- semantics ----------------------------------------------------------

    /// The weight of the empty word. The product case short-circuits when the
    /// left factor's weight is zero, which is what lets recursive grammars
    /// terminate without lazy evaluation.
    B at_eps() const {
        std::set<const DeferState*> guard;
        return at_eps_node(root_, guard);
    }

    /// Brzozowski derivative with respect to every symbol at once, as a
    /// sparse map; absent symbols have derivative zero.
    DerivMap deriv() const { return deriv_node(root_); }

    /// The weight of w: left fold of single-symbol derivatives, then at_eps.
    B index(const Word& w) const {
        RegExp cur = *this;
        for (Symbol c : w) {
            if (cur.is_zero()) return B::zero();
            DerivMap m = cur.deriv();
            auto it = m.find(c);
            if (it == m.end()) return B::zero();
            cur = it->second;
        }
        return cur.at_eps();
    }

    /// Homomorphic reinterpretation into another semiring. Ops supplies:
    ///   value_type, from_value(B), from_symbol(Symbol),
    ///   star(value_type), defer(function<value_type()>),
    /// and value_type must have + and *. Defer nodes map to lazily
    /// reinterpreted bodies, memoized per node identity so shared and
    /// recursive structure is preserved.
    template <typename Ops>
    typename Ops::value_type reinterpret() const {
        auto memo = std::make_shared<
            std::map<const void*, typename Ops::value_type>>();
        return reinterpret_node<Ops>(root_, memo);
    }

private:
    static const RegExp& force_defer(const DeferP& ds) {
        std::unique_lock lk(ds->m);
        if (ds->forced) return *ds->forced;
        if (ds->forcing) {
            if (ds->forcer == std::this_thread::get_id())
                throw UnproductiveRecursion("unproductive recursion while forcing '" +
                                            ds->name + "'");
            ds->cv.wait(lk, [&] { return ds->forced.has_value(); });
            return *ds->forced;
        }
        ds->forcing = true;
        ds->forcer = std::this_thread::get_id();
        lk.unlock();
        try {
            RegExp r = ds->thunk();
            lk.lock();
            ds->forced = std::move(r);
            ds->forcing = false;
            ds->cv.notify_all();
            return *ds->forced;
        } catch (...) {
            std::lock_guard g(ds->m);
            ds->forcing = false;
            ds->cv.notify_all();
            throw;
        }
    }

    static B at_eps_node(const P& n, std::set<const DeferState*>& guard) {
        if (std::holds_alternative<Symbol>(n->v)) return B::zero();
        if (const B* b = std::get_if<B>(&n->v)) return *b;
        if (const SumN* s = std::get_if<SumN>(&n->v))
            return at_eps_node(s->l, guard) + at_eps_node(s->r, guard);
        if (const ProdN* p = std::get_if<ProdN>(&n->v)) {
            B l = at_eps_node(p->l, guard);
            if (l.is_zero()) return B::zero();
            return l * at_eps_node(p->r, guard);
        }
        if (const StarN* s = std::get_if<StarN>(&n->v))
            return detail::star_adl(at_eps_node(s->inner, guard));
        const DeferP& ds = std::get<DeferP>(n->v);
        {
            std::lock_guard g(ds->m);
            if (ds->eps_cache) return *ds->eps_cache;
        }
        if (!guard.insert(ds.get()).second)
            throw UnproductiveRecursion("unproductive recursion in at_eps of '" +
                                        ds->name + "'");
        B r = at_eps_node(force_defer(ds).root_, guard);
        guard.erase(ds.get());
        std::lock_guard g(ds->m);
        if (!ds->eps_cache) ds->eps_cache = r;
        return *ds->eps_cache;
    }

    static void merge_into(DerivMap& out, DerivMap&& add_in) {
        for (auto& [c, d] : add_in) {
            auto it = out.find(c);
            if (it == out.end()) {
                if (!d.is_zero()) out.emplace(c, std::move(d));
            } else {
                it->second = add(it->second, d);
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }

    /// s . e as Value(s) * e through the smart constructor, so the zero and
    /// one shortcuts fall out of the left-argument guards.
    static RegExp scale_expr(const B& s, const RegExp& e) {
        return mul(value(s), e);
    }

    static DerivMap deriv_node(const P& n) {
        DerivMap out;
        if (const Symbol* c = std::get_if<Symbol>(&n->v)) {
            out.emplace(*c, value(B::one()));
            return out;
        }
        if (std::get_if<B>(&n->v)) return out;
        if (const SumN* s = std::get_if<SumN>(&n->v)) {
            out = deriv_node(s->l);
            merge_into(out, deriv_node(s->r));
            return out;
        }
        if (const ProdN* p = std::get_if<ProdN>(&n->v)) {
            RegExp pe{p->l};
            RegExp qe{p->r};
            B ae = pe.at_eps();
            // deriv(p*q) = fmap (atEps p .) (deriv q) + fmap (* q) (deriv p).
            // When atEps p is zero the first term vanishes and deriv q is not
            // computed at all; this mirrors the scaling shortcut and keeps
            // recursive grammars finite.
            if (!ae.is_zero()) {
                for (auto& [c, d] : deriv_node(p->r)) {
                    RegExp scaled = scale_expr(ae, d);
                    if (!scaled.is_zero()) out.emplace(c, std::move(scaled));
                }
            }
            DerivMap left;
            for (auto& [c, d] : deriv_node(p->l)) {
                RegExp prod = mul(d, qe);
                if (!prod.is_zero()) left.emplace(c, std::move(prod));
            }
            merge_into(out, std::move(left));
            return out;
        }
        if (const StarN* s = std::get_if<StarN>(&n->v)) {
            RegExp inner{s->inner};
            RegExp self{n};
            B sae = detail::star_adl(inner.at_eps());
            for (auto& [c, d] : deriv_node(s->inner)) {
                RegExp e = mul(scale_expr(sae, d), self);
                if (!e.is_zero()) out.emplace(c, std::move(e));
            }
            return out;
        }
        const DeferP& ds = std::get<DeferP>(n->v);
        return deriv_node(force_defer(ds).root_);
    }

    template <typename Ops>
    static typename Ops::value_type reinterpret_node(
        const P& n,
        const std::shared_ptr<std::map<const void*, typename Ops::value_type>>&
            memo) {
        using V = typename Ops::value_type;
        if (const Symbol* c = std::get_if<Symbol>(&n->v))
            return Ops::from_symbol(*c);
        if (const B* b = std::get_if<B>(&n->v)) return Ops::from_value(*b);
        if (const SumN* s = std::get_if<SumN>(&n->v))
            return reinterpret_node<Ops>(s->l, memo) +
                   reinterpret_node<Ops>(s->r, memo);
        if (const ProdN* p = std::get_if<ProdN>(&n->v))
            return reinterpret_node<Ops>(p->l, memo) *
                   reinterpret_node<Ops>(p->r, memo);
        if (const StarN* s = std::get_if<StarN>(&n->v))
            return Ops::star(reinterpret_node<Ops>(s->inner, memo));
        const DeferP& ds = std::get<DeferP>(n->v);
        auto it = memo->find(ds.get());
        if (it != memo->end()) return it->second;
        V lazy = Ops::defer([memo, ds] {
            return reinterpret_node<Ops>(force_defer(ds).root_, memo);
        });
        memo->emplace(ds.get(), lazy);
        return lazy;
    }
};

/// The six example languages, polymorphic in the weight semiring. anbn and
/// dyck are the classic non-regular ones, built through deferred recursion.
template <Semiring B>
struct ExampleTable {
    RegExp<B> a, b, atoz, fishy, anbn, dyck;
};

template <Semiring B>
ExampleTable<B> make_examples() {
    using R = RegExp<B>;
    R a = R::single(U"a");
    R b = R::single(U"b");
    R atoz = R::value(B::zero());
    for (char32_t c = U'a'; c <= U'z'; ++c) atoz = atoz + R::single(Word(1, c));
    R fishy = R::star(atoz) * R::single(U"fish") * R::star(atoz);
    R anbn = R::recursive(
        "anbn", [a, b](R self) { return R::value(B::one()) + a * self * b; });
    R dyck = R::recursive("dyck", [](R self) {
        return R::star(R::single(U"[") * self * R::single(U"]"));
    });
    return {a, b, atoz, fishy, anbn, dyck};
}

} // namespace semiconv
