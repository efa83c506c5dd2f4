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

#include <atomic>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "semiconv/keys.hpp"
#include "semiconv/regexp.hpp"
#include "semiconv/scalars.hpp"
#include "semiconv/utf8.hpp"

namespace semiconv {

namespace detail {
// Counts every trie cell whose thunk actually ran; the benchmark harness and
// the memoization tests read this.
inline std::atomic<std::uint64_t> trie_forced_cells{0};
} // namespace detail

inline std::uint64_t trie_cells_forced() {
    return detail::trie_forced_cells.load();
}

/// Memoizing list trie: an empty-word weight plus a map from symbols to
/// child tries, each child held in a cell forced at most once.
///
/// Semiring structure follows the decomposition b :< h directly:
///   (a :< dp) + (b :< dq) = a+b :< dp+dq
///   (a :< dp) * q         = a.q + (0 :< fmap (*q) dp)
///   star (a :< dp)        = q where q = star a . (1 :< fmap (*q) dp)
/// Operations build one node level when forced and defer everything below,
/// so star can tie the knot: its children reference the result itself.
template <typename B>
class Trie {
public:
    using Symbol = char32_t;

private:
    struct Node {
        B eps = B::zero();
        std::map<Symbol, Trie> kids;
    };

    struct Cell {
        std::mutex m;
        std::condition_variable cv;
        std::optional<Node> node;
        std::function<Node()> thunk;
        bool forcing = false;
        std::thread::id forcer;
    };

    std::shared_ptr<Cell> cell_;

    explicit Trie(std::shared_ptr<Cell> c) : cell_(std::move(c)) {}

    static Trie make_lazy(std::function<Node()> thunk) {
        auto cell = std::make_shared<Cell>();
        cell->thunk = std::move(thunk);
        return Trie{cell};
    }

    const Node& force() const {
        Cell& c = *cell_;
        std::unique_lock lk(c.m);
        if (c.node) return *c.node;
        if (c.forcing) {
            if (c.forcer == std::this_thread::get_id())
                throw UnproductiveRecursion(
                    "trie cell re-entered while being forced");
            c.cv.wait(lk, [&] { return c.node.has_value(); });
            return *c.node;
        }
        c.forcing = true;
        c.forcer = std::this_thread::get_id();
        lk.unlock();
        try {
            Node n = c.thunk();
            lk.lock();
            c.node = std::move(n);
            c.thunk = nullptr;
            c.forcing = false;
            detail::trie_forced_cells.fetch_add(1);
            c.cv.notify_all();
            return *c.node;
        } catch (...) {
            std::lock_guard g(c.m);
            c.forcing = false;
            c.cv.notify_all();
            throw;
        }
    }

public:
    Trie() : Trie(make(B::zero(), {})) {}

    /// Concrete node; children may themselves be unforced cells.
    static Trie make(B eps, std::map<Symbol, Trie> kids) {
        auto cell = std::make_shared<Cell>();
        cell->node = Node{std::move(eps), std::move(kids)};
        return Trie{cell};
    }

    static Trie zero() { return make(B::zero(), {}); }
    static Trie one() { return make(B::one(), {}); }
    static Trie value(B b) { return make(std::move(b), {}); }

    /// The spine trie for w: 0-weight nodes down to w's end, then b.
    static Trie singleton(const Word& w, B b) {
        Trie acc = make(std::move(b), {});
        for (std::size_t i = w.size(); i-- > 0;) {
            std::map<Symbol, Trie> kids;
            kids.emplace(w[i], acc);
            acc = make(B::zero(), std::move(kids));
        }
        return acc;
    }

    /// Deferred trie; the thunk runs at most once, when the root is needed.
    static Trie defer(std::function<Trie()> f) {
        return make_lazy([f = std::move(f)] {
            Trie t = f();
            return t.force();
        });
    }

    bool is_forced() const {
        std::lock_guard g(cell_->m);
        return cell_->node.has_value();
    }

    /// Weight of w; forces exactly the cells along w's path.
    B index(const Word& w) const {
        Trie cur = *this;
        for (Symbol c : w) {
            const Node& n = cur.force();
            auto it = n.kids.find(c);
            if (it == n.kids.end()) return B::zero();
            Trie next = it->second;
            cur = next;
        }
        return cur.force().eps;
    }

    B eps() const { return force().eps; }

    std::optional<Trie> child(Symbol c) const {
        const Node& n = force();
        auto it = n.kids.find(c);
        if (it == n.kids.end()) return std::nullopt;
        return it->second;
    }

    Trie operator+(const Trie& o) const {
        Trie p = *this;
        Trie q = o;
        return make_lazy([p, q] {
            const Node& a = p.force();
            const Node& b = q.force();
            Node out;
            out.eps = a.eps + b.eps;
            out.kids = a.kids;
            for (const auto& [c, t] : b.kids) {
                auto it = out.kids.find(c);
                if (it == out.kids.end())
                    out.kids.emplace(c, t);
                else
                    it->second = it->second + t;
            }
            return out;
        });
    }

    /// Left scalar action, zero/one shortcuts applied at the root.
    static Trie scaled(const B& s, const Trie& t) {
        if (s.is_zero()) return zero();
        if (s.is_one()) return t;
        return make_lazy([s, t] {
            const Node& n = t.force();
            Node out;
            out.eps = s * n.eps;
            for (const auto& [c, kid] : n.kids)
                out.kids.emplace(c, scaled(s, kid));
            return out;
        });
    }

    Trie operator*(const Trie& o) const {
        Trie p = *this;
        Trie q = o;
        return make_lazy([p, q] {
            const Node& a = p.force();
            Node out;
            if (!a.eps.is_zero()) {
                // a.eps . q contributes the root of the scaled right factor.
                Trie s = scaled(a.eps, q);
                const Node& sn = s.force();
                out.eps = sn.eps;
                out.kids = sn.kids;
            }
            for (const auto& [c, kid] : a.kids) {
                Trie prod = kid * q;
                auto it = out.kids.find(c);
                if (it == out.kids.end())
                    out.kids.emplace(c, prod);
                else
                    it->second = it->second + prod;
            }
            return out;
        });
    }

    /// Knot-tied closure: the result's children reference the result itself
    /// through deferred cells.
    Trie star() const {
        Trie p = *this;
        auto cell = std::make_shared<Cell>();
        Trie q{cell};
        cell->thunk = [p, q] {
            const Node& n = p.force();
            B sa = detail::star_adl(n.eps);
            Node out;
            out.eps = sa;
            for (const auto& [c, kid] : n.kids)
                out.kids.emplace(c, scaled(sa, kid * q));
            return out;
        };
        return q;
    }

    // -- comonad ------------------------------------------------------------

    B coreturn() const { return eps(); }

    /// cojoin t = t :< fmap cojoin (children t); indexing the result at a
    /// prefix u yields the residual language of t after u.
    Trie<Trie<B>> cojoin() const {
        Trie t = *this;
        return Trie<Trie<B>>::defer([t] {
            const Node& n = t.force();
            std::map<Symbol, Trie<Trie<B>>> kids;
            for (const auto& [c, kid] : n.kids) kids.emplace(c, kid.cojoin());
            return Trie<Trie<B>>::make(t, std::move(kids));
        });
    }

    /// Breadth-first dump of forced nodes as `prefix<TAB>weight` lines down
    /// to max_depth; unforced cells print `?` and are not descended into.
    std::string dump(std::size_t max_depth) const {
        std::string out;
        std::vector<std::pair<Word, Trie>> frontier{{Word{}, *this}};
        for (std::size_t d = 0; d <= max_depth && !frontier.empty(); ++d) {
            std::vector<std::pair<Word, Trie>> next;
            for (const auto& [w, t] : frontier) {
                if (!t.is_forced()) {
                    out += utf8::encode(w) + "\t?\n";
                    continue;
                }
                const Node& n = t.force();
                out += utf8::encode(w) + "\t" + scalar_to_string(n.eps) + "\n";
                for (const auto& [c, kid] : n.kids)
                    next.emplace_back(w + Word(1, c), kid);
            }
            frontier = std::move(next);
        }
        return out;
    }

    template <typename>
    friend class Trie;
};

/// Reinterpretation target mapping regular expressions onto tries.
template <Semiring B>
struct TrieTarget {
    using value_type = Trie<B>;
    static Trie<B> from_value(const B& b) { return Trie<B>::value(b); }
    static Trie<B> from_symbol(char32_t c) {
        return Trie<B>::singleton(Word(1, c), B::one());
    }
    static Trie<B> star(const Trie<B>& t) { return t.star(); }
    static Trie<B> defer(std::function<Trie<B>()> f) {
        return Trie<B>::defer(std::move(f));
    }
};

/// Convenience: the trie engine for a regular expression.
template <Semiring B>
Trie<B> to_trie(const RegExp<B>& e) {
    return e.template reinterpret<TrieTarget<B>>();
}

} // namespace semiconv
