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

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semiconv/regexp.hpp"
#include "semiconv/utf8.hpp"

namespace semiconv {

/// Expression-text error carrying a 0-based code-point offset.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at offset " + std::to_string(pos) +
                             ": " + msg),
          position(pos) {}
};

// Textual syntax for weighted regular expressions:
//   'c'        character
//   123        weight literal
//   e + e      sum
//   e * e      product (explicit)
//   e^*        closure (postfix)
//   (e)        grouping
//   name       reference to a binding or a built-in fixture
//   name = e   binding; bindings may reference themselves and each other
// Items are separated by ';'. The program value is the trailing expression,
// or the last binding when there is none. Precedence: ^* over * over +.

namespace exprdetail {

struct Ast {
    enum class K { Chr, Num, Name, Add, Mul, Star } k{};
    char32_t ch{};
    std::string digits;
    std::string name;
    std::size_t pos = 0;
    std::vector<Ast> kids;
};

struct Program {
    std::vector<std::pair<std::string, Ast>> bindings;
    std::optional<Ast> final_expr;
};

class Parser {
public:
    explicit Parser(std::u32string text) : t_(std::move(text)) {}

    Program parse_program() {
        Program prog;
        skip_ws();
        bool expect_item = true;
        while (pos_ < t_.size()) {
            if (!expect_item) fail("expected ';' between items");
            std::size_t save = pos_;
            std::optional<std::string> name = try_binding_head();
            if (name) {
                Ast body = parse_expr();
                for (const auto& [n, a] : prog.bindings)
                    if (n == *name) fail_at(save, "duplicate binding '" + *name + "'");
                prog.bindings.emplace_back(*name, std::move(body));
            } else {
                pos_ = save;
                prog.final_expr = parse_expr();
            }
            skip_ws();
            if (pos_ < t_.size() && t_[pos_] == U';') {
                if (prog.final_expr) fail("expression must be the last item");
                ++pos_;
                skip_ws();
                expect_item = pos_ < t_.size();
            } else {
                expect_item = false;
            }
        }
        if (!prog.final_expr && prog.bindings.empty()) fail("empty expression");
        return prog;
    }

private:
    std::optional<std::string> try_binding_head() {
        skip_ws();
        if (pos_ >= t_.size() || !is_name_start(t_[pos_])) return std::nullopt;
        std::size_t save = pos_;
        std::string name = read_name();
        skip_ws();
        if (pos_ < t_.size() && t_[pos_] == U'=') {
            ++pos_;
            return name;
        }
        pos_ = save;
        return std::nullopt;
    }

    Ast parse_expr() {
        Ast lhs = parse_term();
        skip_ws();
        while (pos_ < t_.size() && t_[pos_] == U'+') {
            std::size_t p = pos_++;
            Ast rhs = parse_term();
            Ast node;
            node.k = Ast::K::Add;
            node.pos = p;
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(std::move(rhs));
            lhs = std::move(node);
            skip_ws();
        }
        return lhs;
    }

    Ast parse_term() {
        Ast lhs = parse_factor();
        skip_ws();
        while (pos_ < t_.size() && t_[pos_] == U'*') {
            std::size_t p = pos_++;
            Ast rhs = parse_factor();
            Ast node;
            node.k = Ast::K::Mul;
            node.pos = p;
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(std::move(rhs));
            lhs = std::move(node);
            skip_ws();
        }
        return lhs;
    }

    Ast parse_factor() {
        Ast inner = parse_atom();
        skip_ws();
        while (pos_ + 1 < t_.size() && t_[pos_] == U'^' && t_[pos_ + 1] == U'*') {
            Ast node;
            node.k = Ast::K::Star;
            node.pos = pos_;
            node.kids.push_back(std::move(inner));
            inner = std::move(node);
            pos_ += 2;
            skip_ws();
        }
        return inner;
    }

    Ast parse_atom() {
        skip_ws();
        if (pos_ >= t_.size()) fail("expected expression");
        char32_t c = t_[pos_];
        Ast node;
        node.pos = pos_;
        if (c == U'(') {
            ++pos_;
            Ast inner = parse_expr();
            skip_ws();
            if (pos_ >= t_.size() || t_[pos_] != U')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == U'\'') {
            ++pos_;
            if (pos_ >= t_.size()) fail("unterminated character literal");
            char32_t lit = t_[pos_++];
            if (lit == U'\\') {
                if (pos_ >= t_.size()) fail("unterminated escape");
                lit = t_[pos_++];
            }
            if (pos_ >= t_.size() || t_[pos_] != U'\'')
                fail("expected closing '\''");
            ++pos_;
            node.k = Ast::K::Chr;
            node.ch = lit;
            return node;
        }
        if (c >= U'0' && c <= U'9') {
            node.k = Ast::K::Num;
            while (pos_ < t_.size() && t_[pos_] >= U'0' && t_[pos_] <= U'9')
                node.digits.push_back(static_cast<char>(t_[pos_++]));
            return node;
        }
        if (is_name_start(c)) {
            node.k = Ast::K::Name;
            node.name = read_name();
            return node;
        }
        fail("unexpected character '" + utf8::encode(c) + "'");
    }

    static bool is_name_start(char32_t c) {
        return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'_';
    }

    static bool is_name_char(char32_t c) {
        return is_name_start(c) || (c >= U'0' && c <= U'9');
    }

    std::string read_name() {
        std::string out;
        while (pos_ < t_.size() && is_name_char(t_[pos_]))
            out.push_back(static_cast<char>(t_[pos_++]));
        return out;
    }

    void skip_ws() {
        while (pos_ < t_.size() &&
               (t_[pos_] == U' ' || t_[pos_] == U'\t' || t_[pos_] == U'\n' ||
                t_[pos_] == U'\r'))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t p, const std::string& msg) {
        throw ParseError(p, msg);
    }

    std::u32string t_;
    std::size_t pos_ = 0;
};

inline void collect_names(const Ast& a,
                          std::vector<std::pair<std::string, std::size_t>>& out) {
    if (a.k == Ast::K::Name) out.emplace_back(a.name, a.pos);
    for (const Ast& kid : a.kids) collect_names(kid, out);
}

template <Semiring B>
B scalar_from_digits(const std::string& digits) {
    if constexpr (std::is_same_v<B, NatCount>) {
        return NatCount::from_decimal(digits);
    } else {
        return B::from_natural(std::stoull(digits));
    }
}

template <Semiring B>
RegExp<B> lower(const Ast& a, const std::map<std::string, RegExp<B>>& env) {
    using R = RegExp<B>;
    switch (a.k) {
        case Ast::K::Chr: return R::chr(a.ch);
        case Ast::K::Num: return R::value(scalar_from_digits<B>(a.digits));
        case Ast::K::Name: return env.at(a.name);
        case Ast::K::Add:
            return R::add(lower(a.kids[0], env), lower(a.kids[1], env));
        case Ast::K::Mul:
            return R::mul(lower(a.kids[0], env), lower(a.kids[1], env));
        case Ast::K::Star: return R::star(lower(a.kids[0], env));
    }
    throw std::logic_error("unreachable ast kind");
}

} // namespace exprdetail

/// Parse expression text into a weighted regular expression. The six example
/// fixtures (a, b, atoz, fishy, anbn, dyck) are pre-bound; user bindings may
/// shadow them and may be recursive.
template <Semiring B>
RegExp<B> parse_regexp(std::string_view text) {
    using R = RegExp<B>;
    exprdetail::Parser parser{utf8::decode(text)};
    auto prog = std::make_shared<exprdetail::Program>(parser.parse_program());

    auto env = std::make_shared<std::map<std::string, RegExp<B>>>();
    ExampleTable<B> ex = make_examples<B>();
    env->emplace("a", ex.a);
    env->emplace("b", ex.b);
    env->emplace("atoz", ex.atoz);
    env->emplace("fishy", ex.fishy);
    env->emplace("anbn", ex.anbn);
    env->emplace("dyck", ex.dyck);

    for (std::size_t i = 0; i < prog->bindings.size(); ++i) {
        const std::string& name = prog->bindings[i].first;
        (*env)[name] = R::defer(name, [env, prog, i] {
            return exprdetail::lower<B>(prog->bindings[i].second, *env);
        });
    }

    std::vector<std::pair<std::string, std::size_t>> names;
    for (const auto& [n, ast] : prog->bindings)
        exprdetail::collect_names(ast, names);
    if (prog->final_expr) exprdetail::collect_names(*prog->final_expr, names);
    for (const auto& [n, pos] : names)
        if (!env->count(n)) throw ParseError(pos, "unknown name '" + n + "'");

    if (prog->final_expr) return exprdetail::lower<B>(*prog->final_expr, *env);
    return env->at(prog->bindings.back().first);
}

} // namespace semiconv
