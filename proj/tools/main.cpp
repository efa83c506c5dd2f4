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

// semiconv command-line tool: weighted matching over two engines, a
// cross-engine benchmark harness, polynomial and power-series utilities,
// image convolution over PGM files, and the oracle/property selftest.
//
// Exit codes: 0 success, 1 test-or-match failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <future>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semiconv/semiconv.hpp"
#include "semiconv/testing/selftest.hpp"

namespace {

using namespace semiconv;
using Clock = std::chrono::steady_clock;

struct RunTimeout {};

void check_deadline(const std::optional<Clock::time_point>& deadline) {
    if (deadline && Clock::now() > *deadline) throw RunTimeout{};
}

template <Semiring B>
B regexp_match(const RegExp<B>& e, const Word& w,
               const std::optional<Clock::time_point>& deadline = {}) {
    RegExp<B> cur = e;
    for (char32_t c : w) {
        check_deadline(deadline);
        if (cur.is_zero()) return B::zero();
        auto m = cur.deriv();
        auto it = m.find(c);
        if (it == m.end()) return B::zero();
        cur = it->second;
    }
    return cur.at_eps();
}

template <Semiring B>
B trie_match(const Trie<B>& t, const Word& w,
             const std::optional<Clock::time_point>& deadline = {}) {
    Trie<B> cur = t;
    for (char32_t c : w) {
        check_deadline(deadline);
        auto kid = cur.child(c);
        if (!kid) return B::zero();
        cur = *kid;
    }
    return cur.eps();
}

template <Semiring B>
RegExp<B> fixture_expr(const std::string& name) {
    auto ex = make_examples<B>();
    if (name == "a") return ex.a;
    if (name == "b") return ex.b;
    if (name == "atoz") return ex.atoz;
    if (name == "fishy") return ex.fishy;
    if (name == "anbn") return ex.anbn;
    if (name == "dyck") return ex.dyck;
    throw CLI::ValidationError("--fixture",
                               "unknown fixture '" + name +
                                   "' (a, b, atoz, fishy, anbn, dyck)");
}

// ---------------------------------------------------------------------------
// match

struct MatchOpts {
    std::string expr;
    std::string fixture;
    std::string semiring = "nat";
    std::string engine = "trie";
    std::string word;
    int dump_depth = -1;
};

template <Semiring B>
int run_match(const MatchOpts& o) {
    RegExp<B> e = o.fixture.empty() ? parse_regexp<B>(o.expr)
                                    : fixture_expr<B>(o.fixture);
    Word w = utf8::decode(o.word);
    B weight;
    if (o.engine == "regexp") {
        weight = regexp_match(e, w);
    } else {
        Trie<B> t = to_trie(e);
        weight = trie_match(t, w);
        if (o.dump_depth >= 0)
            std::cerr << t.dump(static_cast<std::size_t>(o.dump_depth));
    }
    std::cout << scalar_to_string(weight) << "\n";
    return weight.is_zero() ? 1 : 0;
}

// ---------------------------------------------------------------------------
// bench

const std::vector<std::string> kBenchFixtures = {
    "star_a",          "star_atoz", "star_a_star_a", "star_a_star_b",
    "star_a_b_star_a", "fishy",     "anbn",          "dyck"};

RegExp<NatCount> bench_expr(const std::string& name) {
    using R = RegExp<NatCount>;
    auto ex = make_examples<NatCount>();
    if (name == "star_a") return R::star(ex.a);
    if (name == "star_atoz") return R::star(ex.atoz);
    if (name == "star_a_star_a") return R::star(ex.a) * R::star(ex.a);
    if (name == "star_a_star_b") return R::star(ex.a) * R::star(ex.b);
    if (name == "star_a_b_star_a") return R::star(ex.a) * ex.b * R::star(ex.a);
    if (name == "fishy") return ex.fishy;
    if (name == "anbn") return ex.anbn;
    if (name == "dyck") return ex.dyck;
    throw CLI::ValidationError("--fixtures", "unknown fixture '" + name + "'");
}

// Canonical matching input of length ~N per fixture. All match uniquely
// except star_a_star_a, which matches a^N in N+1 ways. anbn and dyck round
// the length down to even.
Word bench_input(const std::string& name, std::size_t n) {
    if (name == "star_a" || name == "star_a_star_a") return Word(n, U'a');
    if (name == "star_atoz") {
        Word w;
        for (std::size_t i = 0; i < n; ++i)
            w.push_back(static_cast<char32_t>(U'a' + i % 26));
        return w;
    }
    if (name == "star_a_star_b")
        return Word(n - n / 2, U'a') + Word(n / 2, U'b');
    if (name == "star_a_b_star_a") {
        if (n == 0) return {};
        std::size_t k = (n - 1) / 2;
        return Word(k, U'a') + Word(1, U'b') + Word(n - 1 - k, U'a');
    }
    if (name == "fishy") {
        if (n < 4) return Word(n, U'x');
        std::size_t pad = (n - 4) / 2;
        return Word(pad, U'x') + utf8::decode("fish") + Word(n - 4 - pad, U'x');
    }
    if (name == "anbn") return Word(n / 2, U'a') + Word(n / 2, U'b');
    if (name == "dyck") return Word(n / 2, U'[') + Word(n / 2, U']');
    return {};
}

struct BenchCell {
    bool timeout = false;
    std::optional<NatCount> weight;
    double min_us = 0, median_us = 0, mean_us = 0;
    std::uint64_t new_cells = 0;
};

struct BenchRow {
    std::string fixture;
    BenchCell regexp, trie;
};

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n == 0) return 0;
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

BenchRow bench_fixture(const std::string& name, std::size_t length,
                       std::size_t reps, std::int64_t timeout_ms) {
    BenchRow row;
    row.fixture = name;
    RegExp<NatCount> e = bench_expr(name);
    Word input = bench_input(name, length);
    Trie<NatCount> t = to_trie(e);

    auto deadline_for_run = [&]() -> std::optional<Clock::time_point> {
        if (timeout_ms <= 0) return std::nullopt;
        return Clock::now() + std::chrono::milliseconds(timeout_ms);
    };

    // Warmup: 3 discarded runs (these also force the trie's path cells), then
    // `reps` timed runs. new_cells counts the whole phase, warmup included.
    auto time_engine = [&](auto&& once) {
        BenchCell cell;
        std::uint64_t cells_before = trie_cells_forced();
        try {
            for (int i = 0; i < 3; ++i) cell.weight = once(deadline_for_run());
            std::vector<double> us;
            us.reserve(reps);
            for (std::size_t i = 0; i < reps; ++i) {
                auto dl = deadline_for_run();
                auto t0 = Clock::now();
                cell.weight = once(dl);
                auto t1 = Clock::now();
                us.push_back(
                    std::chrono::duration<double, std::micro>(t1 - t0).count());
            }
            cell.min_us = *std::min_element(us.begin(), us.end());
            cell.median_us = median_of(us);
            cell.mean_us = std::accumulate(us.begin(), us.end(), 0.0) /
                           static_cast<double>(us.size());
        } catch (const RunTimeout&) {
            cell.timeout = true;
            cell.weight.reset();
        }
        cell.new_cells = trie_cells_forced() - cells_before;
        return cell;
    };

    row.regexp = time_engine([&](const std::optional<Clock::time_point>& dl) {
        return regexp_match(e, input, dl);
    });
    row.trie = time_engine([&](const std::optional<Clock::time_point>& dl) {
        return trie_match(t, input, dl);
    });
    return row;
}

std::string us_to_string(double us) {
    std::ostringstream out;
    out.precision(3);
    out << std::fixed << us;
    return out.str();
}

int run_bench(const std::vector<std::string>& fixtures, std::size_t length,
              std::size_t reps, std::int64_t timeout_ms, bool parallel) {
    std::vector<BenchRow> rows(fixtures.size());
    if (parallel) {
        std::vector<std::future<BenchRow>> futs;
        futs.reserve(fixtures.size());
        for (const auto& f : fixtures)
            futs.push_back(std::async(std::launch::async, bench_fixture, f,
                                      length, reps, timeout_ms));
        for (std::size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < fixtures.size(); ++i)
            rows[i] = bench_fixture(fixtures[i], length, reps, timeout_ms);
    }

    std::cout << "fixture\tengine\tlength\treps\tweight\tmin_us\tmedian_us\t"
                 "mean_us\tnew_cells\n";
    bool mismatch = false;
    for (const BenchRow& row : rows) {
        const std::pair<const char*, const BenchCell*> cells[] = {
            {"regexp", &row.regexp}, {"trie", &row.trie}};
        for (const auto& [engine, cell] : cells) {
            std::cout << row.fixture << '\t' << engine << '\t' << length << '\t'
                      << reps << '\t';
            if (cell->timeout) {
                std::cout << "TIMEOUT\tTIMEOUT\tTIMEOUT\tTIMEOUT";
            } else {
                std::cout << scalar_to_string(*cell->weight) << '\t'
                          << us_to_string(cell->min_us) << '\t'
                          << us_to_string(cell->median_us) << '\t'
                          << us_to_string(cell->mean_us);
            }
            std::cout << '\t' << cell->new_cells << '\n';
        }
        if (row.regexp.weight && row.trie.weight &&
            !(*row.regexp.weight == *row.trie.weight)) {
            std::cerr << "error: engine weight mismatch on fixture '"
                      << row.fixture << "': regexp="
                      << scalar_to_string(*row.regexp.weight)
                      << " trie=" << scalar_to_string(*row.trie.weight) << "\n";
            mismatch = true;
        }
    }
    return mismatch ? 1 : 0;
}

// ---------------------------------------------------------------------------
// poly: a small parser for sums/differences of products of powers of
// variables and integer literals, over exact rationals.

class PolyParser {
public:
    explicit PolyParser(std::string text) : t_(std::move(text)) {}

    PolyM<Rational> parse() {
        PolyM<Rational> e = parse_expr();
        skip_ws();
        if (pos_ != t_.size())
            throw ParseError(pos_, "trailing input in polynomial");
        return e;
    }

private:
    static bool is_digit(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
    }
    static bool is_alpha(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0;
    }
    static bool is_alnum(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0;
    }
    static bool is_space(char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0;
    }

    PolyM<Rational> parse_expr() {
        PolyM<Rational> acc = parse_term();
        skip_ws();
        while (pos_ < t_.size() && (t_[pos_] == '+' || t_[pos_] == '-')) {
            char op = t_[pos_++];
            PolyM<Rational> rhs = parse_term();
            if (op == '+')
                acc = acc + rhs;
            else
                acc = acc + PolyM<Rational>::constant(Rational(-1)) * rhs;
            skip_ws();
        }
        return acc;
    }

    PolyM<Rational> parse_term() {
        PolyM<Rational> acc = parse_factor();
        skip_ws();
        while (pos_ < t_.size() && t_[pos_] == '*') {
            ++pos_;
            acc = acc * parse_factor();
            skip_ws();
        }
        return acc;
    }

    PolyM<Rational> parse_factor() {
        PolyM<Rational> base = parse_atom();
        skip_ws();
        if (pos_ < t_.size() && t_[pos_] == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < t_.size() && is_digit(t_[pos_])) ++pos_;
            if (start == pos_) throw ParseError(pos_, "expected exponent");
            base = base.pow(std::stoull(t_.substr(start, pos_ - start)));
        }
        return base;
    }

    PolyM<Rational> parse_atom() {
        skip_ws();
        if (pos_ >= t_.size()) throw ParseError(pos_, "expected polynomial");
        char c = t_[pos_];
        if (c == '(') {
            ++pos_;
            PolyM<Rational> inner = parse_expr();
            skip_ws();
            if (pos_ >= t_.size() || t_[pos_] != ')')
                throw ParseError(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (is_digit(c)) {
            std::size_t start = pos_;
            while (pos_ < t_.size() && is_digit(t_[pos_])) ++pos_;
            return PolyM<Rational>::constant(Rational(
                static_cast<std::int64_t>(std::stoll(t_.substr(start, pos_ - start)))));
        }
        if (is_alpha(c) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < t_.size() && (is_alnum(t_[pos_]) || t_[pos_] == '_'))
                ++pos_;
            return PolyM<Rational>::var(t_.substr(start, pos_ - start));
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < t_.size() && is_space(t_[pos_])) ++pos_;
    }

    std::string t_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------

int run_selftest(std::uint64_t seed) {
    bool ok = true;
    int totalPassed = 0, totalFailed = 0;
    for (const auto& s : selftest::run_all(seed)) {
        std::cout << s.name << ": " << s.passed << " passed, " << s.failed
                  << " failed\n";
        for (const auto& f : s.failures) std::cout << "  FAIL " << f << "\n";
        totalPassed += s.passed;
        totalFailed += s.failed;
        ok = ok && s.failed == 0;
    }
    std::cout << "total: " << totalPassed << " passed, " << totalFailed
              << " failed\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized convolution over semirings: weighted language "
                 "matching, polynomials, series, and image kernels"};
    app.require_subcommand(1);

    // match
    MatchOpts mo;
    auto* match = app.add_subcommand(
        "match", "weight of a word in a weighted regular language");
    auto* exprOpt = match->add_option("--expr", mo.expr, "expression text");
    auto* fixOpt =
        match->add_option("--fixture", mo.fixture,
                          "named fixture: a, b, atoz, fishy, anbn, dyck");
    exprOpt->excludes(fixOpt);
    match->add_option("--semiring", mo.semiring, "weight semiring")
        ->check(CLI::IsMember({"nat", "bool"}))
        ->capture_default_str();
    match->add_option("--engine", mo.engine, "matching engine")
        ->check(CLI::IsMember({"regexp", "trie"}))
        ->capture_default_str();
    match->add_option("--dump-trie", mo.dump_depth,
                      "dump forced trie nodes to stderr down to this depth");
    match->add_option("word", mo.word, "candidate word (may be empty)");

    // bench
    std::vector<std::string> benchFixtures = kBenchFixtures;
    std::size_t benchLength = 100;
    std::size_t benchReps = 50;
    std::int64_t benchTimeoutMs = 0;
    bool benchParallel = false;
    auto* bench = app.add_subcommand(
        "bench", "cross-engine timing table (TSV on stdout)");
    bench->add_option("--fixtures", benchFixtures, "fixtures to run")
        ->delimiter(',');
    bench->add_option("--length", benchLength, "input length")
        ->capture_default_str();
    bench->add_option("--reps", benchReps, "timed repetitions per engine")
        ->capture_default_str();
    bench->add_option("--timeout-ms", benchTimeoutMs,
                      "per-run timeout; exceeded cells report TIMEOUT");
    bench->add_flag("--parallel", benchParallel,
                    "run fixtures concurrently (never within a timed run)");

    // poly pow
    std::string polyText;
    std::uint64_t polyN = 1;
    auto* poly = app.add_subcommand("poly", "polynomial utilities");
    poly->require_subcommand(1);
    auto* polyPow = poly->add_subcommand("pow", "expand p^n");
    polyPow->add_option("--p", polyText, "polynomial, e.g. \"x+3\"")
        ->required();
    polyPow->add_option("--n", polyN, "exponent")->required();

    // series
    std::string seriesName;
    std::size_t seriesCount = 16;
    auto* series = app.add_subcommand(
        "series", "power-series coefficient dump (index<TAB>coefficient)");
    series->add_option("--name", seriesName, "series name")
        ->check(CLI::IsMember({"sin", "cos", "exp"}))
        ->required();
    series->add_option("--count", seriesCount, "number of coefficients")
        ->capture_default_str();

    // image
    std::string kernelName = "blur";
    std::string imageIn, imageOut;
    auto* image = app.add_subcommand("image", "convolve a PGM image");
    image->add_option("--kernel", kernelName, "kernel name")
        ->check(CLI::IsMember({"identity", "blur", "sharpen", "edge"}))
        ->capture_default_str();
    image->add_option("input", imageIn, "input PGM (P2 or P5)")->required();
    image->add_option("output", imageOut, "output PGM (P5)")->required();

    // selftest
    std::uint64_t seed = kDefaultSeed;
    auto* selftestCmd =
        app.add_subcommand("selftest", "run the oracle/property suites");
    selftestCmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (match->parsed()) {
            if (mo.expr.empty() && mo.fixture.empty()) {
                std::cerr << "error: one of --expr or --fixture is required\n";
                return 2;
            }
            return mo.semiring == "bool" ? run_match<BoolRing>(mo)
                                         : run_match<NatCount>(mo);
        }
        if (bench->parsed())
            return run_bench(benchFixtures, benchLength, benchReps,
                             benchTimeoutMs, benchParallel);
        if (poly->parsed()) {
            PolyM<Rational> p = PolyParser(polyText).parse();
            std::cout << p.pow(polyN).to_string() << "\n";
            return 0;
        }
        if (series->parsed()) {
            auto ode = ode_series();
            const Series<Rational>& s = seriesName == "sin"   ? ode.sin
                                        : seriesName == "cos" ? ode.cos
                                                              : ode.exp;
            for (std::size_t i = 0; i < seriesCount; ++i)
                std::cout << i << '\t'
                          << scalar_to_string(s.coefficient(i)) << '\n';
            return 0;
        }
        if (image->parsed()) {
            ImageGrid img = load_pgm_file(imageIn);
            Kernel k = kernelName == "identity"  ? identity_kernel()
                       : kernelName == "blur"    ? blur_kernel()
                       : kernelName == "sharpen" ? sharpen_kernel()
                                                 : edge_kernel();
            save_pgm_file(conv2d(img, k), imageOut);
            return 0;
        }
        if (selftestCmd->parsed()) return run_selftest(seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnproductiveRecursion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
