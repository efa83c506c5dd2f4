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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "semiconv/testing/selftest.hpp"

using namespace semiconv;

namespace {
Rational fact(std::uint64_t n) {
    Rational f(1);
    for (std::uint64_t i = 2; i <= n; ++i)
        f = f * Rational(static_cast<std::int64_t>(i));
    return f;
}
} // namespace

TEST_CASE("derivative inverts integral away from the constant") {
    SplitMix64 rng(61);
    std::vector<Rational> coeffs;
    for (int i = 0; i < 24; ++i)
        coeffs.emplace_back(static_cast<std::int64_t>(rng.below(19)) - 9,
                            static_cast<std::int64_t>(rng.below(5)) + 1);
    auto s = Series<Rational>::from_coefficients(coeffs);
    auto roundtrip = s.integral().derivative();
    for (std::size_t n = 0; n <= 20; ++n)
        CHECK(roundtrip.coefficient(n) == s.coefficient(n));
}

TEST_CASE("integral of the all-ones series") {
    Series<Rational> ones([](std::size_t) { return Rational(1); });
    auto I = ones.integral();
    CHECK(I.coefficient(0) == Rational(0));
    for (std::int64_t n = 1; n <= 8; ++n)
        CHECK(I.coefficient(static_cast<std::size_t>(n)) == Rational(1, n));
}

TEST_CASE("integral yields coefficient 0 before consulting its argument") {
    bool pulled = false;
    Series<Rational> probe([&pulled](std::size_t) {
        pulled = true;
        return Rational(1);
    });
    CHECK(probe.integral().coefficient(0) == Rational(0));
    CHECK_FALSE(pulled);
    (void)probe.integral().coefficient(1);
    CHECK(pulled);
}

TEST_CASE("ode-defined sin, cos, exp match their closed-form coefficients") {
    auto ode = ode_series();
    // sin: x - 1/6 x^3 + 1/120 x^5 - ...
    CHECK(ode.sin.coefficients(6) ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(0),
                                Rational(-1, 6), Rational(0), Rational(1, 120)});
    // cos: 1 - 1/2 x^2 + 1/24 x^4 - ...
    CHECK(ode.cos.coefficients(5) ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(-1, 2),
                                Rational(0), Rational(1, 24)});
    for (std::uint64_t n = 0; n <= 12; ++n)
        CHECK(ode.exp.coefficient(n) == Rational(1) / fact(n));
    CHECK(ode.sin.coefficient(13) == Rational(1, 6227020800));
    CHECK(ode.cos.coefficient(12) == Rational(1, 479001600));
}

TEST_CASE("derivative identities among the ode trio") {
    auto ode = ode_series();
    auto dSin = ode.sin.derivative();
    auto dCos = ode.cos.derivative();
    auto dExp = ode.exp.derivative();
    for (std::size_t n = 0; n <= 15; ++n) {
        CHECK(dSin.coefficient(n) == ode.cos.coefficient(n));
        CHECK(dCos.coefficient(n) == -ode.sin.coefficient(n));
        CHECK(dExp.coefficient(n) == ode.exp.coefficient(n));
    }
}

TEST_CASE("sin^2 + cos^2 = 1 as exact series") {
    auto ode = ode_series();
    auto convCoeff = [&](const Series<Rational>& s, std::size_t n) {
        Rational acc(0);
        for (std::size_t i = 0; i <= n; ++i)
            acc = acc + s.coefficient(i) * s.coefficient(n - i);
        return acc;
    };
    CHECK(convCoeff(ode.sin, 0) + convCoeff(ode.cos, 0) == Rational(1));
    for (std::size_t n = 1; n <= 15; ++n)
        CHECK(convCoeff(ode.sin, n) + convCoeff(ode.cos, n) == Rational(0));
}

TEST_CASE("series addition and scaling are pointwise") {
    auto ode = ode_series();
    auto sum = ode.sin + ode.cos;
    auto twice = Series<Rational>::scaled(Rational(2), ode.sin);
    for (std::size_t n = 0; n <= 10; ++n) {
        CHECK(sum.coefficient(n) ==
              ode.sin.coefficient(n) + ode.cos.coefficient(n));
        CHECK(twice.coefficient(n) == Rational(2) * ode.sin.coefficient(n));
    }
}

TEST_CASE("concurrent coefficient pulls are consistent") {
    auto ode = ode_series();
    std::vector<std::thread> workers;
    std::vector<Rational> results(6);
    for (int i = 0; i < 6; ++i)
        workers.emplace_back(
            [&, i] { results[i] = ode.exp.coefficient(14 + i % 3); });
    for (auto& t : workers) t.join();
    for (int i = 0; i < 6; ++i)
        CHECK(results[i] == Rational(1) / fact(14 + i % 3));
}
