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

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "semiconv/poly.hpp"

namespace semiconv {

/// Finitely supported signal over the integers: zero outside
/// [offset, offset + samples.size()).
struct Signal1D {
    int offset = 0;
    std::vector<double> samples;

    bool operator==(const Signal1D&) const = default;
};

/// Discrete convolution: out[w] = sum over u of f[u] * g[w-u], accumulated in
/// order of increasing u. Offsets add; length is len(f)+len(g)-1.
inline Signal1D conv1d(const Signal1D& f, const Signal1D& g) {
    if (f.samples.empty() || g.samples.empty()) return {};
    Signal1D out;
    out.offset = f.offset + g.offset;
    out.samples.assign(f.samples.size() + g.samples.size() - 1, 0.0);
    for (std::size_t w = 0; w < out.samples.size(); ++w) {
        std::size_t lo = w >= g.samples.size() ? w - (g.samples.size() - 1) : 0;
        std::size_t hi = std::min(w, f.samples.size() - 1);
        double acc = 0.0;
        for (std::size_t u = lo; u <= hi; ++u)
            acc += f.samples[u] * g.samples[w - u];
        out.samples[w] = acc;
    }
    return out;
}

/// Convolution over the naturals is the dense-polynomial product; one shared
/// implementation, two names.
template <Semiring B>
DensePoly<B> nat_conv(const DensePoly<B>& f, const DensePoly<B>& g) {
    return f * g;
}

namespace detail {

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x, bool inverse) {
    const std::size_t n = x.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double ang = sign * 2.0 * M_PI * static_cast<double>(k * j) /
                         static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

} // namespace detail

/// Cyclic convolution of the two signals embedded at offset 0 into Z_n.
inline std::vector<double> cyclic_convolve(const Signal1D& f, const Signal1D& g,
                                           std::size_t n) {
    std::vector<double> out(n, 0.0);
    for (std::size_t u = 0; u < f.samples.size(); ++u)
        for (std::size_t v = 0; v < g.samples.size(); ++v)
            out[(u + v) % n] += f.samples[u] * g.samples[v];
    return out;
}

/// Desk-scale convolution-theorem check over the cyclic group Z_n: the
/// direct cyclic convolution must match the inverse DFT of the pointwise
/// product of DFTs within tol per sample. The DFT here is the naive O(n^2)
/// transform; it is a test oracle, not a fast path.
inline bool dft_check(const Signal1D& f, const Signal1D& g, std::size_t n,
                      double tol = 1e-9) {
    std::vector<std::complex<double>> fc(n, 0.0), gc(n, 0.0);
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        fc[i % n] += f.samples[i];
    for (std::size_t i = 0; i < g.samples.size(); ++i)
        gc[i % n] += g.samples[i];

    auto ff = detail::naive_dft(fc, false);
    auto gf = detail::naive_dft(gc, false);
    std::vector<std::complex<double>> prod(n);
    for (std::size_t k = 0; k < n; ++k) prod[k] = ff[k] * gf[k];
    auto viaDft = detail::naive_dft(prod, true);

    std::vector<double> direct = cyclic_convolve(f, g, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::fabs(viaDft[k].real() - direct[k]) > tol) return false;
        if (std::fabs(viaDft[k].imag()) > tol) return false;
    }
    return true;
}

} // namespace semiconv
