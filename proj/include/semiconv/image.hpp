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
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiconv {

/// Row-major grayscale image; values nominally in [0,1] but intermediate
/// arithmetic may leave that range. Clamping happens only at save time.
struct ImageGrid {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    static ImageGrid filled(int w, int h, double v) {
        ImageGrid g;
        g.width = w;
        g.height = h;
        g.pixels.assign(static_cast<std::size_t>(w) * h, v);
        return g;
    }

    /// Out-of-bounds reads are zero (the zero-padding boundary rule).
    double at(int x, int y) const {
        if (x < 0 || y < 0 || x >= width || y >= height) return 0.0;
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    double& px(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const ImageGrid&) const = default;
};

/// Convolution kernel: odd width and height, anchored at the geometric
/// center.
struct Kernel {
    ImageGrid grid;

    explicit Kernel(ImageGrid g) : grid(std::move(g)) {
        if (grid.width % 2 == 0 || grid.height % 2 == 0 || grid.width <= 0 ||
            grid.height <= 0)
            throw std::invalid_argument("kernel dimensions must be odd");
    }
};

/// Same-size 2D convolution with zero padding. This is true convolution (the
/// kernel is flipped relative to correlation); for the symmetric standard
/// kernels the two coincide.
inline ImageGrid conv2d(const ImageGrid& img, const Kernel& k) {
    if (img.width <= 0 || img.height <= 0)
        throw std::invalid_argument("conv2d: empty image");
    const int cx = k.grid.width / 2;
    const int cy = k.grid.height / 2;
    ImageGrid out = ImageGrid::filled(img.width, img.height, 0.0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < k.grid.height; ++ky)
                for (int kx = 0; kx < k.grid.width; ++kx)
                    acc += img.at(x - (kx - cx), y - (ky - cy)) *
                           k.grid.at(kx, ky);
            out.px(x, y) = acc;
        }
    }
    return out;
}

inline Kernel kernel_from_rows(const std::vector<std::vector<double>>& rows) {
    ImageGrid g;
    g.height = static_cast<int>(rows.size());
    g.width = static_cast<int>(rows.at(0).size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != g.width)
            throw std::invalid_argument("ragged kernel rows");
        g.pixels.insert(g.pixels.end(), r.begin(), r.end());
    }
    return Kernel{std::move(g)};
}

inline Kernel identity_kernel() {
    return kernel_from_rows({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
}

/// 3x3 uniform average; entries sum to 1.
inline Kernel blur_kernel() {
    const double v = 1.0 / 9.0;
    return kernel_from_rows({{v, v, v}, {v, v, v}, {v, v, v}});
}

/// Center 5, cross -1, corners 0; identity-preserving on constants.
inline Kernel sharpen_kernel() {
    return kernel_from_rows({{0, -1, 0}, {-1, 5, -1}, {0, -1, 0}});
}

/// Center 8, all neighbors -1; zero response on constants.
inline Kernel edge_kernel() {
    return kernel_from_rows({{-1, -1, -1}, {-1, 8, -1}, {-1, -1, -1}});
}

// ---------------------------------------------------------------------------
// Netpbm PGM I/O. Reads P2 (ASCII) and P5 (binary, maxval <= 255); header
// tokens may be separated by whitespace and '#' comments. Writes P5 with
// maxval 255, samples = round(clamp(v,0,1)*255).

namespace detail {

inline std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw std::runtime_error("pgm: unexpected end of header");
    return tok;
}

inline int pgm_int(std::istream& in) {
    std::string tok = pgm_token(in);
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v < 0)
        throw std::runtime_error("pgm: bad integer '" + tok + "'");
    return v;
}

} // namespace detail

inline ImageGrid load_pgm(std::istream& in) {
    std::string magic = detail::pgm_token(in);
    if (magic != "P2" && magic != "P5")
        throw std::runtime_error("pgm: unsupported magic '" + magic + "'");
    int w = detail::pgm_int(in);
    int h = detail::pgm_int(in);
    int maxval = detail::pgm_int(in);
    if (w <= 0 || h <= 0 || maxval <= 0)
        throw std::runtime_error("pgm: bad dimensions");
    ImageGrid img = ImageGrid::filled(w, h, 0.0);
    if (magic == "P5") {
        if (maxval > 255)
            throw std::runtime_error("pgm: P5 maxval above 255 unsupported");
        // The maxval token is followed by exactly one whitespace byte.
        std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h);
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size()));
        if (in.gcount() != static_cast<std::streamsize>(buf.size()))
            throw std::runtime_error("pgm: truncated pixel data");
        for (std::size_t i = 0; i < buf.size(); ++i)
            img.pixels[i] = static_cast<double>(buf[i]) / maxval;
    } else {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            int v = detail::pgm_int(in);
            if (v > maxval) throw std::runtime_error("pgm: sample above maxval");
            img.pixels[i] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

inline void save_pgm(const ImageGrid& img, std::ostream& out) {
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    for (double v : img.pixels) {
        double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        out.put(static_cast<char>(
            static_cast<unsigned char>(std::lround(c * 255.0))));
    }
}

inline ImageGrid load_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_pgm(in);
}

inline void save_pgm_file(const ImageGrid& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    save_pgm(img, out);
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace semiconv
