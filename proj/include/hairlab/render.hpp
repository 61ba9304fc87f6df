#pragma once

// Escape-time rendering of the dynamical plane and small IO helpers (binary
// PPM, 17-significant-digit CSV).  Rendering is deterministic: pixels are
// pure functions of the grid, and worker threads own disjoint rows of a
// preallocated buffer, so the bytes are identical for any thread count.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "params.hpp"
#include "tower.hpp"

namespace hairlab {

enum class PixelClass : std::uint8_t { Attracted, Escaped, Undecided };

struct PixelVerdict {
    PixelClass cls = PixelClass::Undecided;
    int steps = 0;
};

// Forward orbit of one point: attracted once it is within 1e-6 of alpha,
// escaped once the magnitude needs two exponential levels, undecided at the
// iteration cap.  Orbit overflow of the angular regime also counts as escape.
inline PixelVerdict classify_point(const Params& p, std::complex<double> z, int max_iter) {
    RealDominantComplex w = rdc_from_complex(p, z);
    for (int j = 0; j < max_iter; ++j) {
        if (rdc_is_hardware(p, w)) {
            std::complex<double> zc = rdc_to_complex(p, w);
            if (std::abs(zc - std::complex<double>(p.alpha, 0.0)) < 1e-6)
                return {PixelClass::Attracted, j};
        }
        if (w.magnitude.level >= 2) return {PixelClass::Escaped, j};
        try {
            w = step_orbit(p, w);
        } catch (const std::range_error&) {
            return {PixelClass::Escaped, j + 1};
        }
    }
    return {PixelClass::Undecided, max_iter};
}

struct RenderSpec {
    double re_lo = -2.0, re_hi = 6.0;
    double im_lo = -3.0, im_hi = 3.0;
    int width = 800, height = 600;
    int max_iter = 64;
};

inline int render_thread_count() {
    if (const char* env = std::getenv("HAIRLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Grayscale escape-time image, one byte per pixel: escaped points shade from
// white down with decision time, attracted points from black up, undecided
// points sit at mid-gray.
inline std::vector<std::uint8_t> render_escape(const Params& p, const RenderSpec& spec,
                                               int threads = 0) {
    if (spec.width < 1 || spec.height < 1 || spec.max_iter < 1)
        throw std::domain_error("render_escape: bad raster spec");
    if (!(spec.re_lo < spec.re_hi) || !(spec.im_lo < spec.im_hi))
        throw std::domain_error("render_escape: empty view rectangle");
    if (threads <= 0) threads = render_thread_count();
    std::vector<std::uint8_t> img(static_cast<std::size_t>(spec.width) * spec.height);
    auto worker = [&](int t, int nt) {
        for (int row = t; row < spec.height; row += nt) {
            double im = spec.im_hi + (spec.im_lo - spec.im_hi) *
                                         (row + 0.5) / spec.height;
            for (int colp = 0; colp < spec.width; ++colp) {
                double re = spec.re_lo + (spec.re_hi - spec.re_lo) *
                                             (colp + 0.5) / spec.width;
                PixelVerdict v = classify_point(p, {re, im}, spec.max_iter);
                std::uint8_t g = 128;
                double f = static_cast<double>(v.steps) / spec.max_iter;
                if (v.cls == PixelClass::Escaped)
                    g = static_cast<std::uint8_t>(255.0 - 120.0 * f);
                else if (v.cls == PixelClass::Attracted)
                    g = static_cast<std::uint8_t>(120.0 * f);
                img[static_cast<std::size_t>(row) * spec.width + colp] = g;
            }
        }
    };
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (auto& th : pool) th.join();
    }
    return img;
}

inline void write_ppm(const std::string& path, const std::vector<std::uint8_t>& gray,
                      int width, int height) {
    if (gray.size() != static_cast<std::size_t>(width) * height)
        throw std::domain_error("write_ppm: buffer/raster size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ppm: cannot open " + path);
    out << "P6\n" << width << " " << height << "\n255\n";
    for (std::uint8_t g : gray) {
        char px[3] = {static_cast<char>(g), static_cast<char>(g), static_cast<char>(g)};
        out.write(px, 3);
    }
    if (!out) throw std::runtime_error("write_ppm: write failed for " + path);
}

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const std::string& path) : out(path) {
        if (!out) throw std::runtime_error("csv: cannot open " + path);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }
    void rowv(const std::vector<double>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << fmt17(cells[i]);
        }
        out << '\n';
    }
};

}  // namespace hairlab
