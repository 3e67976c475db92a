#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

namespace ghzsep::opt {

// Golden-section maximization on [a,b] for a unimodal f.
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol = 1e-12) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        if (fc >= fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct Box {
    double lo = -INFINITY, hi = INFINITY;
};

struct AscentOptions {
    double step = 0.2;       // initial bracket half-width
    double xtol = 1e-10;     // stop when every coordinate move is below this
    int max_sweeps = 500;
};

// Cyclic coordinate ascent with bracketed golden line searches.
template <std::size_t N, class F>
double coordinate_ascent(F&& f, std::array<double, N>& x, const std::array<Box, N>& box,
                         const AscentOptions& o = {}) {
    double fx = f(x);
    std::array<double, N> h;
    h.fill(o.step);
    for (int sweep = 0; sweep < o.max_sweeps; ++sweep) {
        double biggest = 0;
        for (std::size_t k = 0; k < N; ++k) {
            const double x0 = x[k];
            const double lo = std::max(box[k].lo, x0 - h[k]);
            const double hi = std::min(box[k].hi, x0 + h[k]);
            auto line = [&](double t) {
                auto y = x;
                y[k] = t;
                return f(y);
            };
            auto [t, ft] = golden_max(line, lo, hi, std::max(o.xtol * 0.1, 1e-15));
            if (ft > fx) {
                x[k] = t;
                fx = ft;
            }
            const double moved = std::abs(x[k] - x0);
            biggest = std::max(biggest, moved);
            // Widen when the optimum hit the bracket edge, shrink otherwise.
            if (moved > 0.9 * h[k]) h[k] *= 2.0;
            else h[k] = std::max({0.5 * h[k], 4.0 * moved, o.xtol});
        }
        if (biggest < o.xtol) break;
    }
    return fx;
}

inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GHZSEP_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

// out[i] = f(i); results land by index so reductions are order independent.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
    std::vector<T> out(n);
    const unsigned w = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (w <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += w) out[i] = f(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

// Indices of the k largest entries, ties broken by index.
inline std::vector<std::size_t> top_k(const std::vector<double>& v, std::size_t k) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    k = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return v[a] > v[b] || (v[a] == v[b] && a < b);
                      });
    idx.resize(k);
    return idx;
}

}  // namespace ghzsep::opt
