#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "koenigs/error.hpp"

namespace koenigs {

using cplx = std::complex<double>;
template <class S>
using Cx = std::complex<S>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

template <class S>
constexpr S pi_v = static_cast<S>(3.141592653589793238462643383279502884L);

template <class S>
Cx<S> widen(cplx z) {
    return {static_cast<S>(z.real()), static_cast<S>(z.imag())};
}

template <class S>
cplx narrow(Cx<S> z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class S>
bool is_finite(Cx<S> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// e^{2 pi i w}
template <class S>
Cx<S> exp2pi(Cx<S> w) {
    return std::exp(Cx<S>(0, 2 * pi_v<S>) * w);
}

struct Extrapolated {
    cplx value;
    double error = 0;
};

// Neville extrapolation of samples f(h_k) to h = 0; error is the last tableau correction.
template <class S>
Extrapolated extrapolate_to_zero(const std::vector<S>& h, const std::vector<Cx<S>>& f) {
    const std::size_t n = f.size();
    if (n == 0 || h.size() != n) throw Error(ErrorCode::NoConvergence, "empty extrapolation sample");
    for (const auto& v : f)
        if (!is_finite(v)) throw Error(ErrorCode::NoConvergence, "non-finite sample in ladder");
    if (n == 1) return {narrow(f[0]), std::numeric_limits<double>::infinity()};
    std::vector<Cx<S>> t(f);
    Cx<S> prevDiag = t[n - 1];
    Cx<S> lastCorrection{};
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            t[i] = t[i] + (t[i] - t[i - 1]) * (h[i] / (h[i - j] - h[i]));
            if (i == j) break;
        }
        lastCorrection = t[n - 1] - prevDiag;
        prevDiag = t[n - 1];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!is_finite(t[i])) throw Error(ErrorCode::NoConvergence, "extrapolation tableau diverged");
    return {narrow(t[n - 1]), static_cast<double>(std::abs(lastCorrection))};
}

inline std::vector<double> default_ladder() {
    std::vector<double> r;
    for (int k = 2; k <= 6; ++k) r.push_back(1.0 - std::pow(10.0, -k));
    return r;
}

// Adaptive Gauss-Kronrod (7/15) integral of f along the segment [a, b].
template <class S>
Cx<S> integrate_segment(const std::function<Cx<S>(Cx<S>)>& f, Cx<S> a, Cx<S> b, double absTol,
                        int maxDepth = 40);

// Seeded pseudo-random points in the disc |z| <= rMax, uniform in area.
inline std::vector<cplx> disc_grid(int n, double rMax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double r = rMax * std::sqrt(u(rng));
        out.push_back(std::polar(r, 2 * kPi * u(rng)));
    }
    return out;
}

}  // namespace koenigs
