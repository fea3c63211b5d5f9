#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wsolve/linalg.hpp"

namespace wsolve {

struct UnivariateRoots {
    std::vector<cplx> roots; // all d roots, repetition for multiple roots
    int effective_degree = 0;
    bool constant = false; // degree 0 after truncation: no roots
};

namespace detail {

inline cplx horner(const CVec& c, int deg, cplx z) {
    cplx v = c[deg];
    for (int k = deg - 1; k >= 0; --k) v = v * z + c[k];
    return v;
}

} // namespace detail

// All roots of c_0 + c_1 s + ... + c_d s^d by Aberth-Ehrlich simultaneous
// iteration started from a perturbed circle. Trailing coefficients below
// 1e-12 * max|c_k| are dropped first; the effective degree is reported.
// Iterates until every correction is below 1e-13*(1+|root|), at most 200
// rounds; near-multiple roots stall at their attainable accuracy and the
// current approximations are returned.
inline UnivariateRoots solve_univariate(const CVec& coeffs) {
    double cmax = 0.0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) throw std::invalid_argument("solve_univariate: zero polynomial");

    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-12 * cmax) --deg;

    UnivariateRoots out;
    out.effective_degree = deg;
    if (deg == 0) {
        out.constant = true;
        return out;
    }

    CVec c(coeffs.begin(), coeffs.begin() + deg + 1);
    CVec dc(deg);
    for (int k = 1; k <= deg; ++k) dc[k - 1] = c[k] * static_cast<double>(k);

    // Cauchy-style inclusion radius, slightly inflated.
    double radius = 0.0;
    for (int k = 0; k < deg; ++k) radius = std::max(radius, std::abs(c[k] / c[deg]));
    radius = 1.0 + radius;

    std::vector<cplx> z(deg);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int j = 0; j < deg; ++j) {
        double theta = two_pi * j / deg + 0.7; // offset breaks symmetry traps
        double r = radius * (0.85 + 0.1 * ((j * 37) % 7) / 7.0);
        z[j] = cplx(r * std::cos(theta), r * std::sin(theta));
    }

    for (int iter = 0; iter < 200; ++iter) {
        bool all_small = true;
        for (int j = 0; j < deg; ++j) {
            cplx p = detail::horner(c, deg, z[j]);
            cplx dp = detail::horner(dc, deg - 1, z[j]);
            if (p == cplx(0.0)) continue;
            if (dp == cplx(0.0)) {
                z[j] += cplx(1e-8 * radius, 1e-8 * radius);
                all_small = false;
                continue;
            }
            cplx w = p / dp; // Newton step
            cplx rep = 0.0;
            for (int k = 0; k < deg; ++k) {
                if (k == j) continue;
                cplx diff = z[j] - z[k];
                if (diff == cplx(0.0)) diff = cplx(1e-14 * radius, 0.0);
                rep += 1.0 / diff;
            }
            cplx denom = 1.0 - w * rep;
            cplx corr = (denom == cplx(0.0)) ? w : w / denom;
            z[j] -= corr;
            if (std::abs(corr) > 1e-13 * (1.0 + std::abs(z[j]))) all_small = false;
        }
        if (all_small) break;
    }

    out.roots = std::move(z);
    return out;
}

} // namespace wsolve
