#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "wsolve/univariate.hpp"

using namespace wsolve;

namespace {

bool matches_roots(std::vector<cplx> got, std::vector<cplx> want, double tol) {
    if (got.size() != want.size()) return false;
    for (const auto& w : want) {
        auto best = got.end();
        double bestd = tol;
        for (auto it = got.begin(); it != got.end(); ++it) {
            double d = std::abs(*it - w);
            if (d <= bestd) {
                bestd = d;
                best = it;
            }
        }
        if (best == got.end()) return false;
        got.erase(best);
    }
    return true;
}

} // namespace

TEST_CASE("quadratic and cubic roots") {
    auto r = solve_univariate({cplx(-1), cplx(0), cplx(1)}); // s^2 - 1
    REQUIRE(matches_roots(r.roots, {cplx(1), cplx(-1)}, 1e-12));

    r = solve_univariate({cplx(-1), cplx(0), cplx(0), cplx(1)}); // s^3 - 1
    const double c = std::cos(2.0 * 3.14159265358979323846 / 3.0);
    const double s = std::sin(2.0 * 3.14159265358979323846 / 3.0);
    REQUIRE(matches_roots(r.roots, {cplx(1), cplx(c, s), cplx(c, -s)}, 1e-12));
}

TEST_CASE("random products of linear factors are recovered") {
    Rng rng(101);
    for (int rep = 0; rep < 12; ++rep) {
        int d = 2 + static_cast<int>(rng.uniform() * 11); // 2..12
        std::vector<cplx> want(d);
        for (auto& z : want) {
            z = 10.0 * rng.normal_complex() / std::sqrt(2.0);
            while (std::abs(z) > 10.0) z *= 0.5;
        }
        CVec coeffs{cplx(1.0)};
        for (const auto& root : want) {
            CVec next(coeffs.size() + 1, cplx(0.0));
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                next[k] -= coeffs[k] * root;
                next[k + 1] += coeffs[k];
            }
            coeffs = std::move(next);
        }
        auto r = solve_univariate(coeffs);
        REQUIRE(r.effective_degree == d);
        REQUIRE(matches_roots(r.roots, want, 1e-8 * 11.0));
    }
}

TEST_CASE("multiple roots cluster") {
    // (s-1)^2: both approximations land near 1 at the attainable accuracy
    auto r = solve_univariate({cplx(1), cplx(-2), cplx(1)});
    REQUIRE(r.roots.size() == 2);
    for (const auto& z : r.roots) REQUIRE(std::abs(z - cplx(1.0)) < 1e-5);
}

TEST_CASE("degenerate inputs") {
    REQUIRE_THROWS_AS(solve_univariate({cplx(0), cplx(0)}), std::invalid_argument);
    auto r = solve_univariate({cplx(3)});
    REQUIRE(r.constant);
    REQUIRE(r.roots.empty());
    // trailing near-zero coefficients are truncated
    r = solve_univariate({cplx(-1), cplx(1), cplx(1e-15)});
    REQUIRE(r.effective_degree == 1);
    REQUIRE(matches_roots(r.roots, {cplx(1)}, 1e-10));
}
