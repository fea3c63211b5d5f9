#include <catch2/catch_amalgamated.hpp>

#include "wsolve/diagonal.hpp"
#include "wsolve/generators.hpp"
#include "wsolve/parser.hpp"

using namespace wsolve;

namespace {

struct Stage1Setup {
    GenericFlag flag;
    PolySystem f;
    std::vector<WitnessPoint> pool; // f_1 points off V(f_2)
    std::vector<WitnessPoint> B;    // f_2 points off V(f_1)
};

Stage1Setup illustrative_stage1(Rng& rng, const Tolerances& tol) {
    Stage1Setup s;
    s.flag = make_flag(rng, 3);
    s.f = parse_system(gen_illustrative());
    HypersurfaceWitness w1 = hypersurface_witness(s.f.polys[0], s.flag, nullptr, tol);
    HypersurfaceWitness x2 = hypersurface_witness(s.f.polys[1], s.flag, nullptr, tol);
    for (const auto& wp : w1.points)
        if (!vanishes_at(s.f.polys[1], wp.point, tol.tol_zero)) s.pool.push_back(wp);
    for (const auto& wp : x2.points)
        if (!vanishes_at(s.f.polys[0], wp.point, tol.tol_zero)) s.B.push_back(wp);
    return s;
}

} // namespace

TEST_CASE("diagonal homotopy construction is square with valid starts") {
    Rng rng(40);
    Tolerances tol;
    Stage1Setup s = illustrative_stage1(rng, tol);
    REQUIRE(s.pool.size() == 3);
    REQUIRE(s.B.size() == 4);

    PolySystem sys1(3);
    sys1.push(s.f.polys[0]);
    RandomizationCache cache;
    DiagonalProblem prob;
    prob.N = 3;
    prob.a = 2; // the pool points witness a surface
    prob.randomized_A = randomize(sys1, cache.get(1, 1, rng));
    prob.g = s.f.polys[1];
    prob.flag = &s.flag;
    prob.gamma = rng.unit_complex();
    Homotopy h = build_diagonal_homotopy(prob);

    REQUIRE(h.dim() == 6);
    REQUIRE(h.fixed().size() == 3);   // 1 randomized + 1 hypersurface + 1 slice row
    REQUIRE(h.moving_rows() == 3);

    for (const auto& wa : s.pool)
        for (const auto& xb : s.B) {
            CVec start(6);
            for (int j = 0; j < 3; ++j) {
                start[j] = wa.point[j];
                start[3 + j] = xb.point[j];
            }
            REQUIRE(norm2(h.evaluate(start, 0.0)) <= 1e-8 * (1.0 + norm2(start)));
        }

    // dimension-zero input is rejected
    DiagonalProblem bad = prob;
    bad.a = 0;
    REQUIRE_THROWS_AS(build_diagonal_homotopy(bad), std::invalid_argument);
}

TEST_CASE("first-stage intersection tracks 12 paths, 7 converge, 5 diverge") {
    Rng rng(40);
    Tolerances tol;
    TrackOptions topts;
    Stage1Setup s = illustrative_stage1(rng, tol);
    PolySystem sys1(3);
    sys1.push(s.f.polys[0]);
    RandomizationCache cache;

    IntersectResult r = intersect_with_hypersurface(s.pool, 1, sys1, s.f.polys[1], s.B, s.flag,
                                                    cache, rng, topts, tol);
    REQUIRE(r.stats.tracked == 12);
    REQUIRE(r.stats.converged == 7);
    REQUIRE(r.stats.diverged == 5);
    REQUIRE(r.stats.failed == 0);
    REQUIRE(r.candidates.size() == 7);

    // candidates satisfy both equations, sit on the codim-2 slice prefix,
    // and stay within the Bezout bound
    for (const auto& c : r.candidates) {
        REQUIRE(vanishes_at(s.f.polys[0], c.point.point, tol.tol_zero));
        REQUIRE(vanishes_at(s.f.polys[1], c.point.point, tol.tol_zero));
        REQUIRE(on_slice_prefix(s.flag, 2, c.point.point, tol.tol_slice));
    }
    REQUIRE(static_cast<int>(r.candidates.size()) <= 5 * 6);
}

TEST_CASE("a fresh gamma yields the same candidate set") {
    Tolerances tol;
    TrackOptions topts;

    Rng rng1(40);
    Stage1Setup s1 = illustrative_stage1(rng1, tol);
    PolySystem sys1(3);
    sys1.push(s1.f.polys[0]);
    RandomizationCache cache1;
    IntersectResult a = intersect_with_hypersurface(s1.pool, 1, sys1, s1.f.polys[1], s1.B, s1.flag,
                                                    cache1, rng1, topts, tol);
    // burn a few extra draws so the next run sees a different gamma over
    // the same flag and pools
    Rng rng2(40);
    Stage1Setup s2 = illustrative_stage1(rng2, tol);
    RandomizationCache cache2;
    for (int burn = 0; burn < 5; ++burn) rng2.normal_complex();
    IntersectResult b = intersect_with_hypersurface(s2.pool, 1, sys1, s2.f.polys[1], s2.B, s2.flag,
                                                    cache2, rng2, topts, tol);

    REQUIRE(a.candidates.size() == b.candidates.size());
    for (const auto& ca : a.candidates) {
        double best = 1e9;
        for (const auto& cb : b.candidates)
            best = std::min(best, distance(ca.point.point, cb.point.point));
        REQUIRE(best <= tol.tol_dup * (1.0 + norm2(ca.point.point)));
    }
}

TEST_CASE("second-stage intersection is a single path") {
    Rng rng(40);
    Tolerances tol;
    TrackOptions topts;
    GenericFlag flag = make_flag(rng, 3);
    PolySystem f = parse_system(gen_illustrative());
    RandomizationCache cache;

    // the curve x=0.5, y=0.5 survives the first two equations but not the
    // third; its witness point is the only diagonal input at stage two
    PolySystem plane_curve = parse_system("vars: x,y,z; x - 0.5; y - 0.5;");
    PolySystem sys2(3);
    sys2.push(f.polys[0]);
    sys2.push(f.polys[1]);
    // witness point of that line on the codim-2 slice prefix H_1
    ComplexMatrix A(3, 3);
    CVec rhs(3);
    for (int j = 0; j < 3; ++j) {
        A.at(0, j) = plane_curve.polys[0].differentiate(j).evaluate({cplx(0), cplx(0), cplx(0)});
        A.at(1, j) = plane_curve.polys[1].differentiate(j).evaluate({cplx(0), cplx(0), cplx(0)});
        A.at(2, j) = flag.row(0).normal[j];
    }
    rhs[0] = cplx(0.5);
    rhs[1] = cplx(0.5);
    rhs[2] = -flag.row(0).offset;
    CVec pt = lu_solve(A, rhs);
    REQUIRE(vanishes_at(sys2, pt, 1e-10));

    std::vector<WitnessPoint> pool{{pt, 0.0, 1, false}};
    HypersurfaceWitness x3 = hypersurface_witness(f.polys[2], flag, nullptr, tol);
    REQUIRE(x3.points.size() == 8);
    std::vector<WitnessPoint> B;
    for (const auto& wp : x3.points)
        if (!vanishes_at(f.polys[0], wp.point, tol.tol_zero) &&
            !vanishes_at(f.polys[1], wp.point, tol.tol_zero))
            B.push_back(wp);
    REQUIRE(B.size() == 1);

    IntersectResult r = intersect_with_hypersurface(pool, 2, sys2, f.polys[2], B, flag, cache, rng,
                                                    topts, tol);
    REQUIRE(r.stats.tracked == 1);
    REQUIRE(r.stats.converged == 1);
    REQUIRE(r.candidates.size() == 1);
    CVec z01{cplx(0.5), cplx(0.5), cplx(0.5)};
    REQUIRE(distance(r.candidates[0].point.point, z01) < 1e-6);
}
