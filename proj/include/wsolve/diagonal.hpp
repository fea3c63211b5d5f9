#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wsolve/witness.hpp"

namespace wsolve {

// Intersection of a pure-dimensional component set A (dimension a >= 1,
// given by witness points) with a hypersurface V(g), set up on C^{2N} in
// the product variables (u,v). The start slice is the product of A's
// slice with the hypersurface witness line; the target replaces the
// moving rows with the diagonal u - v = 0.
struct DiagonalProblem {
    int N = 0;
    int a = 0;                // dimension of A
    PolySystem randomized_A;  // N-a rows in u
    Polynomial g;             // the hypersurface, in v
    const GenericFlag* flag = nullptr;
    cplx gamma;
};

inline Homotopy build_diagonal_homotopy(const DiagonalProblem& prob) {
    const int N = prob.N;
    const int a = prob.a;
    if (a < 1) throw std::invalid_argument("diagonal homotopy: component dimension must be >= 1");
    if (prob.g.degree() < 1) throw std::invalid_argument("diagonal homotopy: g must be nonconstant");
    const int M = 2 * N;
    const GenericFlag& flag = *prob.flag;

    PolySystem fixed(M);
    for (const auto& p : prob.randomized_A.polys) fixed.push(p.embedded(M, 0)); // N-a rows in u
    fixed.push(prob.g.embedded(M, N));                                          // 1 row in v
    for (int i = 0; i < a - 1; ++i) fixed.push(flag.row(i).to_poly_embedded(M, 0));

    PolySystem start(M), target(M);
    // moving rows: A's last slice row in u, the witness line rows in v
    start.push(flag.row(a - 1).to_poly_embedded(M, 0));
    for (int i = 0; i < N - 1; ++i) start.push(flag.row(i).to_poly_embedded(M, N));
    for (int i = 0; i < N; ++i) {
        CVec row(M, cplx(0.0));
        row[i] = 1.0;
        row[N + i] = -1.0;
        target.push(Polynomial::affine(row, 0.0));
    }
    return Homotopy(std::move(fixed), std::move(start), std::move(target), prob.gamma);
}

struct DiagonalStats {
    int tracked = 0;
    int converged = 0;
    int diverged = 0;
    int failed = 0;
};

struct DiagonalCandidate {
    WitnessPoint point;
    int from_a = 0; // start-pair provenance
    int from_b = 0;
};

struct IntersectResult {
    std::vector<DiagonalCandidate> candidates; // sorted lexicographically
    DiagonalStats stats;
    std::vector<std::string> warnings;
};

inline bool lex_point_before(const CVec& a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

// Tracks all pairs (w_A, x_B), keeps converged endpoints that reach the
// diagonal, and refines their u-projection against the square system that
// cuts out the codim j+1 candidates. Points with multiplicity enter once.
inline IntersectResult intersect_with_hypersurface(
    const std::vector<WitnessPoint>& points_A, int codim_A, const PolySystem& sysA,
    const Polynomial& g, const std::vector<WitnessPoint>& points_B, const GenericFlag& flag,
    RandomizationCache& cache, Rng& rng, const TrackOptions& topts, const Tolerances& tol,
    int workers = 1) {
    IntersectResult out;
    const int N = flag.N;
    const int a = N - codim_A;
    if (points_A.empty() || points_B.empty()) return out;

    DiagonalProblem prob;
    prob.N = N;
    prob.a = a;
    prob.randomized_A = randomize(sysA, cache.get(sysA.size(), codim_A, rng));
    prob.g = g;
    prob.flag = &flag;
    prob.gamma = rng.unit_complex();
    Homotopy h = build_diagonal_homotopy(prob);

    std::vector<CVec> starts;
    std::vector<std::pair<int, int>> provenance;
    starts.reserve(points_A.size() * points_B.size());
    for (std::size_t ia = 0; ia < points_A.size(); ++ia)
        for (std::size_t ib = 0; ib < points_B.size(); ++ib) {
            CVec s(2 * N);
            for (int j = 0; j < N; ++j) {
                s[j] = points_A[ia].point[j];
                s[N + j] = points_B[ib].point[j];
            }
            starts.push_back(std::move(s));
            provenance.emplace_back(static_cast<int>(ia), static_cast<int>(ib));
        }

    std::vector<PathResult> res = track_all(h, starts, topts, workers);
    out.stats.tracked = static_cast<int>(res.size());

    PolySystem extended = sysA;
    extended.push(g);
    PolySystem square = sliced_square_system(extended, codim_A + 1, flag, cache, rng);

    for (std::size_t i = 0; i < res.size(); ++i) {
        switch (res[i].status) {
            case PathStatus::Diverged: ++out.stats.diverged; continue;
            case PathStatus::Failed: ++out.stats.failed; continue;
            case PathStatus::Converged: break;
        }
        const CVec& uv = res[i].endpoint;
        CVec u(uv.begin(), uv.begin() + N);
        double gap = 0.0;
        for (int j = 0; j < N; ++j) gap = std::max(gap, std::abs(uv[j] - uv[N + j]));
        if (gap > tol.tol_dup * (1.0 + norm2(u))) {
            ++out.stats.failed;
            out.warnings.push_back("diagonal endpoint missed the diagonal (gap " +
                                   format_double(gap) + ")");
            continue;
        }
        RefineResult ref = newton_refine(square, u, tol.refine_tol, tol.refine_iters);
        DiagonalCandidate cand;
        cand.point.point = ref.converged ? ref.x : std::move(u);
        cand.point.residual =
            ref.converged ? ref.residual : norm2(square.evaluate(cand.point.point));
        cand.from_a = provenance[i].first;
        cand.from_b = provenance[i].second;
        out.candidates.push_back(std::move(cand));
        ++out.stats.converged;
    }

    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const DiagonalCandidate& x, const DiagonalCandidate& y) {
                  return lex_point_before(x.point.point, y.point.point);
              });
    return out;
}

} // namespace wsolve
