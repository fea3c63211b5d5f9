#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsolve/tracker.hpp"
#include "wsolve/univariate.hpp"

namespace wsolve {

struct Tolerances {
    double tol_zero = 1e-8;  // vanishing tests (a), (b), ignore-set test
    double tol_dup = 1e-6;   // duplicate-point matching
    double tol_slice = 1e-8; // incidence with the slicing hyperplanes
    double tol_rank = 1e-8;  // SVD rank threshold in the singularity test
    double tol_res = 1e-8;   // accepted witness-point residual
    double refine_tol = 1e-10;
    int refine_iters = 30;
};

struct AffineRow {
    CVec normal;
    cplx offset; // row(x) = normal . x + offset

    cplx evaluate(const CVec& x) const {
        cplx s = offset;
        for (std::size_t j = 0; j < normal.size(); ++j) s += normal[j] * x[j];
        return s;
    }

    Polynomial to_poly() const { return Polynomial::affine(normal, offset); }

    Polynomial to_poly_embedded(int new_n_vars, int var_offset) const {
        CVec a(new_n_vars, cplx(0.0));
        for (std::size_t j = 0; j < normal.size(); ++j) a[j + var_offset] = normal[j];
        return Polynomial::affine(a, offset);
    }
};

// N random affine hyperplanes H_1..H_N, drawn once per run. The slice for
// a dimension-d component is the prefix {H_1..H_d}, so every output
// dimension shares nested slicing subspaces and points shortcut between
// stages without re-slicing. The witness line for hypersurfaces is the
// intersection H_1 .. H_{N-1}.
struct GenericFlag {
    int N = 0;
    std::vector<AffineRow> hyperplanes;
    CVec line_base; // base + s*dir parameterizes H_1 .. H_{N-1}
    CVec line_dir;

    const AffineRow& row(int i) const { return hyperplanes[i]; } // 0-based: row(0) is H_1
};

inline GenericFlag make_flag(Rng& rng, int N) {
    GenericFlag f;
    f.N = N;
    f.hyperplanes.resize(N);
    for (int i = 0; i < N; ++i) {
        f.hyperplanes[i].normal.resize(N);
        for (int j = 0; j < N; ++j) f.hyperplanes[i].normal[j] = rng.normal_complex();
        f.hyperplanes[i].offset = rng.normal_complex();
    }
    // bordering row for the line computation, drawn from the same stream
    CVec border(N);
    for (int j = 0; j < N; ++j) border[j] = rng.normal_complex();

    if (N == 1) {
        f.line_base.assign(1, cplx(0.0));
        f.line_dir.assign(1, cplx(1.0));
        return f;
    }
    ComplexMatrix A(N, N);
    CVec b_base(N), b_dir(N);
    for (int i = 0; i < N - 1; ++i) {
        for (int j = 0; j < N; ++j) A.at(i, j) = f.hyperplanes[i].normal[j];
        b_base[i] = -f.hyperplanes[i].offset;
        b_dir[i] = 0.0;
    }
    for (int j = 0; j < N; ++j) A.at(N - 1, j) = border[j];
    b_base[N - 1] = 0.0;
    b_dir[N - 1] = 1.0;
    f.line_base = lu_solve(A, b_base);
    f.line_dir = lu_solve(A, b_dir);
    return f;
}

struct WitnessPoint {
    CVec point;
    double residual = 0.0;
    int multiplicity_count = 1;
    bool singular = false;
};

struct WitnessSet {
    int codim = 0;
    std::vector<WitnessPoint> points;
    // slicing subspace the points currently sit on; empty means the flag
    // prefix H_1 .. H_{N-codim}, which is where the solver keeps all sets
    std::vector<AffineRow> slice_rows;

    int count() const { return static_cast<int>(points.size()); }
};

inline std::vector<AffineRow> slice_prefix_rows(const GenericFlag& flag, int codim) {
    std::vector<AffineRow> rows;
    rows.reserve(flag.N - codim);
    for (int i = 0; i < flag.N - codim; ++i) rows.push_back(flag.row(i));
    return rows;
}

// Witness sets per codimension for one processed system, sharing a flag.
struct WitnessCollection {
    PolySystem system;
    std::vector<WitnessSet> sets; // sets[c-1] is the codimension-c set

    explicit WitnessCollection(int max_codim = 0) {
        sets.resize(max_codim);
        for (int c = 1; c <= max_codim; ++c) sets[c - 1].codim = c;
    }

    WitnessSet& set(int codim) { return sets[codim - 1]; }
    const WitnessSet& set(int codim) const { return sets[codim - 1]; }
    int max_codim() const { return static_cast<int>(sets.size()); }
};

// One randomization matrix per (equation count, codim), drawn on first use
// and reused by refinement, the rank test and membership homotopies alike.
class RandomizationCache {
public:
    const ComplexMatrix& get(int n_eqs, int codim, Rng& rng) {
        auto key = std::make_pair(n_eqs, codim);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, random_matrix(rng, codim, n_eqs)).first;
        return it->second;
    }

private:
    std::map<std::pair<int, int>, ComplexMatrix> cache_;
};

// Scaled vanishing test: |p(x)| <= tol * (1+|x|)^deg * max|coeff|.
inline bool vanishes_at(const Polynomial& p, const CVec& x, double tol_zero) {
    if (p.is_zero()) return true;
    const double scale = std::pow(1.0 + norm2(x), std::max(p.degree(), 0)) * p.coeff_norm();
    return std::abs(p.evaluate(x)) <= tol_zero * scale;
}

inline bool vanishes_at(const PolySystem& sys, const CVec& x, double tol_zero) {
    for (const auto& p : sys.polys)
        if (!vanishes_at(p, x, tol_zero)) return false;
    return true;
}

// Index of the first stored point within tol_dup*(1+|x|) of x, if any.
inline std::optional<std::size_t> is_duplicate(const std::vector<WitnessPoint>& points,
                                               const CVec& x, double tol_dup) {
    const double tol = tol_dup * (1.0 + norm2(x));
    for (std::size_t i = 0; i < points.size(); ++i)
        if (distance(points[i].point, x) <= tol) return i;
    return std::nullopt;
}

// The square system that cuts out a codimension-c witness point:
// c randomized combinations of the equations plus the slice prefix
// H_1 .. H_{N-c}.
inline PolySystem sliced_square_system(const PolySystem& system, int codim, const GenericFlag& flag,
                                       RandomizationCache& cache, Rng& rng) {
    if (codim < 1 || codim > flag.N)
        throw std::invalid_argument("sliced_square_system: bad codimension");
    const ComplexMatrix& R = cache.get(system.size(), codim, rng);
    PolySystem sq = randomize(system, R);
    for (int i = 0; i < flag.N - codim; ++i) sq.push(flag.row(i).to_poly());
    return sq;
}

// Rank test on the Jacobian of the sliced square system at x.
inline bool is_singular_point(const PolySystem& system, int codim, const GenericFlag& flag,
                              const CVec& x, double tol_rank, RandomizationCache& cache, Rng& rng) {
    PolySystem sq = sliced_square_system(system, codim, flag, cache, rng);
    return numerical_rank(jacobian(sq, x), tol_rank) < flag.N;
}

// Witness points of the hypersurface V(f): restrict f to the witness line,
// solve the univariate restriction, map the roots back, drop roots on the
// ignore set Q, and merge roots closer than tol_dup while counting the
// number of times each one appears.
struct HypersurfaceWitness {
    std::vector<WitnessPoint> points;
    int dropped_on_q = 0;
    int effective_degree = 0;
};

inline HypersurfaceWitness hypersurface_witness(const Polynomial& f, const GenericFlag& flag,
                                                const PolySystem* Q, const Tolerances& tol) {
    if (f.is_zero() || f.is_constant())
        throw std::invalid_argument("hypersurface_witness: constant or zero polynomial");

    HypersurfaceWitness out;
    const CVec coeffs = f.restrict_to_line(flag.line_base, flag.line_dir);
    UnivariateRoots roots = solve_univariate(coeffs);
    out.effective_degree = roots.effective_degree;
    if (roots.constant) return out;

    // square polish system: the hypersurface plus the line's hyperplanes
    PolySystem polish(flag.N);
    polish.push(f);
    for (int i = 0; i < flag.N - 1; ++i) polish.push(flag.row(i).to_poly());

    for (const cplx& s : roots.roots) {
        CVec x(flag.N);
        for (int j = 0; j < flag.N; ++j) x[j] = flag.line_base[j] + s * flag.line_dir[j];
        RefineResult ref = newton_refine(polish, x, tol.refine_tol, tol.refine_iters);
        if (ref.converged) x = ref.x;
        if (Q && Q->size() > 0 && vanishes_at(*Q, x, tol.tol_zero)) {
            ++out.dropped_on_q;
            continue;
        }
        if (auto dup = is_duplicate(out.points, x, tol.tol_dup)) {
            out.points[*dup].multiplicity_count += 1;
            continue;
        }
        WitnessPoint wp;
        wp.point = std::move(x);
        wp.residual = ref.converged ? ref.residual : norm2(polish.evaluate(wp.point));
        out.points.push_back(std::move(wp));
    }
    return out;
}

// Moves a witness set's slice prefix onto arbitrary target hyperplanes by
// continuation; used directly and by the membership test.
struct SliceMoveResult {
    std::vector<WitnessPoint> points;
    int diverged = 0;
    int failed = 0;
};

inline SliceMoveResult move_slice_points(const PolySystem& system, int codim,
                                         const std::vector<WitnessPoint>& points,
                                         const GenericFlag& flag,
                                         const std::vector<AffineRow>& from_rows,
                                         const std::vector<AffineRow>& new_rows,
                                         RandomizationCache& cache, Rng& rng, cplx gamma,
                                         const TrackOptions& topts, const Tolerances& tol,
                                         int workers = 1) {
    const int N = flag.N;
    if (static_cast<int>(new_rows.size()) != N - codim ||
        static_cast<int>(from_rows.size()) != N - codim)
        throw std::invalid_argument("move_slice: wrong hyperplane count");

    SliceMoveResult out;
    if (points.empty()) return out;

    const ComplexMatrix& R = cache.get(system.size(), codim, rng);
    PolySystem fixed = randomize(system, R);
    PolySystem start(N), target(N);
    for (int i = 0; i < N - codim; ++i) {
        start.push(from_rows[i].to_poly());
        target.push(new_rows[i].to_poly());
    }
    Homotopy h(std::move(fixed), std::move(start), std::move(target), gamma);

    std::vector<CVec> starts;
    starts.reserve(points.size());
    for (const auto& wp : points) starts.push_back(wp.point);
    std::vector<PathResult> res = track_all(h, starts, topts, workers);

    PolySystem square = sliced_square_system(system, codim, flag, cache, rng);
    // replace the slice rows with the target rows for the residual check
    for (int i = 0; i < N - codim; ++i)
        square.polys[codim + i] = new_rows[i].to_poly();

    for (std::size_t i = 0; i < res.size(); ++i) {
        if (res[i].status == PathStatus::Diverged) {
            ++out.diverged;
            continue;
        }
        if (res[i].status == PathStatus::Failed) {
            ++out.failed;
            continue;
        }
        WitnessPoint wp = points[i];
        RefineResult ref = newton_refine(square, res[i].endpoint, tol.refine_tol, tol.refine_iters);
        wp.point = ref.converged ? ref.x : res[i].endpoint;
        wp.residual = ref.residual;
        out.points.push_back(std::move(wp));
    }
    return out;
}

struct MoveSliceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Same-cardinality slice motion; divergence signals a nongeneric target.
inline WitnessSet move_slice(const WitnessSet& W, const PolySystem& system,
                             const GenericFlag& flag, const std::vector<AffineRow>& new_rows,
                             RandomizationCache& cache, Rng& rng,
                             const TrackOptions& topts, const Tolerances& tol, int workers = 1) {
    cplx gamma = rng.unit_complex();
    const std::vector<AffineRow> from =
        W.slice_rows.empty() ? slice_prefix_rows(flag, W.codim) : W.slice_rows;
    SliceMoveResult moved = move_slice_points(system, W.codim, W.points, flag, from, new_rows,
                                              cache, rng, gamma, topts, tol, workers);
    if (moved.diverged || moved.failed)
        throw MoveSliceError("move_slice: " + std::to_string(moved.diverged) + " diverged, " +
                             std::to_string(moved.failed) + " failed paths");
    WitnessSet out;
    out.codim = W.codim;
    out.points = std::move(moved.points);
    out.slice_rows = new_rows;
    return out;
}

// Membership of x in the component set represented by W: move W's slice
// onto a random slice through x and see whether some witness point lands
// on x. Lost paths count as membership, which at worst discards a
// candidate instead of emitting a junk point.
struct MembershipOutcome {
    bool member = false;
    bool had_anomaly = false;
};

inline MembershipOutcome membership_test(const WitnessSet& W, const PolySystem& system,
                                         const GenericFlag& flag, const CVec& x,
                                         RandomizationCache& cache, Rng& rng,
                                         const TrackOptions& topts, const Tolerances& tol,
                                         int workers = 1) {
    const int N = flag.N;
    std::vector<AffineRow> through;
    through.reserve(N - W.codim);
    for (int i = 0; i < N - W.codim; ++i) {
        AffineRow row;
        row.normal.resize(N);
        for (int j = 0; j < N; ++j) row.normal[j] = rng.normal_complex();
        cplx s = 0.0;
        for (int j = 0; j < N; ++j) s += row.normal[j] * x[j];
        row.offset = -s;
        through.push_back(std::move(row));
    }
    cplx gamma = rng.unit_complex();
    const std::vector<AffineRow> from =
        W.slice_rows.empty() ? slice_prefix_rows(flag, W.codim) : W.slice_rows;
    SliceMoveResult moved = move_slice_points(system, W.codim, W.points, flag, from, through,
                                              cache, rng, gamma, topts, tol, workers);
    MembershipOutcome out;
    if (moved.diverged || moved.failed) {
        out.member = true;
        out.had_anomaly = true;
        return out;
    }
    const double tol_match = tol.tol_dup * (1.0 + norm2(x));
    for (const auto& wp : moved.points)
        if (distance(wp.point, x) <= tol_match) {
            out.member = true;
            return out;
        }
    return out;
}

// Incidence of a point with the slice prefix for its codimension.
inline bool on_slice_prefix(const GenericFlag& flag, int codim, const CVec& x, double tol_slice) {
    for (int i = 0; i < flag.N - codim; ++i) {
        const AffineRow& row = flag.row(i);
        double scale = 1.0 + norm2(x);
        if (std::abs(row.evaluate(x)) > tol_slice * scale * (1.0 + norm2(row.normal))) return false;
    }
    return true;
}

} // namespace wsolve
