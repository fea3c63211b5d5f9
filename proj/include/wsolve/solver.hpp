#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "wsolve/diagonal.hpp"

namespace wsolve {

enum class SolveMode { All, NonsingularOnly };
enum class EquationOrder { AsGiven, AscendingDegree };

struct SolverConfig {
    std::uint64_t seed = 0;
    SolveMode mode = SolveMode::All;
    EquationOrder order = EquationOrder::AsGiven;
    int worker_count = 1;
    Tolerances tol;
    TrackOptions track;
};

// Per-stage accounting. Every input witness point lands in exactly one of
// shortcut_a / dropped_dim0 / pooled_w; every hypersurface point in
// discarded_b or a start pair; every converged path in accepted /
// dropped_d / dropped_e / junk_g / dropped_singular.
struct StageStats {
    int stage = 0;
    int x_count = 0; // hypersurface witness points for this stage's equation
    int tracked = 0;
    int converged = 0;
    int diverged = 0;
    int failed = 0;
    int shortcut_a = 0;
    int discarded_b = 0;
    int dropped_d = 0;
    int dropped_e = 0;
    int junk_g = 0;
    int dropped_dim0 = 0;     // dimension-zero inputs discarded on a failed shortcut test
    int dropped_singular = 0; // nonsingular-only mode: singular candidates dropped
    int dropped_q_x = 0;      // hypersurface roots discarded on the ignore set
    int pooled_w = 0;
    int accepted = 0;
    double wall_seconds = 0.0;
};

struct PreprocessResult {
    PolySystem system;
    std::vector<std::string> notes;
    bool terminate_empty = false; // a nonzero constant equation: no solutions
};

// Drop identically zero polynomials; a nonzero constant equation makes the
// whole system unsolvable and ends the run with an empty result.
inline PreprocessResult preprocess(const PolySystem& sys) {
    PreprocessResult out;
    out.system = PolySystem(sys.n_vars);
    for (int i = 0; i < sys.size(); ++i) {
        const Polynomial& p = sys.polys[i];
        if (p.is_zero()) {
            out.notes.push_back("equation " + std::to_string(i + 1) + " is identically zero, dropped");
            continue;
        }
        if (p.is_constant()) {
            out.notes.push_back("equation " + std::to_string(i + 1) +
                                " is a nonzero constant, the system has no solutions");
            out.terminate_empty = true;
            return out;
        }
        out.system.push(p);
    }
    return out;
}

struct SolveResult {
    WitnessCollection witness{0};
    std::vector<StageStats> stages;
    int x1_count = 0;
    std::vector<std::string> preprocess_notes;
    std::vector<std::string> warnings;
    bool anomaly = false; // any failed path anywhere
    bool terminated_constant = false;
};

namespace detail {

struct RunContext {
    const SolverConfig& cfg;
    const PolySystem* Q;
    GenericFlag flag;
    Rng rng;
    RandomizationCache cache;
    std::vector<std::string>* warnings;
    bool* anomaly;
};

inline bool vanishes_on_any_prefix(const PolySystem& prefix, const CVec& x, double tol_zero) {
    for (const auto& p : prefix.polys)
        if (vanishes_at(p, x, tol_zero)) return true;
    return false;
}

inline WitnessPoint refreshed(const WitnessPoint& wp, const PolySystem& newsys, int codim,
                              RunContext& ctx) {
    WitnessPoint out = wp;
    PolySystem square = sliced_square_system(newsys, codim, ctx.flag, ctx.cache, ctx.rng);
    RefineResult ref = newton_refine(square, wp.point, ctx.cfg.tol.refine_tol, ctx.cfg.tol.refine_iters);
    if (ref.converged && distance(ref.x, wp.point) <= ctx.cfg.tol.tol_dup * (1.0 + norm2(wp.point))) {
        out.point = ref.x;
        out.residual = ref.residual;
    } else {
        out.residual = norm2(square.evaluate(out.point));
    }
    return out;
}

// One pass of the flowchart: route the previous witness collection and the
// new hypersurface through the shortcut tests, intersect what remains via
// the diagonal homotopy, and filter the candidates.
inline WitnessCollection run_stage(const WitnessCollection& prevW, const Polynomial& f_next,
                                   RunContext& ctx, StageStats& st) {
    const int N = ctx.flag.N;
    const PolySystem& sysk = prevW.system;
    const int k = sysk.size();

    PolySystem newsys = sysk;
    newsys.push(f_next);
    const int max_codim = std::min(k + 1, N);
    WitnessCollection newW(max_codim);
    newW.system = newsys;

    // hypersurface witness points for the incoming equation
    HypersurfaceWitness hw = hypersurface_witness(f_next, ctx.flag, ctx.Q, ctx.cfg.tol);
    st.x_count = static_cast<int>(hw.points.size());
    st.dropped_q_x = hw.dropped_on_q;
    if (hw.points.empty() && hw.effective_degree == 0)
        ctx.warnings->push_back("stage " + std::to_string(st.stage) +
                                ": hypersurface restriction has effective degree 0");

    // cross-equation discard: a hypersurface point on which any earlier
    // equation vanishes can only rediscover known components
    std::vector<WitnessPoint> B;
    for (const auto& x : hw.points) {
        if (vanishes_on_any_prefix(sysk, x.point, ctx.cfg.tol.tol_zero))
            ++st.discarded_b;
        else
            B.push_back(x);
    }

    const bool nonsing = ctx.cfg.mode == SolveMode::NonsingularOnly;

    for (int j = 1; j <= std::min(k, N); ++j) {
        // vanishing shortcut: points already on components of the new
        // hypersurface keep their codimension
        std::vector<WitnessPoint> pool;
        for (const auto& w : prevW.set(j).points) {
            if (vanishes_at(f_next, w.point, ctx.cfg.tol.tol_zero)) {
                ++st.shortcut_a;
                if (!nonsing) newW.set(j).points.push_back(refreshed(w, newsys, j, ctx));
            } else if (j == N) {
                ++st.dropped_dim0; // an isolated point off the new hypersurface is no solution
            } else {
                pool.push_back(w);
                ++st.pooled_w;
            }
        }
        if (j == N || pool.empty() || B.empty()) continue;

        IntersectResult inter =
            intersect_with_hypersurface(pool, j, sysk, f_next, B, ctx.flag, ctx.cache, ctx.rng,
                                        ctx.cfg.track, ctx.cfg.tol, ctx.cfg.worker_count);
        st.tracked += inter.stats.tracked;
        st.converged += inter.stats.converged;
        st.diverged += inter.stats.diverged;
        st.failed += inter.stats.failed;
        for (auto& w : inter.warnings) ctx.warnings->push_back("stage " + std::to_string(st.stage) + ": " + w);

        WitnessSet& dest = newW.set(j + 1);
        for (auto& cand : inter.candidates) {
            if (auto dup = is_duplicate(dest.points, cand.point.point, ctx.cfg.tol.tol_dup)) {
                dest.points[*dup].multiplicity_count += 1;
                ++st.dropped_d;
                continue;
            }
            if (ctx.Q && ctx.Q->size() > 0 &&
                vanishes_at(*ctx.Q, cand.point.point, ctx.cfg.tol.tol_zero)) {
                ++st.dropped_e;
                continue;
            }
            const bool singular = is_singular_point(newsys, j + 1, ctx.flag, cand.point.point,
                                                    ctx.cfg.tol.tol_rank, ctx.cache, ctx.rng);
            if (!singular) {
                cand.point.singular = false;
                dest.points.push_back(std::move(cand.point));
                ++st.accepted;
                continue;
            }
            if (nonsing) {
                ++st.dropped_singular;
                continue;
            }
            // a singular candidate is either junk on a higher-dimensional
            // component or a genuinely singular isolated point
            bool member = false;
            for (int i = 1; i <= j && !member; ++i) {
                if (newW.set(i).points.empty()) continue;
                MembershipOutcome mo =
                    membership_test(newW.set(i), newsys, ctx.flag, cand.point.point, ctx.cache,
                                    ctx.rng, ctx.cfg.track, ctx.cfg.tol, ctx.cfg.worker_count);
                if (mo.had_anomaly)
                    ctx.warnings->push_back("stage " + std::to_string(st.stage) +
                                            ": membership test lost a path, candidate dropped conservatively");
                member = mo.member;
            }
            if (member) {
                ++st.junk_g;
            } else {
                cand.point.singular = true;
                dest.points.push_back(std::move(cand.point));
                ++st.accepted;
            }
        }
    }
    if (st.failed > 0) *ctx.anomaly = true;
    return newW;
}

inline void validate_result(SolveResult& result, RunContext& ctx) {
    const PolySystem& sys = result.witness.system;
    for (const auto& ws : result.witness.sets) {
        for (std::size_t i = 0; i < ws.points.size(); ++i) {
            const auto& wp = ws.points[i];
            for (const auto& p : sys.polys)
                if (!vanishes_at(p, wp.point, ctx.cfg.tol.tol_res)) {
                    result.warnings.push_back("witness point in codim " + std::to_string(ws.codim) +
                                              " fails an equation residual check");
                    break;
                }
            if (!on_slice_prefix(ctx.flag, ws.codim, wp.point, ctx.cfg.tol.tol_slice))
                result.warnings.push_back("witness point in codim " + std::to_string(ws.codim) +
                                          " is off its slice prefix");
            for (std::size_t l = i + 1; l < ws.points.size(); ++l)
                if (distance(wp.point, ws.points[l].point) <=
                    ctx.cfg.tol.tol_dup * (1.0 + norm2(wp.point)))
                    result.warnings.push_back("duplicate points in codim " + std::to_string(ws.codim));
        }
    }
}

} // namespace detail

// Equation-by-equation witness generation: seed the codimension-1 set from
// the first hypersurface, then fold in one equation per stage.
inline SolveResult solve(const PolySystem& input, const PolySystem* Q, const SolverConfig& cfg) {
    SolveResult result;

    PreprocessResult pre = preprocess(input);
    result.preprocess_notes = pre.notes;
    if (pre.terminate_empty) {
        result.terminated_constant = true;
        result.witness = WitnessCollection(0);
        result.witness.system = PolySystem(input.n_vars);
        return result;
    }
    PolySystem sys = pre.system;
    if (cfg.order == EquationOrder::AscendingDegree)
        std::stable_sort(sys.polys.begin(), sys.polys.end(),
                         [](const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); });

    const int N = sys.n_vars;
    const int n = sys.size();
    if (n == 0) {
        result.warnings.push_back("no equations left after preprocessing");
        result.witness = WitnessCollection(0);
        result.witness.system = PolySystem(N);
        return result;
    }
    if (cfg.mode == SolveMode::NonsingularOnly && n > N)
        throw std::invalid_argument("nonsingular-only mode requires no more equations than variables");

    detail::RunContext ctx{cfg, Q, GenericFlag{}, Rng(cfg.seed), RandomizationCache{},
                           &result.warnings, &result.anomaly};
    ctx.flag = make_flag(ctx.rng, N);

    // the first equation's hypersurface witness is the first collection
    WitnessCollection W(std::min(n, N));
    {
        PolySystem first(N);
        first.push(sys.polys[0]);
        W.system = first;
        HypersurfaceWitness hw = hypersurface_witness(sys.polys[0], ctx.flag, Q, cfg.tol);
        result.x1_count = static_cast<int>(hw.points.size());
        for (auto& wp : hw.points) {
            wp.singular = is_singular_point(first, 1, ctx.flag, wp.point, cfg.tol.tol_rank,
                                            ctx.cache, ctx.rng);
            if (cfg.mode == SolveMode::NonsingularOnly && wp.singular) continue;
            W.set(1).points.push_back(std::move(wp));
        }
    }

    for (int k = 1; k < n; ++k) {
        StageStats st;
        st.stage = k;
        const auto t0 = std::chrono::steady_clock::now();
        WitnessCollection next = detail::run_stage(W, sys.polys[k], ctx, st);
        st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // keep every codim slot up to min(n, N) visible in reports
        WitnessCollection padded(std::min(n, N));
        padded.system = next.system;
        for (int c = 1; c <= next.max_codim(); ++c) padded.set(c) = next.set(c);
        W = std::move(padded);
        result.stages.push_back(st);
    }

    result.witness = std::move(W);
    detail::validate_result(result, ctx);
    return result;
}

// Nonsingular-isolated-solutions mode: shortcut points are discarded (they
// witness higher-dimensional components) and singular candidates are
// dropped without membership testing.
inline SolveResult solve_nonsingular(const PolySystem& input, const PolySystem* Q, SolverConfig cfg) {
    cfg.mode = SolveMode::NonsingularOnly;
    return solve(input, Q, cfg);
}

} // namespace wsolve
