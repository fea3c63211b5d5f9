#pragma once

#include <atomic>
#include <thread>
#include <vector>

#include "wsolve/poly.hpp"

namespace wsolve {

// H(x,t) = [ fixed(x); gamma*(1-t)*start(x) + t*target(x) ].
// The moving rows are polynomial rows; the homotopies built by the solver
// use affine-linear ones, a total-degree start system uses full rows.
class Homotopy {
public:
    Homotopy(PolySystem fixed, PolySystem start, PolySystem target, cplx gamma)
        : fixed_(std::move(fixed)), start_(std::move(start)), target_(std::move(target)), gamma_(gamma) {
        n_ = fixed_.n_vars;
        if (start_.n_vars != n_ || target_.n_vars != n_)
            throw std::invalid_argument("Homotopy: variable count mismatch");
        if (start_.size() != target_.size())
            throw std::invalid_argument("Homotopy: moving block row counts differ");
        if (fixed_.size() + start_.size() != n_)
            throw std::invalid_argument("Homotopy: system is not square");
        if (gamma_ == cplx(0.0))
            throw std::invalid_argument("Homotopy: gamma must be nonzero");
        dfixed_ = derivatives(fixed_);
        dstart_ = derivatives(start_);
        dtarget_ = derivatives(target_);
    }

    int dim() const { return n_; }
    int moving_rows() const { return start_.size(); }
    cplx gamma() const { return gamma_; }
    const PolySystem& fixed() const { return fixed_; }
    const PolySystem& moving_start() const { return start_; }
    const PolySystem& moving_target() const { return target_; }

    CVec evaluate(const CVec& x, double t) const {
        CVec h(n_);
        const cplx a = gamma_ * (1.0 - t);
        int r = 0;
        for (const auto& p : fixed_.polys) h[r++] = p.evaluate(x);
        for (int i = 0; i < start_.size(); ++i)
            h[r++] = a * start_.polys[i].evaluate(x) + t * target_.polys[i].evaluate(x);
        return h;
    }

    ComplexMatrix jacobian_x(const CVec& x, double t) const {
        ComplexMatrix J(n_, n_);
        const cplx a = gamma_ * (1.0 - t);
        int r = 0;
        for (int i = 0; i < fixed_.size(); ++i, ++r)
            for (int j = 0; j < n_; ++j) J.at(r, j) = dfixed_[i][j].evaluate(x);
        for (int i = 0; i < start_.size(); ++i, ++r)
            for (int j = 0; j < n_; ++j)
                J.at(r, j) = a * dstart_[i][j].evaluate(x) + t * dtarget_[i][j].evaluate(x);
        return J;
    }

    CVec dH_dt(const CVec& x, double /*t*/) const {
        CVec v(n_, cplx(0.0));
        int r = fixed_.size();
        for (int i = 0; i < start_.size(); ++i, ++r)
            v[r] = -gamma_ * start_.polys[i].evaluate(x) + target_.polys[i].evaluate(x);
        return v;
    }

    // The end system H(x,1) = [fixed; target] as a plain square system.
    PolySystem end_system() const {
        PolySystem s(n_);
        for (const auto& p : fixed_.polys) s.push(p);
        for (const auto& p : target_.polys) s.push(p);
        return s;
    }

private:
    static std::vector<std::vector<Polynomial>> derivatives(const PolySystem& sys) {
        std::vector<std::vector<Polynomial>> d(sys.size());
        for (int i = 0; i < sys.size(); ++i) {
            d[i].reserve(sys.n_vars);
            for (int j = 0; j < sys.n_vars; ++j) d[i].push_back(sys.polys[i].differentiate(j));
        }
        return d;
    }

    PolySystem fixed_, start_, target_;
    cplx gamma_;
    int n_ = 0;
    std::vector<std::vector<Polynomial>> dfixed_, dstart_, dtarget_;
};

struct TrackOptions {
    double step_init = 0.05;
    double step_min = 1e-10;
    double step_max = 0.2;
    double newton_tol = 1e-9;
    int max_newton_iters = 4;
    int max_steps = 5000;
    double diverge_norm = 1e8;
    double t_end_offset = 1e-6;
    int final_refine_iters = 30;
};

enum class PathStatus { Converged, Diverged, Failed };

struct PathResult {
    PathStatus status = PathStatus::Failed;
    CVec endpoint;
    double endpoint_residual = 0.0;
    int steps_taken = 0;
    double max_norm_seen = 0.0;
};

struct RefineResult {
    CVec x;
    double residual = 0.0;
    bool converged = false;
    int iters = 0;
};

// Newton iteration on a square polynomial system until the update norm
// drops below tol*(1+|x|) or max_iters is reached. A singular Jacobian
// ends the iteration with converged=false.
inline RefineResult newton_refine(const PolySystem& sys, CVec x, double tol, int max_iters) {
    if (sys.size() != sys.n_vars)
        throw std::invalid_argument("newton_refine: system not square");
    std::vector<std::vector<Polynomial>> d(sys.size());
    for (int i = 0; i < sys.size(); ++i)
        for (int j = 0; j < sys.n_vars; ++j) d[i].push_back(sys.polys[i].differentiate(j));

    RefineResult out;
    for (int it = 0; it < max_iters; ++it) {
        CVec r = sys.evaluate(x);
        ComplexMatrix J(sys.size(), sys.n_vars);
        for (int i = 0; i < sys.size(); ++i)
            for (int j = 0; j < sys.n_vars; ++j) J.at(i, j) = d[i][j].evaluate(x);
        CVec neg(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        CVec dx;
        try {
            dx = lu_solve(J, neg);
        } catch (const SingularMatrixError&) {
            out.x = std::move(x);
            out.residual = norm2(r);
            out.converged = false;
            out.iters = it;
            return out;
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        out.iters = it + 1;
        if (norm2(dx) <= tol * (1.0 + norm2(x))) {
            out.x = x;
            out.residual = norm2(sys.evaluate(x));
            out.converged = true;
            return out;
        }
    }
    out.x = x;
    out.residual = norm2(sys.evaluate(x));
    out.converged = out.residual <= tol * (1.0 + norm2(x));
    return out;
}

namespace detail {

// Newton corrector at fixed t. Returns true when the update criterion is
// met within the allowed iterations. Corrections comparable to the scale
// of the point itself mean the iterate is jumping between solution
// branches, so such steps are rejected.
inline bool correct(const Homotopy& h, CVec& x, double t, const TrackOptions& opts, double& max_norm) {
    const double entry_scale = 1.0 + norm2(x);
    for (int it = 0; it < opts.max_newton_iters; ++it) {
        CVec r = h.evaluate(x, t);
        CVec neg(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        CVec dx;
        try {
            dx = lu_solve(h.jacobian_x(x, t), neg);
        } catch (const SingularMatrixError&) {
            return false;
        }
        if (norm2(dx) > 0.5 * entry_scale) return false;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        const double nx = norm2(x);
        max_norm = std::max(max_norm, nx);
        if (norm2(dx) <= opts.newton_tol * (1.0 + nx)) return true;
    }
    return false;
}

} // namespace detail

// Predictor-corrector continuation from t=0 to t=1: Euler prediction along
// dx/dt = -(dH/dx)^{-1} dH/dt, Newton correction at fixed t, step doubling
// after 4 consecutive accepts and halving on reject. Stepping stops at
// 1 - t_end_offset; a final Newton refinement at exactly t=1 decides
// convergence by the residual test.
inline PathResult track_path(const Homotopy& h, const CVec& x0, const TrackOptions& opts) {
    PathResult res;
    CVec x = x0;
    res.max_norm_seen = norm2(x);

    double t = 0.0;
    // settle onto the start system
    if (!detail::correct(h, x, 0.0, opts, res.max_norm_seen)) {
        res.status = PathStatus::Failed;
        res.endpoint = x;
        res.endpoint_residual = norm2(h.evaluate(x, 0.0));
        return res;
    }

    const double t_end = 1.0 - opts.t_end_offset;
    double step = opts.step_init;
    int consecutive = 0;
    double checkpoint_norm = -1.0; // |x| when t first passes 1 - 1e-3

    while (t < t_end) {
        if (res.steps_taken >= opts.max_steps) {
            res.status = PathStatus::Failed;
            res.endpoint = x;
            res.endpoint_residual = norm2(h.evaluate(x, t));
            return res;
        }
        // never step across the growth checkpoint at 1 - 1e-3
        double dt = std::min(step, t_end - t);
        if (t < 1.0 - 1e-3) dt = std::min(dt, (1.0 - 1e-3) - t);
        CVec xp = x;
        bool ok = true;
        try {
            CVec rhs = h.dH_dt(x, t);
            CVec neg(rhs.size());
            for (std::size_t i = 0; i < rhs.size(); ++i) neg[i] = -rhs[i];
            CVec dxdt = lu_solve(h.jacobian_x(x, t), neg);
            for (std::size_t i = 0; i < xp.size(); ++i) xp[i] += dt * dxdt[i];
        } catch (const SingularMatrixError&) {
            ok = false;
        }
        if (ok) ok = detail::correct(h, xp, t + dt, opts, res.max_norm_seen);
        ++res.steps_taken;

        if (ok) {
            x = std::move(xp);
            t += dt;
            const double nx = norm2(x);
            res.max_norm_seen = std::max(res.max_norm_seen, nx);
            if (checkpoint_norm < 0.0 && t >= 1.0 - 1e-3) checkpoint_norm = nx;
            if (nx > opts.diverge_norm) {
                res.status = PathStatus::Diverged;
                res.endpoint = x;
                res.endpoint_residual = norm2(h.evaluate(x, t));
                return res;
            }
            if (++consecutive >= 4) {
                step = std::min(step * 2.0, opts.step_max);
                consecutive = 0;
            }
        } else {
            step *= 0.5;
            consecutive = 0;
            if (step < opts.step_min) {
                res.endpoint = x;
                res.endpoint_residual = norm2(h.evaluate(x, t));
                // step collapse near t=1 or after norm blowup means the
                // path is heading to infinity; otherwise report failure
                res.status = (t > 0.99 || res.max_norm_seen > 1e6)
                                 ? PathStatus::Diverged
                                 : PathStatus::Failed;
                return res;
            }
        }
    }

    // final refinement on the exact end system; a refine that lands far
    // from the tracked point has jumped to a different root and does not
    // certify this path
    const double norm_at_end = norm2(x);
    const PolySystem end = h.end_system();
    RefineResult fin = newton_refine(end, x, opts.newton_tol, opts.final_refine_iters);
    const bool jumped = distance(fin.x, x) > 0.5 * (1.0 + norm_at_end);
    res.endpoint = fin.x;
    const double nx = norm2(fin.x);
    res.max_norm_seen = std::max(res.max_norm_seen, nx);
    res.endpoint_residual = fin.residual;
    if (!jumped && fin.residual <= opts.newton_tol * (1.0 + nx) && nx <= opts.diverge_norm) {
        res.status = PathStatus::Converged;
        return res;
    }
    // a path without a finite endpoint keeps growing on the last stretch;
    // compare against the norm recorded when t passed 1 - 1e-3
    const double growth =
        (std::max(norm_at_end, nx) + 1.0) / (std::max(checkpoint_norm, 0.0) + 1.0);
    if (res.max_norm_seen > opts.diverge_norm || growth >= 4.0) {
        res.status = PathStatus::Diverged;
    } else {
        res.status = PathStatus::Failed;
    }
    return res;
}

// Track one path per start point; results are indexed like the inputs, so
// the outcome does not depend on the worker count.
inline std::vector<PathResult> track_all(const Homotopy& h, const std::vector<CVec>& starts,
                                         const TrackOptions& opts, int workers = 1) {
    std::vector<PathResult> results(starts.size());
    if (workers <= 1 || starts.size() <= 1) {
        for (std::size_t i = 0; i < starts.size(); ++i) results[i] = track_path(h, starts[i], opts);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= starts.size()) return;
            results[i] = track_path(h, starts[i], opts);
        }
    };
    std::vector<std::thread> pool;
    const int k = std::min<int>(workers, static_cast<int>(starts.size()));
    pool.reserve(k);
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

} // namespace wsolve
