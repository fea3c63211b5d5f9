#pragma once

#include <ostream>
#include <iomanip>
#include <sstream>
#include <string>

#include "wsolve/solver.hpp"

namespace wsolve {

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Machine-readable results. Numbers carry 17 significant digits so a
// re-read value equals the in-memory one; no timings, so equal runs give
// byte-identical files.
inline void write_json(std::ostream& os, const SolveResult& r, std::uint64_t seed, SolveMode mode) {
    os << "{\n";
    os << "  \"n_vars\": " << r.witness.system.n_vars << ",\n";
    os << "  \"n_equations\": " << r.witness.system.size() << ",\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"mode\": \"" << (mode == SolveMode::All ? "all" : "nonsingular") << "\",\n";
    os << "  \"witness_sets\": [";
    for (int c = 1; c <= r.witness.max_codim(); ++c) {
        const WitnessSet& ws = r.witness.set(c);
        if (c > 1) os << ",";
        os << "\n    {\"codim\": " << ws.codim << ", \"count\": " << ws.count() << ", \"points\": [";
        for (std::size_t i = 0; i < ws.points.size(); ++i) {
            const WitnessPoint& wp = ws.points[i];
            if (i) os << ",";
            os << "\n      {\"coords\": [";
            for (std::size_t j = 0; j < wp.point.size(); ++j) {
                if (j) os << ", ";
                os << "[" << format_double(wp.point[j].real()) << ", "
                   << format_double(wp.point[j].imag()) << "]";
            }
            os << "], \"residual\": " << format_double(wp.residual)
               << ", \"multiplicity_count\": " << wp.multiplicity_count
               << ", \"singular\": " << (wp.singular ? "true" : "false") << "}";
        }
        os << (ws.points.empty() ? "]}" : "\n    ]}");
    }
    os << (r.witness.max_codim() ? "\n  ],\n" : "],\n");
    os << "  \"stages\": [";
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
        const StageStats& st = r.stages[i];
        if (i) os << ",";
        os << "\n    {\"stage\": " << st.stage << ", \"x_count\": " << st.x_count
           << ", \"tracked\": " << st.tracked << ", \"converged\": " << st.converged
           << ", \"diverged\": " << st.diverged << ", \"failed\": " << st.failed
           << ", \"shortcut_a\": " << st.shortcut_a << ", \"discarded_b\": " << st.discarded_b
           << ", \"dropped_d\": " << st.dropped_d << ", \"dropped_e\": " << st.dropped_e
           << ", \"junk_g\": " << st.junk_g << ", \"dropped_dim0\": " << st.dropped_dim0
           << ", \"dropped_singular\": " << st.dropped_singular
           << ", \"dropped_q_x\": " << st.dropped_q_x
           << ", \"pooled_w\": " << st.pooled_w << ", \"accepted\": " << st.accepted << "}";
    }
    os << (r.stages.empty() ? "],\n" : "\n  ],\n");
    os << "  \"warnings\": [";
    std::vector<std::string> all = r.preprocess_notes;
    all.insert(all.end(), r.warnings.begin(), r.warnings.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << json_escape(all[i]) << "\"";
    }
    os << "]\n";
    os << "}\n";
}

// Human-readable run report: input summary, per-stage path table like the
// usual continuation accounting, and the final witness counts. Timing
// columns are informational and only printed on request, keeping the
// default report byte-stable across runs.
inline void write_report(std::ostream& os, const SolveResult& r, std::uint64_t seed, SolveMode mode,
                         int x1_count, bool with_timings = false) {
    const PolySystem& sys = r.witness.system;
    os << "system: " << sys.size() << " equations in " << sys.n_vars << " unknowns";
    if (sys.size() > 0) {
        os << ", degrees";
        for (const auto& p : sys.polys) os << " " << p.degree();
    }
    os << "\n";
    os << "seed: " << seed << "   mode: " << (mode == SolveMode::All ? "all" : "nonsingular") << "\n";
    for (const auto& note : r.preprocess_notes) os << "note: " << note << "\n";
    if (r.terminated_constant) {
        os << "result: empty solution set\n";
        return;
    }
    os << "univariate witness count for equation 1: " << x1_count << "\n\n";

    if (!r.stages.empty()) {
        os << std::left << std::setw(7) << "stage" << std::right << std::setw(5) << "#X"
           << std::setw(9) << "tracked" << std::setw(9) << "conv" << std::setw(9) << "div"
           << std::setw(8) << "failed" << std::setw(7) << "(a)" << std::setw(7) << "(b)"
           << std::setw(7) << "(d)" << std::setw(7) << "(e)" << std::setw(7) << "(g)"
           << std::setw(9) << "accept";
        if (with_timings) os << std::setw(12) << "time/path" << std::setw(10) << "time";
        os << "\n";
        for (const auto& st : r.stages) {
            os << std::left << std::setw(7) << st.stage << std::right << std::setw(5) << st.x_count
               << std::setw(9) << st.tracked << std::setw(9) << st.converged << std::setw(9)
               << st.diverged << std::setw(8) << st.failed << std::setw(7) << st.shortcut_a
               << std::setw(7) << st.discarded_b << std::setw(7) << st.dropped_d << std::setw(7)
               << st.dropped_e << std::setw(7) << st.junk_g << std::setw(9) << st.accepted;
            if (with_timings) {
                std::ostringstream tp, tt;
                tp << std::fixed << std::setprecision(4)
                   << (st.tracked ? st.wall_seconds / st.tracked : 0.0) << "s";
                tt << std::fixed << std::setprecision(2) << st.wall_seconds << "s";
                os << std::setw(12) << tp.str() << std::setw(10) << tt.str();
            }
            os << "\n";
        }
        os << "\n";
    }

    os << "witness sets by codimension:\n";
    for (int c = 1; c <= r.witness.max_codim(); ++c) {
        const WitnessSet& ws = r.witness.set(c);
        os << "  codim " << c << ": " << ws.count() << " point" << (ws.count() == 1 ? "" : "s");
        int mult = 0, sing = 0;
        for (const auto& wp : ws.points) {
            if (wp.multiplicity_count > 1) ++mult;
            if (wp.singular) ++sing;
        }
        if (mult) os << " (" << mult << " with multiplicity > 1)";
        if (sing) os << " (" << sing << " singular)";
        os << "\n";
    }
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
}

} // namespace wsolve
