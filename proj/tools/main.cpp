#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wsolve/generators.hpp"
#include "wsolve/parser.hpp"
#include "wsolve/report.hpp"
#include "wsolve/solver.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

struct SolveArgs {
    std::string input;
    std::uint64_t seed = 0;
    std::string mode = "all";
    std::string ignore_file;
    std::string order = "given";
    int threads = 1;
    std::string json_path;
    std::string report_path;
    bool timings = false;
    wsolve::Tolerances tol;
};

int run_solve(const SolveArgs& args) {
    using namespace wsolve;

    ParsedSystem parsed;
    try {
        parsed = parse_system_full(read_input(args.input));
    } catch (const std::exception& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 1;
    }

    PolySystem ignore;
    bool have_ignore = false;
    if (!args.ignore_file.empty()) {
        try {
            ParsedSystem q = parse_system_full(read_input(args.ignore_file));
            if (q.var_names != parsed.var_names)
                throw std::runtime_error("ignore system must declare the same variables");
            ignore = q.system;
            have_ignore = true;
        } catch (const std::exception& e) {
            std::cerr << "error: ignore: " << e.what() << "\n";
            return 1;
        }
    }

    SolverConfig cfg;
    cfg.seed = args.seed;
    cfg.mode = args.mode == "nonsingular" ? SolveMode::NonsingularOnly : SolveMode::All;
    cfg.order = args.order == "degree" ? EquationOrder::AscendingDegree : EquationOrder::AsGiven;
    cfg.worker_count = std::max(1, args.threads);
    cfg.tol = args.tol;

    SolveResult result;
    try {
        result = solve(parsed.system, have_ignore ? &ignore : nullptr, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: solve: " << e.what() << "\n";
        return 1;
    }

    if (!args.json_path.empty()) {
        std::ostringstream js;
        write_json(js, result, cfg.seed, cfg.mode);
        write_output(args.json_path, js.str());
    }
    if (!args.report_path.empty() || args.json_path.empty()) {
        std::ostringstream rep;
        write_report(rep, result, cfg.seed, cfg.mode, result.x1_count, args.timings);
        write_output(args.report_path.empty() ? "-" : args.report_path, rep.str());
    }
    if (result.anomaly) {
        std::cerr << "error: numerical: at least one path failed; results may be incomplete\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"witness-set solver for polynomial systems, one equation at a time"};
    app.require_subcommand(1);

    SolveArgs sargs;
    auto* solve_cmd = app.add_subcommand("solve", "compute witness sets for a system");
    solve_cmd->add_option("input", sargs.input, "input file, or - for stdin")->required();
    solve_cmd->add_option("--seed", sargs.seed, "random seed");
    solve_cmd->add_option("--mode", sargs.mode, "all | nonsingular")
        ->check(CLI::IsMember({"all", "nonsingular"}));
    solve_cmd->add_option("--ignore", sargs.ignore_file, "polynomial system whose components are dropped");
    solve_cmd->add_option("--order", sargs.order, "given | degree")
        ->check(CLI::IsMember({"given", "degree"}));
    solve_cmd->add_option("--threads", sargs.threads, "path-tracking workers (1 = deterministic)");
    solve_cmd->add_option("--json", sargs.json_path, "JSON output path, or -");
    solve_cmd->add_option("--report", sargs.report_path, "report output path, or -");
    solve_cmd->add_flag("--timings", sargs.timings, "include timing columns in the report");
    solve_cmd->add_option("--tol-zero", sargs.tol.tol_zero, "vanishing-test tolerance");
    solve_cmd->add_option("--tol-dup", sargs.tol.tol_dup, "duplicate-point tolerance");
    solve_cmd->add_option("--tol-slice", sargs.tol.tol_slice, "slice-incidence tolerance");
    solve_cmd->add_option("--tol-rank", sargs.tol.tol_rank, "SVD rank threshold");
    solve_cmd->add_option("--tol-res", sargs.tol.tol_res, "witness-point residual tolerance");

    std::string gen_name;
    int gen_rows = 2, gen_cols = 9, gen_size = 6, gen_vars = 2;
    std::uint64_t gen_seed = 0;
    std::vector<int> gen_degrees;
    auto* gen_cmd = app.add_subcommand("gen", "emit a generated system on stdout");
    gen_cmd->add_option("name", gen_name, "illustrative | minors | eigen | randomdense")->required();
    gen_cmd->add_option("--rows", gen_rows, "minors: matrix rows");
    gen_cmd->add_option("--cols", gen_cols, "minors: matrix columns");
    gen_cmd->add_option("--size", gen_size, "eigen: matrix size");
    gen_cmd->add_option("--vars", gen_vars, "randomdense: number of variables");
    gen_cmd->add_option("--degrees", gen_degrees, "randomdense: equation degrees")->delimiter(',');
    gen_cmd->add_option("--seed", gen_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    if (solve_cmd->parsed()) return run_solve(sargs);

    try {
        if (gen_name == "illustrative") {
            std::cout << wsolve::gen_illustrative();
        } else if (gen_name == "minors") {
            std::cout << wsolve::gen_minors(gen_rows, gen_cols);
        } else if (gen_name == "eigen") {
            std::cout << wsolve::gen_eigen(gen_size, gen_seed);
        } else if (gen_name == "randomdense") {
            if (gen_degrees.empty()) gen_degrees = {2, 2};
            std::cout << wsolve::gen_randomdense(gen_vars, gen_degrees, gen_seed);
        } else {
            std::cerr << "error: input: unknown generator '" << gen_name << "'\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
