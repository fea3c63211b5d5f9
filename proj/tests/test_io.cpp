#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <json.hpp>

#include "wsolve/generators.hpp"
#include "wsolve/parser.hpp"
#include "wsolve/report.hpp"

using namespace wsolve;

TEST_CASE("generators produce the advertised shapes") {
    ParsedSystem minors = parse_system_full(gen_minors(2, 9));
    REQUIRE(minors.system.size() == 8);
    REQUIRE(minors.system.n_vars == 18);
    for (const auto& p : minors.system.polys) REQUIRE(p.degree() == 2);

    ParsedSystem eigen = parse_system_full(gen_eigen(6, 9));
    REQUIRE(eigen.system.size() == 6);
    REQUIRE(eigen.system.n_vars == 7);
    for (const auto& p : eigen.system.polys) REQUIRE(p.degree() == 2);

    ParsedSystem illus = parse_system_full(gen_illustrative());
    REQUIRE(illus.system.size() == 3);
    REQUIRE(illus.system.polys[0].degree() == 5);
    REQUIRE(illus.system.polys[1].degree() == 6);
    REQUIRE(illus.system.polys[2].degree() == 8);

    // generated systems are reproducible per seed
    REQUIRE(gen_eigen(4, 11) == gen_eigen(4, 11));
    REQUIRE(gen_eigen(4, 11) != gen_eigen(4, 12));
    REQUIRE_THROWS_AS(gen_minors(3, 4), std::invalid_argument);
}

TEST_CASE("json output round-trips exactly and is byte-stable") {
    SolverConfig cfg;
    cfg.seed = 0;
    SolveResult r = solve(parse_system(gen_illustrative()), nullptr, cfg);

    std::ostringstream a, b;
    write_json(a, r, cfg.seed, cfg.mode);
    SolveResult r2 = solve(parse_system(gen_illustrative()), nullptr, cfg);
    write_json(b, r2, cfg.seed, cfg.mode);
    REQUIRE(a.str() == b.str()); // byte-identical across equal runs

    nlohmann::json j = nlohmann::json::parse(a.str());
    REQUIRE(j["n_vars"] == 3);
    REQUIRE(j["n_equations"] == 3);
    REQUIRE(j["seed"] == 0);
    REQUIRE(j["mode"] == "all");
    REQUIRE(j["witness_sets"].size() == 3);
    int c = 0;
    for (const auto& ws : j["witness_sets"]) {
        REQUIRE(ws["codim"] == ++c);
        REQUIRE(ws["count"] == static_cast<int>(ws["points"].size()));
        for (std::size_t i = 0; i < ws["points"].size(); ++i) {
            const auto& pt = ws["points"][i];
            const WitnessPoint& wp = r.witness.set(c).points[i];
            REQUIRE(pt["residual"].get<double>() == wp.residual);
            REQUIRE(pt["multiplicity_count"].get<int>() == wp.multiplicity_count);
            REQUIRE(pt["singular"].get<bool>() == wp.singular);
            for (std::size_t k = 0; k < wp.point.size(); ++k) {
                REQUIRE(pt["coords"][k][0].get<double>() == wp.point[k].real());
                REQUIRE(pt["coords"][k][1].get<double>() == wp.point[k].imag());
            }
        }
    }
    REQUIRE(j["stages"].size() == 2);
    REQUIRE(j["stages"][0]["tracked"] == 12);
    REQUIRE(j["stages"][1]["tracked"] == 1);
}

TEST_CASE("report is byte-stable and carries the stage table") {
    SolverConfig cfg;
    cfg.seed = 0;
    SolveResult r = solve(parse_system("vars: x,y,z; x*z; y*z;"), nullptr, cfg);
    std::ostringstream a, b;
    write_report(a, r, cfg.seed, cfg.mode, r.x1_count);
    SolveResult r2 = solve(parse_system("vars: x,y,z; x*z; y*z;"), nullptr, cfg);
    write_report(b, r2, cfg.seed, cfg.mode, r2.x1_count);
    REQUIRE(a.str() == b.str());
    REQUIRE(a.str().find("codim 1: 1 point") != std::string::npos);
    REQUIRE(a.str().find("codim 2: 1 point") != std::string::npos);
}

TEST_CASE("empty-solution signal reaches the report") {
    SolverConfig cfg;
    SolveResult r = solve(parse_system("vars: x; x - 1; 2;"), nullptr, cfg);
    REQUIRE(r.terminated_constant);
    std::ostringstream os;
    write_report(os, r, cfg.seed, cfg.mode, 0);
    REQUIRE(os.str().find("empty solution set") != std::string::npos);
}
