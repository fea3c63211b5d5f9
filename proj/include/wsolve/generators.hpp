#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsolve/rng.hpp"
#include "wsolve/poly.hpp"

namespace wsolve {

// Three surfaces with shared factors: a sphere component, three lines and
// an isolated point, plus a twisted cubic. Degrees 5, 6, 8.
inline std::string gen_illustrative() {
    return "vars: x,y,z;\n"
           "(y - x^2)*(x^2 + y^2 + z^2 - 1)*(x - 0.5);\n"
           "(z - x^3)*(x^2 + y^2 + z^2 - 1)*(y - 0.5);\n"
           "(y - x^2)*(z - x^3)*(x^2 + y^2 + z^2 - 1)*(z - 0.5);\n";
}

// Adjacent 2x2 minors of a general 2-by-cols matrix of unknowns:
// cols-1 quadrics in 2*cols unknowns.
inline std::string gen_minors(int rows, int cols) {
    if (rows != 2) throw std::invalid_argument("gen minors: only two-row matrices are supported");
    if (cols < 2) throw std::invalid_argument("gen minors: need at least two columns");
    auto name = [cols](int r, int c) {
        if (cols <= 9) return "x" + std::to_string(r) + std::to_string(c);
        return "x" + std::to_string(r) + "_" + std::to_string(c);
    };
    std::string vars;
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= cols; ++c) {
            if (!vars.empty()) vars += ",";
            vars += name(r, c);
        }
    std::string out = "vars: " + vars + ";\n";
    for (int c = 1; c < cols; ++c)
        out += name(1, c) + "*" + name(2, c + 1) + " - " + name(1, c + 1) + "*" + name(2, c) + ";\n";
    return out;
}

// lam*x - A*x for a random complex size x size matrix A: size quadrics in
// size+1 unknowns whose solution set is size+1 lines.
inline std::string gen_eigen(int size, std::uint64_t seed) {
    if (size < 1) throw std::invalid_argument("gen eigen: size must be positive");
    Rng rng(seed);
    std::string vars;
    for (int i = 1; i <= size; ++i) vars += "x" + std::to_string(i) + ",";
    vars += "lam";
    std::string out = "vars: " + vars + ";\n";
    for (int i = 0; i < size; ++i) {
        std::string eq = "lam*x" + std::to_string(i + 1);
        for (int j = 0; j < size; ++j) {
            cplx a = rng.normal_complex();
            eq += " - " + format_coeff(a) + "*x" + std::to_string(j + 1);
        }
        out += eq + ";\n";
    }
    return out;
}

// Dense system: every monomial of total degree <= deg_i with a random
// complex coefficient. Used for oracle cross-checks.
inline std::string gen_randomdense(int n_vars, const std::vector<int>& degrees, std::uint64_t seed) {
    if (n_vars < 1) throw std::invalid_argument("gen randomdense: need at least one variable");
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("gen randomdense: degrees must be positive");
    Rng rng(seed);
    std::vector<std::string> names;
    for (int j = 1; j <= n_vars; ++j) names.push_back("x" + std::to_string(j));
    std::string vars;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (j) vars += ",";
        vars += names[j];
    }
    std::string out = "vars: " + vars + ";\n";
    for (int d : degrees) {
        std::string eq;
        std::vector<int> exps(n_vars, 0);
        std::function<void(int, int)> emit = [&](int var, int remaining) {
            if (var == n_vars) {
                cplx c = rng.normal_complex();
                std::string term = format_coeff(c);
                for (int j = 0; j < n_vars; ++j) {
                    if (exps[j] == 0) continue;
                    term += "*" + names[j];
                    if (exps[j] > 1) term += "^" + std::to_string(exps[j]);
                }
                if (!eq.empty()) eq += " + ";
                eq += term;
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                exps[var] = e;
                emit(var + 1, remaining - e);
            }
            exps[var] = 0;
        };
        emit(0, d);
        out += eq + ";\n";
    }
    return out;
}

} // namespace wsolve
