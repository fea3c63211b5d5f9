#pragma once

#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsolve/linalg.hpp"

namespace wsolve {

struct Monomial {
    cplx coeff;
    std::vector<int> exps; // one exponent per variable

    int total_degree() const {
        int d = 0;
        for (int e : exps) d += e;
        return d;
    }
};

// Graded lexicographic, descending: higher total degree first, ties broken
// by lexicographically larger exponent vector first. Fixes the summation
// order so evaluation is bit-reproducible.
struct GrlexBefore {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int n_vars) : n_vars_(n_vars) {}

    static Polynomial constant(int n_vars, cplx c) {
        Polynomial p(n_vars);
        if (c != cplx(0.0)) p.monomials_.push_back({c, std::vector<int>(n_vars, 0)});
        return p;
    }

    static Polynomial variable(int n_vars, int index, cplx coeff = 1.0) {
        Polynomial p(n_vars);
        std::vector<int> e(n_vars, 0);
        e[index] = 1;
        p.monomials_.push_back({coeff, e});
        return p;
    }

    // Affine-linear row a . x + b.
    static Polynomial affine(const CVec& a, cplx b) {
        Polynomial p(static_cast<int>(a.size()));
        for (int j = 0; j < p.n_vars_; ++j)
            if (a[j] != cplx(0.0)) {
                std::vector<int> e(p.n_vars_, 0);
                e[j] = 1;
                p.monomials_.push_back({a[j], e});
            }
        if (b != cplx(0.0)) p.monomials_.push_back({b, std::vector<int>(p.n_vars_, 0)});
        p.canonicalize();
        return p;
    }

    int n_vars() const { return n_vars_; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    bool is_zero() const { return monomials_.empty(); }
    bool is_constant() const { return monomials_.empty() || monomials_.front().total_degree() == 0; }

    int degree() const {
        int d = -1;
        for (const auto& m : monomials_) d = std::max(d, m.total_degree());
        return d; // -1 for the zero polynomial
    }

    double coeff_norm() const {
        double m = 0.0;
        for (const auto& mono : monomials_) m = std::max(m, std::abs(mono.coeff));
        return m;
    }

    cplx evaluate(const CVec& x) const {
        if (static_cast<int>(x.size()) != n_vars_)
            throw std::invalid_argument("Polynomial::evaluate: dimension mismatch");
        cplx sum = 0.0;
        for (const auto& m : monomials_) {
            cplx term = m.coeff;
            for (int j = 0; j < n_vars_; ++j) {
                int e = m.exps[j];
                if (e == 0) continue;
                cplx p = x[j];
                // small exponents, plain repeated multiply
                for (int k = 1; k < e; ++k) p *= x[j];
                term *= p;
            }
            sum += term;
        }
        return sum;
    }

    Polynomial differentiate(int var_index) const {
        if (var_index < 0 || var_index >= n_vars_)
            throw std::invalid_argument("Polynomial::differentiate: index out of range");
        Polynomial d(n_vars_);
        for (const auto& m : monomials_) {
            if (m.exps[var_index] == 0) continue;
            Monomial dm = m;
            dm.coeff *= static_cast<double>(m.exps[var_index]);
            dm.exps[var_index] -= 1;
            d.monomials_.push_back(std::move(dm));
        }
        d.canonicalize();
        return d;
    }

    Polynomial operator+(const Polynomial& o) const { return combined(o, 1.0); }
    Polynomial operator-(const Polynomial& o) const { return combined(o, -1.0); }

    Polynomial operator*(const Polynomial& o) const {
        check_same_vars(o);
        std::map<std::vector<int>, cplx, GrlexBefore> acc;
        for (const auto& a : monomials_)
            for (const auto& b : o.monomials_) {
                std::vector<int> e(n_vars_);
                for (int j = 0; j < n_vars_; ++j) e[j] = a.exps[j] + b.exps[j];
                acc[std::move(e)] += a.coeff * b.coeff;
            }
        return from_map(n_vars_, acc);
    }

    Polynomial operator*(cplx s) const {
        Polynomial p(*this);
        if (s == cplx(0.0)) {
            p.monomials_.clear();
            return p;
        }
        for (auto& m : p.monomials_) m.coeff *= s;
        return p;
    }

    Polynomial operator-() const { return *this * cplx(-1.0); }

    Polynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
        Polynomial r = constant(n_vars_, 1.0);
        for (int k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    // Re-index into a larger variable space, variable j -> j + offset.
    Polynomial embedded(int new_n_vars, int offset) const {
        Polynomial p(new_n_vars);
        for (const auto& m : monomials_) {
            std::vector<int> e(new_n_vars, 0);
            for (int j = 0; j < n_vars_; ++j) e[j + offset] = m.exps[j];
            p.monomials_.push_back({m.coeff, std::move(e)});
        }
        p.canonicalize();
        return p;
    }

    // Coefficients c_0..c_d of p(base + s*dir) as a polynomial in s,
    // d the total degree of p.
    CVec restrict_to_line(const CVec& base, const CVec& dir) const {
        if (static_cast<int>(base.size()) != n_vars_ || static_cast<int>(dir.size()) != n_vars_)
            throw std::invalid_argument("restrict_to_line: dimension mismatch");
        const int d = std::max(degree(), 0);
        CVec out(d + 1, cplx(0.0));
        CVec term, next;
        for (const auto& m : monomials_) {
            term.assign(1, m.coeff);
            for (int j = 0; j < n_vars_; ++j) {
                for (int e = 0; e < m.exps[j]; ++e) {
                    next.assign(term.size() + 1, cplx(0.0));
                    for (std::size_t k = 0; k < term.size(); ++k) {
                        next[k] += term[k] * base[j];
                        next[k + 1] += term[k] * dir[j];
                    }
                    term.swap(next);
                }
            }
            for (std::size_t k = 0; k < term.size(); ++k) out[k] += term[k];
        }
        return out;
    }

    std::string to_string(const std::vector<std::string>& var_names) const;

    bool operator==(const Polynomial& o) const {
        if (n_vars_ != o.n_vars_ || monomials_.size() != o.monomials_.size()) return false;
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            if (monomials_[i].coeff != o.monomials_[i].coeff ||
                monomials_[i].exps != o.monomials_[i].exps)
                return false;
        return true;
    }

    void canonicalize() {
        std::map<std::vector<int>, cplx, GrlexBefore> acc;
        for (auto& m : monomials_) acc[std::move(m.exps)] += m.coeff;
        *this = from_map(n_vars_, acc);
    }

private:
    void check_same_vars(const Polynomial& o) const {
        if (n_vars_ != o.n_vars_)
            throw std::invalid_argument("Polynomial: mixed variable counts");
    }

    Polynomial combined(const Polynomial& o, cplx s) const {
        check_same_vars(o);
        std::map<std::vector<int>, cplx, GrlexBefore> acc;
        for (const auto& m : monomials_) acc[m.exps] += m.coeff;
        for (const auto& m : o.monomials_) acc[m.exps] += s * m.coeff;
        return from_map(n_vars_, acc);
    }

    static Polynomial from_map(int n_vars, const std::map<std::vector<int>, cplx, GrlexBefore>& acc) {
        Polynomial p(n_vars);
        for (const auto& [e, c] : acc)
            if (c != cplx(0.0)) p.monomials_.push_back({c, e});
        return p;
    }

    int n_vars_ = 0;
    std::vector<Monomial> monomials_; // canonical: merged, grlex-descending, no zeros
};

inline Polynomial operator*(cplx s, const Polynomial& p) { return p * s; }

struct PolySystem {
    int n_vars = 0;
    std::vector<Polynomial> polys;

    PolySystem() = default;
    explicit PolySystem(int nv) : n_vars(nv) {}

    int size() const { return static_cast<int>(polys.size()); }

    void push(Polynomial p) {
        if (p.n_vars() != n_vars) throw std::invalid_argument("PolySystem::push: variable count mismatch");
        polys.push_back(std::move(p));
    }

    CVec evaluate(const CVec& x) const {
        CVec v(polys.size());
        for (std::size_t i = 0; i < polys.size(); ++i) v[i] = polys[i].evaluate(x);
        return v;
    }
};

// Entry (i,j) = d f_i / d x_j at x.
inline ComplexMatrix jacobian(const PolySystem& sys, const CVec& x) {
    if (static_cast<int>(x.size()) != sys.n_vars)
        throw std::invalid_argument("jacobian: dimension mismatch");
    ComplexMatrix J(sys.size(), sys.n_vars);
    for (int i = 0; i < sys.size(); ++i)
        for (int j = 0; j < sys.n_vars; ++j)
            J.at(i, j) = sys.polys[i].differentiate(j).evaluate(x);
    return J;
}

// Rows of the result: row i = sum_j R(i,j) * f_j.
inline PolySystem randomize(const PolySystem& sys, const ComplexMatrix& R) {
    if (R.cols != sys.size()) throw std::invalid_argument("randomize: dimension mismatch");
    PolySystem out(sys.n_vars);
    for (int i = 0; i < R.rows; ++i) {
        Polynomial row(sys.n_vars);
        for (int j = 0; j < R.cols; ++j) row = row + sys.polys[j] * R.at(i, j);
        out.push(std::move(row));
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_coeff(cplx c) {
    if (c.imag() == 0.0) return format_double(c.real());
    std::string s = "(" + format_double(c.real());
    if (c.imag() >= 0.0 || std::isnan(c.imag()))
        s += "+" + format_double(c.imag()) + "i)";
    else
        s += "-" + format_double(-c.imag()) + "i)";
    return s;
}

inline std::string Polynomial::to_string(const std::vector<std::string>& var_names) const {
    if (monomials_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        const auto& m = monomials_[i];
        cplx c = m.coeff;
        if (i == 0) {
            // leading sign folded into the coefficient
        } else if (c.imag() == 0.0 && c.real() < 0.0) {
            out += " - ";
            c = -c;
        } else {
            out += " + ";
        }
        std::string vars;
        for (int j = 0; j < n_vars_; ++j) {
            if (m.exps[j] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += var_names[j];
            if (m.exps[j] > 1) vars += "^" + std::to_string(m.exps[j]);
        }
        if (vars.empty()) {
            out += format_coeff(c);
        } else if (c == cplx(1.0)) {
            out += vars;
        } else {
            out += format_coeff(c) + "*" + vars;
        }
    }
    return out;
}

} // namespace wsolve
