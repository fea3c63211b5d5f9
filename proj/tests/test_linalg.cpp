#include <catch2/catch_amalgamated.hpp>

#include "wsolve/linalg.hpp"

using namespace wsolve;

namespace {

// unitary matrix as a product of complex Householder reflections
ComplexMatrix random_unitary(Rng& rng, int n) {
    ComplexMatrix U = ComplexMatrix::identity(n);
    for (int rep = 0; rep < 3; ++rep) {
        CVec v(n);
        double vv = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = rng.normal_complex();
            vv += std::norm(v[i]);
        }
        ComplexMatrix H = ComplexMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) H.at(i, j) -= 2.0 * v[i] * std::conj(v[j]) / vv;
        ComplexMatrix P(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < n; ++k) s += H.at(i, k) * U.at(k, j);
                P.at(i, j) = s;
            }
        U = P;
    }
    return U;
}

} // namespace

TEST_CASE("rng streams are reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    Rng c(42), d(42);
    ComplexMatrix A = random_matrix(c, 4, 5);
    ComplexMatrix B = random_matrix(d, 4, 5);
    REQUIRE(A.data == B.data);

    Rng e(7);
    for (int i = 0; i < 100; ++i)
        REQUIRE(std::abs(std::abs(random_unit_complex(e)) - 1.0) < 1e-15);
}

TEST_CASE("lu_solve basics") {
    ComplexMatrix I = ComplexMatrix::identity(3);
    CVec b{cplx(1, 2), cplx(3, -1), cplx(0, 0)};
    REQUIRE(lu_solve(I, b) == b);

    ComplexMatrix D(2, 2);
    D.at(0, 0) = 2.0;
    D.at(1, 1) = 4.0;
    CVec x = lu_solve(D, {cplx(2), cplx(8)});
    REQUIRE(std::abs(x[0] - cplx(1.0)) < 1e-15);
    REQUIRE(std::abs(x[1] - cplx(2.0)) < 1e-15);

    ComplexMatrix Z(2, 2);
    REQUIRE_THROWS_AS(lu_solve(Z, {cplx(1), cplx(1)}), SingularMatrixError);
}

TEST_CASE("lu_solve residuals on random systems") {
    Rng rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        int n = rep < 5 ? 8 : 20;
        ComplexMatrix A = random_matrix(rng, n, n);
        CVec b(n);
        for (auto& z : b) z = rng.normal_complex();
        CVec x = lu_solve(A, b);
        CVec r = A.apply(x);
        for (int i = 0; i < n; ++i) r[i] -= b[i];
        REQUIRE(norm2(r) / norm2(b) < (n == 8 ? 1e-12 : 1e-10));
    }
}

TEST_CASE("singular values of simple matrices") {
    ComplexMatrix D(2, 2);
    D.at(0, 0) = 3.0;
    auto s = singular_values(D);
    REQUIRE(s[0] == Catch::Approx(3.0).margin(1e-14));
    REQUIRE(s[1] == Catch::Approx(0.0).margin(1e-14));

    ComplexMatrix ones(2, 2);
    for (auto& z : ones.data) z = 1.0;
    s = singular_values(ones);
    REQUIRE(s[0] == Catch::Approx(2.0).margin(1e-13));
    REQUIRE(s[1] == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("singular values recover a constructed spectrum") {
    Rng rng(5);
    const int n = 6;
    std::vector<double> sigma{9.0, 4.5, 2.0, 1.0, 0.25, 0.01};
    ComplexMatrix U = random_unitary(rng, n);
    ComplexMatrix V = random_unitary(rng, n);
    ComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += U.at(i, k) * sigma[k] * std::conj(V.at(j, k));
            A.at(i, j) = s;
        }
    auto got = singular_values(A);
    for (int k = 0; k < n; ++k)
        REQUIRE(std::abs(got[k] - sigma[k]) < 1e-10 * sigma[0]);

    // sum of squares matches the Frobenius norm
    double ss = 0.0;
    for (double v : got) ss += v * v;
    double fro = A.frobenius();
    REQUIRE(ss == Catch::Approx(fro * fro).epsilon(1e-10));
}

TEST_CASE("numerical rank") {
    REQUIRE(numerical_rank(ComplexMatrix::identity(3), 1e-8) == 3);

    ComplexMatrix ones(2, 2);
    for (auto& z : ones.data) z = 1.0;
    REQUIRE(numerical_rank(ones, 1e-8) == 1);
}

TEST_CASE("numerical rank is unitarily invariant") {
    Rng rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 3 + static_cast<int>(rng.uniform() * 3); // 3..5
        int r = 1 + static_cast<int>(rng.uniform() * (n - 1));
        // rank-r construction from outer products
        ComplexMatrix A(n, n);
        for (int t = 0; t < r; ++t) {
            CVec u(n), v(n);
            for (auto& z : u) z = rng.normal_complex();
            for (auto& z : v) z = rng.normal_complex();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A.at(i, j) += u[i] * std::conj(v[j]);
        }
        REQUIRE(numerical_rank(A, 1e-8) == r);
        ComplexMatrix Q = random_unitary(rng, n);
        ComplexMatrix QA(n, n), AQ(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cplx s1 = 0.0, s2 = 0.0;
                for (int k = 0; k < n; ++k) {
                    s1 += Q.at(i, k) * A.at(k, j);
                    s2 += A.at(i, k) * Q.at(k, j);
                }
                QA.at(i, j) = s1;
                AQ.at(i, j) = s2;
            }
        REQUIRE(numerical_rank(QA, 1e-8) == r);
        REQUIRE(numerical_rank(AQ, 1e-8) == r);
    }
}
