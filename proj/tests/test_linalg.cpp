#include <catch2/catch_amalgamated.hpp>

#include <codebound/linalg.hpp>

#include <random>

using namespace codebound;

namespace {

Mat random_symmetric(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            m(i, j) = d(rng);
            m(j, i) = m(i, j);
        }
    return m;
}

}  // namespace

TEST_CASE("jacobi reproduces diag and known spectra") {
    Mat d(3, 3);
    d(0, 0) = 5.0;
    d(1, 1) = -2.0;
    d(2, 2) = 0.5;
    auto vals = jacobi_eigenvalues(d);
    REQUIRE(vals[0] == Catch::Approx(-2.0));
    REQUIRE(vals[1] == Catch::Approx(0.5));
    REQUIRE(vals[2] == Catch::Approx(5.0));

    // [[2,1],[1,2]] has eigenvalues 1 and 3
    Mat m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 2;
    vals = jacobi_eigenvalues(m);
    REQUIRE(vals[0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(vals[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("jacobi eigenvectors reconstruct the matrix") {
    std::mt19937_64 rng(4242);
    for (int n : {1, 2, 5, 17, 40}) {
        Mat m = random_symmetric(n, rng);
        auto e = jacobi_eigen(m);
        Mat recon(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k) s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
                recon(i, j) = s;
            }
        REQUIRE((recon - m).max_abs() <= 1e-11 * (1.0 + m.max_abs()));
        // orthonormality
        Mat qtq = e.vectors.transpose() * e.vectors;
        REQUIRE((qtq - Mat::identity(n)).max_abs() <= 1e-12);
    }
}

TEST_CASE("trace and eigenvalue sums agree") {
    std::mt19937_64 rng(7);
    Mat m = random_symmetric(12, rng);
    auto vals = jacobi_eigenvalues(m);
    double tr = 0, sum = 0;
    for (int i = 0; i < 12; ++i) tr += m(i, i);
    for (double v : vals) sum += v;
    REQUIRE(sum == Catch::Approx(tr).margin(1e-10));
}

TEST_CASE("cholesky solves SPD systems") {
    std::mt19937_64 rng(99);
    for (int n : {1, 3, 8, 25}) {
        Mat g = random_symmetric(n, rng);
        Mat a = g * g.transpose();
        for (int i = 0; i < n; ++i) a(i, i) += n;  // well conditioned
        Mat l;
        REQUIRE(cholesky(a, l));
        std::uniform_real_distribution<double> d(-1, 1);
        std::vector<double> x0(n);
        for (double& v : x0) v = d(rng);
        auto b = mat_vec(a, x0);
        auto y = forward_solve(l, b);
        auto x = backward_solve_transposed(l, y);
        for (int i = 0; i < n; ++i) REQUIRE(x[i] == Catch::Approx(x0[i]).margin(1e-9));
    }

    Mat notpd(2, 2);
    notpd(0, 0) = 1;
    notpd(1, 1) = -1;
    Mat l;
    REQUIRE_FALSE(cholesky(notpd, l));
}

TEST_CASE("pivoted cholesky detects rank") {
    std::mt19937_64 rng(31337);
    // rank-3 Gram matrix embedded in 6x6
    Mat g(6, 3);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = d(rng);
    Mat a = g * g.transpose();
    PivotedCholesky pc;
    REQUIRE_FALSE(pc.factor(a));
    REQUIRE(pc.rank() == 3);

    Mat full = a;
    for (int i = 0; i < 6; ++i) full(i, i) += 2.0;
    REQUIRE(pc.factor(full));
    REQUIRE(pc.rank() == 6);
    std::vector<double> x0 = {1, -2, 3, 0.5, -0.25, 4};
    auto b = mat_vec(full, x0);
    auto x = pc.solve(b);
    for (int i = 0; i < 6; ++i) REQUIRE(x[i] == Catch::Approx(x0[i]).margin(1e-9));
}
