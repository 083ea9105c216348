#include "qfree/kernels.hpp"

#include "support/random_poly.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>

using namespace qfree;
using namespace qfree::kernels;

TEST(LogKernel, DiagonalAndNeighbourClosedForms) {
    for (double h : {1.0, 0.01, 3.0}) {
        const auto k = log_kernel(3, h);
        EXPECT_NEAR(k[0], h * h * (std::log(h) - 1.5), 1e-14 * std::max(1.0, h * h));
        EXPECT_NEAR(k[1], h * h * (std::log(h) + 2.0 * std::log(2.0) - 1.5), 1e-14 * std::max(1.0, h * h));
    }
}

TEST(LogKernel, FarCellsMatchGaussQuadrature) {
    using gauss = boost::math::quadrature::gauss<double, 20>;
    const double h = 0.1;
    const auto k = log_kernel(12, h);
    for (std::size_t d = 2; d < 12; ++d) {
        const double lo = static_cast<double>(d) * h;
        const double q = gauss::integrate(
            [&](double s) { return gauss::integrate([&](double t) { return std::log(t - s); }, lo, lo + h); }, 0.0, h);
        EXPECT_NEAR(k[d], q, 1e-15) << "k=" << d;
    }
}

TEST(LogEnergyCells, SerialAndParallelBitwiseEqual) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t n : {1u, 7u, 500u, 1501u}) {
        std::vector<double> v(n);
        for (auto& x : v) x = u(rng);
        EXPECT_EQ(log_energy_cells(0.01, v, Exec::serial), log_energy_cells(0.01, v, Exec::omp)) << n;
    }
}

TEST(LogEnergyCells, MatchesDirectDoubleSum) {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(40);
    for (auto& x : v) x = u(rng);
    const double h = 0.05;
    const auto k = log_kernel(v.size(), h);
    long double direct = 0.0L;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) direct += v[i] * v[j] * k[i > j ? i - j : j - i];
    EXPECT_NEAR(log_energy_cells(h, v, Exec::serial), static_cast<double>(direct), 1e-13);
}

TEST(PairwiseSum, ExactOnIntegersAndEmpty) {
    std::vector<double> xs(1000);
    std::iota(xs.begin(), xs.end(), 1.0);
    EXPECT_EQ(pairwise_sum(xs), 500500.0);
    EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(PairwiseSum, BetterThanNaiveOnSmallIncrements) {
    std::vector<double> xs(1 << 20, 0.1);
    const double exact = 0.1 * static_cast<double>(xs.size());
    double naive = 0.0;
    for (double x : xs) naive += x;
    EXPECT_LE(std::abs(pairwise_sum(xs) - exact), std::abs(naive - exact));
}

TEST(DerivativeKernel, SerialAndParallelEqual) {
    std::mt19937_64 rng(63);
    std::vector<ncalg::NcPoly> rel;
    for (int k = 0; k < 40; ++k) rel.push_back(test_support::random_poly(rng, 8, 6, 5));
    const std::vector<ncalg::Letter> gens{0, 1, 2, 3, 4};
    EXPECT_EQ(derivative_matrix(rel, gens, Exec::serial), derivative_matrix(rel, gens, Exec::omp));
}

TEST(Compose, ConventionAndParallelEquality) {
    const Perm a{1, 2, 0}, b{0, 2, 1};
    // (a b)[x] = a[b[x]]
    EXPECT_EQ(compose(a, b, Exec::serial), (Perm{1, 0, 2}));
    std::mt19937_64 rng(64);
    Perm p(10000), q(10000);
    std::iota(p.begin(), p.end(), 0);
    std::iota(q.begin(), q.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(q.begin(), q.end(), rng);
    EXPECT_EQ(compose(p, q, Exec::serial), compose(p, q, Exec::omp));
    EXPECT_EQ(count_mismatches(p, q, Exec::serial), count_mismatches(p, q, Exec::omp));
    EXPECT_EQ(count_mismatches(p, p, Exec::omp), 0u);
    EXPECT_THROW(compose(a, Perm{0, 1}, Exec::serial), std::invalid_argument);
}
