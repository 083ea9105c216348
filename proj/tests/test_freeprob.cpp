#include "qfree/freeprob.hpp"
#include "qfree/linalg.hpp"

#include "support/density_suite.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace qfree;
using namespace qfree::freeprob;

namespace {

const double kLog2Pi = std::log(2.0 * M_PI);

SpectralMeasure parse(const std::string& text) {
    std::istringstream in(text);
    return parse_measure(in);
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const std::runtime_error& e) {
        return e.what();
    }
    return {};
}

// All pair partitions, keeping the noncrossing ones.
template <class T>
T wick_brute_force(const std::vector<int>& word, const std::vector<std::vector<T>>& cov) {
    const std::size_t n = word.size();
    if (n % 2) return T(0);
    T total(0);
    std::vector<int> partner(n, -1);
    auto crosses = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(partner[i]);
            if (partner[i] < 0 || j < i) continue;
            if ((i < a && a < j && j < b) || (a < i && i < b && b < j)) return true;
        }
        return false;
    };
    std::function<void(T)> rec = [&](T acc) {
        std::size_t first = n;
        for (std::size_t i = 0; i < n; ++i)
            if (partner[i] < 0) {
                first = i;
                break;
            }
        if (first == n) {
            total += acc;
            return;
        }
        for (std::size_t j = first + 1; j < n; ++j) {
            if (partner[j] >= 0 || crosses(first, j)) continue;
            partner[first] = static_cast<int>(j);
            partner[j] = static_cast<int>(first);
            rec(acc * cov[static_cast<std::size_t>(word[first])][static_cast<std::size_t>(word[j])]);
            partner[first] = partner[j] = -1;
        }
    };
    rec(T(1));
    return total;
}

}  // namespace

TEST(SpectralMeasure, RejectsBadMass) {
    EXPECT_THROW(SpectralMeasure::atomic({{0.0, 0.5}}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::atomic({{0.0, 1.5}, {1.0, -0.5}}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::atomic({}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::density(0.0, 1.0, {0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::density(1.0, 0.0, {1.0}), std::invalid_argument);
    EXPECT_NO_THROW(SpectralMeasure::density(0.0, 1.0, {0.5, 1.5}));
}

TEST(SpectralMeasure, Moments) {
    const auto pm = SpectralMeasure::atomic({{-1.0, 0.5}, {1.0, 0.5}});
    EXPECT_DOUBLE_EQ(pm.mean(), 0.0);
    EXPECT_DOUBLE_EQ(pm.variance(), 1.0);
    EXPECT_NEAR(SpectralMeasure::uniform(0.0, 1.0).variance(), 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(SpectralMeasure::semicircle(2.0, 1.0).variance(), 2.0, 1e-5);
    EXPECT_NEAR(SpectralMeasure::semicircle(2.0, 1.0).mean(), 1.0, 1e-12);
}

TEST(SpectralMeasure, SemicircleCellsIntegrateDensity) {
    const auto mu = SpectralMeasure::semicircle(1.0, 0.0, 400);
    const double h = mu.cell_width();
    for (std::size_t i = 150; i < 160; ++i) {
        const double x = mu.lo() + (static_cast<double>(i) + 0.5) * h;
        EXPECT_NEAR(mu.values()[i], std::sqrt(4.0 - x * x) / (2.0 * M_PI), 1e-5);
    }
}

TEST(Parse, AtomicWithCommentsAndBlanks) {
    const auto mu = parse("# spectrum\n\n0.5, 0.25\n2,0.75  # trailing\n");
    ASSERT_TRUE(mu.is_atomic());
    ASSERT_EQ(mu.atoms().size(), 2u);
    EXPECT_DOUBLE_EQ(mu.atoms()[1].location, 2.0);
    EXPECT_DOUBLE_EQ(mu.atoms()[1].weight, 0.75);
}

TEST(Parse, DensityHeader) {
    const auto mu = parse("density,0,2\n0.25\n0.75\n");
    ASSERT_FALSE(mu.is_atomic());
    EXPECT_DOUBLE_EQ(mu.lo(), 0.0);
    EXPECT_DOUBLE_EQ(mu.hi(), 2.0);
    EXPECT_EQ(mu.values().size(), 2u);
}

TEST(Parse, ErrorsNameTheLine) {
    EXPECT_NE(parse_error("1,0.5\n\nabc,0.5\n").find("line 3"), std::string::npos);
    EXPECT_NE(parse_error("1,0.5,2\n").find("line 1"), std::string::npos);
    EXPECT_NE(parse_error("density,0\n").find("line 1"), std::string::npos);
    EXPECT_NE(parse_error("density,0,1\n1,2\n").find("line 2"), std::string::npos);
    EXPECT_NE(parse_error("1,0.4\n").find("mass"), std::string::npos);
    EXPECT_NE(parse_error("1e,1\n").find("line 1"), std::string::npos);
    EXPECT_THROW(load_measure("/nonexistent/measure.csv"), std::runtime_error);
}

TEST(LogEnergy, AtomicIsMinusInfinity) {
    EXPECT_EQ(log_energy(SpectralMeasure::atomic({{1.0, 1.0}})), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(chi_single(SpectralMeasure::atomic({{1.0, 1.0}})), -std::numeric_limits<double>::infinity());
}

TEST(LogEnergy, ClosedForms) {
    EXPECT_NEAR(log_energy(SpectralMeasure::semicircle()), -0.25, 1e-5);
    EXPECT_NEAR(log_energy(SpectralMeasure::uniform(0.0, 1.0)), -1.5, 1e-12);
    // Scaling by a adds log a.
    EXPECT_NEAR(log_energy(SpectralMeasure::semicircle(4.0)), -0.25 + std::log(2.0), 1e-5);
    EXPECT_NEAR(log_energy(SpectralMeasure::uniform(-1.0, 3.0)), -1.5 + std::log(4.0), 1e-12);
}

TEST(LogEnergy, ConvergesUnderRefinement) {
    const double coarse = std::abs(log_energy(SpectralMeasure::semicircle(1.0, 0.0, 250)) + 0.25);
    const double fine = std::abs(log_energy(SpectralMeasure::semicircle(1.0, 0.0, 1000)) + 0.25);
    EXPECT_LT(fine, coarse);
}

TEST(LogEnergy, SerialAndParallelAgree) {
    const auto mu = SpectralMeasure::semicircle(1.0, 0.0, 777);
    EXPECT_EQ(log_energy(mu, Exec::serial), log_energy(mu, Exec::omp));
}

TEST(Chi, SemicircleAttainsGaussianBound) {
    EXPECT_NEAR(chi_single(SpectralMeasure::semicircle()), 0.5 * std::log(2.0 * M_PI * M_E), 1e-4);
    EXPECT_DOUBLE_EQ(gaussian_bound(1.0), 0.5 * std::log(2.0 * M_PI * M_E));
    EXPECT_THROW(gaussian_bound(0.0), std::invalid_argument);
}

TEST(Chi, Uniform) { EXPECT_NEAR(chi_single(SpectralMeasure::uniform(0.0, 1.0)), -0.75 + 0.5 * kLog2Pi, 1e-10); }

TEST(Chi, BoundHoldsOnSuiteWithEqualityOnlyForSemicircle) {
    const auto suite = test_support::density_suite(1000);
    ASSERT_EQ(suite.size(), 20u);
    for (const auto& d : suite) {
        const double gap = gaussian_bound(d.mu.variance()) - chi_single(d.mu);
        EXPECT_GE(gap, -2e-3) << d.name;
        if (d.semicircle)
            EXPECT_LE(gap, 2e-3) << d.name;
        else
            EXPECT_GT(gap, 2e-3) << d.name;
    }
}

TEST(TruncatedLog, UniformClosedForm) {
    const auto mu = SpectralMeasure::uniform(0.0, 1.0, 64);
    EXPECT_NEAR(truncated_log_integral(mu, 0.0), -1.0, 1e-14);
    for (double eps : {0.5, 0.1, 1e-3}) EXPECT_NEAR(truncated_log_integral(mu, eps), -1.0 - (eps * std::log(eps) - eps), 1e-14);
}

TEST(TruncatedLog, RejectsNegativeSupport) {
    EXPECT_THROW(truncated_log_integral(SpectralMeasure::atomic({{-1.0, 1.0}}), 0.0), std::invalid_argument);
    EXPECT_THROW(fkl_det(SpectralMeasure::uniform(-1.0, 1.0)), std::invalid_argument);
}

TEST(Fkl, DiracAtOne) { EXPECT_EQ(fkl_det(SpectralMeasure::atomic({{1.0, 1.0}})), 1.0); }

TEST(Fkl, ZeroAtomIsExcluded) {
    EXPECT_NEAR(fkl_det(SpectralMeasure::atomic({{0.0, 0.5}, {M_E, 0.5}})), std::sqrt(M_E), 1e-15);
}

TEST(Fkl, MatchesDeterminantOfRandomPsdMatrices) {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> normal;
    for (int k : {2, 3})
        for (int trial = 0; trial < 25; ++trial) {
            Eigen::MatrixXd b(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) b(i, j) = normal(rng);
            const Eigen::MatrixXd a = b * b.transpose();
            const auto es = linalg::jacobi_eigh(a.cast<std::complex<double>>());
            std::vector<Atom> atoms;
            for (int i = 0; i < k; ++i) atoms.push_back({std::max(0.0, es.values(i)), 1.0 / k});
            const double oracle = std::pow(std::abs(a.determinant()), 1.0 / k);
            EXPECT_NEAR(fkl_det(SpectralMeasure::atomic(atoms)), oracle, 1e-10 * std::max(1.0, oracle));
        }
}

TEST(DeterminantClass, AtomsAlwaysConverge) {
    const auto rep = is_determinant_class(SpectralMeasure::atomic({{0.0, 0.5}, {2.0, 0.5}}));
    EXPECT_TRUE(rep.determinant_class);
    EXPECT_EQ(rep.cutoffs.size(), rep.truncated.size());
}

TEST(DeterminantClass, DensityVanishingFastAtZero) {
    // exp(-1/s)/s^3 has every moment of log finite.
    const auto mu = SpectralMeasure::from_pdf([](double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s * s) : 0.0; },
                                              0.0, 2.0, 2000);
    const auto rep = is_determinant_class(mu);
    EXPECT_TRUE(rep.determinant_class) << rep.last_increment;
    EXPECT_GT(fkl_det(mu), 0.0);
}

TEST(DeterminantClass, LogSquaredSingularityDiverges) {
    // 1/(s log^2 s): integrable, but its log moment diverges.
    const double top = 0.25;
    const auto mu = SpectralMeasure::from_pdf(
        [](double s) { return s > 0.0 ? 1.0 / (s * std::log(s) * std::log(s)) : 0.0; }, 0.0, top, 4000, 64);
    const auto rep = is_determinant_class(mu);
    EXPECT_FALSE(rep.determinant_class);
    EXPECT_EQ(fkl_det(mu), 0.0);
    // Truncated integrals keep decreasing by roughly log 2 / |log eps| per halving.
    for (std::size_t k = 1; k < rep.truncated.size(); ++k) EXPECT_LT(rep.truncated[k], rep.truncated[k - 1]);
}

TEST(DeterminantClass, SupportAwayFromZero) {
    const auto mu = SpectralMeasure::uniform(1.0, 3.0, 100);
    EXPECT_TRUE(is_determinant_class(mu).determinant_class);
    // exp of the mean of log over [1, 3].
    EXPECT_NEAR(fkl_det(mu), std::exp((3.0 * std::log(3.0) - 3.0 + 1.0) / 2.0), 1e-13);
}

TEST(DeterminantClass, CutoffValidation) {
    const auto mu = SpectralMeasure::atomic({{1.0, 1.0}});
    EXPECT_THROW(is_determinant_class(mu, {1.0}), std::invalid_argument);
    EXPECT_THROW(is_determinant_class(mu, {1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(is_determinant_class(mu, {1.0, 0.0}), std::invalid_argument);
}

TEST(Wick, SmallWords) {
    const std::vector<std::vector<long>> id2{{1, 0}, {0, 1}};
    EXPECT_EQ(wick_moment<long>({0, 0}, id2), 1);
    EXPECT_EQ(wick_moment<long>({0, 0, 0, 0}, id2), 2);
    EXPECT_EQ(wick_moment<long>({0, 1, 0, 1}, id2), 0);
    EXPECT_EQ(wick_moment<long>({0, 0, 1, 1}, id2), 1);
    EXPECT_EQ(wick_moment<long>({0, 1, 1, 0}, id2), 1);
    EXPECT_EQ(wick_moment<long>({0, 1, 0}, id2), 0);
    EXPECT_EQ(wick_moment<long>({}, id2), 1);
}

TEST(Wick, CatalanForSingleVariable) {
    const std::vector<std::vector<long>> one{{1}};
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int p = 0; p <= 8; ++p) EXPECT_EQ(wick_moment<long>(std::vector<int>(2 * p, 0), one), catalan[p]);
}

TEST(Wick, MatchesPairPartitionEnumeration) {
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<int> letter(0, 2), num(-4, 4), len(0, 5);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::vector<mpq_class>> cov(3, std::vector<mpq_class>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j) cov[i][j] = cov[j][i] = mpq_class(num(rng), 3);
        std::vector<int> word(static_cast<std::size_t>(2 * len(rng)));
        for (auto& w : word) w = letter(rng);
        ASSERT_EQ(wick_moment<mpq_class>(word, cov), wick_brute_force<mpq_class>(word, cov));
    }
}

TEST(Wick, RejectsInvalidCovariance) {
    EXPECT_THROW(wick_moment<long>({0, 1}, {{1, 2}, {3, 1}}), std::invalid_argument);
    EXPECT_THROW(wick_moment<long>({0, 2}, {{1, 0}, {0, 1}}), std::invalid_argument);
    EXPECT_THROW(wick_moment<long>({0}, {{1, 0}}), std::invalid_argument);
}

TEST(D2, CharacterCase) {
    const D2Report r = d2_perturbation({2.0, 2.0}, 0.1);
    EXPECT_EQ(r.norm_squared, mpq_class(8));
    EXPECT_NEAR(r.exact, 0.2 * std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r.bound, 0.4, 1e-15);
    EXPECT_TRUE(r.ok);
}

TEST(D2, ExactRationalCoefficients) {
    const D2Report r = d2_perturbation({0.5, -1.5, 0.25}, 1.0);
    EXPECT_EQ(r.norm_squared, mpq_class(41, 16));
    EXPECT_NEAR(r.bound, 2.25, 1e-15);
    EXPECT_TRUE(r.ok);
    EXPECT_THROW(d2_perturbation({1.0}, -1.0), std::invalid_argument);
}

TEST(D2, EqualityForSingleTerm) {
    const D2Report r = d2_perturbation({3.0}, 0.5);
    EXPECT_DOUBLE_EQ(r.exact, r.bound);
    EXPECT_TRUE(r.ok);
}
