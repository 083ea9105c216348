#pragma once

// Spectral measures on the line and the one-variable functionals built on
// them: logarithmic energy, microstates free entropy, the Fuglede-Kadison
// determinant, and free Wick moments of semicircular families.

#include "qfree/exec.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfree::freeprob {

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

/// Either a finite atomic measure, or a density that is constant on each
/// cell of a uniform partition of [lo, hi].
class SpectralMeasure {
public:
    static constexpr double kMassTolerance = 1e-9;

    static SpectralMeasure atomic(std::vector<Atom> atoms);
    static SpectralMeasure density(double lo, double hi, std::vector<double> values);
    /// Cell averages of f (sub-sampled at `sub` midpoints per cell), normalized.
    static SpectralMeasure from_pdf(const std::function<double(double)>& f, double lo, double hi, std::size_t cells,
                                    std::size_t sub = 16);
    /// Cell masses from a distribution function, normalized.
    static SpectralMeasure from_cdf(const std::function<double(double)>& cdf, double lo, double hi, std::size_t cells);
    static SpectralMeasure semicircle(double variance = 1.0, double center = 0.0, std::size_t cells = 2000);
    static SpectralMeasure uniform(double lo, double hi, std::size_t cells = 1000);

    bool is_atomic() const { return atomic_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<double>& values() const { return values_; }
    double cell_width() const { return (hi_ - lo_) / static_cast<double>(values_.size()); }

    double mean() const;
    double variance() const;

private:
    bool atomic_ = true;
    std::vector<Atom> atoms_;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> values_;
};

/// CSV: `location,weight` rows, or a `density,LO,HI` header followed by one
/// cell value per row. '#' starts a comment; blank lines are skipped.
/// Throws std::runtime_error naming the offending line.
SpectralMeasure parse_measure(std::istream& in);
SpectralMeasure load_measure(const std::string& path);

/// Double integral of log|s - t|; -infinity for atomic measures.
double log_energy(const SpectralMeasure& mu, Exec exec = Exec::omp);
/// log_energy + 3/4 + log(2 pi) / 2.
double chi_single(const SpectralMeasure& mu, Exec exec = Exec::omp);
/// log(2 pi e variance) / 2; rejects variance <= 0.
double gaussian_bound(double variance);

/// Integral of log s over (eps, infinity); eps = 0 gives (0, infinity).
double truncated_log_integral(const SpectralMeasure& mu, double eps);

struct DeterminantClassReport {
    bool determinant_class = false;
    std::vector<double> cutoffs;
    std::vector<double> truncated;
    double last_increment = 0.0;
    double tolerance = 1e-6;
};

/// Dyadic cutoffs: for densities from hi down to the cell width (the grid
/// cannot resolve anything finer); for atoms down to 2^-60 max(1, top).
std::vector<double> default_cutoffs(const SpectralMeasure& mu);

/// Cauchy test on the last two truncated integrals. Rejects negative support.
DeterminantClassReport is_determinant_class(const SpectralMeasure& mu, const std::vector<double>& cutoffs,
                                            double tol = 1e-6);
DeterminantClassReport is_determinant_class(const SpectralMeasure& mu);

/// exp of the integral of log s over (0, infinity); mass at 0 is excluded.
/// Zero when the density fails the determinant-class test.
double fkl_det(const SpectralMeasure& mu);

/// Free Wick formula: sum over noncrossing pairings of the word of the
/// product of covariance entries. Odd words give 0.
template <class T>
T wick_moment(const std::vector<int>& word, const std::vector<std::vector<T>>& covariance);

struct D2Report {
    mpq_class norm_squared;  // exact tau((sum c_i S_i)^2)
    double exact = 0.0;      // eps * sqrt(norm_squared)
    double bound = 0.0;
    bool ok = false;
};

/// L2 norm of sum_i c_i eps S_i for free standard semicirculars, against
/// eps * sum |c_i| (= 2N eps for the character, c_i = 2). Coefficients are
/// converted to rationals exactly.
D2Report d2_perturbation(const std::vector<double>& coeffs, double eps);

// Implementation ---------------------------------------------------------------------

template <class T>
T wick_moment(const std::vector<int>& word, const std::vector<std::vector<T>>& covariance) {
    const std::size_t m = covariance.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (covariance[i].size() != m) throw std::invalid_argument("wick_moment: covariance is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (covariance[i][j] != covariance[j][i]) throw std::invalid_argument("wick_moment: covariance is not symmetric");
    }
    for (int w : word)
        if (w < 0 || static_cast<std::size_t>(w) >= m) throw std::invalid_argument("wick_moment: index out of range");
    const std::size_t n = word.size();
    if (n % 2) return T(0);
    // table[i][j]: moment of word[i, j); only even lengths are used.
    std::vector<std::vector<T>> table(n + 1, std::vector<T>(n + 1, T(0)));
    for (std::size_t i = 0; i <= n; ++i) table[i][i] = T(1);
    for (std::size_t len = 2; len <= n; len += 2)
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            T acc(0);
            for (std::size_t p = i + 1; p < j; p += 2) {
                const T& c = covariance[static_cast<std::size_t>(word[i])][static_cast<std::size_t>(word[p])];
                if (c == T(0)) continue;
                acc += c * table[i + 1][p] * table[p + 1][j];
            }
            table[i][j] = acc;
        }
    return table[0][n];
}

}  // namespace qfree::freeprob
