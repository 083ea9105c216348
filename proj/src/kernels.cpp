#include "qfree/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qfree {

int omp_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qfree

namespace qfree::kernels {

using ncalg::DerivMap;
using ncalg::Letter;
using ncalg::NcPoly;
using ncalg::Word;

namespace {

void derive_row(const NcPoly& f, const std::unordered_map<Letter, std::size_t>& index, DerivMap& out, std::size_t j) {
    for (const auto& [w, c] : f.terms())
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
            auto it = index.find(w[pos]);
            if (it == index.end()) continue;
            const auto split = w.begin() + static_cast<std::ptrdiff_t>(pos);
            out(j, it->second).add_term(Word(w.begin(), split), Word(split + 1, w.end()), c);
        }
}

}  // namespace

DerivMap derivative_matrix(std::span<const NcPoly> relations, std::span<const Letter> gens, Exec exec) {
    std::unordered_map<Letter, std::size_t> index;
    for (std::size_t i = 0; i < gens.size(); ++i) index.emplace(gens[i], i);
    DerivMap out(relations.size(), gens.size());
    const auto rows = static_cast<std::ptrdiff_t>(relations.size());
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < rows; ++j)
            derive_row(relations[static_cast<std::size_t>(j)], index, out, static_cast<std::size_t>(j));
    } else {
        for (std::ptrdiff_t j = 0; j < rows; ++j)
            derive_row(relations[static_cast<std::size_t>(j)], index, out, static_cast<std::size_t>(j));
    }
    return out;
}

namespace {

// Antiderivative pieces: integral over [0,1]^2 of log|k + t - s| equals
// phi(k+1) - 2 phi(k) + phi(|k-1|) with phi(w) = w^2/2 log w - 3w^2/4.
double phi(double w) {
    if (w == 0.0) return 0.0;
    return 0.5 * w * w * std::log(w) - 0.75 * w * w;
}

}  // namespace

std::vector<double> log_kernel(std::size_t n, double h) {
    std::vector<double> k(n);
    const double lh = std::log(h);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(i);
        k[i] = h * h * (phi(d + 1.0) - 2.0 * phi(d) + phi(std::abs(d - 1.0)) + lh);
    }
    return k;
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

double log_energy_cells(double h, std::span<const double> values, Exec exec) {
    if (!(h > 0.0)) throw std::invalid_argument("log_energy_cells: cell width must be positive");
    const std::size_t n = values.size();
    const std::vector<double> kern = log_kernel(n, h);
    std::vector<double> row(n);
    auto row_sum = [&](std::size_t i) {
        if (values[i] == 0.0) return 0.0;
        std::vector<double> terms(n);
        for (std::size_t j = 0; j < n; ++j) terms[j] = kern[i > j ? i - j : j - i] * values[j];
        return values[i] * pairwise_sum(terms);
    };
    const auto ni = static_cast<std::ptrdiff_t>(n);
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < ni; ++i) row[static_cast<std::size_t>(i)] = row_sum(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < ni; ++i) row[static_cast<std::size_t>(i)] = row_sum(static_cast<std::size_t>(i));
    }
    return pairwise_sum(row);
}

Perm compose(const Perm& a, const Perm& b, Exec exec) {
    if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
    Perm out(a.size());
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = a[b[static_cast<std::size_t>(x)]];
    } else {
        for (std::ptrdiff_t x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = a[b[static_cast<std::size_t>(x)]];
    }
    return out;
}

std::size_t count_mismatches(const Perm& a, const Perm& b, Exec exec) {
    if (a.size() != b.size()) throw std::invalid_argument("count_mismatches: size mismatch");
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    std::size_t bad = 0;
    if (exec == Exec::omp) {
#pragma omp parallel for reduction(+ : bad) schedule(static)
        for (std::ptrdiff_t x = 0; x < n; ++x) bad += a[static_cast<std::size_t>(x)] != b[static_cast<std::size_t>(x)];
    } else {
        for (std::ptrdiff_t x = 0; x < n; ++x) bad += a[static_cast<std::size_t>(x)] != b[static_cast<std::size_t>(x)];
    }
    return bad;
}

}  // namespace qfree::kernels
