#pragma once

// Hot loops with a serial reference implementation and an OpenMP variant.
// Every OpenMP kernel writes disjoint outputs per iteration and reduces in
// index order, so both variants return bitwise identical results.

#include "qfree/exec.hpp"
#include "qfree/ncalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qfree::kernels {

/// One pass per relation: every occurrence of a listed generator contributes
/// (prefix (x) suffix) to entry (j, i). Assumes `gens` has no duplicates.
ncalg::DerivMap derivative_matrix(std::span<const ncalg::NcPoly> relations, std::span<const ncalg::Letter> gens,
                                  Exec exec);

/// Toeplitz weights K_k = integral of log|s - t| over two cells of width h
/// whose left edges are k cells apart.
std::vector<double> log_kernel(std::size_t n, double h);

/// sum_ij v_i K_|i-j| v_j for cell masses-per-width v on a uniform grid.
double log_energy_cells(double h, std::span<const double> values, Exec exec);

/// Sum with a fixed binary-tree order.
double pairwise_sum(std::span<const double> xs);

using Perm = std::vector<std::size_t>;

/// (a b)[x] = a[b[x]]: the permutation matrix of b applied first.
Perm compose(const Perm& a, const Perm& b, Exec exec);

std::size_t count_mismatches(const Perm& a, const Perm& b, Exec exec);

}  // namespace qfree::kernels
