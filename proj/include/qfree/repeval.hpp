#pragma once

// Classical (one-dimensional) points of FO(J_2N) and FO(N): sampling,
// relation residuals, and the derivative operators of the relations
// evaluated there, assembled along two independent paths.

#include "qfree/exec.hpp"
#include "qfree/linalg.hpp"
#include "qfree/ncalg.hpp"
#include "qfree/pauli.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfree::repeval {

using linalg::Matrix;
using pauli::Kind;

struct ClassicalPoint {
    Kind kind = Kind::symplectic;
    int n = 1;  // N for symplectic points (g is 2N x 2N), the dimension for orthogonal ones
    Matrix g;
    /// Real generator values indexed by letter; reconstruct g through the model basis.
    std::vector<double> gen_values;
    std::uint64_t seed = 0;
};

/// J = [[0, I_N], [-I_N, 0]].
Matrix symplectic_form(int n);

double unitarity_residual(const Matrix& g);
/// max |J conj(g) J^{-1} - g|.
double symplectic_residual(const Matrix& g);

/// Symplectic: g = exp(iH) with H = [[P, Q], [Q^*, -conj(P)]], P Hermitian and
/// Q complex symmetric, Gaussian entries. Orthogonal: Q factor of a real
/// Gaussian matrix with the diagonal of R made positive.
ClassicalPoint sample_point(int n, Kind kind, std::uint64_t seed);
ClassicalPoint identity_point(int n, Kind kind);
/// Generator values are the real parts of the Hilbert-Schmidt coordinates of g.
ClassicalPoint point_from_matrix(int n, Kind kind, const Matrix& g, std::uint64_t seed = 0);
Matrix reconstruct(const ClassicalPoint& p);

struct DerivativeOperator {
    /// dF1 = first1 + second1 and dF2 = first2 + second2, from the closed forms.
    Matrix first1, second1, dF1;
    Matrix first2, second2, dF2;
    /// The same operators from the ncalg derivative tables, entry by entry.
    Matrix dF1_derived, dF2_derived;
    Matrix D, W;    // dF1^* dF1 and first1^* second1
    Matrix D2, W2;  // same for F2
    double relation_residual = 0.0;
    double path_discrepancy = 0.0;
    double unitarity_residual = 0.0;  // worst of the four summands
    std::optional<std::string> warning;
};

struct IdentityReport {
    double residual = 0.0;     // ||D - (2 + W + W^*)||_max
    double residual_f2 = 0.0;  // same for F2
    double relation_residual = 0.0;
    double path_discrepancy = 0.0;
    double unitarity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool spectrum_ok = false;
    int kernel_dim = 0;
};

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    int kernel_dim = 0;
    double fkl_nonzero = 1.0;
    double tol = 1e-8;
    /// max |Q diag(lambda) Q^* - D|
    double reconstruction_error = 0.0;
};

/// Throws std::invalid_argument for non-Hermitian input.
SpectralSummary spectral_summary(const Matrix& d, double tol = 1e-8);

/// Caches the exact relations, derivative tables and operator matrices of one model.
class Evaluator {
public:
    Evaluator(int n, Kind kind);

    const pauli::Model& model() const { return model_; }

    double check_relations(const ClassicalPoint& p) const;
    DerivativeOperator derivative_at(const ClassicalPoint& p) const;
    IdentityReport verify_identity(const ClassicalPoint& p, double spectrum_tol = 1e-10,
                                   double kernel_tol = 1e-8) const;

private:
    void check_point(const ClassicalPoint& p) const;

    pauli::Model model_;
    std::vector<ncalg::NcPoly> f1_, f2_;
    ncalg::DerivMap df1_, df2_;
    Matrix u_;
    std::vector<Matrix> lambda_;  // left multiplication by each basis element
};

double check_relations(const ClassicalPoint& p);
DerivativeOperator derivative_at(const ClassicalPoint& p);
IdentityReport verify_identity(const ClassicalPoint& p, double spectrum_tol = 1e-10);

struct PointRecord {
    std::uint64_t seed = 0;
    IdentityReport report;
};

struct BatchReport {
    int n = 1;
    Kind kind = Kind::symplectic;
    std::vector<PointRecord> points;
    double max_residual = 0.0;
    double max_relation_residual = 0.0;
    double max_path_discrepancy = 0.0;
    double max_unitarity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool all_spectrum_ok = true;
};

/// Sample i uses seed + i, so the result does not depend on scheduling.
BatchReport verify_batch(int n, Kind kind, int samples, std::uint64_t seed, double kernel_tol = 1e-8,
                         double spectrum_tol = 1e-10, Exec exec = Exec::omp);

}  // namespace qfree::repeval
