#pragma once

// Pauli/quaternion decomposition of the fundamental matrix of FO(J_2N),
// its defining relations, the small operators on M_2 (x) M_N, and the
// symbolic check that the closed-form derivative operators agree with
// the free derivatives of the relations.

#include "qfree/dense_matrix.hpp"
#include "qfree/gauss_rational.hpp"
#include "qfree/ncalg.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qfree::pauli {

using ncalg::Family;
using ncalg::Generator;
using ncalg::Letter;
using ncalg::NcPoly;
using ExactMatrix = DenseMatrix<GaussRational>;
using PolyMatrix = DenseMatrix<NcPoly>;

inline constexpr std::array<Family, 4> kFamilies{Family::a, Family::b, Family::c, Family::d};

/// +1 for a, -1 for b, c, d: the sign of tau_alpha under adjoint, and the
/// eigenvalue of the sign map Gamma.
int family_sign(Family f);

// tau_a = I_2, tau_b = i sigma_y, tau_c = i sigma_z, tau_d = i sigma_x.
struct TauBasis {
    std::array<ExactMatrix, 4> tau;
    ExactMatrix sigma_x, sigma_y, sigma_z;

    const ExactMatrix& operator[](Family f) const { return tau[static_cast<int>(f)]; }
};

const TauBasis& tau_basis();

/// N x N matrix unit E_ij (1-based).
ExactMatrix matrix_unit(int n, int i, int j);
/// E_ij^alpha = tau_alpha (x) E_ij.
ExactMatrix basis_element(int n, Family f, int i, int j);

// Models ---------------------------------------------------------------------

enum class Kind { symplectic, orthogonal };

/// A choice of self-adjoint generators x_k and a basis B_k of M_dim with
/// u = sum_k B_k (x) x_k. The antipode acts as S(x_k) = sign_k x_{k'}, and
/// U(B_k) = sign_k B_{k'} is the matching operator on M_dim.
/// Symplectic: dim = 2N, basis E_ij^alpha (alpha outer, then i, then j).
/// Orthogonal: dim = M, basis E_ij, generators a_ij only, S(u_ij) = u_ji.
struct Model {
    Kind kind = Kind::symplectic;
    int n = 1;
    int dim = 2;
    ncalg::GeneratorSet dictionary{1};
    std::vector<Letter> letters;
    std::vector<ExactMatrix> basis;
    std::vector<std::size_t> antipode_index;
    std::vector<int> antipode_sign;
    std::vector<GaussRational> norm2;
    /// Nonzero entries of the dual functionals: coordinate k of X is
    /// sum over (r, s, w) of w * X(r, s).
    struct DualEntry {
        std::size_t row;
        std::size_t col;
        GaussRational weight;
    };
    std::vector<std::vector<DualEntry>> dual;

    std::size_t size() const { return basis.size(); }
    std::string basis_name(std::size_t k) const;
    std::string letter_name(std::size_t k) const { return dictionary.generator(letters[k]).name(); }
};

Model symplectic_model(int n);
Model orthogonal_model(int m);

/// Coordinates of a matrix in the model basis (Hilbert-Schmidt projection;
/// the bases used here are orthogonal).
std::vector<GaussRational> coordinates(const Model& model, const ExactMatrix& x);
std::vector<NcPoly> coordinates(const Model& model, const PolyMatrix& x);
ExactMatrix from_coordinates(const Model& model, const std::vector<GaussRational>& c);

/// Matrix of a linear map on M_dim in the model basis:
/// column k holds the coordinates of f(B_k).
template <class F>
ExactMatrix operator_matrix(const Model& model, F&& f) {
    const std::size_t d = model.size();
    ExactMatrix out(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        auto col = coordinates(model, f(model.basis[k]));
        for (std::size_t r = 0; r < d; ++r) out(r, k) = col[r];
    }
    return out;
}

ExactMatrix left_mult(const Model& model, const ExactMatrix& x);
ExactMatrix right_mult(const Model& model, const ExactMatrix& x);
/// The antipode-induced unitary on M_dim; T (x) Gamma in the symplectic case.
ExactMatrix antipode_unitary(const Model& model);

/// u = sum_k B_k (x) x_k and u^* = sum_k B_k (x) S(x_k), the latter read
/// off from the antipode table rather than computed by adjoint.
PolyMatrix fundamental(const Model& model);
PolyMatrix fundamental_star(const Model& model);

// FO(J_2N) specifics -----------------------------------------------------------

struct GeneratorMatrix {
    int n = 1;
    PolyMatrix u;
    /// A^u, B^u, C^u, D^u as letter matrices.
    std::array<PolyMatrix, 4> blocks;
};

GeneratorMatrix build_u(int n);
PolyMatrix build_u_star(int n);

struct RelationVector {
    PolyMatrix f1;  // u^* u - I
    PolyMatrix f2;  // u u^* - I
    /// F2_a = AA^t + BB^t + CC^t + DD^t and the three antisymmetric parts,
    /// with u u^* = F2_a tau_a - F2_b tau_b - F2_c tau_c - F2_d tau_d.
    std::array<PolyMatrix, 4> f2_parts;
};

RelationVector build_relations(int n);
RelationVector build_relations(const Model& model);

/// tau (x) X for a polynomial block X.
PolyMatrix tau_kron(const ExactMatrix& tau, const PolyMatrix& x);

struct SignedGenerator {
    int sign = 1;
    Generator gen;
    auto operator<=>(const SignedGenerator&) const = default;
};

/// S(a_ij) = a_ji, S(b/c/d_ij) = -b/c/d_ji.
SignedGenerator antipode(const Generator& g);

/// Small operators on M_2 (x) M_N in the E_ij^alpha basis.
class SmallOps {
public:
    explicit SmallOps(int n);

    int n() const { return n_; }
    const Model& model() const { return model_; }

    /// Transpose on the M_N leg.
    const ExactMatrix& transpose() const { return t_; }
    const ExactMatrix& gamma() const { return gamma_; }
    const ExactMatrix& u() const { return u_; }
    const ExactMatrix& projection(Family f) const { return proj_[static_cast<int>(f)]; }
    /// Left multiplication by tau_alpha on the M_2 leg.
    const ExactMatrix& lambda(Family f) const { return lambda_tau_[static_cast<int>(f)]; }
    /// Left multiplication by E_ij on the M_N leg.
    ExactMatrix lambda(int i, int j) const;
    /// lambda_ij^alpha = lambda_ij (x) lambda_alpha: left multiplication by E_ij^alpha.
    ExactMatrix lambda(Family f, int i, int j) const;
    /// Rank one map tau_beta -> tau_alpha on the M_2 leg.
    ExactMatrix theta(Family alpha, Family beta) const;

private:
    int n_;
    Model model_;
    ExactMatrix t_, gamma_, u_;
    std::array<ExactMatrix, 4> proj_;
    std::array<ExactMatrix, 4> lambda_tau_;
};

/// Closed-form derivative operators, assembled with the printed signs:
///   dF1 = sum s_alpha (1 (x) alpha_ij) U lambda_ji^alpha + sum s_alpha (alpha_kl (x) 1) lambda_lk^alpha
///   dF2 = sum (1 (x) alpha_ij) U lambda_ij^alpha U + sum (beta_kl (x) 1) lambda_kl^beta U
/// `flipped` negates the first-sum term of that family (negative control).
ncalg::DerivMap compact_dF1(const Model& model, std::optional<Family> flipped = {});
ncalg::DerivMap compact_dF2(const Model& model, std::optional<Family> flipped = {});
ncalg::DerivMap compact_dF1(int n, std::optional<Family> flipped = {});
ncalg::DerivMap compact_dF2(int n, std::optional<Family> flipped = {});

/// Derivative matrix of the relation coordinates, via ncalg.
ncalg::DerivMap derived_dF1(const Model& model);
ncalg::DerivMap derived_dF2(const Model& model);

struct Witness {
    std::string relation;
    std::string output;
    std::string input;
    std::string expected;
    std::string actual;
};

struct MapComparison {
    bool match = true;
    std::size_t entries_compared = 0;
    std::size_t mismatched_entries = 0;
    /// Largest number of differing terms within a single entry.
    std::size_t max_discrepancy_terms = 0;
    std::optional<Witness> witness;
};

MapComparison compare_maps(const Model& model, const std::string& relation, const ncalg::DerivMap& expected,
                           const ncalg::DerivMap& actual);

struct FormulaReport {
    int n = 1;
    bool match = false;
    std::size_t max_discrepancy_terms = 0;
    std::optional<Witness> witness;
    MapComparison f1;
    MapComparison f2;
};

FormulaReport verify_derivative_formulas(int n);
FormulaReport verify_derivative_formulas(const Model& model, std::optional<Family> flipped_f1 = {},
                                      std::optional<Family> flipped_f2 = {});

struct ThetaRewrite {
    Family alpha;
    Family beta;
    Family gamma;
    /// theta_{alpha,beta} = sign_lambda * lambda_gamma Gamma P_beta
    int sign_lambda = 0;
    /// theta_{alpha,beta} = sign_conj * Gamma lambda_gamma Gamma P_beta
    int sign_conj = 0;
    bool ok = false;
};

struct ThetaTable {
    std::vector<ThetaRewrite> rows;
    bool ok = false;
};

/// Exact 4x4 check of all sixteen rewritings on M_2.
ThetaTable theta_rewrite_table();
bool theta_rewrite_check();

/// Per-block check of the printed intermediate forms of d(F2_alpha tau_alpha)
/// against ncalg: the rank-one theta form ("theta"), the lambda Gamma P form
/// as displayed ("lambda-gamma-p"), and the latter with the right-leg
/// operators of block b's third and fourth lines exchanged
/// ("lambda-gamma-p-swapped").
struct BlockCheck {
    Family block;
    std::string form;
    MapComparison result;
};

std::vector<BlockCheck> block_transcription_report(int n);

}  // namespace qfree::pauli
