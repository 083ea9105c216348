#pragma once

// Classical (finite group) shadows of the multiplicative unitary, the
// antipode unitary and the Cayley-graph operators. Every operator is a
// permutation of a basis, so all checks are exact integer comparisons.

#include "qfree/exec.hpp"
#include "qfree/kernels.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qfree::cayley {

using kernels::Perm;

class FiniteGroup {
public:
    /// Validates closure, associativity, identity and inverses.
    FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> mul);

    static FiniteGroup cyclic(std::size_t n);  // Z/n, n <= 24
    static FiniteGroup symmetric(std::size_t n);  // S_3 or S_4, lexicographic, index 0 = identity
    static FiniteGroup dihedral4();  // element r^k s^m has index k + 4m
    /// "Z3", "Z/3", "S3", "S4", "D4" (case-insensitive).
    static FiniteGroup by_name(const std::string& name);

    const std::string& name() const { return name_; }
    std::size_t order() const { return mul_.size(); }
    std::size_t e() const { return e_; }
    std::size_t mul(std::size_t g, std::size_t h) const { return mul_[g][h]; }
    std::size_t inv(std::size_t g) const { return inv_[g]; }
    bool is_abelian() const;

private:
    std::string name_;
    std::vector<std::vector<std::size_t>> mul_;
    std::vector<std::size_t> inv_;
    std::size_t e_ = 0;
};

/// Inverse-closed H not containing e; edges (g, h) with h in H.
class EdgeSpace {
public:
    EdgeSpace(const FiniteGroup& g, std::vector<std::size_t> generating_set);

    const std::vector<std::size_t>& generating_set() const { return h_; }
    std::size_t size() const { return edges_.size(); }
    /// (g, h) pairs in lexicographic order.
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    /// Index of (g, h), or size() if h is not in H.
    std::size_t index(std::size_t g, std::size_t h) const;

private:
    std::size_t order_;
    std::vector<std::size_t> h_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::size_t> lookup_;
};

/// Basis delta_g (x) delta_h has index g * |G| + h; triple tensors g, h, k
/// have index (g |G| + h) |G| + k.
std::size_t pair_index(const FiniteGroup& g, std::size_t a, std::size_t b);

/// V(delta_g (x) delta_h) = delta_g (x) delta_gh.
Perm mult_unitary(const FiniteGroup& g);
/// U(delta_g) = delta_{g^-1}.
Perm antipode_unitary(const FiniteGroup& g);
/// The flip Sigma on l2(G) (x) l2(G).
Perm flip(const FiniteGroup& g);
Perm tensor(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
bool is_permutation(const Perm& p);

/// Sigma (1 (x) U) V (1 (x) U) Sigma, composed from the pieces.
Perm v_tilde(const FiniteGroup& g, Exec exec = Exec::omp);
/// Sigma (1 (x) U) V (U (x) U) Sigma on l2(G) (x) l2(G), composed from the pieces.
Perm theta_full(const FiniteGroup& g, Exec exec = Exec::omp);

/// Operator on three legs acting by `op` on legs (i, j) of (0, 1, 2).
Perm on_legs(const FiniteGroup& g, const Perm& op, int i, int j);

struct EdgeOperators {
    Perm theta_composed;  // theta_full restricted to the edge basis
    Perm theta_closed;    // (g, h) -> (gh, h^-1)
    bool restriction_ok = false;  // theta_full maps edges to edges
    bool agree = false;
    bool unitary = false;
    bool involutive = false;
    bool boundary_ok = false;  // V on (g, h) equals (g, gh)
};

EdgeOperators edge_reversal(const FiniteGroup& g, const EdgeSpace& edges, Exec exec = Exec::omp);

/// Largest order accepted by the triple-tensor checks.
inline constexpr std::size_t kMaxExhaustiveOrder = 24;

struct IdentityCheck {
    bool holds = false;
    std::size_t basis_size = 0;
    std::size_t mismatches = 0;
};

/// V12 V13 V23 = V23 V12; `adjoint` uses V^* in place of V (negative control).
IdentityCheck pentagon_check(const FiniteGroup& g, bool adjoint = false, Exec exec = Exec::omp);
/// V13 V23 Vt12 = Vt12 V13; `use_v` puts V in place of Vt (negative control).
IdentityCheck baaj_skandalis_check(const FiniteGroup& g, bool use_v = false, Exec exec = Exec::omp);

}  // namespace qfree::cayley
