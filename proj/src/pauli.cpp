#include "qfree/pauli.hpp"

#include <stdexcept>

namespace qfree::pauli {

using ncalg::DerivMap;
using ncalg::TensorPoly;

int family_sign(Family f) { return f == Family::a ? 1 : -1; }

namespace {

ExactMatrix mat2(GaussRational a, GaussRational b, GaussRational c, GaussRational d) {
    ExactMatrix m(2, 2);
    m(0, 0) = std::move(a);
    m(0, 1) = std::move(b);
    m(1, 0) = std::move(c);
    m(1, 1) = std::move(d);
    return m;
}

TauBasis make_tau_basis() {
    const GaussRational i = GaussRational::i();
    TauBasis t;
    t.sigma_x = mat2(0, 1, 1, 0);
    t.sigma_y = mat2(0, -i, i, 0);
    t.sigma_z = mat2(1, 0, 0, -1);
    t.tau[0] = ExactMatrix::identity(2);
    t.tau[1] = t.sigma_y * i;
    t.tau[2] = t.sigma_z * i;
    t.tau[3] = t.sigma_x * i;
    return t;
}

void fill_dual(Model& m) {
    m.dual.resize(m.basis.size());
    m.norm2.resize(m.basis.size());
    for (std::size_t k = 0; k < m.basis.size(); ++k) {
        const ExactMatrix& b = m.basis[k];
        GaussRational n2;
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t s = 0; s < b.cols(); ++s) n2 += b(r, s).conj() * b(r, s);
        m.norm2[k] = n2;
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t s = 0; s < b.cols(); ++s)
                if (!b(r, s).is_zero()) m.dual[k].push_back({r, s, b(r, s).conj() / n2});
    }
}

PolyMatrix letter_block(const ncalg::GeneratorSet& set, Family f) {
    const int n = set.n();
    PolyMatrix m(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m(i - 1, j - 1) = NcPoly::letter(set.letter(f, i, j));
    return m;
}

PolyMatrix poly_identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = NcPoly::unit();
    return m;
}

}  // namespace

const TauBasis& tau_basis() {
    static const TauBasis basis = make_tau_basis();
    return basis;
}

ExactMatrix matrix_unit(int n, int i, int j) {
    ExactMatrix m(n, n);
    m(i - 1, j - 1) = GaussRational(1);
    return m;
}

ExactMatrix basis_element(int n, Family f, int i, int j) { return kron(tau_basis()[f], matrix_unit(n, i, j)); }

std::string Model::basis_name(std::size_t k) const {
    const Generator g = dictionary.generator(letters[k]);
    const std::string ij = std::to_string(g.row) + std::to_string(g.col);
    if (kind == Kind::orthogonal) return "E_" + ij;
    return std::string("E^") + ncalg::family_char(g.family) + "_" + ij;
}

Model symplectic_model(int n) {
    if (n < 1) throw std::invalid_argument("symplectic_model: N must be >= 1");
    Model m;
    m.kind = Kind::symplectic;
    m.n = n;
    m.dim = 2 * n;
    m.dictionary = ncalg::GeneratorSet(n);
    for (Family f : kFamilies)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                m.letters.push_back(m.dictionary.letter(f, i, j));
                m.basis.push_back(basis_element(n, f, i, j));
                m.antipode_index.push_back(m.dictionary.letter(f, j, i));
                m.antipode_sign.push_back(family_sign(f));
            }
    fill_dual(m);
    return m;
}

Model orthogonal_model(int dim) {
    if (dim < 1) throw std::invalid_argument("orthogonal_model: dimension must be >= 1");
    Model m;
    m.kind = Kind::orthogonal;
    m.n = dim;
    m.dim = dim;
    m.dictionary = ncalg::GeneratorSet(dim);
    for (int i = 1; i <= dim; ++i)
        for (int j = 1; j <= dim; ++j) {
            m.letters.push_back(m.dictionary.letter(Family::a, i, j));
            m.basis.push_back(matrix_unit(dim, i, j));
            m.antipode_index.push_back(static_cast<std::size_t>((j - 1) * dim + (i - 1)));
            m.antipode_sign.push_back(1);
        }
    fill_dual(m);
    return m;
}

std::vector<GaussRational> coordinates(const Model& model, const ExactMatrix& x) {
    std::vector<GaussRational> out(model.size());
    for (std::size_t k = 0; k < model.size(); ++k)
        for (const auto& e : model.dual[k])
            if (!x(e.row, e.col).is_zero()) out[k] += e.weight * x(e.row, e.col);
    return out;
}

std::vector<NcPoly> coordinates(const Model& model, const PolyMatrix& x) {
    std::vector<NcPoly> out(model.size());
    for (std::size_t k = 0; k < model.size(); ++k)
        for (const auto& e : model.dual[k]) out[k] += x(e.row, e.col) * e.weight;
    return out;
}

ExactMatrix from_coordinates(const Model& model, const std::vector<GaussRational>& c) {
    ExactMatrix out(model.dim, model.dim);
    for (std::size_t k = 0; k < model.size(); ++k)
        if (!c[k].is_zero()) out += model.basis[k] * c[k];
    return out;
}

ExactMatrix left_mult(const Model& model, const ExactMatrix& x) {
    return operator_matrix(model, [&](const ExactMatrix& b) { return x * b; });
}

ExactMatrix right_mult(const Model& model, const ExactMatrix& x) {
    return operator_matrix(model, [&](const ExactMatrix& b) { return b * x; });
}

ExactMatrix antipode_unitary(const Model& model) {
    ExactMatrix u(model.size(), model.size());
    for (std::size_t k = 0; k < model.size(); ++k) u(model.antipode_index[k], k) = GaussRational(model.antipode_sign[k]);
    return u;
}

PolyMatrix fundamental(const Model& model) {
    PolyMatrix u(model.dim, model.dim);
    for (std::size_t k = 0; k < model.size(); ++k)
        for (const auto& e : model.dual[k])
            u(e.row, e.col) += NcPoly::letter(model.letters[k], model.basis[k](e.row, e.col));
    return u;
}

PolyMatrix fundamental_star(const Model& model) {
    PolyMatrix u(model.dim, model.dim);
    for (std::size_t k = 0; k < model.size(); ++k) {
        const Letter image = model.letters[model.antipode_index[k]];
        const GaussRational sign(model.antipode_sign[k]);
        for (const auto& e : model.dual[k]) u(e.row, e.col) += NcPoly::letter(image, model.basis[k](e.row, e.col) * sign);
    }
    return u;
}

PolyMatrix tau_kron(const ExactMatrix& tau, const PolyMatrix& x) {
    const std::size_t n = x.rows();
    PolyMatrix out(tau.rows() * n, tau.cols() * n);
    for (std::size_t p = 0; p < tau.rows(); ++p)
        for (std::size_t q = 0; q < tau.cols(); ++q) {
            if (tau(p, q).is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < x.cols(); ++j) out(p * n + i, q * n + j) = x(i, j) * tau(p, q);
        }
    return out;
}

GeneratorMatrix build_u(int n) {
    if (n < 1) throw std::invalid_argument("build_u: N must be >= 1");
    const Model model = symplectic_model(n);
    GeneratorMatrix g;
    g.n = n;
    g.u = fundamental(model);
    for (Family f : kFamilies) g.blocks[static_cast<int>(f)] = letter_block(model.dictionary, f);
    return g;
}

PolyMatrix build_u_star(int n) {
    if (n < 1) throw std::invalid_argument("build_u_star: N must be >= 1");
    const ncalg::GeneratorSet set(n);
    const TauBasis& t = tau_basis();
    PolyMatrix out = tau_kron(t[Family::a], letter_block(set, Family::a).transpose());
    out -= tau_kron(t[Family::b], letter_block(set, Family::b).transpose());
    out -= tau_kron(t[Family::c], letter_block(set, Family::c).transpose());
    out -= tau_kron(t[Family::d], letter_block(set, Family::d).transpose());
    return out;
}

RelationVector build_relations(int n) {
    const GeneratorMatrix g = build_u(n);
    const PolyMatrix ustar = build_u_star(n);
    const PolyMatrix id = poly_identity(2 * n);
    RelationVector rel;
    rel.f1 = ustar * g.u - id;
    rel.f2 = g.u * ustar - id;

    const auto& [a, b, c, d] = g.blocks;
    const PolyMatrix at = a.transpose(), bt = b.transpose(), ct = c.transpose(), dt = d.transpose();
    rel.f2_parts[0] = a * at + b * bt + c * ct + d * dt;
    rel.f2_parts[1] = a * bt + d * ct - b * at - c * dt;
    rel.f2_parts[2] = a * ct + b * dt - c * at - d * bt;
    rel.f2_parts[3] = a * dt + c * bt - d * at - b * ct;
    return rel;
}

RelationVector build_relations(const Model& model) {
    if (model.kind == Kind::symplectic) return build_relations(model.n);
    const PolyMatrix u = fundamental(model);
    const PolyMatrix ustar = fundamental_star(model);
    const PolyMatrix id = poly_identity(model.dim);
    RelationVector rel;
    rel.f1 = ustar * u - id;
    rel.f2 = u * ustar - id;
    return rel;
}

SignedGenerator antipode(const Generator& g) {
    return SignedGenerator{family_sign(g.family), Generator{g.family, g.col, g.row}};
}

// SmallOps -------------------------------------------------------------------

SmallOps::SmallOps(int n) : n_(n), model_(symplectic_model(n)) {
    const std::size_t d = model_.size();
    const auto nn = static_cast<std::size_t>(n * n);
    t_ = ExactMatrix(d, d);
    gamma_ = ExactMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const Generator g = model_.dictionary.generator(model_.letters[k]);
        t_(model_.dictionary.letter(g.family, g.col, g.row), k) = GaussRational(1);
        gamma_(k, k) = GaussRational(family_sign(g.family));
    }
    u_ = t_ * gamma_;
    for (Family f : kFamilies) {
        const int fi = static_cast<int>(f);
        proj_[fi] = ExactMatrix(d, d);
        for (std::size_t k = fi * nn; k < (fi + 1) * nn; ++k) proj_[fi](k, k) = GaussRational(1);
        lambda_tau_[fi] = left_mult(model_, kron(tau_basis()[f], ExactMatrix::identity(n)));
    }
}

ExactMatrix SmallOps::lambda(int i, int j) const {
    return left_mult(model_, kron(ExactMatrix::identity(2), matrix_unit(n_, i, j)));
}

ExactMatrix SmallOps::lambda(Family f, int i, int j) const { return left_mult(model_, basis_element(n_, f, i, j)); }

ExactMatrix SmallOps::theta(Family alpha, Family beta) const {
    const std::size_t d = model_.size();
    const auto nn = static_cast<std::size_t>(n_ * n_);
    ExactMatrix out(d, d);
    for (std::size_t k = 0; k < nn; ++k)
        out(static_cast<std::size_t>(alpha) * nn + k, static_cast<std::size_t>(beta) * nn + k) = GaussRational(1);
    return out;
}

// Compact formulas ---------------------------------------------------------------

namespace {

void accumulate(DerivMap& map, const ExactMatrix& op, const TensorPoly& coeff) {
    for (std::size_t r = 0; r < op.rows(); ++r)
        for (std::size_t c = 0; c < op.cols(); ++c)
            if (!op(r, c).is_zero()) map(r, c) += coeff * op(r, c);
}

Family family_of(const Model& model, std::size_t k) { return model.dictionary.generator(model.letters[k]).family; }

}  // namespace

DerivMap compact_dF1(const Model& model, std::optional<Family> flipped) {
    const std::size_t d = model.size();
    const ExactMatrix u = antipode_unitary(model);
    DerivMap map(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const Letter x = model.letters[k];
        const GaussRational s(model.antipode_sign[k]);
        const ExactMatrix lam = left_mult(model, model.basis[model.antipode_index[k]]);
        GaussRational first_sign = s;
        if (flipped && family_of(model, k) == *flipped) first_sign = -first_sign;
        accumulate(map, (u * lam) * first_sign, TensorPoly::elementary({}, {x}));
        accumulate(map, lam * s, TensorPoly::elementary({x}, {}));
    }
    return map;
}

DerivMap compact_dF2(const Model& model, std::optional<Family> flipped) {
    const std::size_t d = model.size();
    const ExactMatrix u = antipode_unitary(model);
    DerivMap map(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const Letter x = model.letters[k];
        const ExactMatrix lam = left_mult(model, model.basis[k]);
        ExactMatrix first = u * lam * u;
        if (flipped && family_of(model, k) == *flipped) first = -first;
        accumulate(map, first, TensorPoly::elementary({}, {x}));
        accumulate(map, lam * u, TensorPoly::elementary({x}, {}));
    }
    return map;
}

DerivMap compact_dF1(int n, std::optional<Family> flipped) { return compact_dF1(symplectic_model(n), flipped); }
DerivMap compact_dF2(int n, std::optional<Family> flipped) { return compact_dF2(symplectic_model(n), flipped); }

DerivMap derived_dF1(const Model& model) {
    const auto coords = coordinates(model, build_relations(model).f1);
    return ncalg::derivative_matrix(coords, model.letters);
}

DerivMap derived_dF2(const Model& model) {
    const auto coords = coordinates(model, build_relations(model).f2);
    return ncalg::derivative_matrix(coords, model.letters);
}

MapComparison compare_maps(const Model& model, const std::string& relation, const DerivMap& expected,
                           const DerivMap& actual) {
    if (expected.output_dim() != actual.output_dim() || expected.input_dim() != actual.input_dim())
        throw std::invalid_argument("compare_maps: shape mismatch");
    MapComparison cmp;
    const auto namer = model.dictionary.namer();
    for (std::size_t j = 0; j < expected.output_dim(); ++j)
        for (std::size_t i = 0; i < expected.input_dim(); ++i) {
            ++cmp.entries_compared;
            const TensorPoly diff = expected(j, i) - actual(j, i);
            if (diff.is_zero()) continue;
            cmp.match = false;
            ++cmp.mismatched_entries;
            cmp.max_discrepancy_terms = std::max(cmp.max_discrepancy_terms, diff.size());
            if (!cmp.witness)
                cmp.witness = Witness{relation, model.basis_name(j), model.letter_name(i), expected(j, i).str(namer),
                                      actual(j, i).str(namer)};
        }
    return cmp;
}

FormulaReport verify_derivative_formulas(const Model& model, std::optional<Family> flipped_f1,
                                      std::optional<Family> flipped_f2) {
    FormulaReport rep;
    rep.n = model.n;
    rep.f1 = compare_maps(model, "F1", derived_dF1(model), compact_dF1(model, flipped_f1));
    rep.f2 = compare_maps(model, "F2", derived_dF2(model), compact_dF2(model, flipped_f2));
    rep.match = rep.f1.match && rep.f2.match;
    rep.max_discrepancy_terms = std::max(rep.f1.max_discrepancy_terms, rep.f2.max_discrepancy_terms);
    rep.witness = rep.f1.witness ? rep.f1.witness : rep.f2.witness;
    return rep;
}

FormulaReport verify_derivative_formulas(int n) {
    if (n < 1) throw std::invalid_argument("verify_derivative_formulas: N must be >= 1");
    return verify_derivative_formulas(symplectic_model(n));
}

// Theta rewrites -------------------------------------------------------------------

ThetaTable theta_rewrite_table() {
    const SmallOps ops(1);
    const ExactMatrix& g = ops.gamma();
    ThetaTable table;
    table.ok = true;
    for (Family alpha : kFamilies)
        for (Family beta : kFamilies) {
            ThetaRewrite row{alpha, beta, Family::a, 0, 0, false};
            const ExactMatrix target = ops.theta(alpha, beta);
            for (Family gamma : kFamilies) {
                const ExactMatrix plain = ops.lambda(gamma) * g * ops.projection(beta);
                const int s = plain == target ? 1 : (plain == -target ? -1 : 0);
                if (s == 0) continue;
                row.gamma = gamma;
                row.sign_lambda = s;
                const ExactMatrix conj = g * ops.lambda(gamma) * g * ops.projection(beta);
                row.sign_conj = conj == target ? 1 : (conj == -target ? -1 : 0);
                row.ok = row.sign_conj != 0;
                break;
            }
            table.ok = table.ok && row.ok;
            table.rows.push_back(row);
        }
    return table;
}

bool theta_rewrite_check() { return theta_rewrite_table().ok; }

// Printed intermediate forms of d(F2_alpha tau_alpha) ------------------------------

namespace {

enum class Leg { left, right };  // left: (x (x) 1) with lambda_kl T; right: (1 (x) x) with T lambda_ij T

struct PrintedTerm {
    int sign;
    Leg leg;
    Family coeff;
    ExactMatrix m2;
};

using Printed = std::vector<PrintedTerm>;

constexpr Family A = Family::a, B = Family::b, C = Family::c, D = Family::d;

struct FormBuilder {
    const SmallOps& ops;
    PrintedTerm theta(int s, Leg leg, Family coeff, Family x, Family y) const { return {s, leg, coeff, ops.theta(x, y)}; }
    // sign * lambda_gamma Gamma P_beta, or sign * Gamma lambda_gamma Gamma P_beta when conj.
    PrintedTerm lam(int s, Leg leg, Family coeff, bool conj, Family gamma, Family beta) const {
        ExactMatrix m = ops.lambda(gamma) * ops.gamma() * ops.projection(beta);
        if (conj) m = ops.gamma() * m;
        return {s, leg, coeff, m};
    }
};

constexpr Leg L = Leg::left, R = Leg::right;

std::array<Printed, 4> theta_forms(const FormBuilder& f) {
    std::array<Printed, 4> out;
    for (Family x : kFamilies) {
        out[0].push_back(f.theta(+1, R, x, A, x));
        out[0].push_back(f.theta(+1, L, x, A, x));
    }
    out[1] = {f.theta(+1, R, B, B, A), f.theta(-1, L, B, B, A), f.theta(-1, R, A, B, B), f.theta(+1, L, A, B, B),
              f.theta(-1, R, D, B, C), f.theta(+1, L, D, B, C), f.theta(+1, R, C, B, D), f.theta(-1, L, C, B, D)};
    out[2] = {f.theta(+1, R, C, C, A), f.theta(-1, L, C, C, A), f.theta(+1, R, D, C, B), f.theta(-1, L, D, C, B),
              f.theta(-1, R, A, C, C), f.theta(+1, L, A, C, C), f.theta(-1, R, B, C, D), f.theta(+1, L, B, C, D)};
    out[3] = {f.theta(+1, R, D, D, A), f.theta(-1, L, D, D, A), f.theta(-1, R, C, D, B), f.theta(+1, L, C, D, B),
              f.theta(+1, R, B, D, C), f.theta(-1, L, B, D, C), f.theta(-1, R, A, D, D), f.theta(+1, L, A, D, D)};
    return out;
}

std::array<Printed, 4> lambda_forms(const FormBuilder& f) {
    std::array<Printed, 4> out;
    for (Family x : kFamilies) {
        out[0].push_back(f.lam(+1, R, x, true, x, x));
        out[0].push_back(f.lam(+1, L, x, false, x, x));
    }
    out[1] = {f.lam(-1, R, B, true, B, A), f.lam(-1, L, B, false, B, A), f.lam(-1, R, A, true, A, B),
              f.lam(-1, L, A, false, A, B), f.lam(-1, R, D, true, C, D), f.lam(-1, L, D, false, D, C),
              f.lam(-1, R, C, true, D, C), f.lam(-1, L, C, false, C, D)};
    out[2] = {f.lam(-1, R, C, true, C, A), f.lam(-1, L, C, false, C, A), f.lam(-1, R, D, true, D, B),
              f.lam(-1, L, D, false, D, B), f.lam(-1, R, A, true, A, C), f.lam(-1, L, A, false, A, C),
              f.lam(-1, R, B, true, B, D), f.lam(-1, L, B, false, B, D)};
    out[3] = {f.lam(-1, R, D, true, D, A), f.lam(-1, L, D, false, D, A), f.lam(-1, R, C, true, C, B),
              f.lam(-1, L, C, false, C, B), f.lam(-1, R, B, true, B, C), f.lam(-1, L, B, false, B, C),
              f.lam(-1, R, A, true, A, D), f.lam(-1, L, A, false, A, D)};
    return out;
}

// Block b with the right-leg operators of its third and fourth lines
// exchanged: 1 (x) d_ij pairs with Gamma lambda_d Gamma P_c, and 1 (x) c_ij
// with Gamma lambda_c Gamma P_d.
std::array<Printed, 4> lambda_forms_swapped(const FormBuilder& f) {
    auto out = lambda_forms(f);
    out[1][4] = f.lam(-1, R, D, true, D, C);
    out[1][6] = f.lam(-1, R, C, true, C, D);
    return out;
}

DerivMap assemble(const Model& model, const Model& mn, const Printed& terms) {
    const std::size_t d = model.size();
    const int n = model.n;
    const ExactMatrix t = antipode_unitary(mn);
    DerivMap map(d, d);
    for (const auto& term : terms)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const ExactMatrix lam = left_mult(mn, matrix_unit(n, i, j));
                const ExactMatrix leg_op = term.leg == Leg::right ? t * lam * t : lam * t;
                const Letter x = model.dictionary.letter(term.coeff, i, j);
                const TensorPoly coeff =
                    term.leg == Leg::right ? TensorPoly::elementary({}, {x}) : TensorPoly::elementary({x}, {});
                accumulate(map, kron(term.m2, leg_op) * GaussRational(term.sign), coeff);
            }
    return map;
}

}  // namespace

std::vector<BlockCheck> block_transcription_report(int n) {
    const Model model = symplectic_model(n);
    const Model mn = orthogonal_model(n);
    const SmallOps ops(1);
    const FormBuilder builder{ops};
    const RelationVector rel = build_relations(n);
    const auto thetas = theta_forms(builder);
    const auto lambdas = lambda_forms(builder);
    const auto swapped = lambda_forms_swapped(builder);

    std::vector<BlockCheck> out;
    for (Family f : kFamilies) {
        const int fi = static_cast<int>(f);
        const auto coords = coordinates(model, tau_kron(tau_basis()[f], rel.f2_parts[fi]));
        const DerivMap expected = ncalg::derivative_matrix(coords, model.letters);
        const std::string name = std::string("d(F2_") + ncalg::family_char(f) + " tau)";
        out.push_back({f, "theta", compare_maps(model, name, expected, assemble(model, mn, thetas[fi]))});
        out.push_back({f, "lambda-gamma-p", compare_maps(model, name, expected, assemble(model, mn, lambdas[fi]))});
        out.push_back(
            {f, "lambda-gamma-p-swapped", compare_maps(model, name, expected, assemble(model, mn, swapped[fi]))});
    }
    return out;
}

}  // namespace qfree::pauli
