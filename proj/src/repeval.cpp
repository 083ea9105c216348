#include "qfree/repeval.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qfree::repeval {

namespace {

Matrix to_numeric(const pauli::ExactMatrix& m) {
    Matrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
    return out;
}

pauli::Model make_model(int n, Kind kind) {
    return kind == Kind::symplectic ? pauli::symplectic_model(n) : pauli::orthogonal_model(n);
}

int matrix_dim(int n, Kind kind) { return kind == Kind::symplectic ? 2 * n : n; }

std::vector<double> project(const pauli::Model& model, const Matrix& g) {
    std::vector<double> values(model.dictionary.size(), 0.0);
    for (std::size_t k = 0; k < model.size(); ++k) {
        std::complex<double> c{};
        for (const auto& e : model.dual[k])
            c += e.weight.to_complex() * g(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col));
        values[model.letters[k]] = c.real();
    }
    return values;
}

std::complex<double> gaussian_complex(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
    const double re = normal(rng);
    const double im = normal(rng);
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

}  // namespace

Matrix symplectic_form(int n) {
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

double unitarity_residual(const Matrix& g) {
    return linalg::max_abs(g.adjoint() * g - Matrix::Identity(g.rows(), g.cols()));
}

double symplectic_residual(const Matrix& g) {
    const Matrix j = symplectic_form(static_cast<int>(g.rows() / 2));
    return linalg::max_abs(j * g.conjugate() * j.inverse() - g);
}

ClassicalPoint point_from_matrix(int n, Kind kind, const Matrix& g, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("point_from_matrix: n must be >= 1");
    const int dim = matrix_dim(n, kind);
    if (g.rows() != dim || g.cols() != dim) throw std::invalid_argument("point_from_matrix: wrong matrix size");
    ClassicalPoint p;
    p.kind = kind;
    p.n = n;
    p.g = g;
    p.seed = seed;
    p.gen_values = project(make_model(n, kind), g);
    return p;
}

ClassicalPoint identity_point(int n, Kind kind) {
    const int dim = matrix_dim(n, kind);
    return point_from_matrix(n, kind, Matrix::Identity(dim, dim));
}

ClassicalPoint sample_point(int n, Kind kind, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_point: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (kind == Kind::symplectic) {
        Matrix p = Matrix::Zero(n, n), q = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            p(i, i) = normal(rng);
            for (int j = i + 1; j < n; ++j) {
                p(i, j) = gaussian_complex(rng, normal);
                p(j, i) = std::conj(p(i, j));
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) q(i, j) = q(j, i) = gaussian_complex(rng, normal);
        Matrix h(2 * n, 2 * n);
        h << p, q, q.adjoint(), -p.conjugate();
        return point_from_matrix(n, kind, linalg::expi_hermitian(h), seed);
    }
    Eigen::MatrixXd x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k)
        if (r(k, k) < 0) q.col(k) *= -1.0;
    return point_from_matrix(n, kind, q.cast<std::complex<double>>(), seed);
}

Matrix reconstruct(const ClassicalPoint& p) {
    const pauli::Model model = make_model(p.n, p.kind);
    Matrix g = Matrix::Zero(model.dim, model.dim);
    for (std::size_t k = 0; k < model.size(); ++k) g += p.gen_values[model.letters[k]] * to_numeric(model.basis[k]);
    return g;
}

// Evaluator -------------------------------------------------------------------

Evaluator::Evaluator(int n, Kind kind) : model_(make_model(n, kind)) {
    const pauli::RelationVector rel = pauli::build_relations(model_);
    f1_ = rel.f1.data();
    f2_ = rel.f2.data();
    df1_ = pauli::derived_dF1(model_);
    df2_ = pauli::derived_dF2(model_);
    u_ = to_numeric(pauli::antipode_unitary(model_));
    for (const auto& b : model_.basis) lambda_.push_back(to_numeric(pauli::left_mult(model_, b)));
}

void Evaluator::check_point(const ClassicalPoint& p) const {
    if (p.kind != model_.kind || p.n != model_.n) throw std::invalid_argument("Evaluator: point belongs to another model");
    if (p.gen_values.size() != model_.dictionary.size())
        throw std::invalid_argument("Evaluator: generator value table has the wrong size");
}

double Evaluator::check_relations(const ClassicalPoint& p) const {
    check_point(p);
    double worst = 0.0;
    for (const auto* rel : {&f1_, &f2_})
        for (const auto& entry : *rel) worst = std::max(worst, std::abs(ncalg::evaluate_scalar(entry, p.gen_values)));
    return worst;
}

DerivativeOperator Evaluator::derivative_at(const ClassicalPoint& p) const {
    check_point(p);
    const auto d = static_cast<Eigen::Index>(model_.size());
    DerivativeOperator op;
    op.first1 = op.second1 = op.first2 = op.second2 = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < model_.size(); ++k) {
        const double x = p.gen_values[model_.letters[k]];
        if (x == 0.0) continue;
        const double s = model_.antipode_sign[k];
        const Matrix& lam_image = lambda_[model_.antipode_index[k]];
        op.first1 += (x * s) * (u_ * lam_image);
        op.second1 += (x * s) * lam_image;
        op.first2 += x * (u_ * lambda_[k] * u_);
        op.second2 += x * (lambda_[k] * u_);
    }
    op.dF1 = op.first1 + op.second1;
    op.dF2 = op.first2 + op.second2;

    op.dF1_derived = op.dF2_derived = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto uj = static_cast<std::size_t>(j), ui = static_cast<std::size_t>(i);
            op.dF1_derived(j, i) = ncalg::evaluate_scalar(df1_(uj, ui), p.gen_values);
            op.dF2_derived(j, i) = ncalg::evaluate_scalar(df2_(uj, ui), p.gen_values);
        }

    op.D = op.dF1.adjoint() * op.dF1;
    op.W = op.first1.adjoint() * op.second1;
    op.D2 = op.dF2.adjoint() * op.dF2;
    op.W2 = op.first2.adjoint() * op.second2;

    op.relation_residual = check_relations(p);
    op.path_discrepancy =
        std::max(linalg::max_abs(op.dF1 - op.dF1_derived), linalg::max_abs(op.dF2 - op.dF2_derived));
    for (const Matrix* m : {&op.first1, &op.second1, &op.first2, &op.second2})
        op.unitarity_residual = std::max(op.unitarity_residual, unitarity_residual(*m));
    if (op.relation_residual > 1e-8)
        op.warning = "relation residual " + std::to_string(op.relation_residual) + " exceeds 1e-8";
    return op;
}

IdentityReport Evaluator::verify_identity(const ClassicalPoint& p, double spectrum_tol, double kernel_tol) const {
    const DerivativeOperator op = derivative_at(p);
    const auto d = op.D.rows();
    const Matrix two = 2.0 * Matrix::Identity(d, d);
    IdentityReport rep;
    rep.residual = linalg::max_abs(op.D - (two + op.W + op.W.adjoint()));
    rep.residual_f2 = linalg::max_abs(op.D2 - (two + op.W2 + op.W2.adjoint()));
    rep.relation_residual = op.relation_residual;
    rep.path_discrepancy = op.path_discrepancy;
    rep.unitarity_residual = op.unitarity_residual;
    const SpectralSummary s = spectral_summary(op.D, kernel_tol);
    rep.min_eigenvalue = s.eigenvalues.front();
    rep.max_eigenvalue = s.eigenvalues.back();
    rep.kernel_dim = s.kernel_dim;
    rep.spectrum_ok = rep.min_eigenvalue >= -spectrum_tol && rep.max_eigenvalue <= 4.0 + spectrum_tol;
    return rep;
}

double check_relations(const ClassicalPoint& p) { return Evaluator(p.n, p.kind).check_relations(p); }
DerivativeOperator derivative_at(const ClassicalPoint& p) { return Evaluator(p.n, p.kind).derivative_at(p); }
IdentityReport verify_identity(const ClassicalPoint& p, double spectrum_tol) {
    return Evaluator(p.n, p.kind).verify_identity(p, spectrum_tol);
}

SpectralSummary spectral_summary(const Matrix& d, double tol) {
    const linalg::Eigensystem es = linalg::jacobi_eigh(d);
    SpectralSummary s;
    s.tol = tol;
    s.eigenvalues.assign(es.values.data(), es.values.data() + es.values.size());
    double log_sum = 0.0;
    for (double l : s.eigenvalues) {
        if (l <= tol)
            ++s.kernel_dim;
        else
            log_sum += std::log(l);
    }
    s.fkl_nonzero = s.eigenvalues.empty() ? 1.0 : std::exp(log_sum / static_cast<double>(s.eigenvalues.size()));
    s.reconstruction_error =
        linalg::max_abs(es.vectors * es.values.cast<std::complex<double>>().asDiagonal() * es.vectors.adjoint() - d);
    return s;
}

BatchReport verify_batch(int n, Kind kind, int samples, std::uint64_t seed, double kernel_tol, double spectrum_tol,
                         Exec exec) {
    if (samples < 1) throw std::invalid_argument("verify_batch: samples must be >= 1");
    const Evaluator ev(n, kind);
    BatchReport out;
    out.n = n;
    out.kind = kind;
    out.points.resize(static_cast<std::size_t>(samples));
    auto run = [&](int i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        out.points[static_cast<std::size_t>(i)] = {s, ev.verify_identity(sample_point(n, kind, s), spectrum_tol, kernel_tol)};
    };
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < samples; ++i) run(i);
    } else {
        for (int i = 0; i < samples; ++i) run(i);
    }
    out.min_eigenvalue = out.points.front().report.min_eigenvalue;
    out.max_eigenvalue = out.points.front().report.max_eigenvalue;
    for (const auto& [s, r] : out.points) {
        out.max_residual = std::max({out.max_residual, r.residual, r.residual_f2});
        out.max_relation_residual = std::max(out.max_relation_residual, r.relation_residual);
        out.max_path_discrepancy = std::max(out.max_path_discrepancy, r.path_discrepancy);
        out.max_unitarity_residual = std::max(out.max_unitarity_residual, r.unitarity_residual);
        out.min_eigenvalue = std::min(out.min_eigenvalue, r.min_eigenvalue);
        out.max_eigenvalue = std::max(out.max_eigenvalue, r.max_eigenvalue);
        out.all_spectrum_ok = out.all_spectrum_ok && r.spectrum_ok;
    }
    return out;
}

}  // namespace qfree::repeval
