#include "qfree/repeval.hpp"

#include <gtest/gtest.h>

using namespace qfree;
using namespace qfree::repeval;

namespace {

// Jacobian of the scalar relation coordinates by central differences.
Matrix finite_difference_jacobian(const std::vector<ncalg::NcPoly>& rel, const std::vector<ncalg::Letter>& letters,
                                  std::vector<double> x, double h = 1e-6) {
    const auto d = static_cast<Eigen::Index>(rel.size());
    Matrix jac(d, static_cast<Eigen::Index>(letters.size()));
    for (std::size_t i = 0; i < letters.size(); ++i) {
        double& xi = x[letters[i]];
        const double x0 = xi;
        xi = x0 + h;
        std::vector<std::complex<double>> plus(rel.size());
        for (std::size_t j = 0; j < rel.size(); ++j) plus[j] = ncalg::evaluate_scalar(rel[j], x);
        xi = x0 - h;
        for (std::size_t j = 0; j < rel.size(); ++j)
            jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                (plus[j] - ncalg::evaluate_scalar(rel[j], x)) / (2 * h);
        xi = x0;
    }
    return jac;
}

}  // namespace

TEST(ClassicalPoint, SymplecticSampleIsUnitaryAndSymplectic) {
    for (int n = 1; n <= 3; ++n) {
        const ClassicalPoint p = sample_point(n, Kind::symplectic, 7);
        EXPECT_EQ(p.g.rows(), 2 * n);
        EXPECT_LT(unitarity_residual(p.g), 1e-13);
        EXPECT_LT(symplectic_residual(p.g), 1e-13);
        EXPECT_LT(linalg::max_abs(reconstruct(p) - p.g), 1e-13);
    }
}

TEST(ClassicalPoint, OrthogonalSampleIsRealOrthogonal) {
    const ClassicalPoint p = sample_point(4, Kind::orthogonal, 8);
    EXPECT_LT(unitarity_residual(p.g), 1e-13);
    EXPECT_LT(p.g.imag().cwiseAbs().maxCoeff(), 1e-300);
    EXPECT_LT(linalg::max_abs(reconstruct(p) - p.g), 1e-15);
}

TEST(ClassicalPoint, SamplingIsDeterministic) {
    const ClassicalPoint a = sample_point(2, Kind::symplectic, 99), b = sample_point(2, Kind::symplectic, 99);
    const ClassicalPoint c = sample_point(2, Kind::symplectic, 100);
    EXPECT_EQ(a.gen_values, b.gen_values);
    EXPECT_NE(a.gen_values, c.gen_values);
}

TEST(ClassicalPoint, IdentityGeneratorValues) {
    const ClassicalPoint p = identity_point(2, Kind::symplectic);
    const ncalg::GeneratorSet set(2);
    for (ncalg::Letter l : set.all()) {
        const auto g = set.generator(l);
        EXPECT_DOUBLE_EQ(p.gen_values[l], g.family == ncalg::Family::a && g.row == g.col ? 1.0 : 0.0) << g.name();
    }
}

TEST(ClassicalPoint, SymplecticFormIsAntisymmetric) {
    const Matrix j = symplectic_form(3);
    EXPECT_LT(linalg::max_abs(j.transpose() + j), 1e-300);
    EXPECT_LT(linalg::max_abs(j * j + Matrix::Identity(6, 6)), 1e-300);
}

TEST(ClassicalPoint, RejectsWrongShape) {
    EXPECT_THROW(point_from_matrix(2, Kind::symplectic, Matrix::Identity(3, 3)), std::invalid_argument);
    EXPECT_THROW(sample_point(0, Kind::orthogonal, 0), std::invalid_argument);
}

TEST(Relations, VanishAtSampledPoints) {
    const Evaluator sym(2, Kind::symplectic), orth(3, Kind::orthogonal);
    for (std::uint64_t s = 0; s < 10; ++s) {
        EXPECT_LT(sym.check_relations(sample_point(2, Kind::symplectic, s)), 1e-12);
        EXPECT_LT(orth.check_relations(sample_point(3, Kind::orthogonal, s)), 1e-12);
    }
}

TEST(Relations, NonUnitaryPointIsFlagged) {
    Matrix g = Matrix::Identity(2, 2);
    g(0, 0) = 2.0;
    const ClassicalPoint p = point_from_matrix(2, Kind::orthogonal, g);
    EXPECT_GE(check_relations(p), 1.0);
    const DerivativeOperator op = derivative_at(p);
    EXPECT_TRUE(op.warning.has_value());
    EXPECT_GE(op.relation_residual, 1.0);
}

TEST(Derivative, MatchesFiniteDifferenceJacobian) {
    for (Kind kind : {Kind::symplectic, Kind::orthogonal}) {
        const int n = 2;
        const Evaluator ev(n, kind);
        const ClassicalPoint p = sample_point(n, kind, 5);
        const DerivativeOperator op = ev.derivative_at(p);
        const pauli::RelationVector rel = pauli::build_relations(ev.model());
        const auto& letters = ev.model().letters;
        const Matrix j1 = finite_difference_jacobian(pauli::coordinates(ev.model(), rel.f1), letters, p.gen_values);
        const Matrix j2 = finite_difference_jacobian(pauli::coordinates(ev.model(), rel.f2), letters, p.gen_values);
        ASSERT_EQ(j1.rows(), op.dF1.rows());
        ASSERT_EQ(j1.cols(), op.dF1.cols());
        EXPECT_LT(linalg::max_abs(op.dF1 - j1), 1e-8);
        EXPECT_LT(linalg::max_abs(op.dF2 - j2), 1e-8);
    }
}

TEST(Derivative, TwoPathsAgree) {
    const ClassicalPoint p = sample_point(2, Kind::symplectic, 3);
    const DerivativeOperator op = derivative_at(p);
    EXPECT_LT(op.path_discrepancy, 1e-13);
    EXPECT_LT(linalg::max_abs(op.dF1 - op.dF1_derived), 1e-13);
    EXPECT_LT(linalg::max_abs(op.first1 + op.second1 - op.dF1), 1e-300);
    EXPECT_LT(linalg::max_abs(op.D - op.dF1.adjoint() * op.dF1), 1e-13);
    EXPECT_LT(linalg::max_abs(op.W - op.first1.adjoint() * op.second1), 1e-13);
    EXPECT_FALSE(op.warning.has_value());
}

TEST(Derivative, SummandsAreUnitary) {
    const DerivativeOperator op = derivative_at(sample_point(2, Kind::symplectic, 4));
    EXPECT_LT(op.unitarity_residual, 1e-12);
    const auto d = op.first1.rows();
    EXPECT_LT(linalg::max_abs(op.first1.adjoint() * op.first1 - Matrix::Identity(d, d)), 1e-12);
}

TEST(Identity, HoldsAtSampledPoints) {
    for (Kind kind : {Kind::symplectic, Kind::orthogonal}) {
        const Evaluator ev(2, kind);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const IdentityReport r = ev.verify_identity(sample_point(2, kind, s));
            EXPECT_LT(r.residual, 1e-12);
            EXPECT_LT(r.residual_f2, 1e-12);
            EXPECT_TRUE(r.spectrum_ok);
        }
    }
}

TEST(Identity, KernelAtIdentityIsLieAlgebra) {
    for (int n = 1; n <= 3; ++n) {
        const IdentityReport r = verify_identity(identity_point(n, Kind::symplectic));
        EXPECT_EQ(r.kernel_dim, 2 * n * n + n) << "N=" << n;
        EXPECT_NEAR(r.max_eigenvalue, 4.0, 1e-12);
    }
    for (int m = 1; m <= 4; ++m) {
        const IdentityReport r = verify_identity(identity_point(m, Kind::orthogonal));
        EXPECT_EQ(r.kernel_dim, m * (m - 1) / 2) << "M=" << m;
    }
}

TEST(Identity, KernelDimensionIsConstantOnTheGroup) {
    const Evaluator ev(2, Kind::symplectic);
    for (std::uint64_t s = 0; s < 5; ++s) EXPECT_EQ(ev.verify_identity(sample_point(2, Kind::symplectic, s)).kernel_dim, 10);
}

TEST(Evaluator, RejectsForeignPoint) {
    const Evaluator ev(2, Kind::symplectic);
    EXPECT_THROW(ev.check_relations(sample_point(3, Kind::symplectic, 0)), std::invalid_argument);
    EXPECT_THROW(ev.derivative_at(sample_point(4, Kind::orthogonal, 0)), std::invalid_argument);
}

TEST(SpectralSummary, NonzeroGeometricMean) {
    Matrix d = Matrix::Zero(4, 4);
    d(2, 2) = 1.0;
    d(3, 3) = 4.0;
    const SpectralSummary s = spectral_summary(d);
    EXPECT_EQ(s.kernel_dim, 2);
    EXPECT_NEAR(s.fkl_nonzero, std::sqrt(2.0), 1e-15);
    EXPECT_LT(s.reconstruction_error, 1e-15);
}

TEST(SpectralSummary, ReconstructsDAtSampledPoints) {
    for (Kind kind : {Kind::symplectic, Kind::orthogonal}) {
        const Evaluator ev(kind == Kind::symplectic ? 3 : 5, kind);
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto op = ev.derivative_at(sample_point(ev.model().n, kind, s));
            EXPECT_LT(spectral_summary(op.D).reconstruction_error, 1e-11);
        }
    }
}

TEST(SpectralSummary, RejectsNonHermitian) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 1) = 1.0;
    EXPECT_THROW(spectral_summary(d), std::invalid_argument);
}

TEST(Batch, SerialAndParallelAgree) {
    const BatchReport a = verify_batch(2, Kind::symplectic, 8, 17, 1e-8, 1e-10, Exec::serial);
    const BatchReport b = verify_batch(2, Kind::symplectic, 8, 17, 1e-8, 1e-10, Exec::omp);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].seed, 17 + i);
        EXPECT_EQ(a.points[i].report.residual, b.points[i].report.residual);
        EXPECT_EQ(a.points[i].report.min_eigenvalue, b.points[i].report.min_eigenvalue);
    }
    EXPECT_EQ(a.max_residual, b.max_residual);
}

TEST(Batch, PointIMatchesSingleEvaluation) {
    const BatchReport b = verify_batch(1, Kind::symplectic, 3, 40);
    const IdentityReport r = verify_identity(sample_point(1, Kind::symplectic, 42));
    EXPECT_EQ(b.points[2].report.residual, r.residual);
    EXPECT_THROW(verify_batch(1, Kind::symplectic, 0, 0), std::invalid_argument);
}
