#include "qfree/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qfree::linalg {

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermitian_defect(const Matrix& a) { return max_abs(a - a.adjoint()); }

namespace {

double off_norm(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Applies A <- J^* A J and V <- V J for the rotation in the (p, q) plane that
// annihilates A(p, q).
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
    const std::complex<double> apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const std::complex<double> phase = apq / mag;
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on coordinates (p, q).
    const std::complex<double> jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        const std::complex<double> akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        const std::complex<double> apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        const std::complex<double> vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

Eigensystem jacobi_eigh(const Matrix& input, double threshold, int max_sweeps) {
    if (input.rows() != input.cols()) throw std::invalid_argument("jacobi_eigh: matrix is not square");
    const double scale = input.norm();
    if (hermitian_defect(input) > 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument("jacobi_eigh: matrix is not Hermitian");

    const Eigen::Index n = input.rows();
    Matrix a = 0.5 * (input + input.adjoint());
    Matrix v = Matrix::Identity(n, n);
    Eigensystem out;
    const double target = threshold * scale;
    while (off_norm(a) > target) {
        if (out.sweeps == max_sweeps) break;
        ++out.sweeps;
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    out.converged = off_norm(a) <= target;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

Matrix expi_hermitian(const Matrix& h) {
    const Eigensystem es = jacobi_eigh(h);
    Eigen::VectorXcd phases(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) phases(k) = std::polar(1.0, es.values(k));
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

}  // namespace qfree::linalg
