#include "qfree/fusion.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace qfree::fusion {

FusionVector FusionVector::delta(int n) {
    FusionVector v;
    v.add(n, 1);
    return v;
}

std::uint64_t FusionVector::operator[](int n) const {
    auto it = mults_.find(n);
    return it == mults_.end() ? 0 : it->second;
}

void FusionVector::add(int n, std::uint64_t m) {
    if (n < 0) throw std::invalid_argument("FusionVector: negative label");
    if (m == 0) return;
    std::uint64_t& slot = mults_[n];
    if (__builtin_add_overflow(slot, m, &slot)) throw std::overflow_error("FusionVector: multiplicity overflow");
}

FusionVector fuse_with_fundamental(const FusionVector& v) {
    FusionVector out;
    for (const auto& [n, m] : v.mults()) {
        if (n > 0) out.add(n - 1, m);
        out.add(n + 1, m);
    }
    return out;
}

std::uint64_t char_moment(int k) {
    if (k < 0) throw std::invalid_argument("char_moment: k must be >= 0");
    FusionVector v = FusionVector::delta(0);
    for (int step = 0; step < k; ++step) v = fuse_with_fundamental(v);
    return v[0];
}

double qdim(int n, double base) {
    if (n < 0) throw std::invalid_argument("qdim: n must be >= 0");
    if (!(base >= 2.0)) throw std::invalid_argument("qdim: base must be >= 2");
    double prev = 1.0, cur = base;
    if (n == 0) return prev;
    for (int k = 1; k < n; ++k) {
        const double next = base * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double semicircle_moment(int k) {
    if (k < 0) throw std::invalid_argument("semicircle_moment: k must be >= 0");
    using boost::math::constants::half_pi;
    using boost::math::constants::pi;
    // t = 2 sin(theta) removes the square-root endpoint behaviour.
    auto f = [k](double theta) {
        const double c = std::cos(theta);
        return std::pow(2.0 * std::sin(theta), k) * 4.0 * c * c / (2.0 * pi<double>());
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -half_pi<double>(), half_pi<double>(), 15,
                                                                        1e-14, &err);
}

}  // namespace qfree::fusion
