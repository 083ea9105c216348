#pragma once

#include "qfree/freeprob.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qfree::test_support {

struct NamedDensity {
    std::string name;
    freeprob::SpectralMeasure mu;
    bool semicircle = false;
};

inline freeprob::SpectralMeasure beta_law(double a, double b, std::size_t cells) {
    return freeprob::SpectralMeasure::from_cdf([=](double x) { return boost::math::ibeta(a, b, std::clamp(x, 0.0, 1.0)); },
                                               0.0, 1.0, cells);
}

/// The standard semicircle followed by nineteen other compactly supported laws.
inline std::vector<NamedDensity> density_suite(std::size_t cells = 2000) {
    using freeprob::SpectralMeasure;
    auto pdf = [cells](auto f, double lo, double hi) { return SpectralMeasure::from_pdf(f, lo, hi, cells); };
    std::vector<NamedDensity> out;
    out.push_back({"semicircle", SpectralMeasure::semicircle(1.0, 0.0, cells), true});
    out.push_back({"uniform", SpectralMeasure::uniform(0.0, 1.0, cells)});
    out.push_back({"triangle", pdf([](double x) { return 1.0 - std::abs(x); }, -1.0, 1.0)});
    out.push_back({"beta(2,5)", beta_law(2, 5, cells)});
    out.push_back({"beta(3,3)", beta_law(3, 3, cells)});
    out.push_back({"arcsine", beta_law(0.5, 0.5, cells)});
    out.push_back({"beta(2,8)", beta_law(2, 8, cells)});
    out.push_back({"cos2", pdf([](double x) { return std::pow(std::cos(M_PI * x / 2), 2); }, -1.0, 1.0)});
    out.push_back({"two-uniform", pdf([](double x) { return std::abs(x) > 0.5 ? 1.0 : 0.0; }, -1.5, 1.5)});
    out.push_back({"gauss[-3,3]", pdf([](double x) { return std::exp(-x * x / 2); }, -3.0, 3.0)});
    out.push_back({"semicircle-pair", pdf(
                                          [](double x) {
                                              const double t = std::abs(x) - 2.0;
                                              return std::sqrt(std::max(0.0, 1.0 - t * t));
                                          },
                                          -3.0, 3.0)});
    out.push_back({"laplace[-4,4]", pdf([](double x) { return std::exp(-std::abs(x)); }, -4.0, 4.0)});
    out.push_back({"ramp", pdf([](double x) { return x; }, 0.0, 1.0)});
    out.push_back({"quartic", pdf([](double x) { return std::pow(1.0 - x * x, 2); }, -1.0, 1.0)});
    out.push_back({"step", pdf([](double x) { return x < 0.0 ? 1.0 : 3.0; }, -1.0, 1.0)});
    out.push_back({"beta(1,3)", beta_law(1, 3, cells)});
    out.push_back({"beta(4,4)", beta_law(4, 4, cells)});
    out.push_back({"exponential[0,5]", pdf([](double x) { return std::exp(-x); }, 0.0, 5.0)});
    out.push_back({"skew-triangle", pdf([](double x) { return x < 0.2 ? x / 0.2 : (1.0 - x) / 0.8; }, 0.0, 1.0)});
    out.push_back({"beta(.7,.7)", beta_law(0.7, 0.7, cells)});
    return out;
}

}  // namespace qfree::test_support
