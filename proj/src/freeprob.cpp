#include "qfree/freeprob.hpp"

#include "qfree/kernels.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qfree::freeprob {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_mass(double total) {
    if (std::abs(total - 1.0) > SpectralMeasure::kMassTolerance)
        throw std::invalid_argument("SpectralMeasure: total mass " + std::to_string(total) + " is not 1");
}

// s log s - s, the antiderivative of log s, continuous at 0.
double log_antiderivative(double s) { return s == 0.0 ? 0.0 : s * std::log(s) - s; }

}  // namespace

SpectralMeasure SpectralMeasure::atomic(std::vector<Atom> atoms) {
    if (atoms.empty()) throw std::invalid_argument("SpectralMeasure: no atoms");
    std::vector<double> weights;
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location)) throw std::invalid_argument("SpectralMeasure: non-finite atom location");
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw std::invalid_argument("SpectralMeasure: atom weights must be positive");
        weights.push_back(a.weight);
    }
    check_mass(kernels::pairwise_sum(weights));
    SpectralMeasure mu;
    mu.atomic_ = true;
    mu.atoms_ = std::move(atoms);
    return mu;
}

SpectralMeasure SpectralMeasure::density(double lo, double hi, std::vector<double> values) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("SpectralMeasure: density needs finite lo < hi");
    if (values.empty()) throw std::invalid_argument("SpectralMeasure: density has no cells");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("SpectralMeasure: density values must be >= 0");
    const double h = (hi - lo) / static_cast<double>(values.size());
    check_mass(kernels::pairwise_sum(values) * h);
    SpectralMeasure mu;
    mu.atomic_ = false;
    mu.lo_ = lo;
    mu.hi_ = hi;
    mu.values_ = std::move(values);
    return mu;
}

SpectralMeasure SpectralMeasure::from_pdf(const std::function<double(double)>& f, double lo, double hi,
                                          std::size_t cells, std::size_t sub) {
    if (cells == 0 || sub == 0) throw std::invalid_argument("from_pdf: need at least one cell and sample");
    const double h = (hi - lo) / static_cast<double>(cells);
    std::vector<double> v(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < sub; ++k)
            s += f(lo + (static_cast<double>(i) + (static_cast<double>(k) + 0.5) / static_cast<double>(sub)) * h);
        v[i] = s / static_cast<double>(sub);
    }
    const double total = kernels::pairwise_sum(v) * h;
    if (!(total > 0.0)) throw std::invalid_argument("from_pdf: density has no mass");
    for (double& x : v) x /= total;
    return density(lo, hi, std::move(v));
}

SpectralMeasure SpectralMeasure::from_cdf(const std::function<double(double)>& cdf, double lo, double hi,
                                          std::size_t cells) {
    if (cells == 0) throw std::invalid_argument("from_cdf: need at least one cell");
    const double h = (hi - lo) / static_cast<double>(cells);
    const double total = cdf(hi) - cdf(lo);
    if (!(total > 0.0)) throw std::invalid_argument("from_cdf: distribution has no mass on [lo, hi]");
    std::vector<double> v(cells);
    double prev = cdf(lo);
    for (std::size_t i = 0; i < cells; ++i) {
        const double next = i + 1 == cells ? cdf(hi) : cdf(lo + static_cast<double>(i + 1) * h);
        v[i] = (next - prev) / (total * h);
        prev = next;
    }
    return density(lo, hi, std::move(v));
}

SpectralMeasure SpectralMeasure::semicircle(double variance, double center, std::size_t cells) {
    if (!(variance > 0.0)) throw std::invalid_argument("semicircle: variance must be positive");
    const double r = 2.0 * std::sqrt(variance);
    auto cdf = [=](double x) {
        const double u = std::clamp((x - center) / r, -1.0, 1.0);
        return 0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / boost::math::constants::pi<double>();
    };
    return from_cdf(cdf, center - r, center + r, cells);
}

SpectralMeasure SpectralMeasure::uniform(double lo, double hi, std::size_t cells) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: need lo < hi");
    return density(lo, hi, std::vector<double>(cells, 1.0 / (hi - lo)));
}

double SpectralMeasure::mean() const {
    std::vector<double> t;
    if (atomic_) {
        for (const auto& a : atoms_) t.push_back(a.weight * a.location);
    } else {
        const double h = cell_width();
        for (std::size_t i = 0; i < values_.size(); ++i)
            t.push_back(values_[i] * h * (lo_ + (static_cast<double>(i) + 0.5) * h));
    }
    return kernels::pairwise_sum(t);
}

double SpectralMeasure::variance() const {
    const double m = mean();
    std::vector<double> t;
    if (atomic_) {
        for (const auto& a : atoms_) t.push_back(a.weight * (a.location - m) * (a.location - m));
    } else {
        // Exact for a piecewise-constant density: each cell adds h^2 / 12.
        const double h = cell_width();
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double x = lo_ + (static_cast<double>(i) + 0.5) * h - m;
            t.push_back(values_[i] * h * (x * x + h * h / 12.0));
        }
    }
    return kernels::pairwise_sum(t);
}

// Parsing ---------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& field, std::size_t line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || ptr != last || field.empty())
        throw std::runtime_error("line " + std::to_string(line) + ": cannot parse number '" + field + "'");
    return v;
}

}  // namespace

SpectralMeasure parse_measure(std::istream& in) {
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false, is_density = false;
    double lo = 0.0, hi = 0.0;
    std::vector<double> values;
    std::vector<Atom> atoms;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string rec = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (rec.empty()) continue;
        const auto fields = split(rec);
        if (!header_seen) {
            header_seen = true;
            if (fields[0] == "density") {
                if (fields.size() != 3)
                    throw std::runtime_error("line " + std::to_string(line) + ": expected 'density,LO,HI'");
                is_density = true;
                lo = parse_double(fields[1], line);
                hi = parse_double(fields[2], line);
                continue;
            }
        }
        if (is_density) {
            if (fields.size() != 1)
                throw std::runtime_error("line " + std::to_string(line) + ": expected one density value");
            values.push_back(parse_double(fields[0], line));
        } else {
            if (fields.size() != 2)
                throw std::runtime_error("line " + std::to_string(line) + ": expected 'location,weight'");
            atoms.push_back({parse_double(fields[0], line), parse_double(fields[1], line)});
        }
    }
    try {
        if (is_density) return SpectralMeasure::density(lo, hi, std::move(values));
        return SpectralMeasure::atomic(std::move(atoms));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

SpectralMeasure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open measure file " + path);
    return parse_measure(in);
}

// Functionals ---------------------------------------------------------------------

double log_energy(const SpectralMeasure& mu, Exec exec) {
    if (mu.is_atomic()) return -kInf;
    return kernels::log_energy_cells(mu.cell_width(), mu.values(), exec);
}

double chi_single(const SpectralMeasure& mu, Exec exec) {
    const double e = log_energy(mu, exec);
    if (e == -kInf) return -kInf;
    return e + 0.75 + 0.5 * std::log(2.0 * boost::math::constants::pi<double>());
}

double gaussian_bound(double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("gaussian_bound: variance must be positive");
    return 0.5 * std::log(2.0 * boost::math::constants::pi<double>() * boost::math::constants::e<double>() * variance);
}

namespace {

void check_nonnegative_support(const SpectralMeasure& mu) {
    if (mu.is_atomic()) {
        for (const auto& a : mu.atoms())
            if (a.location < 0.0) throw std::invalid_argument("measure of |x| has an atom at a negative location");
    } else if (mu.lo() < 0.0) {
        throw std::invalid_argument("measure of |x| has support below 0");
    }
}

}  // namespace

double truncated_log_integral(const SpectralMeasure& mu, double eps) {
    check_nonnegative_support(mu);
    std::vector<double> t;
    if (mu.is_atomic()) {
        for (const auto& a : mu.atoms())
            if (a.location > eps) t.push_back(a.weight * std::log(a.location));
        return kernels::pairwise_sum(t);
    }
    const double h = mu.cell_width();
    for (std::size_t i = 0; i < mu.values().size(); ++i) {
        const double b = mu.lo() + static_cast<double>(i + 1) * h;
        const double a = std::max(mu.lo() + static_cast<double>(i) * h, eps);
        if (b <= a || mu.values()[i] == 0.0) continue;
        t.push_back(mu.values()[i] * (log_antiderivative(b) - log_antiderivative(a)));
    }
    return kernels::pairwise_sum(t);
}

std::vector<double> default_cutoffs(const SpectralMeasure& mu) {
    std::vector<double> out;
    if (mu.is_atomic()) {
        double top = 1.0;
        for (const auto& a : mu.atoms()) top = std::max(top, a.location);
        for (int k = 0; k <= 60; ++k) out.push_back(std::ldexp(top, -k));
        return out;
    }
    const double h = mu.cell_width();
    for (double eps = std::max(mu.hi(), h); eps >= h; eps /= 2.0) out.push_back(eps);
    if (out.size() < 2) out.push_back(out.back() / 2.0);
    return out;
}

DeterminantClassReport is_determinant_class(const SpectralMeasure& mu, const std::vector<double>& cutoffs, double tol) {
    check_nonnegative_support(mu);
    if (cutoffs.size() < 2) throw std::invalid_argument("is_determinant_class: need at least two cutoffs");
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (!(cutoffs[k] > 0.0)) throw std::invalid_argument("is_determinant_class: cutoffs must be positive");
        if (k && !(cutoffs[k] < cutoffs[k - 1]))
            throw std::invalid_argument("is_determinant_class: cutoffs must decrease strictly");
    }
    DeterminantClassReport rep;
    rep.cutoffs = cutoffs;
    rep.tolerance = tol;
    for (double eps : cutoffs) rep.truncated.push_back(truncated_log_integral(mu, eps));
    const std::size_t n = rep.truncated.size();
    rep.last_increment = std::abs(rep.truncated[n - 1] - rep.truncated[n - 2]);
    rep.determinant_class = rep.last_increment <= tol;
    return rep;
}

DeterminantClassReport is_determinant_class(const SpectralMeasure& mu) {
    return is_determinant_class(mu, default_cutoffs(mu));
}

double fkl_det(const SpectralMeasure& mu) {
    check_nonnegative_support(mu);
    if (!mu.is_atomic() && !is_determinant_class(mu).determinant_class) return 0.0;
    return std::exp(truncated_log_integral(mu, 0.0));
}

D2Report d2_perturbation(const std::vector<double>& coeffs, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("d2_perturbation: eps must be >= 0");
    const std::size_t m = coeffs.size();
    std::vector<std::vector<mpq_class>> cov(m, std::vector<mpq_class>(m, mpq_class(0)));
    for (std::size_t i = 0; i < m; ++i) cov[i][i] = 1;
    std::vector<mpq_class> c;
    mpq_class l1 = 0;
    for (double x : coeffs) {
        if (!std::isfinite(x)) throw std::invalid_argument("d2_perturbation: coefficients must be finite");
        c.emplace_back(x);
        l1 += abs(c.back());
    }
    D2Report rep;
    rep.norm_squared = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const mpq_class tau = wick_moment<mpq_class>({static_cast<int>(i), static_cast<int>(j)}, cov);
            rep.norm_squared += c[i] * c[j] * tau;
        }
    rep.exact = eps * std::sqrt(rep.norm_squared.get_d());
    rep.bound = eps * l1.get_d();
    rep.ok = rep.norm_squared <= l1 * l1;
    return rep;
}

}  // namespace qfree::freeprob
