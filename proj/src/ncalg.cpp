#include "qfree/ncalg.hpp"

#include "qfree/kernels.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qfree::ncalg {

std::string default_name(Letter l) { return "x" + std::to_string(l); }

char family_char(Family f) { return static_cast<char>('a' + static_cast<int>(f)); }

std::string Generator::name() const {
    return std::string(1, family_char(family)) + std::to_string(row) + std::to_string(col);
}

GeneratorSet::GeneratorSet(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("GeneratorSet: N must be >= 1");
}

Letter GeneratorSet::letter(const Generator& g) const {
    if (g.row < 1 || g.row > n_ || g.col < 1 || g.col > n_)
        throw std::out_of_range("generator index out of range: " + g.name());
    return static_cast<Letter>(static_cast<int>(g.family) * n_ * n_ + (g.row - 1) * n_ + (g.col - 1));
}

Generator GeneratorSet::generator(Letter l) const {
    if (l >= size()) throw std::out_of_range("letter out of range");
    const int nn = n_ * n_;
    const int li = static_cast<int>(l);
    return Generator{static_cast<Family>(li / nn), (li % nn) / n_ + 1, li % n_ + 1};
}

std::vector<Letter> GeneratorSet::all() const {
    std::vector<Letter> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<Letter>(k);
    return out;
}

std::vector<Letter> GeneratorSet::family(Family f) const {
    std::vector<Letter> out;
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) out.push_back(letter(f, i, j));
    return out;
}

Namer GeneratorSet::namer() const {
    return [set = *this](Letter l) {
        if (l < set.size()) return set.generator(l).name();
        return default_name(l);
    };
}

// NcPoly --------------------------------------------------------------------

NcPoly NcPoly::constant(const GaussRational& c) { return monomial({}, c); }

NcPoly NcPoly::letter(Letter l, const GaussRational& c) { return monomial({l}, c); }

NcPoly NcPoly::monomial(Word w, const GaussRational& c) {
    NcPoly p;
    p.add_term(w, c);
    return p;
}

GaussRational NcPoly::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? GaussRational() : it->second;
}

std::size_t NcPoly::degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
}

void NcPoly::add_term(const Word& w, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NcPoly& NcPoly::operator*=(const GaussRational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
}

NcPoly NcPoly::operator-() const { return *this * GaussRational(-1); }

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    NcPoly out;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w;
            w.reserve(wa.size() + wb.size());
            w.insert(w.end(), wa.begin(), wa.end());
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    return out;
}

namespace {

std::string word_str(const Word& w, const Namer& namer) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += namer(w[k]);
    }
    return s;
}

}  // namespace

std::string NcPoly::str(const Namer& namer) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*" << word_str(w, namer);
    }
    return os.str();
}

NcPoly star(const NcPoly& p) {
    NcPoly out;
    for (const auto& [w, c] : p.terms()) out.add_term(Word(w.rbegin(), w.rend()), c.conj());
    return out;
}

// TensorPoly ----------------------------------------------------------------

TensorPoly TensorPoly::elementary(Word left, Word right, const GaussRational& c) {
    TensorPoly t;
    t.add_term(left, right, c);
    return t;
}

TensorPoly TensorPoly::tensor(const NcPoly& p, const NcPoly& q) {
    TensorPoly t;
    for (const auto& [wp, cp] : p.terms())
        for (const auto& [wq, cq] : q.terms()) t.add_term(wp, wq, cp * cq);
    return t;
}

GaussRational TensorPoly::coefficient(const Word& left, const Word& right) const {
    auto it = terms_.find(Key{left, right});
    return it == terms_.end() ? GaussRational() : it->second;
}

void TensorPoly::add_term(const Word& left, const Word& right, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

TensorPoly& TensorPoly::operator*=(const GaussRational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

TensorPoly TensorPoly::operator-() const { return *this * GaussRational(-1); }

std::string TensorPoly::str(const Namer& namer) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*(" << word_str(k.first, namer) << " (x) " << word_str(k.second, namer) << ")";
    }
    return os.str();
}

TensorPoly bimodule(const NcPoly& p1, const TensorPoly& t, const NcPoly& p4) {
    TensorPoly out;
    for (const auto& [w1, c1] : p1.terms())
        for (const auto& [k, c] : t.terms())
            for (const auto& [w4, c4] : p4.terms()) {
                Word left = w1;
                left.insert(left.end(), k.first.begin(), k.first.end());
                Word right = k.second;
                right.insert(right.end(), w4.begin(), w4.end());
                out.add_term(left, right, c1 * c * c4);
            }
    return out;
}

TensorPoly flip_star(const TensorPoly& t) {
    TensorPoly out;
    for (const auto& [k, c] : t.terms())
        out.add_term(Word(k.second.rbegin(), k.second.rend()), Word(k.first.rbegin(), k.first.rend()), c.conj());
    return out;
}

TensorPoly free_derive(const NcPoly& p, Letter g) {
    TensorPoly out;
    for (const auto& [w, c] : p.terms())
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
            if (w[pos] != g) continue;
            out.add_term(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos)),
                         Word(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end()), c);
        }
    return out;
}

DerivMap derivative_matrix(std::span<const NcPoly> relations, std::span<const Letter> gens) {
    std::set<Letter> seen;
    for (Letter g : gens)
        if (!seen.insert(g).second) throw std::invalid_argument("derivative_matrix: duplicate generator " + default_name(g));
    return kernels::derivative_matrix(relations, gens, Exec::omp);
}

std::complex<double> evaluate_scalar(const NcPoly& p, std::span<const double> values) {
    std::complex<double> acc{};
    for (const auto& [w, c] : p.terms()) {
        double v = 1.0;
        for (Letter l : w) v *= values[l];
        acc += c.to_complex() * v;
    }
    return acc;
}

std::complex<double> evaluate_scalar(const TensorPoly& t, std::span<const double> values) {
    std::complex<double> acc{};
    for (const auto& [k, c] : t.terms()) {
        double v = 1.0;
        for (Letter l : k.first) v *= values[l];
        for (Letter l : k.second) v *= values[l];
        acc += c.to_complex() * v;
    }
    return acc;
}

}  // namespace qfree::ncalg
