#pragma once

// Exact noncommutative *-polynomials over self-adjoint indeterminates, the
// tensor-square bimodule, free partial derivatives and evaluation into
// matrix algebras.

#include "qfree/dense_matrix.hpp"
#include "qfree/gauss_rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfree::ncalg {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using Namer = std::function<std::string(Letter)>;

/// Default naming: x0, x1, ...
std::string default_name(Letter l);

enum class Family : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

char family_char(Family f);

/// Self-adjoint generator alpha_{row,col}, 1-based indices.
struct Generator {
    Family family = Family::a;
    int row = 1;
    int col = 1;

    std::string name() const;
    auto operator<=>(const Generator&) const = default;
};

/// Dense dictionary of the 4N^2 generators a_ij, b_ij, c_ij, d_ij.
/// Letters are ordered family-major, then row, then column, which is also
/// the order of the E_ij^alpha basis of M_2 (x) M_N.
class GeneratorSet {
public:
    explicit GeneratorSet(int n);

    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(4 * n_ * n_); }

    Letter letter(const Generator& g) const;
    Letter letter(Family f, int row, int col) const { return letter(Generator{f, row, col}); }
    Generator generator(Letter l) const;
    std::vector<Letter> all() const;
    /// Letters of a single family, row-major.
    std::vector<Letter> family(Family f) const;

    Namer namer() const;

private:
    int n_;
};

class NcPoly {
public:
    using Terms = std::map<Word, GaussRational>;

    NcPoly() = default;
    explicit NcPoly(const GaussRational& c) { add_term({}, c); }

    static NcPoly constant(const GaussRational& c);
    static NcPoly unit() { return constant(GaussRational(1)); }
    static NcPoly letter(Letter l, const GaussRational& c = GaussRational(1));
    static NcPoly monomial(Word w, const GaussRational& c = GaussRational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /// Coefficient of a word, zero if absent.
    GaussRational coefficient(const Word& w) const;
    std::size_t degree() const;

    void add_term(const Word& w, const GaussRational& c);

    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    NcPoly& operator*=(const GaussRational& s);
    NcPoly operator-() const;

    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(NcPoly a, const GaussRational& s) { return a *= s; }
    friend NcPoly operator*(const GaussRational& s, NcPoly a) { return a *= s; }
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

    std::string str(const Namer& namer = default_name) const;

private:
    Terms terms_;
};

/// Reverses every word and conjugates coefficients.
NcPoly star(const NcPoly& p);

inline bool is_zero(const NcPoly& p) { return p.is_zero(); }
/// Makes DenseMatrix<NcPoly>::adjoint() the star-transpose.
inline NcPoly conj(const NcPoly& p) { return star(p); }

/// Element of C<T> (x) C<T>, in the normal form sum c * (left (x) right).
class TensorPoly {
public:
    using Key = std::pair<Word, Word>;
    using Terms = std::map<Key, GaussRational>;

    TensorPoly() = default;

    static TensorPoly elementary(Word left, Word right, const GaussRational& c = GaussRational(1));
    /// p (x) q, expanded bilinearly.
    static TensorPoly tensor(const NcPoly& p, const NcPoly& q);
    /// 1 (x) 1.
    static TensorPoly unit() { return elementary({}, {}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    GaussRational coefficient(const Word& left, const Word& right) const;

    void add_term(const Word& left, const Word& right, const GaussRational& c);

    TensorPoly& operator+=(const TensorPoly& o);
    TensorPoly& operator-=(const TensorPoly& o);
    TensorPoly& operator*=(const GaussRational& s);
    TensorPoly operator-() const;

    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator*(TensorPoly a, const GaussRational& s) { return a *= s; }
    friend TensorPoly operator*(const GaussRational& s, TensorPoly a) { return a *= s; }
    friend bool operator==(const TensorPoly& a, const TensorPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TensorPoly& a, const TensorPoly& b) { return !(a == b); }

    std::string str(const Namer& namer = default_name) const;

private:
    Terms terms_;
};

/// Bimodule action p1 . (a (x) b) . p4 = (p1 a) (x) (b p4).
TensorPoly bimodule(const NcPoly& p1, const TensorPoly& t, const NcPoly& p4);

/// Swaps the legs and applies star on each one.
TensorPoly flip_star(const TensorPoly& t);

/// Free partial derivative with respect to letter g.
TensorPoly free_derive(const NcPoly& p, Letter g);

/// Table of free derivatives, entry (j, i) = d_{gens[i]} F[j].
class DerivMap {
public:
    DerivMap() = default;
    DerivMap(std::size_t output_dim, std::size_t input_dim)
        : output_dim_(output_dim), input_dim_(input_dim), entries_(output_dim * input_dim) {}

    std::size_t output_dim() const { return output_dim_; }
    std::size_t input_dim() const { return input_dim_; }

    TensorPoly& operator()(std::size_t j, std::size_t i) { return entries_.at(j * input_dim_ + i); }
    const TensorPoly& operator()(std::size_t j, std::size_t i) const { return entries_.at(j * input_dim_ + i); }

    friend bool operator==(const DerivMap& a, const DerivMap& b) {
        return a.output_dim_ == b.output_dim_ && a.input_dim_ == b.input_dim_ && a.entries_ == b.entries_;
    }

private:
    std::size_t output_dim_ = 0;
    std::size_t input_dim_ = 0;
    std::vector<TensorPoly> entries_;
};

/// Throws std::invalid_argument on a duplicate generator.
DerivMap derivative_matrix(std::span<const NcPoly> relations, std::span<const Letter> gens);

namespace detail {
template <class T>
T from_gauss(const GaussRational& c);
template <>
inline GaussRational from_gauss<GaussRational>(const GaussRational& c) {
    return c;
}
template <>
inline std::complex<double> from_gauss<std::complex<double>>(const GaussRational& c) {
    return c.to_complex();
}
}  // namespace detail

/// Assignment of generators to k x k matrices.
template <class T>
struct Representation {
    std::size_t dim = 1;
    std::map<Letter, DenseMatrix<T>> images;
    Namer namer = default_name;

    const DenseMatrix<T>& at(Letter l) const {
        auto it = images.find(l);
        if (it == images.end()) throw std::invalid_argument("unassigned generator " + namer(l));
        if (it->second.rows() != dim || it->second.cols() != dim)
            throw std::invalid_argument("dimension mismatch for generator " + namer(l));
        return it->second;
    }
};

template <class T>
DenseMatrix<T> evaluate_word(const Word& w, const Representation<T>& rep) {
    DenseMatrix<T> acc = DenseMatrix<T>::identity(rep.dim);
    for (Letter l : w) acc = acc * rep.at(l);
    return acc;
}

/// Unital algebra homomorphism C<T> -> M_k.
template <class T>
DenseMatrix<T> evaluate(const NcPoly& p, const Representation<T>& rep) {
    DenseMatrix<T> out(rep.dim, rep.dim);
    for (const auto& [w, c] : p.terms()) out += evaluate_word(w, rep) * detail::from_gauss<T>(c);
    return out;
}

/// Acts on xi by a (x) b : xi -> a xi b.
template <class T>
DenseMatrix<T> evaluate_bimodule(const TensorPoly& t, const Representation<T>& rep, const DenseMatrix<T>& xi) {
    if (xi.rows() != rep.dim || xi.cols() != rep.dim) throw std::invalid_argument("evaluate_bimodule: xi has wrong shape");
    DenseMatrix<T> out(rep.dim, rep.dim);
    for (const auto& [key, c] : t.terms())
        out += evaluate_word(key.first, rep) * xi * evaluate_word(key.second, rep) * detail::from_gauss<T>(c);
    return out;
}

/// Scalar (one-dimensional, commutative) evaluation; values indexed by letter.
std::complex<double> evaluate_scalar(const NcPoly& p, std::span<const double> values);
std::complex<double> evaluate_scalar(const TensorPoly& t, std::span<const double> values);

}  // namespace qfree::ncalg
