#pragma once

#include "qfree/ncalg.hpp"

#include <random>

namespace qfree::test_support {

inline GaussRational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    long re = num(rng);
    long im = num(rng);
    if (re == 0 && im == 0) re = 1;
    return {mpq_class(re, den(rng)), mpq_class(im, den(rng))};
}

inline ncalg::Word random_word(std::mt19937_64& rng, std::size_t max_len, ncalg::Letter alphabet) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<ncalg::Letter> letter(0, alphabet - 1);
    ncalg::Word w(len(rng));
    for (auto& l : w) l = letter(rng);
    return w;
}

inline ncalg::NcPoly random_poly(std::mt19937_64& rng, std::size_t max_terms, std::size_t max_degree,
                                 ncalg::Letter alphabet) {
    std::uniform_int_distribution<std::size_t> terms(0, max_terms);
    ncalg::NcPoly p;
    const std::size_t t = terms(rng);
    for (std::size_t k = 0; k < t; ++k) p.add_term(random_word(rng, max_degree, alphabet), random_coeff(rng));
    return p;
}

inline ncalg::TensorPoly random_tensor(std::mt19937_64& rng, std::size_t max_terms, std::size_t max_degree,
                                       ncalg::Letter alphabet) {
    std::uniform_int_distribution<std::size_t> terms(0, max_terms);
    ncalg::TensorPoly t;
    const std::size_t n = terms(rng);
    for (std::size_t k = 0; k < n; ++k)
        t.add_term(random_word(rng, max_degree, alphabet), random_word(rng, max_degree, alphabet), random_coeff(rng));
    return t;
}

inline DenseMatrix<GaussRational> random_exact_matrix(std::mt19937_64& rng, std::size_t k) {
    DenseMatrix<GaussRational> m(k, k);
    std::uniform_int_distribution<long> num(-3, 3);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = GaussRational(mpq_class(num(rng), 2), mpq_class(num(rng), 3));
    return m;
}

}  // namespace qfree::test_support
