#pragma once

// Fusion ring of FO: v_1 (x) v_n = v_{n-1} + v_{n+1}, and the moments of
// the fundamental character it determines.

#include <cstdint>
#include <map>

namespace qfree::fusion {

class FusionVector {
public:
    using Mults = std::map<int, std::uint64_t>;

    FusionVector() = default;
    static FusionVector delta(int n);

    const Mults& mults() const { return mults_; }
    std::uint64_t operator[](int n) const;
    void add(int n, std::uint64_t m);

    friend bool operator==(const FusionVector&, const FusionVector&) = default;

private:
    Mults mults_;  // no zero entries
};

FusionVector fuse_with_fundamental(const FusionVector& v);

/// Multiplicity of v_0 in u^{(x) k}. Throws std::overflow_error past 64 bits.
std::uint64_t char_moment(int k);

/// Quantum dimension of v_n when qdim(u) = base; base < 2 is rejected.
double qdim(int n, double base);

/// k-th moment of the standard semicircle law, by adaptive quadrature.
double semicircle_moment(int k);

}  // namespace qfree::fusion
