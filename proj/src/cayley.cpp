#include "qfree/cayley.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace qfree::cayley {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> mul)
    : name_(std::move(name)), mul_(std::move(mul)) {
    const std::size_t n = mul_.size();
    if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
    for (const auto& row : mul_) {
        if (row.size() != n) throw std::invalid_argument("FiniteGroup: table is not square");
        for (std::size_t x : row)
            if (x >= n) throw std::invalid_argument("FiniteGroup: table entry out of range");
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g) ok = mul_[e][g] == g && mul_[g][e] == g;
        if (ok) {
            e_ = e;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("FiniteGroup: no identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw std::invalid_argument("FiniteGroup: not associative");
    inv_.assign(n, n);
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h)
            if (mul_[g][h] == e_ && mul_[h][g] == e_) inv_[g] = h;
        if (inv_[g] == n) throw std::invalid_argument("FiniteGroup: element without inverse");
    }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n < 1 || n > 24) throw std::invalid_argument("cyclic: order must be in 1..24");
    std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
    return FiniteGroup("Z/" + std::to_string(n), std::move(mul));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric: degree must be in 1..5");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::vector<std::size_t>& q) {
        return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    const std::size_t order = perms.size();
    std::vector<std::vector<std::size_t>> mul(order, std::vector<std::size_t>(order));
    std::vector<std::size_t> q(n);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            for (std::size_t x = 0; x < n; ++x) q[x] = perms[a][perms[b][x]];  // a after b
            mul[a][b] = index_of(q);
        }
    return FiniteGroup("S" + std::to_string(n), std::move(mul));
}

FiniteGroup FiniteGroup::dihedral4() {
    std::vector<std::vector<std::size_t>> mul(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t b = 0; b < 4; ++b)
                for (std::size_t k = 0; k < 2; ++k) {
                    // (r^a s^m)(r^b s^k) = r^(a + (-1)^m b) s^(m + k)
                    const std::size_t rot = (a + (m ? 4 - b : b)) % 4;
                    mul[a + 4 * m][b + 4 * k] = rot + 4 * ((m + k) % 2);
                }
    return FiniteGroup("D4", std::move(mul));
}

FiniteGroup FiniteGroup::by_name(const std::string& raw) {
    std::string name;
    for (char c : raw) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == "s3") return symmetric(3);
    if (name == "s4") return symmetric(4);
    if (name == "d4") return dihedral4();
    if (!name.empty() && name[0] == 'z') {
        std::string digits = name.substr(name.size() > 1 && name[1] == '/' ? 2 : 1);
        if (!digits.empty() && digits.size() <= 2 && std::all_of(digits.begin(), digits.end(), ::isdigit))
            return cyclic(std::stoul(digits));
    }
    throw std::invalid_argument("unknown group '" + raw + "' (expected Z<n>, Z/<n>, S3, S4 or D4)");
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (mul_[a][b] != mul_[b][a]) return false;
    return true;
}

EdgeSpace::EdgeSpace(const FiniteGroup& g, std::vector<std::size_t> generating_set)
    : order_(g.order()), h_(std::move(generating_set)) {
    std::sort(h_.begin(), h_.end());
    if (std::adjacent_find(h_.begin(), h_.end()) != h_.end())
        throw std::invalid_argument("EdgeSpace: repeated element in the generating set");
    for (std::size_t h : h_) {
        if (h >= order_) throw std::invalid_argument("EdgeSpace: element " + std::to_string(h) + " not in the group");
        if (h == g.e()) throw std::invalid_argument("EdgeSpace: the generating set contains the identity");
        if (!std::binary_search(h_.begin(), h_.end(), g.inv(h)))
            throw std::invalid_argument("EdgeSpace: generating set is not closed under inverses (missing inverse of " +
                                        std::to_string(h) + ")");
    }
    lookup_.assign(order_ * order_, order_ * order_);
    for (std::size_t x = 0; x < order_; ++x)
        for (std::size_t h : h_) {
            lookup_[x * order_ + h] = edges_.size();
            edges_.emplace_back(x, h);
        }
}

std::size_t EdgeSpace::index(std::size_t g, std::size_t h) const {
    const std::size_t k = lookup_.at(g * order_ + h);
    return k == order_ * order_ ? edges_.size() : k;
}

std::size_t pair_index(const FiniteGroup& g, std::size_t a, std::size_t b) { return a * g.order() + b; }

Perm mult_unitary(const FiniteGroup& g) {
    const std::size_t n = g.order();
    Perm v(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) v[a * n + b] = a * n + g.mul(a, b);
    return v;
}

Perm antipode_unitary(const FiniteGroup& g) {
    Perm u(g.order());
    for (std::size_t a = 0; a < g.order(); ++a) u[a] = g.inv(a);
    return u;
}

Perm flip(const FiniteGroup& g) {
    const std::size_t n = g.order();
    Perm s(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s[a * n + b] = b * n + a;
    return s;
}

Perm tensor(const Perm& a, const Perm& b) {
    Perm out(a.size() * b.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y) out[x * b.size() + y] = a[x] * b.size() + b[y];
    return out;
}

Perm inverse(const Perm& p) {
    Perm out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) out.at(p[x]) = x;
    return out;
}

bool is_permutation(const Perm& p) {
    std::vector<bool> hit(p.size(), false);
    for (std::size_t y : p) {
        if (y >= p.size() || hit[y]) return false;
        hit[y] = true;
    }
    return true;
}

namespace {

Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

// Product of operators in the order written: ops[0] ops[1] ... (last applied first).
Perm product(std::initializer_list<const Perm*> ops, Exec exec) {
    auto it = ops.end();
    Perm acc = **--it;
    while (it != ops.begin()) acc = kernels::compose(**--it, acc, exec);
    return acc;
}

}  // namespace

Perm v_tilde(const FiniteGroup& g, Exec exec) {
    const Perm s = flip(g), v = mult_unitary(g);
    const Perm one_u = tensor(identity_perm(g.order()), antipode_unitary(g));
    return product({&s, &one_u, &v, &one_u, &s}, exec);
}

Perm theta_full(const FiniteGroup& g, Exec exec) {
    const Perm s = flip(g), v = mult_unitary(g), u = antipode_unitary(g);
    const Perm one_u = tensor(identity_perm(g.order()), u);
    const Perm u_u = tensor(u, u);
    return product({&s, &one_u, &v, &u_u, &s}, exec);
}

Perm on_legs(const FiniteGroup& g, const Perm& op, int i, int j) {
    const std::size_t n = g.order();
    if (op.size() != n * n) throw std::invalid_argument("on_legs: operator is not on two legs");
    if (i == j || i < 0 || j < 0 || i > 2 || j > 2) throw std::invalid_argument("on_legs: bad leg pair");
    Perm out(n * n * n);
    std::size_t x[3];
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        x[0] = idx / (n * n);
        x[1] = (idx / n) % n;
        x[2] = idx % n;
        const std::size_t img = op[x[i] * n + x[j]];
        x[i] = img / n;
        x[j] = img % n;
        out[idx] = (x[0] * n + x[1]) * n + x[2];
    }
    return out;
}

EdgeOperators edge_reversal(const FiniteGroup& g, const EdgeSpace& edges, Exec exec) {
    const Perm full = theta_full(g, exec);
    const Perm v = mult_unitary(g);
    EdgeOperators out;
    const std::size_t m = edges.size();
    out.theta_composed.resize(m);
    out.theta_closed.resize(m);
    out.restriction_ok = true;
    out.boundary_ok = true;
    for (std::size_t k = 0; k < m; ++k) {
        const auto [x, h] = edges.edges()[k];
        const std::size_t img = full[pair_index(g, x, h)];
        const std::size_t idx = edges.index(img / g.order(), img % g.order());
        out.restriction_ok = out.restriction_ok && idx < m;
        out.theta_composed[k] = idx;
        out.theta_closed[k] = edges.index(g.mul(x, h), g.inv(h));
        out.boundary_ok = out.boundary_ok && v[pair_index(g, x, h)] == pair_index(g, x, g.mul(x, h));
    }
    out.agree = out.restriction_ok && out.theta_composed == out.theta_closed;
    out.unitary = out.restriction_ok && is_permutation(out.theta_composed);
    out.involutive = out.unitary && kernels::compose(out.theta_composed, out.theta_composed, exec) == identity_perm(m);
    return out;
}

namespace {

void check_size(const FiniteGroup& g) {
    if (g.order() > kMaxExhaustiveOrder)
        throw std::invalid_argument("group of order " + std::to_string(g.order()) + " exceeds the exhaustive limit " +
                                    std::to_string(kMaxExhaustiveOrder));
}

IdentityCheck compare(const Perm& lhs, const Perm& rhs, Exec exec) {
    IdentityCheck c;
    c.basis_size = lhs.size();
    c.mismatches = kernels::count_mismatches(lhs, rhs, exec);
    c.holds = c.mismatches == 0;
    return c;
}

}  // namespace

IdentityCheck pentagon_check(const FiniteGroup& g, bool adjoint, Exec exec) {
    check_size(g);
    const Perm v = adjoint ? inverse(mult_unitary(g)) : mult_unitary(g);
    const Perm v12 = on_legs(g, v, 0, 1), v13 = on_legs(g, v, 0, 2), v23 = on_legs(g, v, 1, 2);
    return compare(product({&v12, &v13, &v23}, exec), product({&v23, &v12}, exec), exec);
}

IdentityCheck baaj_skandalis_check(const FiniteGroup& g, bool use_v, Exec exec) {
    check_size(g);
    const Perm v = mult_unitary(g);
    const Perm vt = use_v ? v : v_tilde(g, exec);
    const Perm v13 = on_legs(g, v, 0, 2), v23 = on_legs(g, v, 1, 2), vt12 = on_legs(g, vt, 0, 1);
    return compare(product({&v13, &v23, &vt12}, exec), product({&vt12, &v13}, exec), exec);
}

}  // namespace qfree::cayley
