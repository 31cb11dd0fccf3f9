// Finite abelian groups in standard form: Z/n1 x ... x Z/nk with each factor
// dividing the previous one. Elements are residue-coordinate tuples. Provides
// automorphism enumeration, subgroup enumeration and quotients with an
// explicit projection map, all exact.
#pragma once

#include <gtci/zlattice.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace gtci {

struct FiniteAbelianGroup {
    // Invariant factors, largest first; factors[i+1] divides factors[i]; all >= 2.
    // An empty list is the trivial group.
    std::vector<std::int64_t> factors;

    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<std::int64_t> f) : factors(std::move(f)) {
        for (size_t i = 0; i < factors.size(); ++i) {
            if (factors[i] < 2) throw std::invalid_argument("FiniteAbelianGroup: factors must be >= 2");
            if (i + 1 < factors.size() && factors[i] % factors[i + 1] != 0)
                throw std::invalid_argument("FiniteAbelianGroup: factors must form a divisibility chain");
        }
    }

    int rank() const { return static_cast<int>(factors.size()); }
    bool trivial() const { return factors.empty(); }

    std::int64_t order() const {
        std::int64_t n = 1;
        for (auto f : factors) n *= f;
        return n;
    }

    bool operator==(const FiniteAbelianGroup& o) const { return factors == o.factors; }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }
    bool operator<(const FiniteAbelianGroup& o) const { return factors < o.factors; }

    std::string to_string() const {
        if (trivial()) return "1";
        std::string s;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += " x ";
            s += "Z/" + std::to_string(factors[i]);
        }
        return s;
    }
};

struct GroupElement {
    std::vector<std::int64_t> c;  // coordinate i reduced mod factors[i]

    bool operator==(const GroupElement& o) const { return c == o.c; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const { return c < o.c; }
};

inline GroupElement zero_element(const FiniteAbelianGroup& g) {
    return GroupElement{std::vector<std::int64_t>(g.factors.size(), 0)};
}

inline GroupElement make_element(const FiniteAbelianGroup& g, std::vector<std::int64_t> coords) {
    if (coords.size() != g.factors.size()) throw std::invalid_argument("make_element: coordinate count mismatch");
    for (size_t i = 0; i < coords.size(); ++i) coords[i] = mod64(coords[i], g.factors[i]);
    return GroupElement{std::move(coords)};
}

inline GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = mod64(r.c[i] + b.c[i], g.factors[i]);
    return r;
}

inline GroupElement neg(const FiniteAbelianGroup& g, const GroupElement& a) {
    GroupElement r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = mod64(-r.c[i], g.factors[i]);
    return r;
}

inline GroupElement sub(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    return add(g, a, neg(g, b));
}

inline GroupElement smul(const FiniteAbelianGroup& g, std::int64_t k, const GroupElement& a) {
    GroupElement r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = mod64(k % g.factors[i] * r.c[i], g.factors[i]);
    return r;
}

inline std::int64_t element_order(const FiniteAbelianGroup& g, const GroupElement& a) {
    std::int64_t o = 1;
    for (size_t i = 0; i < a.c.size(); ++i) o = lcm64(o, g.factors[i] / gcd64(g.factors[i], a.c[i]));
    return o;
}

// Dense element <-> code table (mixed radix); codes run over 0..order()-1.
inline std::int64_t element_code(const FiniteAbelianGroup& g, const GroupElement& a) {
    std::int64_t code = 0;
    for (size_t i = a.c.size(); i-- > 0;) code = code * g.factors[i] + a.c[i];
    return code;
}

inline GroupElement element_from_code(const FiniteAbelianGroup& g, std::int64_t code) {
    GroupElement r = zero_element(g);
    for (size_t i = 0; i < g.factors.size(); ++i) {
        r.c[i] = code % g.factors[i];
        code /= g.factors[i];
    }
    return r;
}

inline std::vector<GroupElement> all_elements(const FiniteAbelianGroup& g) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<size_t>(g.order()));
    for (std::int64_t code = 0; code < g.order(); ++code) out.push_back(element_from_code(g, code));
    return out;
}

// Subgroup generated by a set of elements, as a sorted vector of codes.
inline std::vector<std::int64_t> subgroup_closure(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
    std::set<std::int64_t> seen{0};
    std::vector<GroupElement> stack{zero_element(g)};
    while (!stack.empty()) {
        GroupElement e = stack.back();
        stack.pop_back();
        for (const auto& gen : gens) {
            GroupElement n = add(g, e, gen);
            if (seen.insert(element_code(g, n)).second) stack.push_back(n);
        }
    }
    return std::vector<std::int64_t>(seen.begin(), seen.end());
}

// All subgroups, each as a sorted code vector (the trivial subgroup included).
inline std::vector<std::vector<std::int64_t>> all_subgroups(const FiniteAbelianGroup& g) {
    std::set<std::vector<std::int64_t>> found;
    std::vector<std::vector<std::int64_t>> frontier;
    found.insert({0});
    frontier.push_back({0});
    auto elems = all_elements(g);
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& sub : frontier) {
            for (const auto& e : elems) {
                if (std::binary_search(sub.begin(), sub.end(), element_code(g, e))) continue;
                std::vector<GroupElement> gens;
                for (auto code : sub) gens.push_back(element_from_code(g, code));
                gens.push_back(e);
                auto closure = subgroup_closure(g, gens);
                if (found.insert(closure).second) next.push_back(closure);
            }
        }
        frontier = std::move(next);
    }
    return std::vector<std::vector<std::int64_t>>(found.begin(), found.end());
}

// An automorphism, stored as the images of the standard generators e_1..e_k.
struct GroupAutomorphism {
    std::vector<GroupElement> images;
};

inline GroupElement apply(const FiniteAbelianGroup& g, const GroupAutomorphism& phi, const GroupElement& x) {
    GroupElement r = zero_element(g);
    for (size_t i = 0; i < x.c.size(); ++i) r = add(g, r, smul(g, x.c[i], phi.images[i]));
    return r;
}

inline constexpr std::int64_t kAutomorphismOrderCap = 1 << 12;

// Every automorphism, enumerated as generator-image tuples validated against
// the generator orders and surjectivity.
inline std::vector<GroupAutomorphism> automorphisms(const FiniteAbelianGroup& g) {
    if (g.order() > kAutomorphismOrderCap)
        throw std::length_error("automorphisms: group order exceeds capacity " + std::to_string(kAutomorphismOrderCap));
    std::vector<GroupAutomorphism> out;
    int k = g.rank();
    if (k == 0) {
        out.push_back(GroupAutomorphism{});
        return out;
    }
    std::int64_t n = g.order();
    std::vector<std::int64_t> codes(static_cast<size_t>(k), 0);
    for (;;) {
        GroupAutomorphism phi;
        phi.images.reserve(k);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            GroupElement img = element_from_code(g, codes[i]);
            if (g.factors[i] % element_order(g, img) != 0) ok = false;
            phi.images.push_back(std::move(img));
        }
        if (ok && static_cast<std::int64_t>(subgroup_closure(g, phi.images).size()) == n) out.push_back(std::move(phi));
        int i = 0;
        while (i < k && ++codes[i] == n) codes[i++] = 0;
        if (i == k) break;
    }
    return out;
}

// Quotient of g by the subgroup generated by gens, in standard form, together
// with the induced projection (a matrix acting on coordinate tuples).
struct QuotientMap {
    FiniteAbelianGroup quotient;
    std::vector<std::vector<Int>> proj;  // one row per quotient factor, one column per factor of the source

    GroupElement map(const FiniteAbelianGroup& /*source*/, const GroupElement& x) const {
        GroupElement r = zero_element(quotient);
        for (size_t i = 0; i < proj.size(); ++i) {
            Int acc(0);
            for (size_t j = 0; j < proj[i].size(); ++j) acc += proj[i][j] * x.c[j];
            Int red;
            mpz_fdiv_r(red.get_mpz_t(), acc.get_mpz_t(), Int(quotient.factors[i]).get_mpz_t());
            r.c[i] = to_i64(red);
        }
        return r;
    }
};

inline QuotientMap quotient_by(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
    int k = g.rank();
    if (k == 0) return QuotientMap{FiniteAbelianGroup{}, {}};
    IntMat m(k, k + static_cast<int>(gens.size()));
    for (int i = 0; i < k; ++i) m.at(i, i) = g.factors[i];
    for (size_t j = 0; j < gens.size(); ++j)
        for (int i = 0; i < k; ++i) m.at(i, k + static_cast<int>(j)) = gens[j].c[i];
    SnfResult s = smith_normal_form(m);
    // Z^k / im(m) = (+) Z/d_i via x -> (u x)_i; keep nontrivial factors,
    // largest first to land in standard form.
    std::vector<std::int64_t> fac;
    std::vector<std::vector<Int>> proj;
    for (int i = k - 1; i >= 0; --i) {
        Int di = s.d.at(i, i);
        if (di <= 1) continue;
        fac.push_back(to_i64(di));
        proj.push_back(s.u.row(i));
    }
    return QuotientMap{FiniteAbelianGroup{std::move(fac)}, std::move(proj)};
}

}  // namespace gtci
