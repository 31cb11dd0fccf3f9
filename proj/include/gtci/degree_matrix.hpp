// Degree matrices over Z x Gamma: the weight row of a constellation extended
// by torsion rows with entries in a finite abelian group in standard form.
// Provides the homogeneity / almost-freeness / Gorenstein predicates, the
// isomorphism action (group automorphisms, weight-scaled translations and
// weight-preserving column permutations), canonical forms, downgrading, and
// the per-constellation enumeration of all Gorenstein Fano classes.
#pragma once

#include <gtci/abelian.hpp>
#include <gtci/constellation.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace gtci {

struct DegreeMatrix {
    WeightDegreeConstellation constellation;
    FiniteAbelianGroup gamma;
    std::vector<GroupElement> eta;  // torsion parts of the columns, one per weight

    int cols() const { return static_cast<int>(constellation.wv.w.size()); }

    bool operator==(const DegreeMatrix& o) const {
        return constellation == o.constellation && gamma == o.gamma && eta == o.eta;
    }
    bool operator<(const DegreeMatrix& o) const {
        if (!(constellation == o.constellation)) return constellation < o.constellation;
        if (gamma != o.gamma) return gamma < o.gamma;
        return eta < o.eta;
    }

    std::string to_string() const {
        std::string s = "weights " + constellation.to_string() + ", torsion " + gamma.to_string();
        if (!gamma.trivial()) {
            s += ", rows";
            for (int r = 0; r < gamma.rank(); ++r) {
                s += " (";
                for (int i = 0; i < cols(); ++i) s += (i ? "," : "") + std::to_string(eta[i].c[r]);
                s += ")";
            }
        }
        return s;
    }
};

inline DegreeMatrix trivial_degree_matrix(const WeightDegreeConstellation& k) {
    DegreeMatrix q{k, FiniteAbelianGroup{}, {}};
    q.eta.assign(k.wv.w.size(), GroupElement{});
    return q;
}

// Integer lift of the chosen columns: one row for the weights, one row per
// invariant factor, plus the relation columns n_r * e_r of Gamma.
inline IntMat lifted_columns(const DegreeMatrix& q, const std::vector<int>& idx) {
    int k = q.gamma.rank();
    IntMat m(1 + k, static_cast<int>(idx.size()) + k);
    for (size_t j = 0; j < idx.size(); ++j) {
        m.at(0, static_cast<int>(j)) = q.constellation.wv.w[idx[j]];
        for (int r = 0; r < k; ++r) m.at(1 + r, static_cast<int>(j)) = q.eta[idx[j]].c[r];
    }
    for (int r = 0; r < k; ++r) m.at(1 + r, static_cast<int>(idx.size()) + r) = q.gamma.factors[r];
    return m;
}

inline std::vector<Int> lifted_column_sum(const DegreeMatrix& q, const std::vector<int>& idx) {
    int k = q.gamma.rank();
    std::vector<Int> t(1 + k, Int(0));
    for (int i : idx) {
        t[0] += q.constellation.wv.w[i];
        for (int r = 0; r < k; ++r) t[1 + r] += q.eta[i].c[r];
    }
    return t;
}

inline bool is_homogeneous(const DegreeMatrix& q) {
    auto exps = exponent_tuple(q.constellation);
    for (const auto& e : exps) {
        GroupElement ref = smul(q.gamma, e.l[0], q.eta[0]);
        for (int i = 1; i < q.cols(); ++i)
            if (smul(q.gamma, e.l[i], q.eta[i]) != ref) return false;
    }
    return true;
}

// Any d+c of the columns generate Z x Gamma: dropping each column in turn,
// the cokernel of the lifted remainder must be trivial.
inline bool is_almost_free(const DegreeMatrix& q) {
    int n = q.cols();
    for (int skip = 0; skip < n; ++skip) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (i != skip) idx.push_back(i);
        if (!cokernel_structure(lifted_columns(q, idx)).empty()) return false;
    }
    return true;
}

// For every (1+c)-subset of columns, the sum of the complementary d columns
// lies in the subgroup they generate; decided by Diophantine solving on the
// lifted system including the relation columns.
inline bool is_gorenstein_matrix(const DegreeMatrix& q) {
    int n = q.cols();
    int c = q.constellation.wv.c;
    std::vector<int> idx(1 + c);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::vector<int> comp;
        for (int i = 0, j = 0; i < n; ++i) {
            if (j < static_cast<int>(idx.size()) && idx[j] == i)
                ++j;
            else
                comp.push_back(i);
        }
        if (!solve_diophantine(lifted_columns(q, idx), lifted_column_sum(q, comp))) return false;
        int i = c;
        while (i >= 0 && idx[i] == n - (1 + c) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j <= c; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

inline void validate_degree_matrix(const DegreeMatrix& q) {
    if (static_cast<int>(q.eta.size()) != q.cols())
        throw std::invalid_argument("degree matrix: one torsion column per weight required");
    for (const auto& e : q.eta) {
        if (static_cast<int>(e.c.size()) != q.gamma.rank())
            throw std::invalid_argument("degree matrix: torsion coordinate count mismatch");
        for (size_t r = 0; r < e.c.size(); ++r)
            if (e.c[r] < 0 || e.c[r] >= q.gamma.factors[r])
                throw std::invalid_argument("degree matrix: torsion coordinate out of range");
    }
    if (!is_homogeneous(q)) throw std::invalid_argument("degree matrix: homogeneity violated");
    if (!is_almost_free(q)) throw std::invalid_argument("degree matrix: columns are not almost free");
}

// ------------------------------------------------------------------------
// Fast predicate engine on element codes (used by the enumeration; agrees
// with the lifted-integer predicates above, which stay authoritative)
// ------------------------------------------------------------------------

namespace detail {

inline constexpr std::int64_t kGroupTableCap = 4096;

struct GroupTables {
    FiniteAbelianGroup g;
    std::int64_t n = 1;
    std::vector<std::int32_t> add;         // n x n
    std::vector<std::int32_t> neg;         // n
    std::vector<std::int32_t> lex_of;      // code -> rank of coordinate tuple in lex order
    std::vector<std::int32_t> code_of_lex; // inverse
    std::map<std::int64_t, std::vector<std::int32_t>> smul_cache;

    explicit GroupTables(const FiniteAbelianGroup& grp) : g(grp), n(grp.order()) {
        if (n > kGroupTableCap) throw std::length_error("group too large for table construction");
        add.resize(static_cast<size_t>(n) * n);
        neg.resize(n);
        std::vector<GroupElement> elems = all_elements(g);
        for (std::int64_t a = 0; a < n; ++a) {
            neg[a] = static_cast<std::int32_t>(element_code(g, gtci::neg(g, elems[a])));
            for (std::int64_t b = 0; b < n; ++b)
                add[a * n + b] = static_cast<std::int32_t>(element_code(g, gtci::add(g, elems[a], elems[b])));
        }
        std::vector<std::int64_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::int64_t a, std::int64_t b) { return elems[a].c < elems[b].c; });
        lex_of.resize(n);
        code_of_lex.resize(n);
        for (std::int64_t r = 0; r < n; ++r) {
            lex_of[order[r]] = static_cast<std::int32_t>(r);
            code_of_lex[r] = static_cast<std::int32_t>(order[r]);
        }
    }

    std::int32_t addc(std::int32_t a, std::int32_t b) const { return add[static_cast<size_t>(a) * n + b]; }

    const std::vector<std::int32_t>& smul_table(std::int64_t k) {
        std::int64_t key = g.trivial() ? 0 : mod64(k, g.factors[0]);
        auto it = smul_cache.find(key);
        if (it != smul_cache.end()) return it->second;
        std::vector<std::int32_t> t(n);
        for (std::int64_t a = 0; a < n; ++a)
            t[a] = static_cast<std::int32_t>(element_code(g, smul(g, key, element_from_code(g, a))));
        return smul_cache.emplace(key, std::move(t)).first->second;
    }
};

// Subgroup closure over codes; returns a membership mask.
inline std::vector<char> closure_mask(const GroupTables& t, const std::vector<std::int32_t>& gens) {
    std::vector<char> in(t.n, 0);
    in[0] = 1;
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
        std::int32_t e = stack.back();
        stack.pop_back();
        for (auto gcode : gens) {
            std::int32_t x = t.addc(e, gcode);
            if (!in[x]) {
                in[x] = 1;
                stack.push_back(x);
            }
        }
    }
    return in;
}

// Integer combination coefficients with sum_i coeff[i] * w[idx[i]] = gcd.
inline std::vector<std::int64_t> gcd_combination(const Weights& w, const std::vector<int>& idx, std::int64_t& g_out) {
    std::vector<std::int64_t> coeff(idx.size(), 0);
    std::int64_t g = w[idx[0]];
    coeff[0] = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        std::int64_t x, y;
        std::int64_t g2 = egcd64(g, w[idx[i]], x, y);
        for (size_t j = 0; j < i; ++j) coeff[j] *= x;
        coeff[i] = y;
        g = g2;
    }
    g_out = g;
    return coeff;
}

// Precomputed data for the per-tuple predicate checks of one (constellation,
// group) pair. Tuples are arrays of element codes, one per column.
struct PredicateEngine {
    const WeightDegreeConstellation* k;
    GroupTables* t;
    int cols;
    std::vector<std::vector<std::int64_t>> exps;  // exponent rows

    struct DropInfo {
        std::vector<int> kept;
        std::vector<std::int64_t> combo;  // sum combo[i]*w[kept[i]] = 1
    };
    std::vector<DropInfo> drops;

    struct SplitInfo {
        std::vector<int> small;           // 1+c indices
        std::vector<int> comp;            // d indices
        std::int64_t g;                   // gcd of small weights
        std::int64_t quot;                // (sum of comp weights) / g
        std::vector<std::int64_t> combo;  // sum combo[i]*w[small[i]] = g
        std::vector<std::int64_t> scaled; // w[small[i]] / g
    };
    std::vector<SplitInfo> splits;

    PredicateEngine(const WeightDegreeConstellation& con, GroupTables& tables) : k(&con), t(&tables) {
        cols = static_cast<int>(con.wv.w.size());
        for (const auto& e : exponent_tuple(con)) exps.push_back(e.l);
        const Weights& w = con.wv.w;
        for (int skip = 0; skip < cols; ++skip) {
            DropInfo d;
            for (int i = 0; i < cols; ++i)
                if (i != skip) d.kept.push_back(i);
            std::int64_t g = 0;
            d.combo = gcd_combination(w, d.kept, g);
            if (g != 1) throw std::logic_error("weight vector not almost free");
            drops.push_back(std::move(d));
        }
        int c = con.wv.c;
        std::vector<int> idx(1 + c);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            SplitInfo s;
            s.small = idx;
            for (int i = 0, j = 0; i < cols; ++i) {
                if (j < static_cast<int>(idx.size()) && idx[j] == i)
                    ++j;
                else
                    s.comp.push_back(i);
            }
            s.combo = gcd_combination(w, s.small, s.g);
            std::int64_t wsum = 0;
            for (int i : s.comp) wsum += w[i];
            if (wsum % s.g != 0) throw std::logic_error("weight vector not Gorenstein");
            s.quot = wsum / s.g;
            for (int i : s.small) s.scaled.push_back(w[i] / s.g);
            splits.push_back(std::move(s));
            int i = c;
            while (i >= 0 && idx[i] == cols - (1 + c) + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j <= c; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    bool homogeneous(const std::vector<std::int32_t>& eta) {
        for (const auto& l : exps) {
            std::int32_t ref = t->smul_table(l[0])[eta[0]];
            for (int i = 1; i < cols; ++i)
                if (t->smul_table(l[i])[eta[i]] != ref) return false;
        }
        return true;
    }

    bool almost_free(const std::vector<std::int32_t>& eta) {
        const Weights& w = k->wv.w;
        for (const auto& d : drops) {
            std::int32_t base = 0;
            for (size_t i = 0; i < d.kept.size(); ++i)
                base = t->addc(base, t->smul_table(d.combo[i])[eta[d.kept[i]]]);
            std::vector<std::int32_t> gens;
            for (int i : d.kept) gens.push_back(t->addc(eta[i], t->neg[t->smul_table(w[i])[base]]));
            auto mask = closure_mask(*t, gens);
            if (std::count(mask.begin(), mask.end(), char(1)) != t->n) return false;
        }
        return true;
    }

    bool gorenstein(const std::vector<std::int32_t>& eta) {
        for (const auto& s : splits) {
            std::int32_t base = 0;  // torsion part of the combination realizing the gcd
            for (size_t i = 0; i < s.small.size(); ++i)
                base = t->addc(base, t->smul_table(s.combo[i])[eta[s.small[i]]]);
            std::int32_t target = 0;
            for (int i : s.comp) target = t->addc(target, eta[i]);
            target = t->addc(target, t->neg[t->smul_table(s.quot)[base]]);
            if (target == 0) continue;
            std::vector<std::int32_t> gens;
            for (size_t i = 0; i < s.small.size(); ++i)
                gens.push_back(t->addc(eta[s.small[i]], t->neg[t->smul_table(s.scaled[i])[base]]));
            auto mask = closure_mask(*t, gens);
            if (!mask[target]) return false;
        }
        return true;
    }
};

inline std::vector<std::pair<int, int>> weight_blocks(const Weights& w) {
    std::vector<std::pair<int, int>> blocks;
    int i = 0, n = static_cast<int>(w.size());
    while (i < n) {
        int j = i;
        while (j < n && w[j] == w[i]) ++j;
        blocks.emplace_back(i, j);
        i = j;
    }
    return blocks;
}

inline void sort_blocks(std::vector<std::int32_t>& lex, const std::vector<std::pair<int, int>>& blocks) {
    for (auto [b, e] : blocks) std::sort(lex.begin() + b, lex.begin() + e);
}

}  // namespace detail

// ------------------------------------------------------------------------
// Canonical forms
// ------------------------------------------------------------------------

namespace detail {

// Code-permutation tables of all group automorphisms.
inline std::vector<std::vector<std::int32_t>> automorphism_tables(GroupTables& t) {
    std::vector<std::vector<std::int32_t>> out;
    for (const auto& phi : automorphisms(t.g)) {
        std::vector<std::int32_t> table(t.n);
        for (std::int64_t a = 0; a < t.n; ++a)
            table[a] = static_cast<std::int32_t>(element_code(t.g, apply(t.g, phi, element_from_code(t.g, a))));
        out.push_back(std::move(table));
    }
    return out;
}

// Minimum of the orbit of a code tuple under (automorphism, translation)
// pairs and weight-preserving column sorts, in lex-rank coordinates.
inline std::vector<std::int32_t> canonical_lex_tuple(
    GroupTables& t, const Weights& w, const std::vector<std::pair<int, int>>& blocks,
    const std::vector<std::vector<std::int32_t>>& auts, const std::vector<std::int32_t>& eta_codes,
    std::int64_t* stabilizer_order = nullptr) {
    int cols = static_cast<int>(eta_codes.size());
    std::vector<std::int32_t> best;
    std::int64_t stab = 0;
    std::vector<std::int32_t> cur(cols);
    for (const auto& phi : auts) {
        for (std::int32_t g0 = 0; g0 < t.n; ++g0) {
            for (int i = 0; i < cols; ++i)
                cur[i] = t.lex_of[t.addc(phi[eta_codes[i]], t.smul_table(w[i])[g0])];
            sort_blocks(cur, blocks);
            if (best.empty() || cur < best) {
                best = cur;
                stab = 1;
            } else if (cur == best) {
                ++stab;
            }
        }
    }
    if (stabilizer_order) *stabilizer_order = stab;
    return best;
}

}  // namespace detail

// The lexicographically minimal orbit element under the isomorphism action:
// group automorphisms, translation of column i by w_i * g0, and column
// permutations preserving the weights. Two degree matrices over the same
// constellation define isomorphic data iff their canonical forms coincide.
inline DegreeMatrix canonical_form(const DegreeMatrix& q) {
    if (q.gamma.trivial()) return q;
    detail::GroupTables tables(q.gamma);
    auto auts = detail::automorphism_tables(tables);
    auto blocks = detail::weight_blocks(q.constellation.wv.w);
    std::vector<std::int32_t> codes;
    for (const auto& e : q.eta) codes.push_back(static_cast<std::int32_t>(element_code(q.gamma, e)));
    auto best = detail::canonical_lex_tuple(tables, q.constellation.wv.w, blocks, auts, codes);
    DegreeMatrix out{q.constellation, q.gamma, {}};
    for (auto lex : best) out.eta.push_back(element_from_code(q.gamma, tables.code_of_lex[lex]));
    return out;
}

inline bool isomorphic(const DegreeMatrix& a, const DegreeMatrix& b) {
    if (!(a.constellation == b.constellation) || a.gamma != b.gamma) return false;
    return canonical_form(a) == canonical_form(b);
}

// Push the torsion parts through Gamma -> Gamma / <gens> and restandardize.
inline DegreeMatrix downgrade_matrix(const DegreeMatrix& q, const std::vector<GroupElement>& subgroup_gens) {
    QuotientMap qt = quotient_by(q.gamma, subgroup_gens);
    DegreeMatrix out{q.constellation, qt.quotient, {}};
    for (const auto& e : q.eta) out.eta.push_back(qt.map(q.gamma, e));
    return out;
}

// ------------------------------------------------------------------------
// Enumeration of degree matrix classes for a constellation
// ------------------------------------------------------------------------

struct MatrixClass {
    DegreeMatrix representative;       // canonical form
    std::int64_t tuple_count = 1;      // column-sorted torsion assignments in the class
    std::int64_t stabilizer_order = 1; // (automorphism, translation) pairs fixing the representative

    bool operator<(const MatrixClass& o) const { return representative < o.representative; }
};

namespace detail {

// All valid torsion assignments over the given group, as code tuples sorted
// within weight blocks. Stops at the first hit when existence_only.
inline std::vector<std::vector<std::int32_t>> valid_tuples(const WeightDegreeConstellation& k, GroupTables& tables,
                                                           bool existence_only) {
    std::vector<std::vector<std::int32_t>> out;
    PredicateEngine eng(k, tables);
    auto blocks = weight_blocks(k.wv.w);
    int cols = eng.cols;
    std::vector<char> block_start(cols, 0);
    for (auto [b, e] : blocks) block_start[b] = 1;
    std::vector<std::int32_t> lex(cols, 0);
    std::vector<std::int32_t> codes(cols);
    for (;;) {
        for (int i = 0; i < cols; ++i) codes[i] = tables.code_of_lex[lex[i]];
        if (eng.homogeneous(codes) && eng.almost_free(codes) && eng.gorenstein(codes)) {
            out.push_back(lex);
            if (existence_only) return out;
        }
        // odometer, nondecreasing within each block
        int i = cols - 1;
        for (;;) {
            if (i < 0) return out;
            if (lex[i] + 1 < tables.n) {
                ++lex[i];
                for (int j = i + 1; j < cols; ++j) lex[j] = block_start[j] ? 0 : lex[j - 1];
                break;
            }
            --i;
        }
    }
}

// Elementary row operations as per-column code maps; together with column
// sorting they pre-group the valid tuples before full canonicalization.
struct ElementaryOps {
    // each generator: per-column table view (same table or column-specific)
    std::vector<std::vector<std::vector<std::int32_t>>> per_column_maps;

    static ElementaryOps build(GroupTables& t, const Weights& w) {
        ElementaryOps ops;
        int cols = static_cast<int>(w.size());
        int k = t.g.rank();
        auto uniform = [&](const std::vector<std::int32_t>& table) {
            ops.per_column_maps.emplace_back(cols, table);
        };
        // unit scalings of a torsion row
        for (int r = 0; r < k; ++r) {
            for (std::int64_t z = 2; z < t.g.factors[r]; ++z) {
                if (gcd64(z, t.g.factors[r]) != 1) continue;
                std::vector<std::int32_t> table(t.n);
                for (std::int64_t a = 0; a < t.n; ++a) {
                    GroupElement e = element_from_code(t.g, a);
                    e.c[r] = mod64(e.c[r] * z, t.g.factors[r]);
                    table[a] = static_cast<std::int32_t>(element_code(t.g, e));
                }
                uniform(table);
            }
        }
        // add the weight row into a torsion row (column i shifts by w_i e_r)
        for (int r = 0; r < k; ++r) {
            std::vector<std::vector<std::int32_t>> maps;
            for (int i = 0; i < cols; ++i) {
                std::vector<std::int32_t> table(t.n);
                for (std::int64_t a = 0; a < t.n; ++a) {
                    GroupElement e = element_from_code(t.g, a);
                    e.c[r] = mod64(e.c[r] + w[i], t.g.factors[r]);
                    table[a] = static_cast<std::int32_t>(element_code(t.g, e));
                }
                maps.push_back(std::move(table));
            }
            ops.per_column_maps.push_back(std::move(maps));
        }
        // add one torsion row into another, scaled to stay well defined
        for (int r = 0; r < k; ++r)
            for (int r2 = 0; r2 < k; ++r2) {
                if (r == r2) continue;
                std::int64_t nr = t.g.factors[r], nr2 = t.g.factors[r2];
                std::int64_t scale = (nr2 % nr == 0) ? 1 : nr / nr2;  // source reduced or lifted
                std::vector<std::int32_t> table(t.n);
                for (std::int64_t a = 0; a < t.n; ++a) {
                    GroupElement e = element_from_code(t.g, a);
                    e.c[r] = mod64(e.c[r] + scale * e.c[r2], nr);
                    table[a] = static_cast<std::int32_t>(element_code(t.g, e));
                }
                uniform(table);
            }
        return ops;
    }
};

}  // namespace detail

// One canonical representative per isomorphism class of Gorenstein Fano
// almost-free degree matrices associated with the constellation, including
// the trivial-torsion class. Deterministic ordering by (invariant factors,
// canonical torsion rows).
inline std::vector<MatrixClass> enumerate_degree_matrices(const WeightDegreeConstellation& k) {
    if (!is_true(k) || !is_fano(k) || !is_gorenstein_weights(k))
        throw std::invalid_argument("enumerate_degree_matrices: constellation must be true, Gorenstein and Fano");
    std::vector<MatrixClass> out;
    out.push_back(MatrixClass{trivial_degree_matrix(k), 1, 1});

    // prime bounds: for Z/p^j to carry a degree matrix, p^j must divide every
    // degree (some weight is always coprime to p), so the iteration is capped
    std::set<std::int64_t> primes;
    for (auto mu : k.degrees)
        for (auto [p, e] : factorize(mu)) primes.insert(p);
    std::int64_t mu_max = k.degrees.back();
    std::map<std::int64_t, int> nu;
    for (auto p : primes) {
        int j = 1;
        std::int64_t pj = p;
        while (pj <= mu_max && j <= 6) {
            detail::GroupTables tables(FiniteAbelianGroup{{pj}});
            if (detail::valid_tuples(k, tables, true).empty()) break;
            ++j;
            pj *= p;
        }
        nu[p] = j - 1;
    }

    // candidate invariant factors: products of p^a with a <= nu_p
    std::vector<std::int64_t> values{1};
    for (auto [p, e] : nu)
        for (std::int64_t v : std::vector<std::int64_t>(values)) {
            std::int64_t pw = 1;
            for (int a = 1; a <= e; ++a) {
                pw *= p;
                values.push_back(v * pw);
            }
        }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    values.erase(values.begin());  // drop 1

    // divisibility chains of length <= d+c-1
    int max_rank = k.wv.d + k.wv.c - 1;
    std::vector<FiniteAbelianGroup> candidates;
    std::vector<std::vector<std::int64_t>> chains;
    auto extend = [&](auto&& self, std::vector<std::int64_t>& chain) -> void {
        if (!chain.empty()) chains.push_back(chain);
        if (static_cast<int>(chain.size()) == max_rank) return;
        for (auto v : values) {
            if (!chain.empty() && (v > chain.back() || chain.back() % v != 0)) continue;
            chain.push_back(v);
            self(self, chain);
            chain.pop_back();
        }
    };
    std::vector<std::int64_t> chain;
    extend(extend, chain);
    for (auto& ch : chains) candidates.push_back(FiniteAbelianGroup{ch});
    std::sort(candidates.begin(), candidates.end(), [](const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.factors < b.factors;
    });

    // a group with an admissible matrix pushes one onto every quotient, so a
    // failed quotient rules the bigger group out
    auto is_quotient = [](const FiniteAbelianGroup& small, const FiniteAbelianGroup& big) {
        if (small.rank() > big.rank()) return false;
        for (int i = 0; i < small.rank(); ++i)
            if (big.factors[i] % small.factors[i] != 0) return false;
        return true;
    };
    std::vector<FiniteAbelianGroup> failed;

    for (const auto& gamma : candidates) {
        bool pruned = false;
        for (const auto& f : failed)
            if (is_quotient(f, gamma)) {
                pruned = true;
                break;
            }
        if (pruned) {
            failed.push_back(gamma);
            continue;
        }
        detail::GroupTables tables(gamma);
        auto valid = detail::valid_tuples(k, tables, false);
        if (valid.empty()) {
            failed.push_back(gamma);
            continue;
        }

        // stage 1: group the valid tuples under the elementary operations
        std::map<std::vector<std::int32_t>, int> comp_of;
        for (const auto& v : valid) comp_of[v] = -1;
        auto blocks = detail::weight_blocks(k.wv.w);
        auto ops = detail::ElementaryOps::build(tables, k.wv.w);
        int n_comp = 0;
        std::vector<std::int64_t> comp_size;
        for (const auto& v : valid) {
            if (comp_of[v] != -1) continue;
            int id = n_comp++;
            comp_size.push_back(0);
            std::vector<std::vector<std::int32_t>> stack{v};
            comp_of[v] = id;
            while (!stack.empty()) {
                auto cur = stack.back();
                stack.pop_back();
                ++comp_size[id];
                std::vector<std::int32_t> codes(cur.size()), img(cur.size());
                for (size_t i = 0; i < cur.size(); ++i) codes[i] = tables.code_of_lex[cur[i]];
                for (const auto& maps : ops.per_column_maps) {
                    for (size_t i = 0; i < cur.size(); ++i) img[i] = tables.lex_of[maps[i][codes[i]]];
                    detail::sort_blocks(img, blocks);
                    auto it = comp_of.find(img);
                    if (it == comp_of.end())
                        throw std::logic_error("elementary operation left the valid set: predicates not invariant");
                    if (it->second == -1) {
                        it->second = id;
                        stack.push_back(img);
                    }
                }
            }
        }

        // stage 2: full canonicalization of one tuple per component; distinct
        // canonical forms are the isomorphism classes
        auto auts = detail::automorphism_tables(tables);
        std::map<std::vector<std::int32_t>, MatrixClass> classes;
        std::vector<int> seen_comp(n_comp, 0);
        for (const auto& [tuple, id] : comp_of) {
            if (seen_comp[id]) continue;
            seen_comp[id] = 1;
            std::vector<std::int32_t> codes(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) codes[i] = tables.code_of_lex[tuple[i]];
            std::int64_t stab = 0;
            auto canon = detail::canonical_lex_tuple(tables, k.wv.w, blocks, auts, codes, &stab);
            auto it = classes.find(canon);
            if (it == classes.end()) {
                DegreeMatrix rep{k, gamma, {}};
                for (auto lex : canon) rep.eta.push_back(element_from_code(gamma, tables.code_of_lex[lex]));
                classes.emplace(canon, MatrixClass{std::move(rep), comp_size[id], stab});
            } else {
                it->second.tuple_count += comp_size[id];
            }
        }
        for (auto& [canon, cls] : classes) out.push_back(std::move(cls));
    }

    std::sort(out.begin(), out.end());
    return out;
}

// Largest exponent per prime for which a Gorenstein Fano degree matrix over
// Z x Z/p^j exists; primes run over the divisors of the degrees.
inline std::map<std::int64_t, int> torsion_prime_bounds(const WeightDegreeConstellation& k) {
    std::map<std::int64_t, int> out;
    std::set<std::int64_t> primes;
    for (auto mu : k.degrees)
        for (auto [p, e] : factorize(mu)) primes.insert(p);
    std::int64_t mu_max = k.degrees.empty() ? 1 : k.degrees.back();
    for (auto p : primes) {
        int j = 1;
        std::int64_t pj = p;
        while (pj <= mu_max && j <= 6) {
            detail::GroupTables tables(FiniteAbelianGroup{{pj}});
            if (detail::valid_tuples(k, tables, true).empty()) break;
            ++j;
            pj *= p;
        }
        out[p] = j - 1;
    }
    return out;
}

}  // namespace gtci
