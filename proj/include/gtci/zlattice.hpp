// Exact integer linear algebra: Smith normal form with transformation
// matrices, Hermite column normalization, integer kernels, Diophantine
// solving and cokernel (finitely generated abelian group) structure.
//
// Pivoting is minimal-absolute-value with a fixed tie break (lowest row,
// then lowest column), so every result is deterministic for a given input.
#pragma once

#include <gtci/matrix.hpp>

#include <optional>
#include <vector>

namespace gtci {

struct SnfResult {
    IntMat d;  // diagonal, d[i] >= 0, d[i] | d[i+1] along the nonzero prefix
    IntMat u;  // unimodular, rows() x rows()
    IntMat v;  // unimodular, cols() x cols()
    // Satisfies u * m * v == d exactly.
};

namespace detail {

// Position of the entry of minimal nonzero absolute value in the submatrix
// starting at (t,t); (-1,-1) when that submatrix is zero.
inline std::pair<int, int> min_pivot(const IntMat& a, int t) {
    int bi = -1, bj = -1;
    Int best;
    for (int i = t; i < a.rows(); ++i)
        for (int j = t; j < a.cols(); ++j) {
            const Int& x = a.at(i, j);
            if (x == 0) continue;
            Int ax = abs(x);
            if (bi < 0 || ax < best) {
                best = ax;
                bi = i;
                bj = j;
            }
        }
    return {bi, bj};
}

}  // namespace detail

inline SnfResult smith_normal_form(const IntMat& m) {
    SnfResult r{m, IntMat::identity(m.rows()), IntMat::identity(m.cols())};
    IntMat& d = r.d;
    int n = std::min(d.rows(), d.cols());
    for (int t = 0; t < n; ++t) {
        for (;;) {
            auto [pi, pj] = detail::min_pivot(d, t);
            if (pi < 0) {
                // submatrix is zero; d is final from here on
                return r;
            }
            d.swap_rows(t, pi);
            r.u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            r.v.swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                d.add_row(i, t, -q);
                r.u.add_row(i, t, -q);
                if (d.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                d.add_col(j, t, -q);
                r.v.add_col(j, t, -q);
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot row/column are clear; enforce divisibility of the rest
            bool divides_all = true;
            for (int i = t + 1; i < d.rows() && divides_all; ++i)
                for (int j = t + 1; j < d.cols(); ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        d.add_row(t, i, Int(1));
                        r.u.add_row(t, i, Int(1));
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            r.u.negate_row(t);
        }
    }
    return r;
}

inline std::vector<Int> snf_diagonal(const IntMat& m) {
    SnfResult s = smith_normal_form(m);
    int n = std::min(m.rows(), m.cols());
    std::vector<Int> d(n);
    for (int i = 0; i < n; ++i) d[i] = s.d.at(i, i);
    return d;
}

inline int rank(const IntMat& m) {
    auto d = snf_diagonal(m);
    int r = 0;
    for (const Int& x : d)
        if (x != 0) ++r;
    return r;
}

// Column-style Hermite normalization of a full-column-rank matrix: unimodular
// column operations producing the unique form with positive pivots that
// reduce the entries to their left. Used to make kernel bases canonical.
inline IntMat hermite_normalize_columns(const IntMat& m) {
    IntMat h = m;
    int pivot_row = 0, pivot_col = 0;
    while (pivot_col < h.cols() && pivot_row < h.rows()) {
        // gcd-reduce the row segment [pivot_col..] to a single nonzero entry
        for (;;) {
            int jmin = -1;
            Int best;
            for (int j = pivot_col; j < h.cols(); ++j) {
                const Int& x = h.at(pivot_row, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (jmin < 0 || ax < best) {
                    best = ax;
                    jmin = j;
                }
            }
            if (jmin < 0) break;  // row is zero in the active region
            h.swap_cols(pivot_col, jmin);
            bool clean = true;
            for (int j = pivot_col + 1; j < h.cols(); ++j) {
                if (h.at(pivot_row, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(pivot_row, j).get_mpz_t(), h.at(pivot_row, pivot_col).get_mpz_t());
                h.add_col(j, pivot_col, -q);
                if (h.at(pivot_row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(pivot_row, pivot_col) != 0) {
            if (h.at(pivot_row, pivot_col) < 0) h.negate_col(pivot_col);
            for (int j = 0; j < pivot_col; ++j) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(pivot_row, j).get_mpz_t(), h.at(pivot_row, pivot_col).get_mpz_t());
                h.add_col(j, pivot_col, -q);
            }
            ++pivot_col;
        }
        ++pivot_row;
    }
    return h;
}

// Basis of { x in Z^cols : m x = 0 }, one basis vector per column, Hermite
// normalized. The basis is saturated: the lattice it spans is the full
// integer kernel.
inline IntMat kernel_lattice(const IntMat& m) {
    SnfResult s = smith_normal_form(m);
    int n = std::min(m.rows(), m.cols());
    int r = 0;
    while (r < n && s.d.at(r, r) != 0) ++r;
    int k = m.cols() - r;
    IntMat basis(m.cols(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m.cols(); ++i) basis.at(i, j) = s.v.at(i, r + j);
    return hermite_normalize_columns(basis);
}

// Some integer solution of m x = t, or nullopt when none exists over Z.
inline std::optional<std::vector<Int>> solve_diophantine(const IntMat& m, const std::vector<Int>& t) {
    if (static_cast<int>(t.size()) != m.rows()) throw std::invalid_argument("solve_diophantine: size mismatch");
    SnfResult s = smith_normal_form(m);
    std::vector<Int> ut = s.u * t;
    int n = std::min(m.rows(), m.cols());
    std::vector<Int> y(m.cols(), Int(0));
    for (int i = 0; i < m.rows(); ++i) {
        const Int di = (i < n) ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (ut[i] != 0) return std::nullopt;
        } else {
            if (ut[i] % di != 0) return std::nullopt;
            if (i < m.cols()) y[i] = ut[i] / di;
        }
    }
    return s.v * y;
}

// Invariant factor decomposition of Z^rows / (column span of m): free factors
// first, encoded as 0, then the torsion factors in descending divisibility
// order (each divides the previous), trivial factors dropped.
inline std::vector<Int> cokernel_structure(const IntMat& m) {
    auto d = snf_diagonal(m);
    int r = 0;
    std::vector<Int> torsion;
    for (const Int& x : d)
        if (x != 0) {
            ++r;
            if (x > 1) torsion.push_back(x);
        }
    std::vector<Int> out(static_cast<size_t>(m.rows() - r), Int(0));
    for (auto it = torsion.rbegin(); it != torsion.rend(); ++it) out.push_back(*it);
    return out;
}

inline bool is_primitive(const std::vector<Int>& v) {
    Int g(0);
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0) throw std::invalid_argument("is_primitive: zero vector");
    return g == 1;
}

}  // namespace gtci
