// Generator matrices, the polytopes attached to degree data, exact lattice
// point counting, normal fan verification, homogenization of Laurent
// supports, and the anticanonical invariants.
#pragma once

#include <gtci/degree_matrix.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace gtci {

struct GeneratorMatrix {
    IntMat p;  // n x (n+1); columns are the primitive ray generators

    int dim() const { return p.rows(); }
};

// Kernel-basis construction: the transpose of p spans the kernel of the
// lifted degree matrix, so the weighted column sum vanishes and the cokernel
// reproduces Z x Gamma.
inline GeneratorMatrix generator_matrix(const DegreeMatrix& q) {
    int cols = q.cols();
    int k = q.gamma.rank();
    int n = cols - 1;
    IntMat m(1 + k, cols + k);
    for (int i = 0; i < cols; ++i) {
        m.at(0, i) = q.constellation.wv.w[i];
        for (int r = 0; r < k; ++r) m.at(1 + r, i) = q.eta[i].c[r];
    }
    for (int r = 0; r < k; ++r) m.at(1 + r, cols + r) = q.gamma.factors[r];
    IntMat full = kernel_lattice(m);
    if (full.cols() != n) throw std::runtime_error("generator_matrix: kernel has unexpected rank");
    IntMat pt(cols, n);  // transpose of the generator matrix
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < n; ++j) pt.at(i, j) = full.at(i, j);
    // rays = rows of pt; they must be pairwise distinct and primitive
    for (int i = 0; i < cols; ++i) {
        if (!is_primitive(pt.row(i))) throw std::runtime_error("generator_matrix: non-primitive ray");
        for (int j = i + 1; j < cols; ++j)
            if (pt.row(i) == pt.row(j)) throw std::runtime_error("generator_matrix: repeated ray");
    }
    return GeneratorMatrix{pt.transpose()};
}

// ------------------------------------------------------------------------
// Polytopes cut out by P* x >= -b
// ------------------------------------------------------------------------

struct LatticeSimplex {
    IntMat p;                               // n x (n+1): inequality <column_i, x> >= -shift_i
    std::vector<Int> shift;                 // length n+1
    std::vector<std::vector<Rat>> vertices; // candidate vertices, one per dropped inequality
};

namespace detail {

// Exact solve of a square rational system a x = rhs; nullopt when singular.
inline std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs) {
    int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        Rat inv = a[col][col];
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col] / inv;
            for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rhs[i] / a[i][i];
        x[i].canonicalize();
    }
    return x;
}

}  // namespace detail

// Polytope { x : <v_i, x> >= -shift_i } with the drop-one-inequality vertex
// candidates precomputed. The candidates span the polytope whenever it is
// nonempty, which is all the counting code needs.
inline LatticeSimplex shifted_polytope(const GeneratorMatrix& gm, std::vector<Int> shift) {
    int n = gm.p.rows(), m = gm.p.cols();
    if (static_cast<int>(shift.size()) != m) throw std::invalid_argument("shifted_polytope: shift length mismatch");
    LatticeSimplex s{gm.p, std::move(shift), {}};
    for (int drop = 0; drop < m; ++drop) {
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> rhs;
        for (int i = 0; i < m; ++i) {
            if (i == drop) continue;
            std::vector<Rat> row(n);
            for (int r = 0; r < n; ++r) row[r] = Rat(gm.p.at(r, i));
            a.push_back(std::move(row));
            rhs.push_back(Rat(-s.shift[i]));
        }
        auto x = detail::solve_square(std::move(a), std::move(rhs));
        if (!x) throw std::runtime_error("shifted_polytope: degenerate inequality system");
        s.vertices.push_back(std::move(*x));
    }
    return s;
}

// The relation polytopes of the degree data: shift l_{j,1} e_1 for each
// relation. Full-dimensional lattice simplices for valid input.
inline std::vector<LatticeSimplex> relation_polytopes(const DegreeMatrix& q, const GeneratorMatrix& gm) {
    std::vector<LatticeSimplex> out;
    for (const auto& e : exponent_tuple(q.constellation)) {
        std::vector<Int> shift(q.cols(), Int(0));
        shift[0] = e.l[0];
        LatticeSimplex s = shifted_polytope(gm, std::move(shift));
        for (const auto& v : s.vertices)
            for (const auto& coord : v)
                if (coord.get_den() != 1)
                    throw std::runtime_error("relation_polytopes: non-integral vertex, degree data invalid");
        out.push_back(std::move(s));
    }
    return out;
}

// Exact number of integer points: bounding box from the vertex candidates,
// then a sweep with exact inequality tests (64-bit when safely possible).
inline Int count_lattice_points(const LatticeSimplex& s) {
    int n = s.p.rows(), m = s.p.cols();
    if (s.vertices.empty()) return 0;
    std::vector<Int> lo(n), hi(n);
    for (int r = 0; r < n; ++r) {
        Rat mn = s.vertices[0][r], mx = s.vertices[0][r];
        for (const auto& v : s.vertices) {
            mn = std::min(mn, v[r]);
            mx = std::max(mx, v[r]);
        }
        mpz_fdiv_q(lo[r].get_mpz_t(), mn.get_num().get_mpz_t(), mn.get_den().get_mpz_t());
        mpz_cdiv_q(hi[r].get_mpz_t(), mx.get_num().get_mpz_t(), mx.get_den().get_mpz_t());
        if (lo[r] > hi[r]) return 0;
    }
    // 64-bit fast path; magnitudes here are tiny in every realized family
    bool small = true;
    for (int r = 0; r < n && small; ++r)
        small = lo[r].fits_slong_p() && hi[r].fits_slong_p() && abs(hi[r] - lo[r]) < 4096;
    for (int r = 0; r < n && small; ++r)
        for (int i = 0; i < m && small; ++i) small = abs(s.p.at(r, i)) < (std::int64_t(1) << 20);
    for (int i = 0; i < m && small; ++i) small = abs(s.shift[i]) < (std::int64_t(1) << 30);

    if (small) {
        std::vector<std::int64_t> l(n), h(n), x(n);
        std::vector<std::vector<std::int64_t>> colv(m, std::vector<std::int64_t>(n));
        std::vector<std::int64_t> b(m);
        for (int r = 0; r < n; ++r) {
            l[r] = to_i64(lo[r]);
            h[r] = to_i64(hi[r]);
        }
        for (int i = 0; i < m; ++i) {
            b[i] = to_i64(s.shift[i]);
            for (int r = 0; r < n; ++r) colv[i][r] = to_i64(s.p.at(r, i));
        }
        std::int64_t count = 0;
        x = l;
        for (;;) {
            bool inside = true;
            for (int i = 0; i < m && inside; ++i) {
                std::int64_t dot = 0;
                for (int r = 0; r < n; ++r) dot += colv[i][r] * x[r];
                inside = dot + b[i] >= 0;
            }
            if (inside) ++count;
            int r = n - 1;
            while (r >= 0 && x[r] == h[r]) x[r--] = l[r];
            if (r < 0) break;
            ++x[r];
        }
        return Int(static_cast<long>(count));
    }

    Int count(0);
    std::vector<Int> x = lo;
    for (;;) {
        bool inside = true;
        for (int i = 0; i < m && inside; ++i) {
            Int dot(0);
            for (int r = 0; r < n; ++r) dot += s.p.at(r, i) * x[r];
            inside = dot + s.shift[i] >= 0;
        }
        if (inside) ++count;
        int r = n - 1;
        while (r >= 0 && x[r] == hi[r]) x[r--] = lo[r];
        if (r < 0) break;
        ++x[r];
    }
    return count;
}

namespace detail {

// Full-dimensional simplex test: every drop-one vertex candidate exists and
// satisfies its dropped inequality strictly.
inline bool is_full_dimensional_simplex(const LatticeSimplex& s) {
    int n = s.p.rows(), m = s.p.cols();
    if (static_cast<int>(s.vertices.size()) != m) return false;
    for (int drop = 0; drop < m; ++drop) {
        Rat dot(0);
        for (int r = 0; r < n; ++r) dot += Rat(s.p.at(r, drop)) * s.vertices[drop][r];
        if (!(dot > Rat(-s.shift[drop]))) return false;
    }
    return true;
}

}  // namespace detail

// True iff the summed support numbers define a polytope in which every
// inequality supports a facet, the facet normals are exactly the columns of
// p (primitive and pairwise distinct), and Minkowski summation acts on the
// vertices as expected.
inline bool verify_normal_fan(const std::vector<LatticeSimplex>& s_list, const GeneratorMatrix& gm) {
    int n = gm.p.rows(), m = gm.p.cols();
    for (int i = 0; i < m; ++i) {
        try {
            if (!is_primitive(gm.p.col(i))) return false;
        } catch (const std::invalid_argument&) {
            return false;
        }
        for (int j = i + 1; j < m; ++j)
            if (gm.p.col(i) == gm.p.col(j)) return false;
    }
    if (s_list.empty()) return false;
    std::vector<Int> total(m, Int(0));
    for (const auto& s : s_list) {
        if (s.p != gm.p) return false;
        if (!detail::is_full_dimensional_simplex(s)) return false;
        for (int i = 0; i < m; ++i) total[i] += s.shift[i];
    }
    LatticeSimplex sum;
    try {
        sum = shifted_polytope(gm, total);
    } catch (const std::runtime_error&) {
        return false;
    }
    if (!detail::is_full_dimensional_simplex(sum)) return false;
    for (int drop = 0; drop < m; ++drop)
        for (int r = 0; r < n; ++r) {
            Rat acc(0);
            for (const auto& s : s_list) acc += s.vertices[drop][r];
            if (acc != sum.vertices[drop][r]) return false;
        }
    return true;
}

// ------------------------------------------------------------------------
// Homogenization of Laurent supports
// ------------------------------------------------------------------------

struct LaurentSupport {
    std::vector<std::vector<Int>> exponents;  // nonempty set of integer vectors in n variables
};

// Pull the support through the generator matrix and shift so every variable
// occurs with exponent zero somewhere: the monomial set of the homogenized
// polynomial, in n+1 variables.
inline std::vector<std::vector<Int>> homogenize(const LaurentSupport& f, const GeneratorMatrix& gm) {
    if (f.exponents.empty()) throw std::invalid_argument("homogenize: empty support");
    int n = gm.p.rows(), m = gm.p.cols();
    std::vector<std::vector<Int>> lifted;
    for (const auto& nu : f.exponents) {
        if (static_cast<int>(nu.size()) != n) throw std::invalid_argument("homogenize: exponent dimension mismatch");
        std::vector<Int> e(m, Int(0));
        for (int i = 0; i < m; ++i)
            for (int r = 0; r < n; ++r) e[i] += gm.p.at(r, i) * nu[r];
        lifted.push_back(std::move(e));
    }
    std::vector<Int> mins = lifted[0];
    for (const auto& e : lifted)
        for (int i = 0; i < m; ++i) mins[i] = std::min(mins[i], e[i]);
    for (auto& e : lifted)
        for (int i = 0; i < m; ++i) e[i] -= mins[i];
    std::sort(lifted.begin(), lifted.end(), [](const std::vector<Int>& a, const std::vector<Int>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
    return lifted;
}

// Image of a monomial exponent under the degree matrix.
inline std::pair<Int, GroupElement> monomial_degree(const DegreeMatrix& q, const std::vector<Int>& e) {
    Int z(0);
    GroupElement t = zero_element(q.gamma);
    for (int i = 0; i < q.cols(); ++i) {
        z += q.constellation.wv.w[i] * e[i];
        t = add(q.gamma, t, smul(q.gamma, to_i64(e[i]), q.eta[i]));
    }
    return {z, t};
}

// Degree of the j-th relation: any column's exponent multiple; the first
// column is used.
inline std::pair<Int, GroupElement> relation_degree(const DegreeMatrix& q, int j) {
    auto exps = exponent_tuple(q.constellation);
    return {Int(static_cast<long>(exps[j].degree)), smul(q.gamma, exps[j].l[0], q.eta[0])};
}

// Sum of generator degrees minus sum of relation degrees.
inline std::pair<Int, GroupElement> anticanonical_class(const DegreeMatrix& q) {
    Int z(0);
    GroupElement t = zero_element(q.gamma);
    for (int i = 0; i < q.cols(); ++i) {
        z += q.constellation.wv.w[i];
        t = add(q.gamma, t, q.eta[i]);
    }
    for (int j = 0; j < q.constellation.wv.c; ++j) {
        auto [mz, mt] = relation_degree(q, j);
        z -= mz;
        t = sub(q.gamma, t, mt);
    }
    return {z, t};
}

// (product of degrees / product of weights) * k^d / torsion order, with k
// the free part of the anticanonical class. Exact rational.
inline Rat anticanonical_selfintersection(const DegreeMatrix& q) {
    int d = q.constellation.wv.d;
    Rat r(1);
    for (auto mu : q.constellation.degrees) r *= Rat(static_cast<long>(mu));
    for (auto w : q.constellation.wv.w) r /= Rat(static_cast<long>(w));
    Int k = anticanonical_class(q).first;
    Rat kk(1);
    for (int i = 0; i < d; ++i) kk *= Rat(k);
    r *= kk;
    r /= Rat(static_cast<long>(q.gamma.order()));
    r.canonicalize();
    return r;
}

// Shift vector of the anticanonical polytope: e_X = sum e_i - sum l_{j,1} e_1.
inline std::vector<Int> anticanonical_shift(const DegreeMatrix& q) {
    std::vector<Int> e(q.cols(), Int(1));
    for (const auto& ev : exponent_tuple(q.constellation)) e[0] -= ev.l[0];
    return e;
}

// Section space dimension via lattice point counts: the count of the
// anticanonical polytope minus the counts of the relation-multiple
// polytopes, clamped at zero.
inline Int h0_anticanonical(const DegreeMatrix& q, const GeneratorMatrix& gm) {
    std::vector<Int> ex = anticanonical_shift(q);
    Int s = count_lattice_points(shifted_polytope(gm, ex));
    auto exps = exponent_tuple(q.constellation);
    for (const auto& ev : exps) {
        std::vector<Int> shift = ex;
        shift[0] -= ev.l[0];
        s -= count_lattice_points(shifted_polytope(gm, shift));
    }
    return s > 0 ? s : Int(0);
}

// Independent monomial-counting route to the same dimension: enumerate the
// exponent tuples of each relevant degree directly.
inline Int count_monomials(const DegreeMatrix& q, const Int& z, const GroupElement& torsion) {
    if (z < 0) return 0;
    std::int64_t target = to_i64(z);
    int cols = q.cols();
    Int count(0);
    std::vector<std::int64_t> e(cols, 0);
    auto rec = [&](auto&& self, int i, std::int64_t rest, GroupElement acc) -> void {
        if (i == cols - 1) {
            if (rest % q.constellation.wv.w[i] != 0) return;
            GroupElement t = add(q.gamma, acc, smul(q.gamma, rest / q.constellation.wv.w[i], q.eta[i]));
            if (t == torsion) ++count;
            return;
        }
        for (std::int64_t a = 0; a * q.constellation.wv.w[i] <= rest; ++a)
            self(self, i + 1, rest - a * q.constellation.wv.w[i], add(q.gamma, acc, smul(q.gamma, a, q.eta[i])));
    };
    rec(rec, 0, target, zero_element(q.gamma));
    return count;
}

inline Int h0_monomial_oracle(const DegreeMatrix& q) {
    auto [z, t] = anticanonical_class(q);
    Int s = count_monomials(q, z, t);
    for (int j = 0; j < q.constellation.wv.c; ++j) {
        auto [mz, mt] = relation_degree(q, j);
        s -= count_monomials(q, z - mz, sub(q.gamma, t, mt));
    }
    return s > 0 ? s : Int(0);
}

// Reconstruct degree data from a generator matrix: the cokernel of its
// transpose, with the free coordinate normalized to positive weights and the
// torsion coordinates read off the transformation rows. For a generator
// matrix built from q this reproduces q up to isomorphism.
inline DegreeMatrix induced_degree_matrix(const GeneratorMatrix& gm, const WeightDegreeConstellation& k) {
    IntMat pt = gm.p.transpose();  // (n+1) x n
    SnfResult s = smith_normal_form(pt);
    int cols = pt.rows(), n = pt.cols();
    std::vector<int> torsion_rows;
    for (int i = 0; i < n; ++i)
        if (s.d.at(i, i) > 1) torsion_rows.push_back(i);
    int free_row = n;  // rank is n for generator matrices
    for (int i = 0; i < n; ++i)
        if (s.d.at(i, i) == 0) throw std::runtime_error("induced_degree_matrix: transpose not of full rank");

    int sign = 0;
    for (int j = 0; j < cols; ++j) {
        if (s.u.at(free_row, j) == 0) throw std::runtime_error("induced_degree_matrix: zero induced weight");
        int sj = s.u.at(free_row, j) > 0 ? 1 : -1;
        if (sign == 0) sign = sj;
        if (sign != sj) throw std::runtime_error("induced_degree_matrix: mixed-sign induced weights");
    }
    Weights w;
    for (int j = 0; j < cols; ++j) w.push_back(to_i64(s.u.at(free_row, j)) * sign);

    std::vector<std::int64_t> factors;
    for (auto it = torsion_rows.rbegin(); it != torsion_rows.rend(); ++it) factors.push_back(to_i64(s.d.at(*it, *it)));
    FiniteAbelianGroup gamma{factors};
    DegreeMatrix out{WeightDegreeConstellation(WeightVector(k.wv.d, k.wv.c, w), k.degrees), gamma, {}};
    for (int j = 0; j < cols; ++j) {
        std::vector<std::int64_t> coords;
        for (auto it = torsion_rows.rbegin(); it != torsion_rows.rend(); ++it) {
            Int red;
            mpz_fdiv_r(red.get_mpz_t(), s.u.at(*it, j).get_mpz_t(), s.d.at(*it, *it).get_mpz_t());
            coords.push_back(to_i64(red));
        }
        out.eta.push_back(GroupElement{coords});
    }
    return out;
}

// Roundtrip: rebuild the degree data from the generator matrix and compare
// canonical forms.
inline bool roundtrip_identity(const DegreeMatrix& q, const GeneratorMatrix& gm) {
    DegreeMatrix induced = induced_degree_matrix(gm, q.constellation);
    if (induced.gamma != q.gamma) return false;
    if (induced.constellation.wv.w != q.constellation.wv.w) return false;
    return canonical_form(induced) == canonical_form(q);
}

// ------------------------------------------------------------------------
// Downgrading on the geometry side
// ------------------------------------------------------------------------

struct DowngradeGeometry {
    DegreeMatrix downgraded;
    GeneratorMatrix p_tilde;
    IntMat a;  // unique integer matrix with p_tilde^T a = p^T
};

inline DowngradeGeometry downgrade_geometry(const DegreeMatrix& q, const GeneratorMatrix& gm,
                                            const std::vector<GroupElement>& subgroup_gens) {
    DegreeMatrix down = downgrade_matrix(q, subgroup_gens);
    GeneratorMatrix pt = generator_matrix(down);
    IntMat lhs = pt.p.transpose();  // (n+1) x n
    IntMat rhs = gm.p.transpose();
    int n = gm.p.rows();
    IntMat a(n, n);
    for (int j = 0; j < n; ++j) {
        auto col = solve_diophantine(lhs, rhs.col(j));
        if (!col) throw std::runtime_error("downgrade_geometry: transport matrix does not exist");
        for (int i = 0; i < n; ++i) a.at(i, j) = (*col)[i];
    }
    return DowngradeGeometry{std::move(down), std::move(pt), std::move(a)};
}

}  // namespace gtci
