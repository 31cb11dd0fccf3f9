// Weight vectors, exponent vectors and weight-degree constellations, the
// true/Fano/Gorenstein predicates on them, and the bounded enumeration of
// all true Gorenstein Fano constellations of types (3,1), (3,2), (3,3).
//
// Enumeration is tail-driven: the last entries of the (descending) exponent
// vector of the smallest degree are bounded by harmonic inequalities, the
// remaining data by divisor arithmetic. One tail family per type is
// unbounded in its first entry; it is swept up to a configurable cutoff
// (default 100), far beyond the range where solutions are possible.
#pragma once

#include <gtci/integer.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtci {

using Weights = std::vector<std::int64_t>;

inline std::int64_t sum64(const Weights& v) { return std::accumulate(v.begin(), v.end(), std::int64_t(0)); }

// Any (size-1) of the entries coprime, i.e. dropping any single entry leaves gcd 1.
inline bool weights_almost_free(const Weights& w) {
    for (size_t skip = 0; skip < w.size(); ++skip) {
        std::int64_t g = 0;
        for (size_t i = 0; i < w.size(); ++i)
            if (i != skip) g = gcd64(g, w[i]);
        if (g != 1) return false;
    }
    return true;
}

struct WeightVector {
    int d = 0, c = 0;
    Weights w;  // 1+d+c positive entries, ascending

    WeightVector() = default;
    WeightVector(int d_, int c_, Weights w_) : d(d_), c(c_), w(std::move(w_)) {
        if (static_cast<int>(w.size()) != 1 + d + c)
            throw std::invalid_argument("WeightVector: expected " + std::to_string(1 + d + c) + " weights");
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] <= 0) throw std::invalid_argument("WeightVector: weights must be positive");
            if (i && w[i - 1] > w[i]) throw std::invalid_argument("WeightVector: weights must be ascending");
        }
        if (!weights_almost_free(w))
            throw std::invalid_argument("WeightVector: weights are not almost free (a size-" +
                                        std::to_string(d + c) + " subset has gcd > 1)");
    }
};

struct ExponentVector {
    Weights l;            // positive entries, l[i] * w[i] = degree
    std::int64_t degree;  // common value of the homogeneity products

    bool is_true() const { return *std::min_element(l.begin(), l.end()) >= 2; }
};

struct WeightDegreeConstellation {
    WeightVector wv;
    Weights degrees;  // c positive entries, ascending; each divisible by every weight

    WeightDegreeConstellation() = default;
    WeightDegreeConstellation(WeightVector wv_, Weights degrees_) : wv(std::move(wv_)), degrees(std::move(degrees_)) {
        if (static_cast<int>(degrees.size()) != wv.c)
            throw std::invalid_argument("WeightDegreeConstellation: expected " + std::to_string(wv.c) + " degrees");
        for (size_t j = 0; j < degrees.size(); ++j) {
            if (degrees[j] <= 0) throw std::invalid_argument("WeightDegreeConstellation: degrees must be positive");
            if (j && degrees[j - 1] > degrees[j])
                throw std::invalid_argument("WeightDegreeConstellation: degrees must be ascending");
            for (auto wi : wv.w)
                if (degrees[j] % wi != 0)
                    throw std::invalid_argument("WeightDegreeConstellation: degree " + std::to_string(degrees[j]) +
                                                " is not divisible by weight " + std::to_string(wi));
        }
    }

    bool operator<(const WeightDegreeConstellation& o) const {
        if (wv.w != o.wv.w) return wv.w < o.wv.w;
        return degrees < o.degrees;
    }
    bool operator==(const WeightDegreeConstellation& o) const { return wv.w == o.wv.w && degrees == o.degrees; }

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < wv.w.size(); ++i) s += (i ? "," : "") + std::to_string(wv.w[i]);
        s += "; ";
        for (size_t j = 0; j < degrees.size(); ++j) s += (j ? "," : "") + std::to_string(degrees[j]);
        return s + ")";
    }
};

inline std::vector<ExponentVector> exponent_tuple(const WeightDegreeConstellation& k) {
    std::vector<ExponentVector> out;
    out.reserve(k.degrees.size());
    for (auto mu : k.degrees) {
        ExponentVector e;
        e.degree = mu;
        e.l.reserve(k.wv.w.size());
        for (auto wi : k.wv.w) e.l.push_back(mu / wi);
        out.push_back(std::move(e));
    }
    return out;
}

inline bool is_true(const WeightDegreeConstellation& k) {
    std::int64_t wmax = k.wv.w.back();
    for (auto mu : k.degrees)
        if (mu < 2 * wmax) return false;
    return true;
}

inline bool is_fano(const WeightDegreeConstellation& k) { return sum64(k.wv.w) > sum64(k.degrees); }

// gcd of every (1+c)-subset of the weights divides the sum of the
// complementary d weights.
inline bool is_gorenstein_weights(const Weights& w, int d, int c) {
    int n = static_cast<int>(w.size());
    if (n != 1 + d + c) throw std::invalid_argument("is_gorenstein_weights: size mismatch");
    std::int64_t total = sum64(w);
    std::vector<int> idx(1 + c);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::int64_t g = 0, s = 0;
        for (int i : idx) {
            g = gcd64(g, w[i]);
            s += w[i];
        }
        if ((total - s) % g != 0) return false;
        int i = c;
        while (i >= 0 && idx[i] == n - (1 + c) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j <= c; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

inline bool is_gorenstein_weights(const WeightVector& wv) { return is_gorenstein_weights(wv.w, wv.d, wv.c); }
inline bool is_gorenstein_weights(const WeightDegreeConstellation& k) { return is_gorenstein_weights(k.wv); }

// ------------------------------------------------------------------------
// Tail families
// ------------------------------------------------------------------------

// Descending exponent tails for type (3,c), first entry capped at max_first.
//
// c = 1: triples (t1,t2,t3) that admit l1 >= l2 >= t1 with
//        1/l1 + ... + 1/l5 > 1, i.e. 3/t1 + 1/t2 + 1/t3 > 1.
// c = 2: quintuples (t1..t5) whose Fano bound survives every choice of the
//        free entry l1 >= t1, i.e. 1/(2 t1) + ... + 1/(2 t5) >= 1.
inline std::vector<Weights> tail_candidates(int d, int c, std::int64_t max_first) {
    if (d != 3 || (c != 1 && c != 2)) throw std::invalid_argument("tail_candidates: supported types are (3,1) and (3,2)");
    if (max_first < 2) throw std::invalid_argument("tail_candidates: max_first must be >= 2");
    std::vector<Weights> out;
    if (c == 1) {
        // 3/t1 + 1/t2 + 1/t3 > 1, monotone in each entry
        auto holds = [](std::int64_t t1, std::int64_t t2, std::int64_t t3) {
            return 3 * t2 * t3 + t1 * t3 + t1 * t2 > t1 * t2 * t3;
        };
        for (std::int64_t t3 = 2; t3 <= 8 && holds(t3, t3, t3); ++t3)
            for (std::int64_t t2 = t3; holds(t2, t2, t3); ++t2)
                for (std::int64_t t1 = t2; t1 <= max_first && holds(t1, t2, t3); ++t1)
                    out.push_back({t1, t2, t3});
    } else {
        // 1/(2 t1) + ... + 1/(2 t5) >= 1, monotone in each entry
        auto holds = [](const std::array<std::int64_t, 5>& t) {
            std::int64_t p = 1;
            for (auto x : t) p *= x;
            std::int64_t s = 0;
            for (auto x : t) s += p / x;
            return s >= 2 * p;
        };
        for (std::int64_t t5 = 2; holds({t5, t5, t5, t5, t5}); ++t5)
            for (std::int64_t t4 = t5; holds({t4, t4, t4, t4, t5}); ++t4)
                for (std::int64_t t3 = t4; holds({t3, t3, t3, t4, t5}); ++t3)
                    for (std::int64_t t2 = t3; holds({t2, t2, t3, t4, t5}); ++t2)
                        for (std::int64_t t1 = t2; t1 <= max_first && holds({t1, t2, t3, t4, t5}); ++t1)
                            out.push_back({t1, t2, t3, t4, t5});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Descending tails (t1..tm), m = d+c, admitting f = 1+d+c-m additional free
// entries >= t1 with harmonic Fano sum > c; used to drive the enumeration
// (a superset of the published tail families, trimmed later by the
// Gorenstein filter). Exact check: (f+1)/t1 + sum_{i>=2} 1/t_i > c.
inline std::vector<Weights> fano_tails(int d, int c, std::int64_t max_first) {
    int m = d + c;
    int f = 1 + d + c - m;  // free entries
    std::vector<Weights> out;
    Weights t(m);
    auto rec = [&](auto&& self, int pos, std::int64_t lo) -> void {
        if (pos < 0) {
            // exact test with t1 = t[0] repeated for the free slots
            Int p(1);
            for (auto x : t) p *= x;
            Int s(0);
            for (auto x : t) s += p / x;
            s += Int(f) * (p / t[0]);
            if (s > Int(c) * p) out.push_back(t);
            return;
        }
        std::int64_t hi = (pos == 0) ? max_first : 64;
        for (std::int64_t x = lo; x <= hi; ++x) {
            // prune: even with all remaining entries equal to x and the free
            // slots at x, the sum cannot reach c
            Int p(1);
            for (int i = pos + 1; i < m; ++i) p *= t[i];
            Int s(0);
            for (int i = pos + 1; i < m; ++i) s += p / t[i];
            // (pos+1 fixed entries at x) + f free slots at x contribute (pos+1+f)/x
            Int lhs = s * Int(x) + Int(pos + 1 + f) * p;
            if (lhs <= Int(c) * p * Int(x)) break;
            t[pos] = x;
            self(self, pos - 1, x);
        }
    };
    rec(rec, m - 1, 2);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

struct EnumerationOptions {
    std::int64_t cutoff = 100;          // sweep bound for the unbounded tail families
    bool gorenstein_filter = true;      // disable only for sanity tests
};

// All true Gorenstein Fano weight-degree constellations of type (3,c).
inline std::set<WeightDegreeConstellation> enumerate_constellations(int d, int c, EnumerationOptions opts = {}) {
    if (d != 3 || c < 1 || c > 3) throw std::invalid_argument("enumerate_constellations: supported types are (3,1), (3,2), (3,3)");
    if (opts.cutoff < 24) throw std::invalid_argument("enumerate_constellations: cutoff below proven-complete range");
    std::set<WeightDegreeConstellation> out;

    auto admit = [&](const Weights& w, Weights degrees) {
        if (!weights_almost_free(w)) return;
        if (opts.gorenstein_filter && !is_gorenstein_weights(w, d, c)) return;
        WeightDegreeConstellation k(WeightVector(d, c, w), std::move(degrees));
        if (!is_true(k) || !is_fano(k)) return;
        out.insert(std::move(k));
    };

    if (c == 1) {
        // Tail (l3,l4,l5): with lam = lcm(tail) the weights are
        // (w1, w2, (lam/l3) om, (lam/l4) om, (lam/l5) om) and mu = lam*om,
        // where w1 <= w2 divide lam, om is coprime to both, and for a
        // Gorenstein vector om divides (w1+w2)/gcd(w1,w2).
        for (const auto& t : tail_candidates(3, 1, opts.cutoff)) {
            std::int64_t lam = lcm64(lcm64(t[0], t[1]), t[2]);
            auto divs = divisors(lam);
            for (auto w1 : divs)
                for (auto w2 : divs) {
                    if (w2 < w1) continue;
                    std::int64_t g = gcd64(w1, w2);
                    for (auto om : divisors((w1 + w2) / g)) {
                        if (gcd64(om, w1) != 1 || gcd64(om, w2) != 1) continue;
                        Weights w = {w1, w2, lam / t[0] * om, lam / t[1] * om, lam / t[2] * om};
                        if (w[1] > w[2]) continue;
                        admit(w, {lam * om});
                    }
                }
        }
    } else {
        // Tail = last d+c entries of the exponent vector of the smallest
        // degree; the degree equals lcm(tail) (any d+c weights are coprime)
        // and the leading exponent divides it.
        for (const auto& t : detail::fano_tails(d, c, opts.cutoff)) {
            std::int64_t mu1 = 1;
            for (auto x : t) mu1 = lcm64(mu1, x);
            for (auto l1 : divisors(mu1)) {
                if (l1 < t[0]) continue;
                Weights w;
                w.push_back(mu1 / l1);
                for (auto x : t) w.push_back(mu1 / x);
                if (!std::is_sorted(w.begin(), w.end())) continue;
                std::int64_t L = 1;
                for (auto wi : w) L = lcm64(L, wi);
                std::int64_t wsum = sum64(w);
                if (c == 2) {
                    for (std::int64_t mu2 = (mu1 + L - 1) / L * L; mu1 + mu2 < wsum; mu2 += L)
                        admit(w, {mu1, mu2});
                } else {
                    for (std::int64_t mu2 = (mu1 + L - 1) / L * L; mu1 + 2 * mu2 < wsum; mu2 += L)
                        for (std::int64_t mu3 = mu2; mu1 + mu2 + mu3 < wsum; mu3 += L)
                            admit(w, {mu1, mu2, mu3});
                }
            }
        }
    }
    return out;
}

// Same bounding strategy pushed past the proven range: for c > d the Fano
// bound kills every tail, so the sweep comes back empty.
inline std::set<WeightDegreeConstellation> enumerate_constellations_unchecked(int d, int c, EnumerationOptions opts = {}) {
    if (c <= 3) return enumerate_constellations(d, c, opts);
    std::set<WeightDegreeConstellation> out;
    if (!detail::fano_tails(d, c, opts.cutoff).empty())
        throw std::logic_error("enumerate_constellations_unchecked: nonempty tail set beyond c = 3");
    return out;
}

// ------------------------------------------------------------------------
// Proposition-level sweeps (exposed for the verification suite)
// ------------------------------------------------------------------------

// Gorenstein weight vectors of type (3,1) admitting an exponent vector of
// the shape (l1,l2,y,2,2), swept over y up to the cutoff.
inline std::set<Weights> gorenstein_weights_with_tail_y22(std::int64_t cutoff = 100) {
    std::set<Weights> out;
    for (std::int64_t y = 2; y <= cutoff; ++y) {
        std::int64_t lam = lcm64(y, 2);
        auto divs = divisors(lam);
        for (auto w1 : divs)
            for (auto w2 : divs) {
                if (w2 < w1) continue;
                std::int64_t g = gcd64(w1, w2);
                for (auto om : divisors((w1 + w2) / g)) {
                    if (gcd64(om, w1) != 1 || gcd64(om, w2) != 1) continue;
                    Weights w = {w1, w2, lam / y * om, lam / 2 * om, lam / 2 * om};
                    if (!std::is_sorted(w.begin(), w.end())) continue;
                    if (!weights_almost_free(w)) continue;
                    if (!is_gorenstein_weights(w, 3, 1)) continue;
                    out.insert(w);
                }
            }
    }
    return out;
}

// Exponent vectors (l1,l2,2,2,2,2) realized by a Gorenstein weight vector of
// type (3,2), swept over l2 up to the cutoff.
inline std::set<Weights> gorenstein_exponents_with_tail_2222(std::int64_t cutoff = 100) {
    std::set<Weights> out;
    for (std::int64_t l2 = 2; l2 <= cutoff; ++l2) {
        std::int64_t mu = lcm64(l2, 2);
        for (auto l1 : divisors(mu)) {
            if (l1 < l2) continue;
            Weights l = {l1, l2, 2, 2, 2, 2};
            Weights w;
            for (auto x : l) w.push_back(mu / x);
            if (!std::is_sorted(w.begin(), w.end())) continue;
            if (!weights_almost_free(w)) continue;
            if (!is_gorenstein_weights(w, 3, 2)) continue;
            out.insert(l);
        }
    }
    return out;
}

}  // namespace gtci
