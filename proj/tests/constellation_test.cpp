#include <doctest.h>

#include <gtci/constellation.hpp>

using namespace gtci;

namespace {

WeightDegreeConstellation make(Weights w, Weights mu, int c = -1) {
    if (c < 0) c = static_cast<int>(mu.size());
    return WeightDegreeConstellation(WeightVector(3, c, std::move(w)), std::move(mu));
}

// the 24 type (3,1) constellations
const std::vector<std::pair<Weights, std::int64_t>> kOneRelation = {
    {{1, 1, 1, 1, 1}, 2},   {{1, 1, 1, 1, 1}, 3},   {{1, 1, 1, 1, 1}, 4},    {{1, 1, 1, 1, 2}, 4},
    {{1, 1, 1, 1, 3}, 6},   {{1, 1, 1, 2, 3}, 6},   {{1, 1, 1, 3, 3}, 6},    {{1, 1, 2, 2, 2}, 4},
    {{1, 1, 2, 2, 2}, 6},   {{1, 1, 2, 2, 4}, 8},   {{1, 1, 2, 4, 4}, 8},    {{1, 1, 2, 4, 6}, 12},
    {{1, 1, 4, 4, 6}, 12},  {{1, 1, 4, 6, 6}, 12},  {{1, 2, 2, 2, 3}, 6},    {{1, 2, 2, 2, 5}, 10},
    {{1, 2, 3, 3, 3}, 6},   {{1, 2, 3, 6, 6}, 12},  {{1, 2, 6, 6, 9}, 18},   {{1, 3, 4, 4, 4}, 12},
    {{1, 3, 8, 12, 12}, 24}, {{1, 4, 5, 10, 10}, 20}, {{2, 2, 2, 3, 3}, 6},   {{2, 3, 3, 4, 6}, 12}};

// the 5 type (3,2) constellations
const std::vector<std::pair<Weights, Weights>> kTwoRelations = {
    {{1, 1, 1, 1, 1, 1}, {2, 2}}, {{1, 1, 1, 1, 1, 1}, {2, 3}}, {{1, 1, 2, 2, 2, 2}, {4, 4}},
    {{1, 2, 3, 3, 3, 3}, {6, 6}}, {{2, 2, 2, 2, 3, 3}, {6, 6}}};

// exponent-tail triples with second entry >= 3: ranges as published
std::set<Weights> finite_triples() {
    std::set<Weights> out;
    auto range = [&](std::int64_t b, std::int64_t c, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t a = lo; a <= hi; ++a) out.insert({a, b, c});
    };
    range(3, 2, 3, 17);
    range(4, 2, 4, 11);
    range(5, 2, 5, 9);
    range(6, 2, 6, 8);
    range(7, 2, 7, 8);
    range(3, 3, 3, 8);
    range(4, 3, 4, 7);
    range(5, 3, 5, 6);
    range(4, 4, 4, 5);
    out.insert({5, 5, 4});
    return out;
}

}  // namespace

TEST_CASE("exponent tuples") {
    auto e1 = exponent_tuple(make({1, 1, 1, 1, 1}, {4}));
    CHECK(e1[0].l == Weights{4, 4, 4, 4, 4});
    auto e2 = exponent_tuple(make({1, 2, 3, 6, 6}, {12}));
    CHECK(e2[0].l == Weights{12, 6, 4, 2, 2});
    auto e3 = exponent_tuple(make({1, 1, 1, 1, 1, 1, 1}, {2, 2, 2}));
    for (const auto& e : e3) CHECK(e.l == Weights{2, 2, 2, 2, 2, 2, 2});
    CHECK_THROWS_AS(make({1, 1, 1, 1, 2}, {3}), std::invalid_argument);
}

TEST_CASE("weight vector validation") {
    CHECK_THROWS_AS(WeightVector(3, 1, {1, 1, 1, 1}), std::invalid_argument);      // wrong length
    CHECK_THROWS_AS(WeightVector(3, 1, {2, 1, 1, 1, 1}), std::invalid_argument);   // not ascending
    CHECK_THROWS_AS(WeightVector(3, 1, {2, 2, 2, 2, 3}), std::invalid_argument);   // not almost free
}

TEST_CASE("Fano, true and Gorenstein predicates") {
    CHECK(is_fano(make({1, 1, 1, 1, 1}, {4})));
    CHECK_FALSE(is_fano(make({1, 1, 1, 1, 1}, {5})));
    CHECK(is_fano(make({2, 2, 2, 2, 3, 3}, {6, 6})));

    CHECK(is_gorenstein_weights(Weights{1, 1, 1, 1, 1}, 3, 1));
    CHECK(is_gorenstein_weights(Weights{1, 2, 3, 6, 6}, 3, 1));
    CHECK_FALSE(is_gorenstein_weights(Weights{1, 1, 2, 3, 3}, 3, 1));

    CHECK(is_true(make({1, 1, 1, 1, 1}, {2})));
    CHECK_FALSE(is_true(make({1, 1, 1, 1, 2}, {2})));
    CHECK(is_true(make({1, 2, 3, 3, 3}, {6})));
}

TEST_CASE("tail candidates reproduce the published families") {
    SUBCASE("minimal cap") {
        auto tails = tail_candidates(3, 1, 2);
        CHECK(tails == std::vector<Weights>{{2, 2, 2}});
    }
    SUBCASE("triples with second entry >= 3") {
        std::set<Weights> got;
        for (const auto& t : tail_candidates(3, 1, 100))
            if (t[1] >= 3) got.insert(t);
        CHECK(got == finite_triples());
        CHECK(got.size() == 48);
    }
    SUBCASE("triples with flat tail sweep the first entry") {
        std::int64_t flat = 0;
        for (const auto& t : tail_candidates(3, 1, 100))
            if (t[1] == 2) ++flat;
        CHECK(flat == 99);  // y = 2..100
    }
    SUBCASE("quintuples") {
        std::set<Weights> want;
        for (std::int64_t t1 = 2; t1 <= 100; ++t1) want.insert({t1, 2, 2, 2, 2});
        want.insert({4, 4, 2, 2, 2});
        for (std::int64_t t1 = 3; t1 <= 6; ++t1) want.insert({t1, 3, 2, 2, 2});
        want.insert({3, 3, 3, 2, 2});
        auto got = tail_candidates(3, 2, 100);
        CHECK(std::set<Weights>(got.begin(), got.end()) == want);
    }
    CHECK_THROWS_AS(tail_candidates(3, 3, 100), std::invalid_argument);
    CHECK_THROWS_AS(tail_candidates(3, 1, 1), std::invalid_argument);
}

TEST_CASE("constellation enumeration matches the classification") {
    SUBCASE("type (3,1)") {
        std::set<WeightDegreeConstellation> want;
        for (const auto& [w, mu] : kOneRelation) want.insert(make(w, {mu}));
        CHECK(enumerate_constellations(3, 1) == want);
    }
    SUBCASE("type (3,2)") {
        std::set<WeightDegreeConstellation> want;
        for (const auto& [w, mu] : kTwoRelations) want.insert(make(w, mu));
        CHECK(enumerate_constellations(3, 2) == want);
    }
    SUBCASE("type (3,3)") {
        std::set<WeightDegreeConstellation> want{make({1, 1, 1, 1, 1, 1, 1}, {2, 2, 2})};
        CHECK(enumerate_constellations(3, 3) == want);
    }
    SUBCASE("past the admissible range the sweep is empty") {
        CHECK(enumerate_constellations_unchecked(3, 4).empty());
    }
    CHECK_THROWS_AS(enumerate_constellations(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_constellations(3, 1, EnumerationOptions{10, true}), std::invalid_argument);
}

TEST_CASE("enumerated constellations satisfy the divisor identities") {
    for (int c : {1, 2, 3}) {
        for (const auto& k : enumerate_constellations(3, c)) {
            auto exps = exponent_tuple(k);
            std::int64_t wl = 1;
            for (auto w : k.wv.w) wl = lcm64(wl, w);
            for (size_t j = 0; j < exps.size(); ++j) {
                std::int64_t mu = k.degrees[j];
                CHECK(mu % wl == 0);
                std::int64_t ll = 1;
                for (auto l : exps[j].l) ll = lcm64(ll, l);
                CHECK(mu % ll == 0);
                // lcm over any d+c of the exponents equals the degree
                int n = static_cast<int>(exps[j].l.size());
                for (int skip = 0; skip < n; ++skip) {
                    std::int64_t sub = 1;
                    for (int i = 0; i < n; ++i)
                        if (i != skip) sub = lcm64(sub, exps[j].l[i]);
                    CHECK(sub == mu);
                }
            }
            // proportionality of exponent vectors, and rigidity at any shared entry
            for (size_t i = 0; i < exps.size(); ++i)
                for (size_t j = 0; j < exps.size(); ++j)
                    for (size_t m = 0; m < exps[i].l.size(); ++m) {
                        CHECK(k.degrees[i] * exps[j].l[m] == k.degrees[j] * exps[i].l[m]);
                        if (exps[i].l[m] == exps[j].l[m]) CHECK(k.degrees[i] == k.degrees[j]);
                    }
        }
    }
}

TEST_CASE("repeated-weight gcd conclusions hold on the enumerated vectors") {
    for (const auto& k : enumerate_constellations(3, 1)) {
        const Weights& w = k.wv.w;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                if (w[i] != w[j]) continue;
                std::int64_t g = 0;
                for (int m = 0; m < 5; ++m)
                    if (m != i && m != j) g = gcd64(g, w[m]);
                CHECK((g == 1 || g == 2));
                if (g == 2) CHECK(w[i] % 2 == 1);
            }
        // three equal weights with the remaining pair equal pin the vector
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                for (int m = j + 1; m < 5; ++m) {
                    if (!(w[i] == w[j] && w[j] == w[m])) continue;
                    std::vector<int> rest;
                    for (int r = 0; r < 5; ++r)
                        if (r != i && r != j && r != m) rest.push_back(r);
                    if (w[rest[0]] != w[rest[1]]) continue;
                    std::set<Weights> allowed{
                        {1, 1, 1, 1, 1}, {1, 1, 1, 3, 3}, {1, 1, 2, 2, 2}, {2, 2, 2, 3, 3}};
                    CHECK(allowed.count(w) == 1);
                }
    }
}

TEST_CASE("proposition sweeps") {
    std::set<Weights> want_w{{1, 1, 1, 1, 1}, {1, 1, 1, 3, 3},   {1, 1, 2, 2, 2},  {1, 1, 2, 4, 4},
                             {1, 1, 4, 6, 6}, {1, 2, 3, 3, 3},   {1, 2, 3, 6, 6},  {1, 4, 5, 10, 10},
                             {1, 3, 8, 12, 12}, {2, 2, 2, 3, 3}};
    CHECK(gorenstein_weights_with_tail_y22(100) == want_w);
    std::set<Weights> want_l{{2, 2, 2, 2, 2, 2}, {4, 4, 2, 2, 2, 2}, {6, 3, 2, 2, 2, 2}};
    CHECK(gorenstein_exponents_with_tail_2222(100) == want_l);
}

TEST_CASE("the Gorenstein filter is active") {
    EnumerationOptions open;
    open.gorenstein_filter = false;
    CHECK(enumerate_constellations(3, 1, open).size() > enumerate_constellations(3, 1).size());
}
