// Orchestration: run the constellation enumeration, attach the degree matrix
// classes, compute the geometric invariants, assign stable IDs, and emit the
// classification as JSON / CSV / aligned text tables. Also hosts the worked
// example fixtures used by the verification command.
#pragma once

#include <gtci/geometry.hpp>

#include <json.hpp>

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gtci {

struct ClassificationRecord {
    std::string id;
    DegreeMatrix matrix;  // canonical representative
    Int antican_z;
    GroupElement antican_torsion;
    Int antican_cube;
    Int h0;
};

struct RunSummary {
    std::map<int, std::int64_t> per_type;       // codimension -> families
    std::map<Weights, std::int64_t> per_weights;
    std::int64_t total = 0;
};

struct ClassifyOptions {
    std::int64_t cutoff = 100;
};

inline std::string weight_digits(const Weights& w) {
    std::string s;
    for (auto x : w) {
        if (x >= 13) throw std::invalid_argument("assign_id: weight " + std::to_string(x) + " exceeds the digit scheme");
        if (x <= 9)
            s += static_cast<char>('0' + x);
        else
            s += static_cast<char>('A' + (x - 10));
    }
    return s;
}

inline std::string torsion_signature(const FiniteAbelianGroup& g) {
    if (g.trivial()) return "1";
    std::string s;
    for (auto f : g.factors) s += std::to_string(f);
    return s;
}

// "w" + weight digits (10 -> A, 11 -> B, 12 -> C) + "t" + torsion signature
// + "-" + 1-based index inside the (weights, torsion) bucket.
inline std::string assign_id(const Weights& w, const FiniteAbelianGroup& g, int index_in_bucket) {
    return "w" + weight_digits(w) + "t" + torsion_signature(g) + "-" + std::to_string(index_in_bucket);
}

inline ClassificationRecord build_record(const MatrixClass& cls) {
    const DegreeMatrix& q = cls.representative;
    ClassificationRecord r;
    r.matrix = q;
    GeneratorMatrix gm = generator_matrix(q);
    auto [z, t] = anticanonical_class(q);
    r.antican_z = z;
    r.antican_torsion = t;
    if (r.antican_z <= 0) throw std::runtime_error("classification: anticanonical degree not positive for " + q.to_string());
    Rat cube = anticanonical_selfintersection(q);
    if (cube.get_den() != 1 || cube <= 0)
        throw std::runtime_error("classification: anticanonical cube not a positive integer for " + q.to_string());
    r.antican_cube = cube.get_num();
    r.h0 = h0_anticanonical(q, gm);
    if (r.h0 != h0_monomial_oracle(q))
        throw std::runtime_error("classification: section count mismatch between routes for " + q.to_string());
    if (!verify_normal_fan(relation_polytopes(q, gm), gm))
        throw std::runtime_error("classification: normal fan check failed for " + q.to_string());
    return r;
}

struct ClassificationRun {
    std::vector<ClassificationRecord> records;
    RunSummary summary;
};

inline ClassificationRun classify(const std::vector<int>& c_set, ClassifyOptions opts = {}) {
    ClassificationRun run;
    std::vector<ClassificationRecord> recs;
    for (int c : c_set) {
        for (const auto& k : enumerate_constellations(3, c, EnumerationOptions{opts.cutoff, true})) {
            for (const auto& cls : enumerate_degree_matrices(k)) recs.push_back(build_record(cls));
        }
    }
    std::sort(recs.begin(), recs.end(), [](const ClassificationRecord& a, const ClassificationRecord& b) {
        int ca = a.matrix.constellation.wv.c, cb = b.matrix.constellation.wv.c;
        if (ca != cb) return ca < cb;
        if (a.matrix.constellation.wv.w != b.matrix.constellation.wv.w)
            return a.matrix.constellation.wv.w < b.matrix.constellation.wv.w;
        if (a.matrix.gamma != b.matrix.gamma) return a.matrix.gamma < b.matrix.gamma;
        if (a.matrix.constellation.degrees != b.matrix.constellation.degrees)
            return a.matrix.constellation.degrees < b.matrix.constellation.degrees;
        return a.matrix.eta < b.matrix.eta;
    });
    std::pair<Weights, std::vector<std::int64_t>> bucket;
    int index = 0;
    for (auto& r : recs) {
        std::pair<Weights, std::vector<std::int64_t>> key{r.matrix.constellation.wv.w, r.matrix.gamma.factors};
        if (key != bucket) {
            bucket = key;
            index = 0;
        }
        r.id = assign_id(r.matrix.constellation.wv.w, r.matrix.gamma, ++index);
        run.summary.per_type[r.matrix.constellation.wv.c]++;
        run.summary.per_weights[r.matrix.constellation.wv.w]++;
        run.summary.total++;
    }
    run.records = std::move(recs);
    return run;
}

// ------------------------------------------------------------------------
// Output formats
// ------------------------------------------------------------------------

namespace detail {

template <typename T>
inline std::string join(const std::vector<T>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        if constexpr (std::is_same_v<T, Int>)
            s += v[i].get_str();
        else
            s += std::to_string(v[i]);
    }
    return s;
}

inline std::vector<std::vector<std::int64_t>> eta_rows(const DegreeMatrix& q) {
    std::vector<std::vector<std::int64_t>> rows;
    for (int r = 0; r < q.gamma.rank(); ++r) {
        std::vector<std::int64_t> row;
        for (const auto& e : q.eta) row.push_back(e.c[r]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline nlohmann::ordered_json record_to_json(const ClassificationRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["weights"] = r.matrix.constellation.wv.w;
    j["torsion"] = r.matrix.gamma.factors;
    j["degrees"] = r.matrix.constellation.degrees;
    j["eta"] = detail::eta_rows(r.matrix);
    j["antican_z"] = to_i64(r.antican_z);
    j["antican_torsion"] = r.antican_torsion.c;
    j["antican_cube"] = to_i64(r.antican_cube);
    j["h0"] = to_i64(r.h0);
    return j;
}

inline std::string to_json(const ClassificationRun& run) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : run.records) arr.push_back(record_to_json(r));
    return arr.dump(2) + "\n";
}

inline std::string to_csv(const ClassificationRun& run) {
    std::string out = "id,weights,torsion,degrees,eta,antican_z,antican_torsion,antican_cube,h0\n";
    for (const auto& r : run.records) {
        std::vector<std::string> rows;
        for (const auto& row : detail::eta_rows(r.matrix)) rows.push_back(detail::join(row, "."));
        std::string eta;
        for (size_t i = 0; i < rows.size(); ++i) eta += (i ? "|" : "") + rows[i];
        out += r.id + "," + detail::join(r.matrix.constellation.wv.w, ".") + "," +
               detail::join(r.matrix.gamma.factors, ".") + "," + detail::join(r.matrix.constellation.degrees, ".") +
               "," + eta + "," + r.antican_z.get_str() + "," + detail::join(r.antican_torsion.c, ".") + "," +
               r.antican_cube.get_str() + "," + r.h0.get_str() + "\n";
    }
    return out;
}

inline std::string to_table(const ClassificationRun& run) {
    std::vector<std::array<std::string, 5>> cells;
    cells.push_back({"ID", "degree data", "-K", "-K^3", "h0(-K)"});
    for (const auto& r : run.records) {
        std::string dd = "[" + detail::join(r.matrix.constellation.wv.w, " ");
        for (const auto& row : detail::eta_rows(r.matrix)) dd += "; " + detail::join(row, " ");
        dd += "] deg (" + detail::join(r.matrix.constellation.degrees, ",") + ")";
        std::string mk = r.antican_z.get_str();
        if (!r.matrix.gamma.trivial()) mk += " (" + detail::join(r.antican_torsion.c, ",") + ")";
        cells.push_back({r.id, dd, mk, r.antican_cube.get_str(), r.h0.get_str()});
    }
    std::array<size_t, 5> width{};
    for (const auto& row : cells)
        for (int i = 0; i < 5; ++i) width[i] = std::max(width[i], row[i].size());
    std::string out;
    for (const auto& row : cells) {
        for (int i = 0; i < 5; ++i) {
            out += row[i];
            if (i < 4) out += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

// ------------------------------------------------------------------------
// Worked-example fixtures
// ------------------------------------------------------------------------

struct FixtureCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct FixtureReport {
    std::vector<FixtureCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace fixture {

inline IntMat example_p() {
    return IntMat{{1, 1, 1, 0, -1}, {0, 3, 0, 1, -2}, {0, 0, 2, 1, -2}, {0, 0, 0, 2, -2}};
}

inline DegreeMatrix example_q() {
    WeightDegreeConstellation k(WeightVector(3, 1, {1, 2, 3, 6, 6}), {12});
    DegreeMatrix q{k, FiniteAbelianGroup{{2}}, {}};
    for (auto v : {0, 0, 1, 0, 1}) q.eta.push_back(GroupElement{{v}});
    return q;
}

inline LaurentSupport example_support() {
    return LaurentSupport{{{0, 0, 0, 0}, {-12, 4, 6, -5}, {-12, 6, 6, -6}, {-12, 4, 8, -6}, {-12, 4, 6, -4}}};
}

inline IntMat downgraded_p() {
    return IntMat{{1, 1, 1, 0, -1}, {0, 3, 0, 0, -1}, {0, 0, 2, 0, -1}, {0, 0, 0, 1, -1}};
}

inline IntMat transport_a() {
    return IntMat{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 1, 2}};
}

inline std::vector<std::vector<Int>> newton_vertices() {
    std::vector<std::vector<std::int64_t>> raw{
        {0, 0, 0, 0}, {-12, 4, 6, -5}, {-12, 6, 6, -6}, {-12, 4, 8, -6}, {-12, 4, 6, -4}};
    std::vector<std::vector<Int>> out;
    for (const auto& v : raw) out.push_back({Int(v[0]), Int(v[1]), Int(v[2]), Int(v[3])});
    return out;
}

inline std::vector<std::vector<Int>> downgraded_vertices() {
    std::vector<std::vector<std::int64_t>> raw{
        {0, 0, 0, 0}, {-12, 4, 6, 0}, {-12, 6, 6, 0}, {-12, 4, 8, 0}, {-12, 4, 6, 2}};
    std::vector<std::vector<Int>> out;
    for (const auto& v : raw) out.push_back({Int(v[0]), Int(v[1]), Int(v[2]), Int(v[3])});
    return out;
}

}  // namespace fixture

namespace detail {

inline std::vector<std::vector<Int>> vertex_set(const LatticeSimplex& s) {
    std::vector<std::vector<Int>> out;
    for (const auto& v : s.vertices) {
        std::vector<Int> iv;
        for (const auto& c : v) {
            if (c.get_den() != 1) return {};
            iv.push_back(c.get_num());
        }
        out.push_back(std::move(iv));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Executable form of the companion worked example: its generator and degree
// matrices, the Newton polytope with its 21 lattice points, the
// homogenization, and the downgrading with its transport matrix.
inline FixtureReport run_fixtures() {
    FixtureReport rep;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        rep.checks.push_back(FixtureCheck{name, ok, detail});
    };

    IntMat p = fixture::example_p();
    DegreeMatrix q = fixture::example_q();
    GeneratorMatrix gm{p};

    {
        IntMat pt = p.transpose();
        bool zrow = true, trow = true;
        for (int j = 0; j < pt.cols(); ++j) {
            Int wdot(0), tdot(0);
            for (int i = 0; i < pt.rows(); ++i) {
                wdot += Int(static_cast<long>(q.constellation.wv.w[i])) * pt.at(i, j);
                tdot += Int(static_cast<long>(q.eta[i].c[0])) * pt.at(i, j);
            }
            zrow = zrow && wdot == 0;
            trow = trow && tdot % 2 == 0;
        }
        check("weight row times generator transpose vanishes", zrow);
        check("torsion row times generator transpose vanishes mod 2", trow);
    }
    {
        auto coker = cokernel_structure(p.transpose());
        check("cokernel of generator transpose is Z x Z/2", coker == std::vector<Int>{Int(0), Int(2)},
              "got " + detail::join(coker, ","));
    }
    auto polys = relation_polytopes(q, gm);
    {
        auto got = detail::vertex_set(polys[0]);
        auto want = fixture::newton_vertices();
        std::sort(want.begin(), want.end());
        check("Newton polytope vertices match the printed five", got == want);
    }
    check("Newton polytope holds 21 lattice points", count_lattice_points(polys[0]) == 21);
    check("normal fan of the Newton polytope is spanned by the printed rays", verify_normal_fan(polys, gm));
    {
        auto g = homogenize(fixture::example_support(), gm);
        std::vector<std::vector<Int>> want;
        std::vector<std::int64_t> powers{12, 6, 4, 2, 2};
        for (int i = 0; i < 5; ++i) {
            std::vector<Int> e(5, Int(0));
            e[i] = powers[i];
            want.push_back(std::move(e));
        }
        std::sort(want.begin(), want.end());
        bool same = g == want;
        check("homogenization is the sum of the five pure powers", same);
        if (same) {
            auto [z, t] = monomial_degree(q, g[0]);
            bool deg_ok = z == 12 && t == zero_element(q.gamma);
            for (const auto& e : g) {
                auto [z2, t2] = monomial_degree(q, e);
                deg_ok = deg_ok && z2 == z && t2 == t;
            }
            check("homogenization degree is (12, 0)", deg_ok);
        }
    }
    {
        IntMat ptilde = fixture::downgraded_p();
        IntMat a = fixture::transport_a();
        check("printed transport satisfies downgraded-transpose times A = transpose",
              ptilde.transpose() * a == p.transpose());
        GeneratorMatrix gmd{ptilde};
        DegreeMatrix qd = downgrade_matrix(q, all_elements(q.gamma));
        auto dpolys = relation_polytopes(qd, gmd);
        auto got = detail::vertex_set(dpolys[0]);
        auto want = fixture::downgraded_vertices();
        std::sort(want.begin(), want.end());
        check("downgraded polytope vertices match the printed five", got == want);
        check("downgraded polytope holds 36 lattice points", count_lattice_points(dpolys[0]) == 36);
    }
    {
        auto down = downgrade_geometry(q, gm, all_elements(q.gamma));
        check("computed transport satisfies the defining equation",
              down.p_tilde.p.transpose() * down.a == p.transpose());
        check("transport determinant has the subgroup order", abs(det(down.a)) == 2);
        auto dpolys = relation_polytopes(down.downgraded, down.p_tilde);
        check("transported polytope holds 36 lattice points", count_lattice_points(dpolys[0]) == 36);
    }
    return rep;
}

// ------------------------------------------------------------------------
// Full verification sweep (fixtures + invariants over a classification run)
// ------------------------------------------------------------------------

inline FixtureReport run_verification(std::int64_t cutoff = 100) {
    FixtureReport rep = run_fixtures();
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        rep.checks.push_back(FixtureCheck{name, ok, detail});
    };

    std::array<size_t, 4> expected_constellations{0, 24, 5, 1};
    for (int c : {1, 2, 3}) {
        auto s = enumerate_constellations(3, c, EnumerationOptions{cutoff, true});
        check("constellation count of type (3," + std::to_string(c) + ") is " +
                  std::to_string(expected_constellations[c]),
              s.size() == expected_constellations[c], "got " + std::to_string(s.size()));
    }

    ClassificationRun run = classify({1, 2, 3}, ClassifyOptions{cutoff});
    std::array<std::int64_t, 4> expected_totals{0, 59, 16, 3};
    for (int c : {1, 2, 3})
        check("family total of codimension " + std::to_string(c) + " is " + std::to_string(expected_totals[c]),
              run.summary.per_type[c] == expected_totals[c], "got " + std::to_string(run.summary.per_type[c]));
    check("grand total is 78", run.summary.total == 78, "got " + std::to_string(run.summary.total));

    std::set<std::string> ids;
    bool rt = true, fan = true, cube = true, h0 = true, down_ok = true, kpos = true;
    std::string first_fail;
    for (const auto& r : run.records) {
        ids.insert(r.id);
        const DegreeMatrix& q = r.matrix;
        GeneratorMatrix gm = generator_matrix(q);
        Int kz = Int(static_cast<long>(sum64(q.constellation.wv.w) - sum64(q.constellation.degrees)));
        if (!(r.antican_z == kz && kz > 0)) kpos = false;
        Rat c3 = anticanonical_selfintersection(q);
        if (!(c3.get_den() == 1 && c3 > 0 && c3.get_num() == r.antican_cube)) cube = false;
        if (h0_anticanonical(q, gm) != h0_monomial_oracle(q)) h0 = false;
        if (!verify_normal_fan(relation_polytopes(q, gm), gm)) fan = false;
        if (!roundtrip_identity(q, gm)) rt = false;
        for (const auto& sub : all_subgroups(q.gamma)) {
            std::vector<GroupElement> gens;
            for (auto code : sub) gens.push_back(element_from_code(q.gamma, code));
            DegreeMatrix d = downgrade_matrix(q, gens);
            bool ok = is_homogeneous(d) && is_almost_free(d) && is_gorenstein_matrix(d);
            if (ok && !q.gamma.trivial()) {
                auto geo = downgrade_geometry(q, gm, gens);
                ok = abs(det(geo.a)) == static_cast<long>(sub.size()) &&
                     geo.p_tilde.p.transpose() * geo.a == gm.p.transpose();
            }
            if (!ok) {
                down_ok = false;
                if (first_fail.empty()) first_fail = r.id;
            }
        }
    }
    check("record ids are unique", ids.size() == run.records.size());
    check("anticanonical degree is the weight sum minus the degree sum, positive", kpos);
    check("anticanonical cube is a positive integer and matches the records", cube);
    check("polytope and monomial section counts agree on every family", h0);
    check("every family passes the normal fan check", fan);
    check("generator matrix roundtrip reproduces every family", rt);
    check("downgrading preserves the defining properties for every subgroup", down_ok, first_fail);

    ClassificationRun rerun = classify({1, 2, 3}, ClassifyOptions{cutoff});
    check("classification is deterministic across reruns", to_csv(run) == to_csv(rerun));
    return rep;
}

}  // namespace gtci
