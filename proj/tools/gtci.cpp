// Command line front end: enumerate constellations, run the classification,
// compute invariants of user-supplied degree data, and verify the build
// against the worked example and the invariant suite.
//
// Exit codes: 0 success, 1 verification failures, 2 usage/validation error,
// 3 unwritable output path, 4 inconsistent degree data.
#include <gtci/gtci.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

bool g_quiet = false;

std::ostream& note() {
    static std::ofstream devnull("/dev/null");
    return g_quiet ? devnull : std::cerr;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw CLI::ValidationError("empty entry in list '" + s + "'");
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

std::pair<int, int> parse_type(const std::string& s) {
    auto v = parse_int_list(s);
    if (v.size() != 2) throw CLI::ValidationError("--type expects d,c");
    return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

// Resolve the output stream: stdout when no path is given; paths are taken
// relative to GTCI_OUTPUT_DIR when that is set and the path is relative.
int write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::string full = path;
    const char* dir = std::getenv("GTCI_OUTPUT_DIR");
    if (dir && *dir && path.front() != '/') full = std::string(dir) + "/" + path;
    std::ofstream os(full);
    if (!os) {
        std::cerr << "error: cannot write to '" << full << "'\n";
        return 3;
    }
    os << payload;
    if (!os.good()) {
        std::cerr << "error: write to '" << full << "' failed\n";
        return 3;
    }
    note() << "wrote " << full << "\n";
    return 0;
}

int cmd_enumerate(const std::string& type, std::int64_t cutoff) {
    auto [d, c] = parse_type(type);
    auto set = gtci::enumerate_constellations(d, c, gtci::EnumerationOptions{cutoff, true});
    for (const auto& k : set) std::cout << k.to_string() << "\n";
    note() << set.size() << " constellations of type (" << d << "," << c << ")\n";
    return 0;
}

int cmd_classify(const std::string& type, const std::string& format, const std::string& output,
                 std::int64_t cutoff) {
    std::vector<int> c_set{1, 2, 3};
    if (type != "all") {
        auto [d, c] = parse_type(type);
        if (d != 3 || c < 1 || c > 3) throw CLI::ValidationError("--type must be 3,1 3,2 3,3 or all");
        c_set = {c};
    }
    if (format != "json" && format != "csv" && format != "table")
        throw CLI::ValidationError("--format must be json, csv or table");
    gtci::ClassificationRun run = gtci::classify(c_set, gtci::ClassifyOptions{cutoff});
    std::string payload = format == "json" ? gtci::to_json(run)
                        : format == "csv"  ? gtci::to_csv(run)
                                           : gtci::to_table(run);
    int rc = write_output(output, payload);
    if (rc) return rc;
    note() << "total families: " << run.summary.total << "\n";
    for (const auto& [c, n] : run.summary.per_type) note() << "  codimension " << c << ": " << n << "\n";
    return 0;
}

int cmd_invariants(const std::string& w_arg, const std::string& deg_arg, const std::string& torsion_arg,
                   const std::vector<std::string>& eta_args) {
    gtci::DegreeMatrix q;
    try {
        gtci::Weights w = parse_int_list(w_arg);
        gtci::Weights degrees = parse_int_list(deg_arg);
        std::sort(degrees.begin(), degrees.end());
        int d = 3;
        int c = static_cast<int>(degrees.size());
        gtci::WeightDegreeConstellation k(gtci::WeightVector(d, c, w), degrees);
        gtci::FiniteAbelianGroup gamma;
        if (!torsion_arg.empty()) gamma = gtci::FiniteAbelianGroup{parse_int_list(torsion_arg)};
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& e : eta_args) rows.push_back(parse_int_list(e));
        if (static_cast<int>(rows.size()) != gamma.rank())
            throw std::invalid_argument("expected one --eta row per torsion factor");
        q = gtci::DegreeMatrix{k, gamma, {}};
        for (size_t i = 0; i < w.size(); ++i) {
            std::vector<std::int64_t> coords;
            for (const auto& row : rows) {
                if (row.size() != w.size()) throw std::invalid_argument("--eta row length must match the weights");
                coords.push_back(row[i]);
            }
            q.eta.push_back(gtci::make_element(gamma, coords));
        }
        gtci::validate_degree_matrix(q);
    } catch (const std::invalid_argument& e) {
        std::cerr << "inconsistent degree data: " << e.what() << "\n";
        return 4;
    }

    auto [z, t] = gtci::anticanonical_class(q);
    std::cout << "-K = (" << z.get_str();
    for (auto c : t.c) std::cout << ", " << c;
    std::cout << ")\n";
    std::cout << "-K^3 = " << gtci::to_string(gtci::anticanonical_selfintersection(q)) << "\n";
    gtci::GeneratorMatrix gm = gtci::generator_matrix(q);
    std::cout << "h0(-K) = " << gtci::h0_anticanonical(q, gm).get_str() << "\n";
    std::cout << "gorenstein = " << (gtci::is_gorenstein_matrix(q) ? "yes" : "no") << "\n";
    std::cout << "fano = " << (gtci::is_fano(q.constellation) ? "yes" : "no") << "\n";
    std::cout << "true = " << (gtci::is_true(q.constellation) ? "yes" : "no") << "\n";
    std::cout << "almost_free = yes\n";
    return 0;
}

int cmd_verify(std::int64_t cutoff) {
    gtci::FixtureReport rep = gtci::run_verification(cutoff);
    int failures = 0;
    for (const auto& c : rep.checks) {
        if (c.pass) {
            std::cout << "ok    " << c.name << "\n";
        } else {
            ++failures;
            std::cout << "FAIL  " << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
        }
    }
    note() << rep.checks.size() << " checks, " << failures << " failures\n";
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification of Gorenstein Fano toric complete intersection threefolds of rank one"};
    app.require_subcommand(1);

    std::int64_t cutoff = 100;
    app.add_option("--cutoff", cutoff, "sweep bound for the unbounded tail families (>= 24)")
        ->check(CLI::Range(std::int64_t(24), std::int64_t(1000000)));
    app.add_flag("-q,--quiet", g_quiet, "suppress summaries on stderr");

    std::string type = "all", format = "table", output;
    auto* enumerate = app.add_subcommand("enumerate", "list the weight-degree constellations of one type");
    enumerate->add_option("--type", type, "type d,c with d = 3 and c in {1,2,3}")->required();

    std::string cl_type = "all", cl_format = "json", cl_output;
    auto* classify = app.add_subcommand("classify", "compute the classified families");
    classify->add_option("--type", cl_type, "type d,c or 'all'");
    classify->add_option("--format", cl_format, "output format: json, csv or table");
    classify->add_option("--output", cl_output, "output path (default: stdout; relative paths use GTCI_OUTPUT_DIR)");

    std::string w_arg, deg_arg, torsion_arg;
    std::vector<std::string> eta_args;
    auto* invariants = app.add_subcommand("invariants", "invariants of user-supplied degree data");
    invariants->add_option("--w", w_arg, "weights, ascending, comma separated")->required();
    invariants->add_option("--deg", deg_arg, "relation degrees, comma separated")->required();
    invariants->add_option("--torsion", torsion_arg, "torsion invariant factors, largest first");
    invariants->add_option("--eta", eta_args, "torsion row (repeat once per factor)");

    auto* verify = app.add_subcommand("verify", "run the fixtures and the invariant suite");

    try {
        app.parse(argc, argv);
        if (enumerate->parsed()) return cmd_enumerate(type, cutoff);
        if (classify->parsed()) return cmd_classify(cl_type, cl_format, cl_output, cutoff);
        if (invariants->parsed()) return cmd_invariants(w_arg, deg_arg, torsion_arg, eta_args);
        if (verify->parsed()) return cmd_verify(cutoff);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
