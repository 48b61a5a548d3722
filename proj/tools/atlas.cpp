// Command-line front end: roots, gradings, classification reports, bi-orbital tables, Jordan oracle.

#include "atlas/classify.hpp"
#include "atlas/enumerate.hpp"
#include "atlas/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace atlas;

namespace {

constexpr int kUsage = 1;
constexpr int kVerify = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IVec parse_list(const std::string& s, const char* what) {
    try {
        return parse_coords(s);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad ") + what + " '" + s + "': " + e.what());
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// Prints a line diff of the first few mismatches; true when identical.
bool compare(const std::string& name, const std::string& want, const std::string& got) {
    if (want == got) return true;
    const auto a = split_lines(want), b = split_lines(got);
    std::cerr << "mismatch in " << name << "\n";
    int shown = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()) && shown < 10; ++i) {
        const std::string x = i < a.size() ? a[i] : "<eof>", y = i < b.size() ? b[i] : "<eof>";
        if (x == y) continue;
        std::cerr << "  line " << i + 1 << "\n  - " << x << "\n  + " << y << "\n";
        ++shown;
    }
    if (shown == 0) std::cerr << "  (line endings differ)\n";
    return false;
}

Family family_arg(const std::string& name, int m0) {
    try {
        return make_family(name, m0);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

const AffineDiagram& diagram_arg(const std::string& name) {
    try {
        return affine_by_name(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string verdict_name(DistinguishedKind k) {
    switch (k) {
        case DistinguishedKind::Yes: return "yes";
        case DistinguishedKind::NilpotentOnly: return "nilpotent only";
        default: return "none";
    }
}

int cmd_roots(const std::string& name) {
    const auto& names = exceptional_diagram_names();
    const bool affine_only = name.size() > 1 && std::isdigit(static_cast<unsigned char>(name[0]));
    if (!affine_only) {
        CartanType t;
        try {
            t = parse_cartan_type(name);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const auto& rs = build_finite(t);
        std::cout << "type: " << t.name() << "\nrank: " << rs.rank() << "\npositive roots: " << rs.positive_roots.size()
                  << "\ndimension: " << rs.dimension() << "\nhighest root: " << kac_string(rs.highest_root)
                  << "\ncartan matrix:\n";
        for (const auto& row : rs.cartan_matrix) {
            std::cout << " ";
            for (int x : row) std::cout << " " << (x >= 0 ? " " : "") << x;
            std::cout << "\n";
        }
    }
    if (affine_only || std::find(names.begin(), names.end(), name) != names.end()) {
        const auto& d = diagram_arg(name);
        std::cout << "affine diagram: " << name << "\ntwist: " << d.twist << "\nnodes (display order, Kac index):";
        for (int p = 0; p < d.size(); ++p) std::cout << " " << d.kac_index[p];
        std::cout << "\nmarks: " << kac_string(d.marks) << "\ncomarks: " << kac_string(d.comarks)
                  << "\ncoxeter number: " << d.coxeter_number() << "\nautomorphisms: " << d.automorphisms.size() << "\n";
    }
    return 0;
}

int cmd_grading_kac(const std::string& diagram, const std::string& coords) {
    const auto& d = diagram_arg(diagram);
    const IVec n = parse_list(coords, "coordinates");
    try {
        require_alcove(d, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto g = graded_dims(d, n);
    std::cout << "diagram: " << diagram << "\nkac: " << kac_string(n) << "\nnormalized: " << kac_string(normalize(d, n))
              << "\nm: " << g.m << "\n";
    for (int k = 0; k < g.m; ++k) std::cout << "dims[" << k << "] = " << g.dims[k] << "\n";
    std::cout << "r: " << r_value(d, n) << "\n";
    if (is_exceptional_diagram(diagram))
        if (const auto* l = grading_table().by_kac(diagram, n)) std::cout << "label: " << l->name() << "\n";
    return 0;
}

int cmd_grading_classical(const std::string& family, int m0, const std::string& dims) {
    const Family f = family_arg(family, m0);
    const IVec d = parse_list(dims, "dimension vector");
    try {
        check_dims(f, d);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto g = group_dims(f, d);
    std::cout << "family: " << f.str() << "\nm: " << f.m() << "\nd: " << dims_string(d) << "\ndim g0: " << g.g0
              << "\ndim g1: " << g.g1 << "\nr: " << r_value(f, d) << "\n";
    const auto v = distinguished_exists(f, d);
    std::cout << "distinguished: " << verdict_name(v.kind) << "\n";
    for (const auto& s : v.segments) std::cout << "  " << s.str() << "\n";
    return 0;
}

int emit_report(const ClassificationReport& rep, const std::string& format) {
    if (format == "json")
        std::cout << to_json(rep).dump(2) << "\n";
    else
        std::cout << to_text(rep);
    return 0;
}

std::string render(const std::string& diagram, int kmax, const std::string& format) {
    std::vector<std::string> warnings;
    const auto rows = exceptional_enumerate(diagram, kmax, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    if (format == "json") return to_json(diagram, rows, kmax, warnings).dump(2) + "\n";
    if (format == "csv") return to_csv(diagram, rows);
    return to_markdown(diagram, rows, kmax, warnings);
}

int cmd_enumerate(const std::string& diagram, int kmax, const std::string& format, const std::string& golden, bool check) {
    if (!is_exceptional_diagram(diagram)) throw UsageError("enumerate needs one of G2, 3D4, F4, 2E6, E6, E7, E8");
    if (kmax < 0) throw UsageError("--kmax must be nonnegative");
    if (check && golden.empty()) throw UsageError("--check needs --golden");
    const std::string out = render(diagram, kmax, format);
    if (golden.empty()) {
        std::cout << out;
        return 0;
    }
    if (check) {
        if (!compare(golden, read_text(golden), out)) return kVerify;
        std::cout << "ok " << golden << "\n";
        return 0;
    }
    write_text(golden, out);
    std::cout << "wrote " << golden << "\n";
    return 0;
}

int cmd_tables(const std::string& dir, bool check) {
    namespace fs = std::filesystem;
    if (!check) fs::create_directories(dir);
    int status = 0;
    for (const auto& name : exceptional_diagram_names()) {
        const std::string path = (fs::path(dir) / (name + ".md")).string();
        const std::string out = render(name, 0, "md");
        if (check) {
            if (!fs::exists(path)) {
                std::cerr << "missing golden file " << path << "\n";
                status = kVerify;
            } else if (compare(path, read_text(path), out)) {
                std::cout << "ok " << name << "\n";
            } else {
                status = kVerify;
            }
        } else {
            write_text(path, out);
            std::cout << "wrote " << path << "\n";
        }
    }
    return status;
}

int cmd_oracle(const std::string& family, int m0, const std::string& dims, long long samples, std::uint64_t seed) {
    const Family f = family_arg(family, m0);
    const IVec d = parse_list(dims, "dimension vector");
    try {
        check_dims(f, d);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    int total = 0;
    for (int x : d) total += x;
    if (total > 8) throw UsageError("the oracle supports total dimension <= 8");
    if (samples < 0) throw UsageError("--samples must be nonnegative");
    const auto res = jordan_oracle(f, d, samples, seed);
    const auto adm = admissible_segments(f, d);
    const std::set<MultiSegment> adm_set(adm.begin(), adm.end());
    std::cout << "family: " << f.str() << "\nd: " << dims_string(d) << "\nparameters: " << res.parameters
              << "\nsearch: " << (res.exhaustive ? "exhaustive" : "sampled") << " (" << res.tried << " elements, "
              << res.nilpotent << " nilpotent)\nobserved:\n";
    bool subset = true;
    for (const auto& s : res.observed) {
        const bool ok = adm_set.count(s) > 0;
        subset = subset && ok;
        std::cout << "  " << s.str() << (ok ? "" : "  NOT ADMISSIBLE") << "\n";
    }
    std::cout << "admissible: " << adm.size() << ", observed: " << res.observed.size() << "\n";
    for (const auto& s : adm)
        if (!res.observed.count(s)) std::cout << "  unobserved: " << s.str() << "\n";
    return subset ? 0 : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclically graded Lie algebras: gradings, cuspidal supports, bi-orbital tables"};
    app.require_subcommand(1);
    std::string data;
    app.add_option("--data-dir", data, "Directory with the data files (default: ATLAS_DATA_DIR or the built-in path)");

    std::string type;
    auto* roots = app.add_subcommand("roots", "Root system and affine diagram data");
    roots->add_option("type", type, "Cartan type (E6, B4, ...) or twisted diagram (2E6, 3D4)")->required();

    auto* grading = app.add_subcommand("grading", "Graded dimensions of a grading");
    grading->require_subcommand(1);
    std::string diagram, coords, label, family, dims, format = "text";
    int m0 = 0;
    auto* g_kac = grading->add_subcommand("kac", "Grading from Kac coordinates");
    g_kac->add_option("--diagram", diagram, "Affine diagram")->required();
    g_kac->add_option("--coords", coords, "Kac coordinates in display order")->required();
    auto* g_cl = grading->add_subcommand("classical", "Grading from a quiver dimension vector");
    g_cl->add_option("--family", family, "Family (A, 2AI, BDI, CIII, ...)")->required();
    g_cl->add_option("--m0", m0, "Quiver length")->required();
    g_cl->add_option("--dims", dims, "Dimension vector")->required();

    auto* classify = app.add_subcommand("classify", "Existence and support of cuspidal character sheaves");
    classify->require_subcommand(1);
    auto* c_kac = classify->add_subcommand("kac", "Exceptional grading by Kac coordinates or label");
    c_kac->add_option("--diagram", diagram, "Affine diagram")->required();
    auto* c_coords = c_kac->add_option("--coords", coords, "Kac coordinates in display order");
    auto* c_label = c_kac->add_option("--label", label, "RLYG label (e.g. 4_a)");
    c_coords->excludes(c_label);
    c_kac->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    auto* c_cl = classify->add_subcommand("classical", "Classical grading by dimension vector");
    c_cl->add_option("--family", family, "Family")->required();
    c_cl->add_option("--m0", m0, "Quiver length")->required();
    c_cl->add_option("--dims", dims, "Dimension vector")->required();
    c_cl->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    int kmax = 0;
    std::string golden, eformat = "md";
    bool check = false;
    auto* enumerate = app.add_subcommand("enumerate", "Bi-orbital supercuspidal table for one diagram");
    enumerate->add_option("--diagram", diagram, "G2, 3D4, F4, 2E6, E6, E7 or E8")->required();
    enumerate->add_option("--kmax", kmax, "Instantiate families for 2 <= k <= kmax");
    enumerate->add_option("--format", eformat, "md, json or csv")->check(CLI::IsMember({"md", "json", "csv"}));
    enumerate->add_option("--golden", golden, "Golden file to write, or to compare with --check");
    enumerate->add_flag("--check", check, "Compare with the golden file instead of writing it");

    bool all = false;
    std::string tables_dir = ATLAS_DEFAULT_TABLES_DIR;
    auto* tables = app.add_subcommand("tables", "All seven tables as golden Markdown files");
    tables->add_flag("--all", all, "Every supported diagram")->required();
    tables->add_flag("--check", check, "Compare with the golden files");
    tables->add_option("--dir", tables_dir, "Golden file directory");

    auto* oracle = app.add_subcommand("oracle", "Brute-force validation oracles");
    oracle->require_subcommand(1);
    long long samples = 0;
    std::uint64_t seed = 0;
    auto* jordan = oracle->add_subcommand("jordan", "Graded Jordan types of sampled elements of g1");
    jordan->add_option("--family", family, "Family")->required();
    jordan->add_option("--m0", m0, "Quiver length")->required();
    jordan->add_option("--dims", dims, "Dimension vector")->required();
    jordan->add_option("--samples", samples, "Random draws after the exhaustive phase")->required();
    jordan->add_option("--seed", seed, "Random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (!data.empty()) set_data_dir(data);
        if (*roots) return cmd_roots(type);
        if (*g_kac) return cmd_grading_kac(diagram, coords);
        if (*g_cl) return cmd_grading_classical(family, m0, dims);
        if (*c_kac) {
            if (!is_exceptional_diagram(diagram)) throw UsageError("classify kac needs one of G2, 3D4, F4, 2E6, E6, E7, E8");
            if (!label.empty()) return emit_report(classify_exceptional_label(diagram, label), format);
            if (coords.empty()) throw UsageError("classify kac needs --coords or --label");
            const IVec n = parse_list(coords, "coordinates");
            try {
                require_alcove(affine_by_name(diagram), n);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return emit_report(classify_exceptional(diagram, n), format);
        }
        if (*c_cl) {
            const Family f = family_arg(family, m0);
            const IVec d = parse_list(dims, "dimension vector");
            try {
                check_dims(f, d);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return emit_report(classify_classical(f, d), format);
        }
        if (*enumerate) return cmd_enumerate(diagram, kmax, eformat, golden, check);
        if (*tables) return cmd_tables(tables_dir, check);
        if (*jordan) return cmd_oracle(family, m0, dims, samples, seed);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kVerify;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kVerify;
    }
    return kUsage;
}
