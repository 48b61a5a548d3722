#pragma once

#include "atlas/cyclo.hpp"
#include "atlas/enumerate.hpp"
#include "atlas/gradings.hpp"
#include "atlas/kac.hpp"
#include "atlas/linalg.hpp"
#include "atlas/quiver.hpp"
#include "atlas/rootsys.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace atlas {

// ---------------------------------------------------------------------------
// Reports

struct SupportInfo {
    SupportKind kind = SupportKind::Nilpotent;
    std::string orbit;       // multi-segment or rho label; for strata the nilpotent part
    int cartan_dim = 0;      // strata and full support
    std::string levi;        // strata
};

struct ReportCase {
    std::string source;      // pattern clause, data list, or enumeration row
    std::string params;
    SupportInfo support;
    std::optional<int> count;
    std::string character_conditions;
    std::string weyl_group;
};

struct ClassificationReport {
    std::string grading;
    bool exists = false;
    bool determined = true;
    std::optional<long long> r;
    std::optional<int> rank_info;
    std::string rank_provenance;
    std::optional<std::string> label;
    std::vector<ReportCase> cases;
    std::vector<std::string> notes;

    const ReportCase* primary() const { return cases.empty() ? nullptr : &cases.front(); }
    std::optional<SupportKind> support() const {
        if (!exists || cases.empty()) return std::nullopt;
        return cases.front().support.kind;
    }
    std::string verdict() const { return !determined ? "undetermined" : exists ? "yes" : "no"; }
};

inline json support_json(const SupportInfo& s) {
    json j{{"kind", support_name(s.kind)}};
    if (s.kind != SupportKind::Full) j["orbit"] = s.orbit;
    if (s.kind != SupportKind::Nilpotent) j["cartan_dim"] = s.cartan_dim;
    if (s.kind == SupportKind::Stratum) j["levi"] = s.levi;
    return j;
}

inline json to_json(const ClassificationReport& rep) {
    json j;
    j["schema"] = "atlas.report/1";
    j["grading"] = rep.grading;
    j["label"] = rep.label ? json(*rep.label) : json(nullptr);
    j["exists"] = rep.determined ? json(rep.exists) : json(nullptr);
    j["r"] = rep.r ? json(*rep.r) : json(nullptr);
    if (rep.rank_info)
        j["rank_info"] = {{"value", *rep.rank_info}, {"provenance", rep.rank_provenance}};
    else
        j["rank_info"] = nullptr;
    const ReportCase* p = rep.exists ? rep.primary() : nullptr;
    j["support"] = p ? support_json(p->support) : json(nullptr);
    j["character_conditions"] = p ? json(p->character_conditions) : json(nullptr);
    j["weyl_group"] = p && !p->weyl_group.empty() ? json(p->weyl_group) : json(nullptr);
    j["cases"] = json::array();
    for (const auto& c : rep.cases) {
        json e{{"source", c.source}, {"params", c.params}, {"support", support_json(c.support)},
               {"character_conditions", c.character_conditions}, {"weyl_group", c.weyl_group}};
        e["count"] = c.count ? json(*c.count) : json(nullptr);
        j["cases"].push_back(e);
    }
    j["notes"] = rep.notes;
    return j;
}

inline std::string support_text(const SupportInfo& s) {
    switch (s.kind) {
        case SupportKind::Full: return "full";
        case SupportKind::Nilpotent: return "nilpotent, closure of O(" + s.orbit + ")";
        default:
            return "stratum, cuspidal Cartan dim " + std::to_string(s.cartan_dim) + ", nilpotent part " + s.orbit +
                   ", Levi " + s.levi;
    }
}

inline std::string to_text(const ClassificationReport& rep) {
    std::ostringstream o;
    o << "grading: " << rep.grading;
    if (rep.label) o << " (" << *rep.label << ")";
    o << "\nexists: " << rep.verdict() << "\n";
    o << "r: " << (rep.r ? std::to_string(*rep.r) : std::string("unknown")) << "\n";
    if (rep.rank_info) o << "rank: " << *rep.rank_info << " [" << rep.rank_provenance << "]\n";
    for (size_t i = 0; i < rep.cases.size(); ++i) {
        const auto& c = rep.cases[i];
        o << "case " << i + 1 << ": " << c.source;
        if (!c.params.empty()) o << " (" << c.params << ")";
        o << "\n  support: " << support_text(c.support) << "\n";
        if (c.count) o << "  count: " << *c.count << "\n";
        if (!c.character_conditions.empty()) o << "  character: " << c.character_conditions << "\n";
        if (!c.weyl_group.empty()) o << "  weyl group: " << c.weyl_group << "\n";
    }
    for (const auto& n : rep.notes) o << "note: " << n << "\n";
    return o.str();
}

// ---------------------------------------------------------------------------
// Classical gradings

inline ClassificationReport classify_classical(const Family& f, const IVec& d) {
    check_dims(f, d);
    ClassificationReport rep;
    rep.grading = f.str() + " d=" + dims_string(d);
    rep.r = r_value(f, d);
    for (const auto& p : classical_matches(f, d)) {
        ReportCase c;
        c.source = p.clause;
        c.params = p.params_str();
        if (p.epsilon) c.params += std::string(c.params.empty() ? "" : ",") + "eps=" + (p.epsilon > 0 ? "+1" : "-1");
        c.support.kind = p.support;
        c.support.orbit = p.nilpotent.str();
        c.support.cartan_dim = p.cartan_dim;
        c.support.levi = p.levi;
        c.count = p.count;
        c.character_conditions = p.character;
        c.weyl_group = p.weyl_group;
        rep.cases.push_back(std::move(c));
    }
    rep.exists = !rep.cases.empty();
    if (!rep.exists) {
        if (f.vinberg_type() == 2)
            rep.notes.push_back("type II family: no cuspidal character sheaves");
        else
            rep.notes.push_back("d matches no parametric case of the classification");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Exceptional gradings

inline bool is_exceptional_diagram(const std::string& name) {
    const auto& v = exceptional_diagram_names();
    return std::find(v.begin(), v.end(), name) != v.end();
}

namespace detail {

inline void require_exceptional(const std::string& diagram) {
    if (!is_exceptional_diagram(diagram))
        throw std::invalid_argument("unsupported diagram '" + diagram + "' (expected G2, 3D4, F4, 2E6, E6, E7, E8)");
}

inline ReportCase data_case(const LabelledGrading& g) {
    ReportCase c;
    c.source = g.in("git_stable") ? "git_stable" : g.in("affords_stratum") ? "affords_stratum" : "affords_full";
    c.weyl_group = g.weyl_group.value_or("");
    if (g.stratum) {
        c.support.kind = SupportKind::Stratum;
        c.support.cartan_dim = g.stratum->cartan_dim;
        c.support.levi = g.stratum->levi;
        c.support.orbit = g.stratum->nilpotent;
    } else {
        c.support.kind = SupportKind::Full;
        c.support.cartan_dim = g.rank.value_or(0);
    }
    return c;
}

inline const std::vector<BiorbitalRow>& cached_rows(const std::string& diagram) {
    static std::mutex mu;
    static std::map<std::string, std::vector<BiorbitalRow>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const std::string key = data_dir() + "|" + diagram;
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, exceptional_enumerate(diagram, 0)).first;
    return it->second;
}

// Bi-orbital rows whose explicit lines or family members are the grading kc (normalized).
inline std::vector<ReportCase> biorbital_cases(const std::string& diagram, const IVec& n) {
    const auto& d = affine_by_name(diagram);
    const int m = order(d, n);
    std::vector<ReportCase> out;
    for (const auto& row : cached_rows(diagram)) {
        bool hit = false;
        for (const auto& e : row.explicit_lines)
            if (e.m == m && normalize(d, e.kac) == n) hit = true;
        if (!hit && m >= row.family.base && (m - row.family.base) % row.family.step == 0) {
            IVec kc = row.rho;
            kc[row.beta] = (m - row.family.base) / row.family.step;
            hit = normalize(d, kc) == n;
        }
        if (!hit) continue;
        ReportCase c;
        c.source = "bi-orbital row " + row.levi;
        c.params = "O_L=" + row.orbit() + ",m=" + row.family_spec();
        c.support.kind = SupportKind::Nilpotent;
        c.support.orbit = row.orbit() + " in " + row.levi;
        c.count = row.count;
        if (!row.chi.empty()) c.character_conditions = "chi on Z(G): " + row.chi;
        c.weyl_group = "trivial";
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace detail

// kc in display order; it need not be normalized.
inline ClassificationReport classify_exceptional(const std::string& diagram, const IVec& kc) {
    detail::require_exceptional(diagram);
    const auto& d = affine_by_name(diagram);
    require_alcove(d, kc);
    const IVec n = normalize(d, kc);
    const int m = order(d, n);
    ClassificationReport rep;
    rep.grading = diagram + " m=" + std::to_string(m) + " Kac " + kac_string(n);
    rep.r = r_value(d, n);
    const long long r = *rep.r;
    const auto& table = grading_table();
    const LabelledGrading* g = table.by_kac(diagram, n);
    if (g) {
        rep.label = g->label;
        rep.rank_info = g->rank;
        if (g->rank) rep.rank_provenance = g->provenance;
        if (g->in("r_zero") && r != 0) rep.notes.push_back("listed with r = 0 but r computes to " + std::to_string(r));
        if (g->in("r_equals_rank") && g->rank && r != *g->rank)
            rep.notes.push_back("listed with r = dim c but r computes to " + std::to_string(r));
    }
    if (r < 0) {
        rep.notes.push_back("r < 0: dim g0 exceeds dim g1");
        return rep;
    }
    if (g && (g->in("git_stable") || g->in("affords_full") || g->in("affords_stratum"))) {
        rep.exists = true;
        rep.cases.push_back(detail::data_case(*g));
        return rep;
    }
    if (r == 0) {
        rep.cases = detail::biorbital_cases(diagram, n);
        rep.exists = !rep.cases.empty();
        if (!rep.exists) rep.notes.push_back("r = 0 and no bi-orbital supercuspidal row produces this grading");
        return rep;
    }
    if (g) {
        rep.notes.push_back("positive-rank grading not in the affirmative lists");
        return rep;
    }
    if (auto cand = table.ambiguous_candidate(diagram, n)) {
        rep.determined = false;
        rep.notes.push_back("may be the labelled grading " + *cand + ", whose Kac diagram is not on file");
        return rep;
    }
    rep.notes.push_back("unlisted grading with r > 0");
    return rep;
}

// Lookup by RLYG label; labels without a Kac diagram are decided from list membership when possible.
inline ClassificationReport classify_exceptional_label(const std::string& diagram, const std::string& label) {
    detail::require_exceptional(diagram);
    const LabelledGrading* g = grading_table().by_label(diagram, label);
    if (!g) throw std::invalid_argument("no grading labelled '" + label + "' for " + diagram);
    if (g->kac) return classify_exceptional(diagram, *g->kac);
    ClassificationReport rep;
    rep.grading = diagram + (g->m ? " m=" + std::to_string(*g->m) : std::string());
    rep.label = g->label;
    rep.rank_info = g->rank;
    if (g->rank) rep.rank_provenance = g->provenance;
    if (g->in("r_zero")) rep.r = 0;
    if (g->in("r_equals_rank") && g->rank) rep.r = *g->rank;
    if (g->in("git_stable") || g->in("affords_full") || g->in("affords_stratum")) {
        rep.exists = true;
        rep.cases.push_back(detail::data_case(*g));
    } else if (g->in("r_zero")) {
        rep.determined = false;
        rep.notes.push_back("r = 0 but no Kac diagram on file to match against the bi-orbital tables");
    } else {
        rep.notes.push_back("positive-rank grading not in the affirmative lists");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Weyl group elements on the coweight space

// Product of reflections s_{word[0]} s_{word[1]} ...; roots in simple-root coordinates, any sign.
struct WeylElement {
    const FiniteRootSystem* rs = nullptr;
    std::vector<IVec> word;
};

inline IVec root_from_string(const FiniteRootSystem& rs, const std::string& s) {
    if (s == "a0" || s == "alpha0") {
        IVec v = rs.highest_root;
        for (auto& x : v) x = -x;
        return v;
    }
    IVec v = parse_coords(s);
    if (static_cast<int>(v.size()) != rs.rank()) throw std::invalid_argument("root '" + s + "' has the wrong length");
    IVec a = v;
    if (std::all_of(a.begin(), a.end(), [](int x) { return x <= 0; }))
        for (auto& x : a) x = -x;
    if (std::find(rs.positive_roots.begin(), rs.positive_roots.end(), a) == rs.positive_roots.end())
        throw std::invalid_argument("'" + s + "' is not a root");
    return v;
}

// Word in simple reflections given by 1-based Bourbaki indices; 0 is the affine reflection s_{-theta}.
inline WeylElement weyl_word(const FiniteRootSystem& rs, const IVec& indices) {
    WeylElement w{&rs, {}};
    for (int i : indices) {
        if (i < 0 || i > rs.rank()) throw std::invalid_argument("reflection index out of range");
        IVec a(rs.rank(), 0);
        if (i == 0) {
            a = rs.highest_root;
            for (auto& x : a) x = -x;
        } else {
            a[i - 1] = 1;
        }
        w.word.push_back(a);
    }
    return w;
}

inline WeylElement power(const WeylElement& w, int k) {
    WeylElement out{w.rs, {}};
    for (int i = 0; i < k; ++i) out.word.insert(out.word.end(), w.word.begin(), w.word.end());
    return out;
}

namespace detail {

inline int integral(const Rat& v, const char* what) {
    if (boost::multiprecision::denominator(v) != 1) throw std::logic_error(std::string("non-integral ") + what);
    return static_cast<int>(boost::multiprecision::numerator(v));
}

}  // namespace detail

// Matrix of s_alpha on the simple-coroot basis: h -> h - <alpha, h> alpha^vee. Integral.
inline IMat reflection_matrix(const FiniteRootSystem& rs, const IVec& alpha) {
    const int n = rs.rank();
    const auto cv = rs.coroot(alpha);
    IMat m(n, IVec(n, 0));
    for (int j = 0; j < n; ++j) {
        int pair = 0;  // <alpha, alpha_j^vee>
        for (int i = 0; i < n; ++i) pair += alpha[i] * rs.cartan_matrix[j][i];
        for (int i = 0; i < n; ++i) {
            const Rat v = Rat(i == j ? 1 : 0) - Rat(pair) * cv[i];
            m[i][j] = detail::integral(v, "reflection matrix");
        }
    }
    return m;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
    const int n = static_cast<int>(a.size());
    IMat c(n, IVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a[i][k])
                for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline IMat weyl_matrix(const WeylElement& w) {
    const int n = w.rs->rank();
    IMat m(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    for (const auto& a : w.word) m = mat_mul(m, reflection_matrix(*w.rs, a));
    return m;
}

inline int weyl_order(const WeylElement& w) {
    const IMat m = weyl_matrix(w);
    const int n = w.rs->rank();
    IMat id(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    IMat p = m;
    for (int k = 1; k <= 1000; ++k) {
        if (p == id) return k;
        p = mat_mul(p, m);
    }
    throw std::logic_error("Weyl element of unbounded order");
}

using CVec = std::vector<Cyclo>;

inline Mat<Cyclo> to_cyclo(const IMat& m) {
    Mat<Cyclo> out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (int x : m[i]) out[i].push_back(Cyclo(static_cast<long long>(x)));
    return out;
}

inline CVec apply(const Mat<Cyclo>& m, const CVec& v) {
    CVec out(m.size(), Cyclo(0LL));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] = out[i] + m[i][j] * v[j];
    return out;
}

// Basis of the eigen-eigenspace of w on the coweight space (simple-coroot coordinates).
inline std::vector<CVec> weyl_eigenspace(const WeylElement& w, const Cyclo& eigen) {
    const int ord = weyl_order(w);
    if (!(eigen.pow(ord) == Cyclo(1LL))) throw std::invalid_argument("eigenvalue order does not divide the order of w");
    Mat<Cyclo> a = to_cyclo(weyl_matrix(w));
    for (int i = 0; i < w.rs->rank(); ++i) a[i][i] = a[i][i] - eigen;
    return kernel_basis(a, w.rs->rank());
}

// Vectors of span(basis) fixed by every element of gens.
inline std::vector<CVec> fixed_subspace(const std::vector<CVec>& basis, const std::vector<WeylElement>& gens) {
    if (basis.empty()) return {};
    const int k = static_cast<int>(basis.size());
    Mat<Cyclo> eqs;
    for (const auto& g : gens) {
        const Mat<Cyclo> m = to_cyclo(weyl_matrix(g));
        std::vector<CVec> images;
        for (const auto& b : basis) images.push_back(apply(m, b));
        for (size_t i = 0; i < basis[0].size(); ++i) {
            CVec row;
            for (int c = 0; c < k; ++c) row.push_back(images[c][i] - basis[c][i]);
            eqs.push_back(row);
        }
    }
    std::vector<CVec> out;
    for (const auto& x : kernel_basis(eqs, k)) {
        CVec v(basis[0].size(), Cyclo(0LL));
        for (int c = 0; c < k; ++c)
            for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + x[c] * basis[c][i];
        out.push_back(v);
    }
    return out;
}

// Components of the roots vanishing on every vector of the subspace, sorted by series then rank.
inline std::vector<CartanType> centralizer_roots(const FiniteRootSystem& rs, const std::vector<CVec>& subspace) {
    const int n = rs.rank();
    std::vector<IVec> pos;
    for (const auto& a : rs.positive_roots) {
        bool zero = true;
        for (const auto& v : subspace) {
            Cyclo s(0LL);
            for (int j = 0; j < n; ++j) {
                int pair = 0;  // <alpha, alpha_j^vee>
                for (int i = 0; i < n; ++i) pair += a[i] * rs.cartan_matrix[j][i];
                if (pair) s = s + Cyclo(static_cast<long long>(pair)) * v[j];
            }
            if (!s.is_zero()) { zero = false; break; }
        }
        if (zero) pos.push_back(a);
    }
    // simple roots of the subsystem: positive roots that are not a sum of two positive ones
    std::set<IVec> in(pos.begin(), pos.end());
    std::vector<IVec> simple;
    for (const auto& a : pos) {
        bool dec = false;
        for (const auto& b : pos) {
            IVec c(n);
            bool nonneg = true;
            for (int i = 0; i < n; ++i) {
                c[i] = a[i] - b[i];
                nonneg = nonneg && c[i] >= 0;
            }
            if (nonneg && in.count(c)) { dec = true; break; }
        }
        if (!dec) simple.push_back(a);
    }
    const int k = static_cast<int>(simple.size());
    auto inner = [&](const IVec& x, const IVec& y) {
        Rat s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (x[i] && y[j]) s += Rat(x[i] * y[j] * rs.cartan_matrix[i][j]) * rs.lengths[i] / 2;
        return s;
    };
    IMat c(k, IVec(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const Rat v = Rat(2) * inner(simple[i], simple[j]) / inner(simple[i], simple[i]);
            c[i][j] = detail::integral(v, "root subsystem Cartan entry");
        }
    IVec nodes(k);
    for (int i = 0; i < k; ++i) nodes[i] = i;
    std::vector<CartanType> out;
    for (const auto& comp : components(c, nodes)) out.push_back(comp.type);
    std::sort(out.begin(), out.end(), [](const CartanType& x, const CartanType& y) {
        return x.series != y.series ? x.series < y.series : x.rank > y.rank;
    });
    return out;
}

inline std::string root_system_string(const std::vector<CartanType>& types) {
    if (types.empty()) return "0";
    std::string s;
    for (const auto& t : types) s += (s.empty() ? "" : "+") + t.name();
    return s;
}

}  // namespace atlas
