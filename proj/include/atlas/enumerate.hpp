#pragma once

#include "atlas/cuspdata.hpp"
#include "atlas/cyclo.hpp"
#include "atlas/gradings.hpp"
#include "atlas/kac.hpp"
#include "atlas/quiver.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace atlas {

inline int eta(int n) {
    if (n < 0) throw std::invalid_argument("eta needs a nonnegative argument");
    return (n > 0 && (n % 4 == 0 || n % 4 == 3)) ? 2 : 1;
}

inline int delta(int n) {
    if (n < 1) throw std::invalid_argument("delta needs a positive argument");
    return n - 1 - 2 * ((n - 1) / 2);
}

// ---------------------------------------------------------------------------
// Classical patterns

enum class SupportKind { Full, Nilpotent, Stratum };

inline std::string support_name(SupportKind k) {
    switch (k) {
        case SupportKind::Full: return "full";
        case SupportKind::Nilpotent: return "nilpotent";
        default: return "stratum";
    }
}

// One parametric case of the classical classification, instantiated.
struct ClassicalPattern {
    std::string clause;  // A(a), A(b), 2AI, CI, BDI(a), BDI(b), 2AIII-i, 2AIII-ii, CIII, BDIII(a), BDIII(b)
    int epsilon = 0;     // action of the kernel of Spin -> SO: +1, -1, or 0 off type BD
    std::vector<std::pair<std::string, int>> params;
    int r = 0;
    MultiSegment s;          // d = d_s
    MultiSegment nilpotent;  // s without the regular part
    std::optional<int> count;
    SupportKind support = SupportKind::Nilpotent;
    std::string weyl_group;
    int cartan_dim = 0;
    std::string levi;
    std::string character;

    IVec dims() const { return s.dim_vector(); }
    std::string params_str() const {
        std::string out;
        for (const auto& [k, v] : params) out += (out.empty() ? "" : ",") + k + "=" + std::to_string(v);
        return out;
    }
};

namespace detail {

inline int total(const IVec& d) {
    int t = 0;
    for (int x : d) t += x;
    return t;
}

inline MultiSegment regular_part(const Family& f, int r) {
    MultiSegment s(f.index_set());
    for (int k = 0; k < f.m0; ++k) s.add(f.index_set().doubled(k), f.index_set().doubled(k), r);
    return s;
}

inline std::set<int> initial(int n) {
    std::set<int> out;
    for (int i = 0; i < n; ++i) out.insert(i);
    return out;
}

// {2i + delta_n : 0 <= i <= floor((n-1)/2)}, empty for n = 0
inline std::set<int> odd_spaced(int n) {
    std::set<int> out;
    if (n == 0) return out;
    for (int i = 0; i <= (n - 1) / 2; ++i) out.insert(2 * i + delta(n));
    return out;
}

inline int phi_count(int n) {
    int r = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++r;
    return r;
}

}  // namespace detail

// All patterns of the classification for f with total dimension <= max_total and regular
// multiplicity <= max_r.
inline std::vector<ClassicalPattern> classical_patterns(const Family& f, int max_total, int max_r) {
    std::vector<ClassicalPattern> out;
    const int l = f.l, m0 = f.m0;
    const std::string m_str = std::to_string(f.m());
    auto keep = [&](ClassicalPattern p) {
        const int t = detail::total(p.dims());
        if (t == 0 || t > max_total) return;
        out.push_back(std::move(p));
    };
    switch (f.kind) {
        case FamilyKind::A:
            for (int N = 1; N <= max_total; ++N) {
                if (N % m0) {
                    for (int a = 0; a < m0; ++a) {
                        ClassicalPattern p;
                        p.clause = "A(a)";
                        p.params = {{"N", N}, {"a", a}};
                        p.s = MultiSegment(f.index_set());
                        p.s.add_int(a, a + N - 1);
                        p.nilpotent = p.s;
                        p.count = detail::phi_count(N);
                        p.weyl_group = "trivial";
                        p.character = "primitive characters of mu_" + std::to_string(N);
                        keep(std::move(p));
                    }
                } else {
                    const int c = N / m0;
                    if (max_r < 1) continue;
                    ClassicalPattern p;
                    p.clause = "A(b)";
                    p.params = {{"N", N}, {"d", c}};
                    p.r = 1;
                    p.s = type_a_regular_part(f, c);
                    p.nilpotent = p.s;
                    p.support = SupportKind::Stratum;
                    p.cartan_dim = 1;
                    p.weyl_group = "G_{" + m_str + ",1,1}";
                    p.levi = "S(GL_" + std::to_string(c) + "^" + std::to_string(m0) + "), theta permuting the factors cyclically";
                    keep(std::move(p));
                }
            }
            return out;
        case FamilyKind::AI2:
        case FamilyKind::CI:
        case FamilyKind::BDI: {
            const int bound = f.kind == FamilyKind::CI ? l - 1 : l;
            const std::string clause = f.kind == FamilyKind::BDI ? "BDI(a)" : family_name(f.kind);
            for (int r = 0; r <= max_r; ++r)
                for (int a = 0; a <= bound; ++a)
                    for (int b = 0; a + b <= bound; ++b) {
                        ClassicalPattern p;
                        p.clause = clause;
                        p.epsilon = f.kind == FamilyKind::BDI ? 1 : 0;
                        p.params = {{"a", a}, {"b", b}, {"r", r}};
                        p.r = r;
                        p.nilpotent = seg_of_AB(f, {detail::initial(a), detail::initial(b)});
                        p.s = p.nilpotent + detail::regular_part(f, r);
                        p.count = 1;
                        p.support = r > 0 ? SupportKind::Full : SupportKind::Nilpotent;
                        p.cartan_dim = r;
                        p.weyl_group = r > 0 ? "W(G0,c)" : "trivial";
                        p.character = f.kind == FamilyKind::BDI ? "trivial eps-action" : "unique local system";
                        keep(std::move(p));
                    }
            if (f.kind != FamilyKind::BDI) return out;
            for (int r = 0; r <= max_r; ++r)
                for (int a = 0; a <= max_total; ++a)
                    for (int b = 0; b <= max_total; ++b) {
                        const bool ok = a + b <= l || ((l - a - b) % 2 == 0 && std::abs(a - b) <= l);
                        if (!ok) continue;
                        ClassicalPattern p;
                        p.clause = "BDI(b)";
                        p.epsilon = -1;
                        p.params = {{"a", a}, {"b", b}, {"r", r}};
                        p.r = r;
                        p.nilpotent = seg_of_AB(f, {detail::odd_spaced(a), detail::odd_spaced(b)});
                        p.s = p.nilpotent + detail::regular_part(f, r);
                        p.count = eta(a) * eta(b);
                        p.character = "nontrivial eps-action";
                        if (r == 0) {
                            p.weyl_group = "trivial";
                        } else if (a + b <= l) {
                            p.support = SupportKind::Full;
                            p.cartan_dim = r;
                            p.weyl_group = "W(G0,c)";
                        } else {
                            p.support = SupportKind::Stratum;
                            p.cartan_dim = r;
                            p.weyl_group = "G_{" + m_str + ",1," + std::to_string(r) + "}";
                        }
                        if (r > 0)
                            p.levi = "Spin_" + std::to_string(detail::total(p.dims()) - m0 * r) + ", totally ramified";
                        keep(std::move(p));
                    }
            return out;
        }
        case FamilyKind::AIIIi2:
        case FamilyKind::AIIIii2:
        case FamilyKind::CIII:
        case FamilyKind::BDIII:
            for (int k = 0; k <= max_total; ++k) {
                ClassicalPattern p;
                p.clause = f.kind == FamilyKind::BDIII ? "BDIII(a)" : family_name(f.kind);
                p.epsilon = f.kind == FamilyKind::BDIII ? 1 : 0;
                p.params = {{"k", k}};
                p.s = MultiSegment(f.index_set());
                for (int i = 0; i <= k; ++i) {
                    switch (f.kind) {
                        case FamilyKind::AIIIii2: p.s.add(2 * l - 1 - 2 * i, 2 * l + 1 + 2 * i); break;
                        case FamilyKind::CIII: p.s.add(2 * l - 2 * i, 2 * l + 2 + 2 * i); break;
                        default: p.s.add_int(-i, i);
                    }
                }
                p.nilpotent = p.s;
                p.count = 1;
                p.weyl_group = "trivial";
                p.character = f.kind == FamilyKind::BDIII ? "trivial eps-action" : "unique local system";
                keep(std::move(p));
            }
            if (f.kind != FamilyKind::BDIII) return out;
            for (int k = 1; k <= max_total; ++k) {
                ClassicalPattern p;
                p.clause = "BDIII(b)";
                p.epsilon = -1;
                p.params = {{"k", k}};
                p.s = MultiSegment(f.index_set());
                for (int i = 0; i <= (k - 1) / 2; ++i) p.s.add_int(-2 * i - delta(k), 2 * i + delta(k));
                p.nilpotent = p.s;
                p.count = 1 + eta(k);
                p.weyl_group = "trivial";
                p.character = "nontrivial eps-action";
                keep(std::move(p));
            }
            return out;
        default:
            return out;  // type II: no cuspidal character sheaves
    }
}

// Patterns whose dimension vector is d, with all parameters bounded by sum(d) + m0.
inline std::vector<ClassicalPattern> classical_matches(const Family& f, const IVec& d) {
    check_dims(f, d);
    const int t = detail::total(d);
    std::vector<ClassicalPattern> out;
    for (auto& p : classical_patterns(f, t, t + f.m0))
        if (p.dims() == d) out.push_back(std::move(p));
    return out;
}

// Bi-orbital supports and local-system counts; epsilon = 0 accepts both signs on type BD.
inline std::vector<std::pair<MultiSegment, int>> classical_biorbital(const Family& f, const IVec& d, int epsilon = 0) {
    std::vector<std::pair<MultiSegment, int>> out;
    for (const auto& p : classical_matches(f, d)) {
        if (p.r != 0) continue;
        if (epsilon != 0 && p.epsilon != 0 && p.epsilon != epsilon) continue;
        out.push_back({p.nilpotent, p.count.value_or(1)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exceptional enumeration

struct GradingLine {
    int m = 0;
    IVec kac;
    std::optional<std::string> rlyg;
    int k = -1;  // family parameter for instances
};

struct MFamily {
    int base = 0;   // m = base + step * k
    int step = 0;
    IVec kac;       // -1 marks the k-slot
};

struct BiorbitalRow {
    std::string diagram;
    int twist = 1;
    int beta = 0;  // display position
    int beta_kac = 0;
    std::vector<Component> components;
    std::string levi;
    IVec rho;      // display order, -1 at beta
    int count = 0;
    std::string chi;  // "1", "≠1", "mixed"; empty off E6/E7
    std::vector<GradingLine> explicit_lines;
    MFamily family;
    std::vector<GradingLine> instances;

    std::string orbit() const {
        std::string s;
        for (int x : rho) s += x < 0 ? std::string("∅") : std::to_string(x);
        return s;
    }
    std::string family_kac() const {
        std::string s;
        for (int x : family.kac) s += x < 0 ? std::string("k") : std::to_string(x);
        return s;
    }
    // m-spec in units of the twist: "2k+4"
    std::string family_spec() const {
        const int c = family.step / twist, b = family.base / twist;
        std::string s = (c == 1 ? "" : std::to_string(c)) + "k";
        if (b > 0) s += "+" + std::to_string(b);
        return s;
    }
};

namespace detail {

inline std::vector<IVec> stabilizer(const AffineDiagram& d, int beta) {
    std::vector<IVec> out;
    for (const auto& g : d.automorphisms)
        if (g[beta] == beta) out.push_back(g);
    return out;
}

inline int orbit_min(const AffineDiagram& d, int beta) {
    int best = beta;
    for (const auto& g : d.automorphisms) best = std::min(best, g[beta]);
    return best;
}

inline int orbit_min_kac(const AffineDiagram& d, int beta) {
    int best = d.kac_index[beta];
    for (const auto& g : d.automorphisms) best = std::min(best, d.kac_index[g[beta]]);
    return best;
}

// Bourbaki indices of the fundamental weights detecting the center.
inline IVec faithful_weights(const CartanType& t) {
    switch (t.series) {
        case 'A':
        case 'C': return {0};
        case 'B': return {t.rank - 1};
        case 'D': return t.rank % 2 ? IVec{t.rank - 1} : IVec{0, t.rank - 1};
        case 'E':
            if (t.rank == 6) return {0};
            if (t.rank == 7) return {6};
            return {};
        default: return {};
    }
}

inline bool center_invertible(const CartanType& t) {
    return t.series == 'A' || (t.series == 'D' && t.rank % 2) || (t.series == 'E' && t.rank == 6);
}

inline std::string zeta_str(const Rat& v) {
    const Rat x = frac_part(v);
    if (x == 0) return "1";
    const Int num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    std::string s = "ζ" + den.str();
    if (num != 1) s += "^" + num.str();
    return s;
}

inline Rat neg_frac(const Rat& v) { return frac_part(-v); }

}  // namespace detail

// Name of the pseudo-Levi with the image of the kernel generator in each factor's center.
inline std::string levi_name(const AffineDiagram& d, int beta, const std::vector<Component>& comps) {
    const CoverKernel ker = kernel_of_cover(d, beta);
    std::vector<std::vector<Rat>> vals;
    bool trivial = true;
    for (const auto& c : comps) {
        std::vector<Rat> v;
        for (int k : detail::faithful_weights(c.type)) {
            v.push_back(frac_part(ker.coweight[c.nodes[k]]));
            trivial = trivial && v.back() == 0;
        }
        vals.push_back(v);
    }
    std::string prod;
    for (const auto& c : comps) prod += (prod.empty() ? "" : "×") + group_name(c.type);
    if (trivial) return prod;
    // a lone even-rank D factor with an order-2 kernel keeps the table's SO name
    if (comps.size() == 1 && comps[0].type.series == 'D' && comps[0].type.rank % 2 == 0 && ker.order == 2)
        return "SO" + std::to_string(2 * comps[0].type.rank);
    // canonical generator: powers prime to the order, sign flips where the center admits them
    const int K = ker.order;
    std::vector<std::vector<Rat>> best;
    for (int t = 1; t < std::max(K, 2); ++t) {
        if (std::gcd(t, K) != 1) continue;
        const int n = static_cast<int>(comps.size());
        for (int mask = 0; mask < (1 << n); ++mask) {
            bool ok = true;
            std::vector<std::vector<Rat>> cand;
            for (int c = 0; c < n; ++c) {
                const bool flip = (mask >> c) & 1;
                if (flip && !detail::center_invertible(comps[c].type)) ok = false;
                std::vector<Rat> v;
                for (const auto& x : vals[c]) v.push_back(flip ? detail::neg_frac(x * t) : frac_part(x * t));
                cand.push_back(v);
            }
            if (ok && (best.empty() || cand < best)) best = cand;
        }
    }
    std::string elem;
    for (const auto& v : best) {
        std::string e;
        if (v.size() == 1) e = detail::zeta_str(v[0]);
        else if (v.empty()) e = "1";
        else e = "[" + detail::zeta_str(v[0]) + ";" + detail::zeta_str(v[1]) + "]";
        elem += (elem.empty() ? "" : ",") + e;
    }
    return prod + "/(" + elem + ")";
}

// Value mod 1 of a central-character tuple on a generator of Z(G); E6 and E7 only.
inline Rat center_value(const AffineDiagram& d, int beta, const std::vector<Component>& comps,
                        const std::vector<IVec>& weights) {
    const int n = d.size();
    int j = -1;
    for (int p = 0; p < n; ++p)
        if (p != d.affine_node && d.comarks[p] == 1) { j = p; break; }
    if (j < 0) throw std::logic_error("no minuscule node on " + d.name);
    IVec unknowns;
    for (int p = 0; p < n; ++p)
        if (p != beta) unknowns.push_back(p);
    Mat<Rat> a;
    std::vector<Rat> rhs;
    for (int i = 0; i < n; ++i) {
        if (i == d.affine_node) continue;
        std::vector<Rat> row;
        for (int p : unknowns) row.push_back(Rat(d.cartan[p][i]));
        a.push_back(row);
        rhs.push_back(i == j ? 1 : 0);
    }
    const auto x = solve(a, rhs);
    std::vector<Rat> coef(n, Rat(0));
    for (size_t k = 0; k < unknowns.size(); ++k) coef[unknowns[k]] = x[k];
    Rat v = 0;
    for (size_t c = 0; c < comps.size(); ++c)
        for (size_t k = 0; k < comps[c].nodes.size(); ++k) v += Rat(weights[c][k]) * coef[comps[c].nodes[k]];
    return frac_part(v);
}

inline bool has_chi_column(const std::string& diagram) { return diagram == "E6" || diagram == "E7"; }
inline bool has_rlyg_column(const std::string& diagram) {
    return diagram == "E6" || diagram == "E7" || diagram == "E8";
}

inline bool bi_orbital_dims(const AffineDiagram& d, const IVec& n) {
    const auto g = graded_dims(d, n);
    return g.g0() == g.g1();
}

inline std::optional<std::string> rlyg_of(const std::string& diagram, const IVec& kac) {
    if (const auto* g = grading_table().by_kac(diagram, kac)) return g->label;
    return std::nullopt;
}

// Rows of the bi-orbital table; families are instantiated for 2 <= k <= kmax.
// Factors without cuspidal data skip their node and append a warning.
inline std::vector<BiorbitalRow> exceptional_enumerate(const std::string& diagram, int kmax,
                                                       std::vector<std::string>* warnings = nullptr) {
    const AffineDiagram& d = affine_by_name(diagram);
    if (std::find(exceptional_diagram_names().begin(), exceptional_diagram_names().end(), diagram) ==
        exceptional_diagram_names().end())
        throw std::invalid_argument("unsupported diagram " + diagram);
    const int n = d.size(), h = d.coxeter_number();
    std::vector<std::pair<int, BiorbitalRow>> keyed;
    for (int beta = 0; beta < n; ++beta) {
        if (detail::orbit_min(d, beta) != beta) continue;
        const auto comps = pseudo_levi(d, beta);
        const CoverKernel ker = kernel_of_cover(d, beta);
        struct Option {
            const CuspidalDatum* datum;
            int ch;
        };
        std::vector<std::vector<CuspidalDatum>> data;
        bool missing = false;
        for (const auto& c : comps) {
            try {
                data.push_back(cuspidal_pairs(c.type));
            } catch (const NoCuspidalData& e) {
                const std::string msg = diagram + ": node " + std::to_string(d.kac_index[beta]) + " skipped, " + e.what();
                if (warnings) warnings->push_back(msg);
                else std::cerr << "warning: " << msg << "\n";
                missing = true;
                break;
            }
        }
        if (missing) continue;
        std::vector<std::vector<Option>> options(comps.size());
        for (size_t c = 0; c < comps.size(); ++c)
            for (const auto& dat : data[c])
                for (int ch = 0; ch < dat.count(); ++ch) options[c].push_back({&dat, ch});
        // exact rho -> list of weight tuples passing the kernel test
        std::map<IVec, std::vector<std::vector<IVec>>> groups;
        std::vector<size_t> idx(comps.size(), 0);
        bool any = true;
        for (const auto& o : options) any = any && !o.empty();
        while (any) {
            CenterCharacter chi{comps, {}};
            IVec rho(n, -1);
            for (size_t c = 0; c < comps.size(); ++c) {
                const auto& opt = options[c][idx[c]];
                chi.weights.push_back(opt.datum->characters[opt.ch]);
                for (size_t k = 0; k < comps[c].nodes.size(); ++k) rho[comps[c].nodes[k]] = opt.datum->rho[k];
            }
            if (evaluate_center_character(chi, ker) == 0) groups[rho].push_back(chi.weights);
            size_t c = 0;
            while (c < idx.size() && ++idx[c] == options[c].size()) idx[c++] = 0;
            if (c == idx.size()) break;
        }
        const auto stab = detail::stabilizer(d, beta);
        std::map<IVec, std::pair<int, std::vector<std::vector<IVec>>>> canon;
        for (const auto& [rho, tuples] : groups) {
            const IVec key = lexmin_over(d, rho, stab);
            auto it = canon.find(key);
            if (it == canon.end()) {
                canon[key] = {static_cast<int>(tuples.size()), tuples};
            } else {
                if (it->second.first != static_cast<int>(tuples.size()))
                    throw std::logic_error(diagram + ": automorphic weight functions with different counts");
                if (rho == key) it->second.second = tuples;
            }
        }
        for (const auto& [rho, entry] : canon) {
            BiorbitalRow row;
            row.diagram = diagram;
            row.twist = d.twist;
            row.beta = beta;
            row.beta_kac = d.kac_index[beta];
            row.components = comps;
            row.levi = levi_name(d, beta, comps);
            row.rho = rho;
            row.count = entry.first;
            if (has_chi_column(diagram)) {
                int ones = 0;
                for (const auto& w : entry.second)
                    if (center_value(d, beta, comps, w) == 0) ++ones;
                row.chi = ones == static_cast<int>(entry.second.size()) ? "1" : ones == 0 ? "≠1" : "mixed";
            }
            const int bb = d.marks[beta];
            int S = 0;
            for (int p = 0; p < n; ++p)
                if (p != beta) S += d.marks[p] * rho[p];
            for (int md = 1; md <= h; ++md) {
                if (((md - S) % bb + bb) % bb) continue;
                const int nb = (md - S) / bb;
                if (nb >= 2) continue;
                IVec raw = rho;
                raw[beta] = nb;
                IVec kc;
                if (md == 1) {
                    kc.assign(n, 0);
                    kc[d.affine_node] = 1;
                } else {
                    kc = reflect_normalize(d, raw);
                    if (sum_bn(d, kc) != md) continue;
                }
                if (!bi_orbital_dims(d, kc)) continue;
                if (md != 1) kc = lexmin_over(d, kc, stab);
                row.explicit_lines.push_back({d.twist * md, kc, rlyg_of(diagram, kc), -1});
            }
            row.family = {d.twist * S, d.twist * bb, rho};
            int klimit = kmax;
            while (S + bb * (klimit + 1) <= h) ++klimit;
            for (int k = 2; k <= klimit; ++k) {
                IVec raw = rho;
                raw[beta] = k;
                if (gcd_all(raw) != 1 || !bi_orbital_dims(d, raw))
                    throw std::logic_error(diagram + ": family " + row.family_spec() + " fails at k = " + std::to_string(k));
                if (k <= kmax) {
                    IVec kc = lexmin_over(d, raw, stab);
                    row.instances.push_back({order(d, raw), kc, rlyg_of(diagram, kc), k});
                }
            }
            keyed.push_back({detail::orbit_min_kac(d, beta), std::move(row)});
        }
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<BiorbitalRow> rows;
    for (auto& [k, r] : keyed) rows.push_back(std::move(r));
    return rows;
}

// ---------------------------------------------------------------------------
// Emitters

inline std::string m_cell(const BiorbitalRow& r, int m) {
    return std::to_string(r.twist > 1 ? m / r.twist : m);
}

inline std::string to_markdown(const std::string& diagram, const std::vector<BiorbitalRow>& rows, int kmax,
                               const std::vector<std::string>& warnings = {}) {
    const AffineDiagram& d = affine_by_name(diagram);
    const bool chi = has_chi_column(diagram), rl = has_rlyg_column(diagram);
    const std::string mh = d.twist > 1 ? "m/" + std::to_string(d.twist) : "m";
    std::ostringstream os;
    os << "## " << diagram << "\n\n";
    os << "| L | O_L | # |" << (chi ? " χ |" : "") << " " << mh << " | Kac |" << (rl ? " RLYG |" : "") << "\n";
    os << "|---|---|---|" << (chi ? "---|" : "") << "---|---|" << (rl ? "---|" : "") << "\n";
    auto line = [&](const std::string& L, const std::string& O, const std::string& cnt, const std::string& ch,
                    const std::string& m, const std::string& kac, const std::string& lab) {
        os << "| " << L << " | " << O << " | " << cnt << " |";
        if (chi) os << " " << ch << " |";
        os << " " << m << " | " << kac << " |";
        if (rl) os << " " << lab << " |";
        os << "\n";
    };
    for (const auto& r : rows) {
        bool first = true;
        auto head = [&](const std::string& m, const std::string& kac, const std::string& lab) {
            if (first) line(r.levi, r.orbit(), std::to_string(r.count), r.chi, m, kac, lab);
            else line("", "", "", "", m, kac, lab);
            first = false;
        };
        for (const auto& e : r.explicit_lines) head(m_cell(r, e.m), kac_string(e.kac), e.rlyg.value_or(""));
        head(r.family_spec(), r.family_kac(), "");
        for (const auto& e : r.instances)
            head(m_cell(r, e.m) + " (k=" + std::to_string(e.k) + ")", kac_string(e.kac), e.rlyg.value_or(""));
    }
    if (kmax >= 2) os << "\nFamilies instantiated for 2 <= k <= " << kmax << ".\n";
    for (const auto& w : warnings) os << "\nwarning: " << w << "\n";
    return os.str();
}

inline json grading_line_json(const GradingLine& e) {
    json j{{"m", e.m}, {"kac", kac_string(e.kac)}, {"rlyg", e.rlyg ? json(*e.rlyg) : json(nullptr)}};
    if (e.k >= 0) j["k"] = e.k;
    return j;
}

inline json to_json(const std::string& diagram, const std::vector<BiorbitalRow>& rows, int kmax,
                    const std::vector<std::string>& warnings = {}) {
    const AffineDiagram& d = affine_by_name(diagram);
    json out{{"schema", "atlas.biorbital/1"}, {"diagram", diagram}, {"twist", d.twist}, {"kmax", kmax}};
    out["rows"] = json::array();
    for (const auto& r : rows) {
        json comps = json::array();
        for (const auto& c : r.components) comps.push_back({{"type", c.type.name()}, {"nodes", c.nodes}});
        json j{{"beta", r.beta},
               {"beta_kac", r.beta_kac},
               {"levi", r.levi},
               {"components", comps},
               {"orbit", r.orbit()},
               {"rho", r.rho},
               {"count", r.count},
               {"chi", r.chi.empty() ? json(nullptr) : json(r.chi)}};
        j["explicit"] = json::array();
        for (const auto& e : r.explicit_lines) j["explicit"].push_back(grading_line_json(e));
        j["family"] = {{"base", r.family.base}, {"step", r.family.step}, {"spec", r.family_spec()}, {"kac", r.family_kac()}};
        j["instances"] = json::array();
        for (const auto& e : r.instances) j["instances"].push_back(grading_line_json(e));
        out["rows"].push_back(j);
    }
    out["warnings"] = warnings;
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string to_csv(const std::string& diagram, const std::vector<BiorbitalRow>& rows) {
    std::ostringstream os;
    os << "diagram,row,L,O_L,count,chi,kind,m,k,kac,rlyg\n";
    int idx = 0;
    for (const auto& r : rows) {
        ++idx;
        auto line = [&](const std::string& kind, const std::string& m, const std::string& k, const std::string& kac,
                        const std::string& lab) {
            os << diagram << ',' << idx << ',' << csv_field(r.levi) << ',' << csv_field(r.orbit()) << ',' << r.count << ','
               << csv_field(r.chi) << ',' << kind << ',' << m << ',' << k << ',' << csv_field(kac) << ',' << lab << "\n";
        };
        for (const auto& e : r.explicit_lines) line("explicit", std::to_string(e.m), "", kac_string(e.kac), e.rlyg.value_or(""));
        line("family", r.family_spec(), "", r.family_kac(), "");
        for (const auto& e : r.instances)
            line("instance", std::to_string(e.m), std::to_string(e.k), kac_string(e.kac), e.rlyg.value_or(""));
    }
    return os.str();
}

}  // namespace atlas
