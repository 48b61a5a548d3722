#pragma once

#include "atlas/data.hpp"
#include "atlas/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace atlas {

// ---------------------------------------------------------------- Cartan types

struct CartanType {
    char series = 'A';
    int rank = 1;

    std::string name() const { return std::string(1, series) + std::to_string(rank); }
    friend bool operator==(const CartanType&, const CartanType&) = default;
    friend auto operator<=>(const CartanType&, const CartanType&) = default;
};

inline void validate(const CartanType& t) {
    const int n = t.rank;
    bool ok = false;
    switch (t.series) {
        case 'A': ok = n >= 1; break;
        case 'B':
        case 'C': ok = n >= 2; break;
        case 'D': ok = n >= 3; break;
        case 'E': ok = n >= 6 && n <= 8; break;
        case 'F': ok = n == 4; break;
        case 'G': ok = n == 2; break;
        default: throw std::invalid_argument(std::string("unknown series '") + t.series + "'");
    }
    if (!ok)
        throw std::invalid_argument("invalid rank " + std::to_string(n) + " for series " + t.series +
                                    " (A>=1, B/C>=2, D>=3, E in 6..8, F=4, G=2)");
}

inline CartanType parse_cartan_type(const std::string& s) {
    if (s.size() < 2) throw std::invalid_argument("bad Cartan type '" + s + "'");
    CartanType t;
    t.series = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    try {
        size_t pos = 0;
        t.rank = std::stoi(s.substr(1), &pos);
        if (pos != s.size() - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad Cartan type '" + s + "'");
    }
    validate(t);
    return t;
}

inline bool is_exceptional(const CartanType& t) { return t.series >= 'E'; }

inline void link(IMat& a, int i, int j, int aij = -1, int aji = -1) {
    a[i][j] = aij;
    a[j][i] = aji;
}

inline IMat identity_cartan(int n) {
    IMat a(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    return a;
}

// Bourbaki numbering, A[i][j] = <alpha_i^vee, alpha_j>.
inline IMat cartan_matrix(const CartanType& t) {
    validate(t);
    const int n = t.rank;
    IMat a = identity_cartan(n);
    switch (t.series) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(a, i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 2 < n; ++i) link(a, i, i + 1);
            link(a, n - 2, n - 1, -1, -2);
            break;
        case 'C':
            for (int i = 0; i + 2 < n; ++i) link(a, i, i + 1);
            link(a, n - 2, n - 1, -2, -1);
            break;
        case 'D':
            if (n == 3) return cartan_matrix({'A', 3});
            for (int i = 0; i + 2 < n; ++i) link(a, i, i + 1);
            link(a, n - 3, n - 1);
            break;
        case 'E':
            link(a, 0, 2);
            link(a, 1, 3);
            for (int i = 2; i + 1 < n; ++i) link(a, i, i + 1);
            break;
        case 'F':
            link(a, 0, 1);
            link(a, 1, 2, -1, -2);
            link(a, 2, 3);
            break;
        case 'G':
            link(a, 0, 1, -3, -1);
            break;
    }
    return a;
}

inline IMat submatrix(const IMat& a, const IVec& nodes) {
    IMat s(nodes.size(), IVec(nodes.size()));
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = 0; j < nodes.size(); ++j) s[i][j] = a[nodes[i]][nodes[j]];
    return s;
}

// Squared lengths of simple roots, normalized to 1 for the shortest in each component.
inline std::vector<Rat> simple_lengths(const IMat& a) {
    const int n = static_cast<int>(a.size());
    std::vector<Rat> len(n, Rat(0));
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        len[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                if (v == u || a[u][v] == 0 || comp[v] >= 0) continue;
                // A[u][v] (a_u,a_u) = A[v][u] (a_v,a_v)
                len[v] = len[u] * Rat(a[u][v]) / Rat(a[v][u]);
                comp[v] = ncomp;
                stack.push_back(v);
            }
        }
        ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
        Rat mn = -1;
        for (int i = 0; i < n; ++i)
            if (comp[i] == c && (mn < 0 || len[i] < mn)) mn = len[i];
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) len[i] /= mn;
    }
    return len;
}

// <alpha_i^vee, beta> for beta given in simple-root coordinates.
inline int pairing_simple(const IMat& a, int i, const IVec& beta) {
    int s = 0;
    for (size_t j = 0; j < beta.size(); ++j) s += beta[j] * a[i][j];
    return s;
}

// Positive roots by string closure: beta + alpha_i is a root iff p - <alpha_i^vee, beta> > 0.
inline std::vector<IVec> positive_roots(const IMat& a) {
    const int n = static_cast<int>(a.size());
    std::set<IVec> seen;
    std::vector<IVec> layer;
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        seen.insert(e);
        layer.push_back(e);
    }
    while (!layer.empty()) {
        std::vector<IVec> next;
        for (const auto& b : layer) {
            for (int i = 0; i < n; ++i) {
                int p = 0;
                IVec c = b;
                while (true) {
                    c[i] -= 1;
                    if (seen.count(c)) ++p;
                    else break;
                }
                int q = p - pairing_simple(a, i, b);
                if (q > 0) {
                    IVec nb = b;
                    nb[i] += 1;
                    if (seen.insert(nb).second) next.push_back(nb);
                }
            }
        }
        layer = std::move(next);
    }
    std::vector<IVec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const IVec& x, const IVec& y) {
        int hx = std::accumulate(x.begin(), x.end(), 0), hy = std::accumulate(y.begin(), y.end(), 0);
        if (hx != hy) return hx < hy;
        return x < y;
    });
    return out;
}

struct FiniteRootSystem {
    CartanType cartan_type;
    IMat cartan_matrix;
    std::vector<IVec> positive_roots;
    IVec highest_root;
    std::vector<Rat> lengths;  // squared lengths of simple roots

    int rank() const { return static_cast<int>(cartan_matrix.size()); }
    int root_count() const { return 2 * static_cast<int>(positive_roots.size()); }
    int dimension() const { return root_count() + rank(); }

    Rat norm2(const IVec& b) const {
        Rat s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                if (b[i] && b[j]) s += Rat(b[i] * b[j] * cartan_matrix[i][j]) * lengths[i] / 2;
        return s;
    }

    // Coroot of b in the simple-coroot basis.
    std::vector<Rat> coroot(const IVec& b) const {
        Rat n = norm2(b);
        std::vector<Rat> c(rank());
        for (int i = 0; i < rank(); ++i) c[i] = Rat(b[i]) * lengths[i] / n;
        return c;
    }
};

inline FiniteRootSystem root_system_from_cartan(const IMat& a, CartanType t = {}) {
    FiniteRootSystem rs;
    rs.cartan_type = t;
    rs.cartan_matrix = a;
    rs.positive_roots = positive_roots(a);
    rs.highest_root = rs.positive_roots.back();
    rs.lengths = simple_lengths(a);
    return rs;
}

inline const FiniteRootSystem& build_finite(const CartanType& t) {
    validate(t);
    static std::map<CartanType, std::unique_ptr<FiniteRootSystem>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[t];
    if (!slot) slot = std::make_unique<FiniteRootSystem>(root_system_from_cartan(cartan_matrix(t), t));
    return *slot;
}

// ---------------------------------------------------------------- identification

// Finite type of a connected Cartan matrix, with nodes[k] the input index playing Bourbaki node k+1.
struct Component {
    CartanType type;
    IVec nodes;
};

inline std::optional<IVec> match_cartan(const IMat& sub, const IMat& std_m) {
    const int n = static_cast<int>(sub.size());
    if (static_cast<int>(std_m.size()) != n) return std::nullopt;
    IVec perm(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> rec = [&](int i) {
        if (i == n) return true;
        for (int v = 0; v < n; ++v) {
            if (used[v] || sub[v][v] != std_m[i][i]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = sub[v][perm[j]] == std_m[i][j] && sub[perm[j]][v] == std_m[j][i];
            if (!ok) continue;
            used[v] = true;
            perm[i] = v;
            if (rec(i + 1)) return true;
            used[v] = false;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return perm;
}

inline Component identify_component(const IMat& a, const IVec& nodes) {
    const int n = static_cast<int>(nodes.size());
    IMat sub = submatrix(a, nodes);
    std::vector<CartanType> cands{{'A', n}};
    if (n >= 2) cands.push_back({'B', n});
    if (n >= 3) cands.push_back({'C', n});
    if (n >= 4) cands.push_back({'D', n});
    if (n >= 6 && n <= 8) cands.push_back({'E', n});
    if (n == 4) cands.push_back({'F', 4});
    if (n == 2) cands.push_back({'G', 2});
    for (const auto& t : cands) {
        if (auto p = match_cartan(sub, cartan_matrix(t))) {
            Component c{t, {}};
            for (int k : *p) c.nodes.push_back(nodes[k]);
            return c;
        }
    }
    throw std::runtime_error("component is not of finite type");
}

// Connected components of the Dynkin graph on the given node subset, each identified.
inline std::vector<Component> components(const IMat& a, const IVec& nodes) {
    std::vector<Component> out;
    std::set<int> rest(nodes.begin(), nodes.end()), seen;
    for (int s : nodes) {
        if (seen.count(s)) continue;
        IVec comp, stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v : rest)
                if (!seen.count(v) && a[u][v] != 0) {
                    seen.insert(v);
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(identify_component(a, comp));
    }
    return out;
}

inline std::string group_name(const CartanType& t) {
    switch (t.series) {
        case 'A': return "SL" + std::to_string(t.rank + 1);
        case 'B': return "Spin" + std::to_string(2 * t.rank + 1);
        case 'C': return "Sp" + std::to_string(2 * t.rank);
        case 'D': return "Spin" + std::to_string(2 * t.rank);
        default: return t.name();
    }
}

// ---------------------------------------------------------------- affine diagrams

struct AffineDiagram {
    std::string name;
    CartanType base;
    int twist = 1;
    IMat cartan;             // display order
    IVec kac_index;          // display position -> Kac index
    IVec marks, comarks;     // display order
    int affine_node = 0;     // display position of Kac node 0
    std::vector<IVec> automorphisms;  // permutations of display positions, identity first
    IVec cartan_eigen;       // dims of the zeta_r^k eigenspaces of the folding on the base Cartan
    std::vector<IVec> finite_roots;   // positive roots of the finite part, display coordinates
    std::vector<char> finite_long;

    int size() const { return static_cast<int>(cartan.size()); }
    int coxeter_number() const { return std::accumulate(marks.begin(), marks.end(), 0); }
    int dimension() const { return build_finite(base).dimension(); }

    int node_from_kac(int k) const {
        for (int p = 0; p < size(); ++p)
            if (kac_index[p] == k) return p;
        throw std::out_of_range("no node with Kac index " + std::to_string(k));
    }
    IVec marks_kac() const {
        IVec out(size());
        for (int p = 0; p < size(); ++p) out[kac_index[p]] = marks[p];
        return out;
    }
    IVec comarks_kac() const {
        IVec out(size());
        for (int p = 0; p < size(); ++p) out[kac_index[p]] = comarks[p];
        return out;
    }
    IVec apply(const IVec& perm, const IVec& v) const {
        IVec out(v.size());
        for (size_t p = 0; p < v.size(); ++p) out[perm[p]] = v[p];
        return out;
    }
    IVec display_to_kac(const IVec& v) const {
        IVec out(size());
        for (int p = 0; p < size(); ++p) out[kac_index[p]] = v[p];
        return out;
    }
    IVec kac_to_display(const IVec& v) const {
        IVec out(size());
        for (int p = 0; p < size(); ++p) out[p] = v[kac_index[p]];
        return out;
    }
};

inline IVec compute_marks(const IMat& a) { return primitive_kernel_vector(a); }

inline IVec compute_comarks(const IMat& a) {
    IMat t(a.size(), IVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i];
    return primitive_kernel_vector(t);
}

// Untwisted affine Cartan matrix in Kac order: node 0 is -theta.
inline IMat untwisted_affine_cartan(const CartanType& t) {
    const auto& rs = build_finite(t);
    const int n = rs.rank();
    const auto theta_v = rs.coroot(rs.highest_root);
    IMat a = identity_cartan(n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i + 1][j + 1] = rs.cartan_matrix[i][j];
    for (int j = 0; j < n; ++j) {
        Rat s0 = 0;
        for (int i = 0; i < n; ++i) s0 += theta_v[i] * rs.cartan_matrix[i][j];
        if (boost::multiprecision::denominator(s0) != 1) throw std::logic_error("non-integral affine Cartan entry");
        a[0][j + 1] = -static_cast<int>(boost::multiprecision::numerator(s0));
        a[j + 1][0] = -pairing_simple(rs.cartan_matrix, j, rs.highest_root);
    }
    return a;
}

inline std::vector<IVec> close_group(const std::vector<IVec>& gens, int n) {
    IVec id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<IVec> group{id};
    std::set<IVec> seen{id};
    for (size_t i = 0; i < group.size(); ++i) {
        for (const auto& g : gens) {
            IVec h(n);
            for (int p = 0; p < n; ++p) h[p] = g[group[i][p]];
            if (seen.insert(h).second) group.push_back(h);
        }
    }
    std::sort(group.begin() + 1, group.end());
    return group;
}

// Eigenspace dimensions of a node permutation acting on the Cartan: a cycle of length L
// contributes one dimension to each eigenvalue zeta_r^k with zeta_r^(kL) = 1.
inline IVec folding_eigen_dims(const IVec& perm, int r) {
    const int n = static_cast<int>(perm.size());
    IVec dims(r, 0);
    std::vector<bool> done(n, false);
    for (int s = 0; s < n; ++s) {
        if (done[s]) continue;
        int len = 0;
        for (int x = s; !done[x]; x = perm[x]) {
            done[x] = true;
            ++len;
        }
        for (int k = 0; k < r; ++k)
            if ((k * len) % r == 0) ++dims[k];
    }
    return dims;
}

namespace detail {

inline void finish_diagram(AffineDiagram& d) {
    const int n = d.size();
    d.marks = compute_marks(d.cartan);
    d.comarks = compute_comarks(d.cartan);
    d.affine_node = d.node_from_kac(0);
    IVec fin;
    for (int p = 0; p < n; ++p)
        if (p != d.affine_node) fin.push_back(p);
    IMat sub = submatrix(d.cartan, fin);
    FiniteRootSystem tmp = root_system_from_cartan(sub);
    Rat longest = 0;
    for (const auto& r : tmp.positive_roots) longest = std::max(longest, tmp.norm2(r));
    for (const auto& r : tmp.positive_roots) {
        IVec full(n, 0);
        for (size_t k = 0; k < fin.size(); ++k) full[fin[k]] = r[k];
        d.finite_roots.push_back(full);
        d.finite_long.push_back(tmp.norm2(r) == longest);
    }
    for (const auto& g : d.automorphisms) {
        for (int i = 0; i < n; ++i) {
            if (d.marks[g[i]] != d.marks[i]) throw DataError(d.name + ": automorphism does not preserve marks");
            for (int j = 0; j < n; ++j)
                if (d.cartan[g[i]][g[j]] != d.cartan[i][j])
                    throw DataError(d.name + ": automorphism does not preserve the Cartan matrix");
        }
    }
}

inline AffineDiagram from_json(const json& e) {
    AffineDiagram d;
    d.name = e.at("name").get<std::string>();
    d.base = parse_cartan_type(e.at("base").get<std::string>());
    d.twist = e.at("twist").get<int>();
    const IVec display = e.at("display").get<IVec>();
    const int n = static_cast<int>(display.size());
    IMat kac = identity_cartan(n);
    for (const auto& ed : e.at("kac_edges")) {
        auto v = ed.get<IVec>();
        if (v.size() != 4) throw DataError(d.name + ": kac edge needs 4 entries");
        link(kac, v[0], v[1], v[2], v[3]);
    }
    {
        IVec sorted = display;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            if (sorted[i] != i) throw DataError(d.name + ": display order is not a permutation");
    }
    d.kac_index = display;
    d.cartan = IMat(n, IVec(n));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) d.cartan[p][q] = kac[display[p]][display[q]];
    std::vector<IVec> gens;
    for (const auto& g : e.at("automorphism_generators")) {
        IVec kp = g.get<IVec>();
        IVec dp(n);
        for (int p = 0; p < n; ++p) dp[p] = d.node_from_kac(kp[display[p]]);
        gens.push_back(dp);
    }
    d.automorphisms = close_group(gens, n);
    const int rank = d.base.rank;
    if (d.twist == 1) {
        d.cartan_eigen = {rank};
        if (!match_cartan(kac, untwisted_affine_cartan(d.base)))
            throw DataError(d.name + ": edges disagree with the highest root construction");
    } else {
        if (e.at("folding").is_null()) throw DataError(d.name + ": twisted diagram needs a folding permutation");
        IVec perm = e.at("folding").get<IVec>();
        if (static_cast<int>(perm.size()) != rank) throw DataError(d.name + ": folding has wrong size");
        IMat bc = cartan_matrix(d.base);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                if (bc[perm[i]][perm[j]] != bc[i][j]) throw DataError(d.name + ": folding is not a diagram automorphism");
        d.cartan_eigen = folding_eigen_dims(perm, d.twist);
    }
    finish_diagram(d);
    if (d.marks_kac() != e.at("marks_kac").get<IVec>()) throw DataError(d.name + ": stored marks disagree with the kernel");
    if (d.comarks_kac() != e.at("comarks_kac").get<IVec>())
        throw DataError(d.name + ": stored comarks disagree with the kernel");
    return d;
}

inline AffineDiagram classical_untwisted(const CartanType& t) {
    AffineDiagram d;
    d.name = t.name();
    d.base = t;
    d.twist = 1;
    d.cartan = untwisted_affine_cartan(t);
    d.kac_index.resize(t.rank + 1);
    std::iota(d.kac_index.begin(), d.kac_index.end(), 0);
    d.automorphisms = close_group({}, t.rank + 1);
    d.cartan_eigen = {t.rank};
    finish_diagram(d);
    return d;
}

struct Registry {
    std::mutex mu;
    std::map<std::string, std::unique_ptr<AffineDiagram>> diagrams;
    bool loaded = false;
};

inline Registry& registry() {
    static Registry r;
    return r;
}

inline void load_registry_locked(Registry& r) {
    if (r.loaded) return;
    json j = load_data_file("diagrams.json", "atlas.diagrams/1");
    for (const auto& e : j.at("diagrams")) {
        auto d = std::make_unique<AffineDiagram>(from_json(e));
        std::string key = d->name;
        r.diagrams[key] = std::move(d);
    }
    r.loaded = true;
}

}  // namespace detail

inline std::string diagram_name(const CartanType& base, int r) {
    return r == 1 ? base.name() : std::to_string(r) + base.name();
}

inline const AffineDiagram& build_affine(const CartanType& base, int r) {
    validate(base);
    auto& reg = detail::registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    const bool data_backed = (r == 1 && is_exceptional(base)) || (r == 2 && base == CartanType{'E', 6}) ||
                             (r == 3 && base == CartanType{'D', 4});
    if (!data_backed && r != 1)
        throw std::invalid_argument("unsupported twisted diagram " + diagram_name(base, r) +
                                    "; classical twisted types served by the quiver module");
    const std::string key = diagram_name(base, r);
    if (data_backed) {
        detail::load_registry_locked(reg);
        auto it = reg.diagrams.find(key);
        if (it == reg.diagrams.end()) throw DataError("diagram " + key + " missing from diagrams.json");
        return *it->second;
    }
    auto& slot = reg.diagrams[key];
    if (!slot) {
        CartanType b = base;
        if (b.series == 'D' && b.rank == 3) b = {'A', 3};
        slot = std::make_unique<AffineDiagram>(detail::classical_untwisted(b));
        slot->name = key;
    }
    return *slot;
}

// Accepts "E8", "2E6", "3D4", "A3", ...
inline const AffineDiagram& affine_by_name(const std::string& name) {
    if (!name.empty() && (name[0] == '2' || name[0] == '3'))
        return build_affine(parse_cartan_type(name.substr(1)), name[0] - '0');
    return build_affine(parse_cartan_type(name), 1);
}

inline const std::vector<std::string>& exceptional_diagram_names() {
    static const std::vector<std::string> names{"G2", "3D4", "F4", "2E6", "E6", "E7", "E8"};
    return names;
}

inline const IVec& comarks(const AffineDiagram& d) { return d.comarks; }
inline int coxeter_number(const AffineDiagram& d) { return d.coxeter_number(); }

inline std::vector<Component> pseudo_levi(const AffineDiagram& d, int beta) {
    if (beta < 0 || beta >= d.size()) throw std::out_of_range("node out of range");
    IVec rest;
    for (int p = 0; p < d.size(); ++p)
        if (p != beta) rest.push_back(p);
    auto comps = components(d.cartan, rest);
    std::sort(comps.begin(), comps.end(), [&](const Component& x, const Component& y) {
        bool ex = is_exceptional(x.type), ey = is_exceptional(y.type);
        if (ex != ey) return ex;
        int kx = 1 << 30, ky = 1 << 30;
        for (int p : x.nodes) kx = std::min(kx, d.kac_index[p]);
        for (int p : y.nodes) ky = std::min(ky, d.kac_index[p]);
        return kx < ky;
    });
    return comps;
}

// Kernel of the cover prod L_i -> L^beta: cyclic of order c_beta, generated by
// (1/c_beta) sum_{alpha != beta} c_alpha alpha^vee.
struct CoverKernel {
    int order = 1;
    std::vector<Rat> coweight;  // per display node, zero at beta
};

inline CoverKernel kernel_of_cover(const AffineDiagram& d, int beta) {
    CoverKernel k;
    k.order = d.comarks[beta];
    k.coweight.assign(d.size(), Rat(0));
    for (int p = 0; p < d.size(); ++p)
        if (p != beta) k.coweight[p] = Rat(d.comarks[p], d.comarks[beta]);
    return k;
}

// Central character on a pseudo-Levi: per component, a fundamental-weight exponent vector
// in that component's Bourbaki order.
struct CenterCharacter {
    std::vector<Component> ambient;
    std::vector<IVec> weights;
};

inline Rat frac_part(const Rat& x) {
    Int num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    Int r = num % den;
    if (r < 0) r += den;
    return Rat(r, den);
}

inline Rat evaluate_center_character(const CenterCharacter& chi, const CoverKernel& g) {
    if (chi.ambient.size() != chi.weights.size()) throw std::invalid_argument("character/component count mismatch");
    Rat v = 0;
    for (size_t c = 0; c < chi.ambient.size(); ++c) {
        const auto& comp = chi.ambient[c];
        if (chi.weights[c].size() != comp.nodes.size()) throw std::invalid_argument("weight length mismatch");
        for (size_t k = 0; k < comp.nodes.size(); ++k) {
            if (comp.nodes[k] >= static_cast<int>(g.coweight.size()))
                throw std::invalid_argument("character and generator live on different diagrams");
            v += Rat(chi.weights[c][k]) * g.coweight[comp.nodes[k]];
        }
    }
    return frac_part(v);
}

}  // namespace atlas
