#pragma once

#include "atlas/rootsys.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace atlas {

struct GradedDims {
    int m = 1;
    std::vector<long long> dims;

    long long g0() const { return dims[0]; }
    long long g1() const { return dims[1 % m]; }
};

inline int sum_bn(const AffineDiagram& d, const IVec& n) {
    if (static_cast<int>(n.size()) != d.size())
        throw std::invalid_argument("expected " + std::to_string(d.size()) + " coordinates for " + d.name);
    int s = 0;
    for (int p = 0; p < d.size(); ++p) s += d.marks[p] * n[p];
    return s;
}

inline void require_alcove(const AffineDiagram& d, const IVec& n) {
    if (static_cast<int>(n.size()) != d.size())
        throw std::invalid_argument("expected " + std::to_string(d.size()) + " coordinates for " + d.name);
    for (int x : n)
        if (x < 0) throw std::invalid_argument("Kac coordinates must be nonnegative; use normalize first");
    if (sum_bn(d, n) <= 0) throw std::invalid_argument("Kac coordinates must not all vanish");
}

inline int order(const AffineDiagram& d, const IVec& n) {
    require_alcove(d, n);
    return d.twist * sum_bn(d, n);
}

// Untwisted: a finite root contributes at its degree. Twisted: short roots of the folded
// finite part also occur shifted by k*m/r; the Cartan of the base splits by folding eigenvalue.
inline GradedDims graded_dims(const AffineDiagram& d, const IVec& n) {
    require_alcove(d, n);
    const int sd = sum_bn(d, n);
    const int m = d.twist * sd;
    GradedDims g;
    g.m = m;
    g.dims.assign(m, 0);
    for (size_t i = 0; i < d.finite_roots.size(); ++i) {
        long long deg = 0;
        for (int p = 0; p < d.size(); ++p) deg += static_cast<long long>(d.finite_roots[i][p]) * n[p];
        for (int sgn : {1, -1}) {
            for (int k = 0; k < d.twist; ++k) {
                if (d.twist > 1 && d.finite_long[i] && k != 0) continue;
                long long pos = ((sgn * deg + static_cast<long long>(k) * sd) % m + m) % m;
                ++g.dims[pos];
            }
        }
    }
    for (int k = 0; k < d.twist; ++k) g.dims[(static_cast<long long>(k) * sd) % m] += d.cartan_eigen[k];
    return g;
}

inline long long r_value(const AffineDiagram& d, const IVec& n) {
    auto g = graded_dims(d, n);
    return g.g1() - g.g0();
}

// Affine simple reflections until all coordinates are nonnegative, then divide by the gcd.
inline IVec reflect_normalize(const AffineDiagram& d, IVec n) {
    if (static_cast<int>(n.size()) != d.size())
        throw std::invalid_argument("expected " + std::to_string(d.size()) + " coordinates for " + d.name);
    bool any = false;
    for (int x : n) any = any || x != 0;
    if (!any) throw std::invalid_argument("all-zero Kac coordinates");
    if (sum_bn(d, n) <= 0) throw std::invalid_argument("sum of marks times coordinates must be positive");
    for (int guard = 0;; ++guard) {
        if (guard > 100000) throw std::runtime_error("normalization did not terminate");
        int i = -1;
        for (int p = 0; p < d.size(); ++p)
            if (n[p] < 0) { i = p; break; }
        if (i < 0) break;
        const int v = n[i];
        for (int j = 0; j < d.size(); ++j) n[j] -= d.cartan[i][j] * v;
    }
    const int g = gcd_all(n);
    for (auto& x : n) x /= g;
    return n;
}

inline IVec lexmin_over(const AffineDiagram& d, const IVec& n, const std::vector<IVec>& perms) {
    IVec best = n;
    for (const auto& g : perms) best = std::min(best, d.apply(g, n));
    return best;
}

inline IVec normalize(const AffineDiagram& d, const IVec& raw) {
    return lexmin_over(d, reflect_normalize(d, raw), d.automorphisms);
}

// Order-m grading with n_i = 1 off the affine node (principal grading).
inline IVec principal_kac(const AffineDiagram& d, int m) {
    if (m % d.twist) throw std::invalid_argument("order must be divisible by the twist");
    IVec raw(d.size(), 1);
    raw[d.affine_node] = m / d.twist - (d.coxeter_number() - d.marks[d.affine_node]);
    return normalize(d, raw);
}

inline std::string kac_string(const IVec& n) {
    bool small = true;
    for (int x : n) small = small && x >= 0 && x < 10;
    std::ostringstream os;
    for (size_t i = 0; i < n.size(); ++i) {
        if (!small && i) os << ',';
        os << n[i];
    }
    return os.str();
}

inline std::string coords_string(const IVec& n) {
    std::ostringstream os;
    for (size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
    return os.str();
}

// "1,1,0,1,0" or a digit string "11010".
inline IVec parse_coords(const std::string& s) {
    IVec out;
    if (s.find(',') == std::string::npos && s.find('-') == std::string::npos) {
        for (char c : s) {
            if (c == ' ') continue;
            if (c < '0' || c > '9') throw std::invalid_argument("bad coordinate list '" + s + "'");
            out.push_back(c - '0');
        }
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coordinate '" + tok + "'");
        }
    }
    return out;
}

}  // namespace atlas
