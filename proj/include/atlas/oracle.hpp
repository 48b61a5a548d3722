#pragma once

#include "atlas/linalg.hpp"
#include "atlas/quiver.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace atlas {

// g(d)_1 realized as integer N x N matrices on V = sum V_p, with the block layout of the quiver.
struct G1Space {
    Family family;
    IVec d;
    IVec off;  // first basis index of V_p
    int N = 0;
    std::vector<Mat<long long>> basis;
};

namespace detail {

// Window representative of a doubled index in (-m0, m0].
inline int window_rep2(int j2, int m0) {
    int r = ((j2 % (2 * m0)) + 2 * m0) % (2 * m0);
    return r > m0 ? r - 2 * m0 : r;
}

// Split rational form on V: antidiagonal on self-dual vertices, identity pairing on dual pairs.
inline Mat<long long> split_form(const Family& f, const IVec& d, const IVec& off, int N) {
    Mat<long long> J(N, std::vector<long long>(N, 0));
    const bool skew_all = f.series() == 'C';
    for (int p = 0; p < f.m0; ++p) {
        const int q = f.neg(p);
        if (q == p) {
            const bool skew = f.vertex_form(p) == FormKind::Symplectic;
            for (int a = 0; a < d[p]; ++a)
                J[off[p] + a][off[p] + d[p] - 1 - a] = skew ? (a < d[p] / 2 ? 1 : -1) : 1;
        } else if (p < q) {
            for (int a = 0; a < d[p]; ++a) {
                J[off[p] + a][off[q] + a] = 1;
                J[off[q] + a][off[p] + a] = skew_all ? -1 : 1;
            }
        }
    }
    return J;
}

// Sign in J(xv, w) + sigma J(v, xw) = 0 for v in V_p.
inline int arrow_sign(const Family& f, int p) {
    if (f.series() != 'U') return 1;
    const int rep2 = window_rep2(f.index_set().doubled(p), f.m0);
    return rep2 + 2 > f.m0 ? -1 : 1;
}

inline Mat<long long> matmul(const Mat<long long>& a, const Mat<long long>& b) {
    const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat<long long> c(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

inline bool is_zero(const Mat<long long>& a) {
    for (const auto& r : a)
        for (long long x : r)
            if (x) return false;
    return true;
}

}  // namespace detail

inline G1Space g1_space(const Family& f, const IVec& d) {
    check_dims(f, d);
    G1Space g;
    g.family = f;
    g.d = d;
    g.off.assign(f.m0 + 1, 0);
    for (int p = 0; p < f.m0; ++p) g.off[p + 1] = g.off[p] + d[p];
    g.N = g.off[f.m0];
    const int m0 = f.m0;
    auto nxt = [&](int p) { return (p + 1) % m0; };
    // unknowns: entries of X_p : V_p -> V_{p+1}
    IVec base(m0 + 1, 0);
    for (int p = 0; p < m0; ++p) base[p + 1] = base[p] + d[nxt(p)] * d[p];
    const int P = base[m0];
    auto var = [&](int p, int c, int a) { return base[p] + c * d[p] + a; };

    Mat<Rat> kernel;
    if (!f.has_form()) {
        for (int v = 0; v < P; ++v) {
            std::vector<Rat> e(P, Rat(0));
            e[v] = 1;
            kernel.push_back(e);
        }
    } else {
        const auto J = detail::split_form(f, d, g.off, g.N);
        Mat<Rat> rows;
        for (int p = 0; p < m0; ++p) {
            const int q = f.neg(nxt(p));
            const int p1 = nxt(p), q1 = nxt(q);
            const int sigma = detail::arrow_sign(f, p);
            for (int a = 0; a < d[p]; ++a)
                for (int b = 0; b < d[q]; ++b) {
                    std::vector<Rat> row(P, Rat(0));
                    for (int c = 0; c < d[p1]; ++c) row[var(p, c, a)] += J[g.off[p1] + c][g.off[q] + b];
                    for (int c = 0; c < d[q1]; ++c) row[var(q, c, b)] += sigma * J[g.off[p] + a][g.off[q1] + c];
                    rows.push_back(std::move(row));
                }
        }
        if (rows.empty()) {
            for (int v = 0; v < P; ++v) {
                std::vector<Rat> e(P, Rat(0));
                e[v] = 1;
                kernel.push_back(e);
            }
        } else {
            kernel = kernel_basis(rows, P);
        }
    }
    for (const auto& kv : kernel) {
        Int den = 1;
        for (const auto& x : kv) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
        Mat<long long> X(g.N, std::vector<long long>(g.N, 0));
        for (int p = 0; p < m0; ++p)
            for (int c = 0; c < d[nxt(p)]; ++c)
                for (int a = 0; a < d[p]; ++a) {
                    Rat v = kv[var(p, c, a)] * den;
                    X[g.off[nxt(p)] + c][g.off[p] + a] = static_cast<long long>(boost::multiprecision::numerator(v));
                }
        g.basis.push_back(std::move(X));
    }
    const auto dims = group_dims(f, d);
    if (static_cast<long long>(g.basis.size()) != dims.g1)
        throw std::logic_error("g1 parameter space of " + f.str() + " has dimension " + std::to_string(g.basis.size()) +
                               ", block count gives " + std::to_string(dims.g1));
    return g;
}

// Graded Jordan type of a nilpotent x in g1 from block ranks; nullopt if x is not nilpotent.
inline std::optional<MultiSegment> graded_jordan_type(const G1Space& g, const Mat<long long>& x) {
    const Family& f = g.family;
    const int N = g.N, m0 = f.m0;
    std::vector<Mat<long long>> pw;  // pw[k] = x^k
    Mat<long long> id(N, std::vector<long long>(N, 0));
    for (int i = 0; i < N; ++i) id[i][i] = 1;
    pw.push_back(id);
    for (int k = 1; k <= N + 1; ++k) pw.push_back(detail::matmul(pw.back(), x));
    if (!detail::is_zero(pw[N])) return std::nullopt;
    auto pos = [&](int p) { return ((p % m0) + m0) % m0; };
    // rank of x^k restricted to V_a, landing in V_{a+k}
    auto block_rank = [&](int k, int a) -> int {
        a = pos(a);
        const int t = pos(a + k);
        if (g.d[a] == 0 || g.d[t] == 0) return 0;
        Mat<long long> b(g.d[t], std::vector<long long>(g.d[a]));
        for (int i = 0; i < g.d[t]; ++i)
            for (int j = 0; j < g.d[a]; ++j) b[i][j] = pw[k][g.off[t] + i][g.off[a] + j];
        return rank_int(b);
    };
    // n(a, len): segments starting at a with length >= len
    auto n = [&](int a, int len) { return block_rank(len - 1, a) - block_rank(len, a - 1); };
    MultiSegment s(f.index_set());
    for (int a = 0; a < m0; ++a)
        for (int L = 1; L <= N; ++L) {
            const int c = n(a, L) - n(a, L + 1);
            if (c < 0) throw std::logic_error("negative segment count in rank extraction");
            const int a2 = f.index_set().doubled(a);
            s.add(a2, a2 + 2 * (L - 1), c);
        }
    if (s.dim_vector() != g.d) throw std::logic_error("rank extraction lost dimensions");
    return s;
}

struct OracleResult {
    std::set<MultiSegment> observed;
    int parameters = 0;
    bool exhaustive = false;
    long long tried = 0;
    long long nilpotent = 0;
};

inline constexpr int kExhaustiveParameterLimit = 9;

// Nilpotent graded Jordan types met by the search; stops early once target is covered.
inline OracleResult jordan_oracle(const Family& f, const IVec& d, long long samples, std::uint64_t seed,
                                  const std::set<MultiSegment>* target = nullptr) {
    const G1Space g = g1_space(f, d);
    OracleResult out;
    out.parameters = static_cast<int>(g.basis.size());
    const int P = out.parameters;
    auto covered = [&] {
        if (!target) return false;
        for (const auto& t : *target)
            if (!out.observed.count(t)) return false;
        return true;
    };
    auto visit = [&](const std::vector<int>& coef) {
        Mat<long long> x(g.N, std::vector<long long>(g.N, 0));
        for (int k = 0; k < P; ++k) {
            if (!coef[k]) continue;
            for (int i = 0; i < g.N; ++i)
                for (int j = 0; j < g.N; ++j) x[i][j] += coef[k] * g.basis[k][i][j];
        }
        ++out.tried;
        if (auto s = graded_jordan_type(g, x)) {
            ++out.nilpotent;
            out.observed.insert(*s);
        }
    };
    std::vector<int> coef(P, 0);
    if (P <= kExhaustiveParameterLimit) {
        out.exhaustive = true;
        while (true) {
            visit(coef);
            if (covered()) return out;
            int k = 0;
            while (k < P && coef[k] == 1) coef[k++] = -1;
            if (k == P) break;
            ++coef[k];
        }
    }
    // Sparse draws in {-2..2}: nilpotent elements are measure zero, sparsity reaches them.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> density(1, 6), val(0, 3), pct(0, 9);
    for (long long t = 0; t < samples; ++t) {
        const int rho = density(rng);
        for (int k = 0; k < P; ++k) {
            if (pct(rng) >= rho) {
                coef[k] = 0;
                continue;
            }
            static const int vals[4] = {-2, -1, 1, 2};
            coef[k] = vals[val(rng)];
        }
        visit(coef);
        if (covered()) return out;
    }
    return out;
}

// All valid dimension vectors for f with total dimension at most maxsum.
inline std::vector<IVec> dimension_vectors(const Family& f, int maxsum) {
    std::vector<IVec> out;
    IVec d(f.m0, 0);
    std::function<void(int, int)> rec = [&](int p, int used) {
        if (p == f.m0) {
            out.push_back(d);
            return;
        }
        if (f.has_form() && f.neg(p) < p) {
            rec(p + 1, used);
            return;
        }
        const bool paired = f.has_form() && f.neg(p) != p;
        const bool even_only = f.has_form() && !paired && f.vertex_form(p) == FormKind::Symplectic;
        for (int v = 0; used + (paired ? 2 * v : v) <= maxsum; ++v) {
            if (even_only && v % 2) continue;
            d[p] = v;
            if (paired) d[f.neg(p)] = v;
            rec(p + 1, used + (paired ? 2 * v : v));
        }
        d[p] = 0;
        if (paired) d[f.neg(p)] = 0;
    };
    rec(0, 0);
    return out;
}

}  // namespace atlas
