#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace atlas {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<int>;
using IMat = std::vector<IVec>;

template <class T>
using Mat = std::vector<std::vector<T>>;

inline long long gcd_all(const std::vector<long long>& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

inline int gcd_all(const IVec& v) {
    int g = 0;
    for (int x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

// Fraction-free elimination over arbitrary precision integers.
inline int rank_exact(Mat<Int> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    Int prev = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k)
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

// Same elimination in 128-bit arithmetic; nullopt on overflow.
inline std::optional<int> rank_fast(Mat<__int128> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    __int128 prev = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k) {
                __int128 x, y, z;
                if (__builtin_mul_overflow(a[rank][c], a[r][k], &x)) return std::nullopt;
                if (__builtin_mul_overflow(a[r][c], a[rank][k], &y)) return std::nullopt;
                if (__builtin_sub_overflow(x, y, &z)) return std::nullopt;
                a[r][k] = z / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

inline int rank_int(const Mat<long long>& a) {
    Mat<__int128> w(a.size());
    for (size_t i = 0; i < a.size(); ++i) w[i].assign(a[i].begin(), a[i].end());
    if (auto r = rank_fast(std::move(w))) return *r;
    Mat<Int> big(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (long long x : a[i]) big[i].push_back(Int(x));
    return rank_exact(std::move(big));
}

// Reduced row echelon form over a field; returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& a, int cols) {
    std::vector<int> pivots;
    int row = 0;
    const int rows = static_cast<int>(a.size());
    for (int c = 0; c < cols && row < rows; ++c) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (!(a[r][c] == T(0))) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[row]);
        T inv = T(1) / a[row][c];
        for (size_t k = c; k < a[row].size(); ++k) a[row][k] = a[row][k] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || a[r][c] == T(0)) continue;
            T f = a[r][c];
            for (size_t k = c; k < a[r].size(); ++k) a[r][k] = a[r][k] - f * a[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

// Basis of the right kernel {x : a x = 0}.
template <class T>
Mat<T> kernel_basis(Mat<T> a, int cols) {
    auto piv = rref(a, cols);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    Mat<T> out;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<T> v(cols, T(0));
        v[f] = T(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = T(0) - a[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

template <class T>
int rank_field(Mat<T> a, int cols) {
    return static_cast<int>(rref(a, cols).size());
}

// Unique solution of a square nonsingular system.
template <class T>
std::vector<T> solve(const Mat<T>& a, const std::vector<T>& b) {
    const int n = static_cast<int>(a.size());
    Mat<T> aug(a);
    for (int i = 0; i < n; ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug, n);
    if (static_cast<int>(piv.size()) != n) throw std::runtime_error("singular system");
    std::vector<T> x(n);
    for (int i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

// Primitive integer vector spanning a one dimensional rational kernel, first entry positive.
inline IVec primitive_kernel_vector(const IMat& a) {
    const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
    Mat<Rat> q(a.size(), std::vector<Rat>(cols));
    for (size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < cols; ++j) q[i][j] = a[i][j];
    auto ker = kernel_basis(q, cols);
    if (ker.size() != 1) throw std::runtime_error("kernel is not one dimensional");
    Int l = 1;
    for (auto& x : ker[0]) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    std::vector<Int> v;
    for (auto& x : ker[0]) v.push_back(boost::multiprecision::numerator(Rat(x * l)));
    Int g = 0;
    for (auto& x : v) g = boost::multiprecision::gcd(g, x);
    IVec out;
    for (auto& x : v) out.push_back(static_cast<int>(x / g));
    if (out[0] < 0)
        for (auto& x : out) x = -x;
    return out;
}

}  // namespace atlas
