#pragma once

#include "atlas/linalg.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace atlas {

namespace detail {

inline std::vector<long long> compute_cyclotomic(int n) {
    std::vector<long long> p(n + 1, 0);  // x^n - 1
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        const std::vector<long long> q = compute_cyclotomic(d);
        std::vector<long long> quot(p.size() - q.size() + 1, 0);
        for (int i = static_cast<int>(p.size()) - 1; i >= static_cast<int>(q.size()) - 1; --i) {
            long long c = p[i];
            int s = i - (static_cast<int>(q.size()) - 1);
            quot[s] = c;
            for (size_t j = 0; j < q.size(); ++j) p[s + j] -= c * q[j];
        }
        p = quot;
    }
    return p;
}

}  // namespace detail

// n-th cyclotomic polynomial, coefficients from degree 0 upwards.
inline const std::vector<long long>& cyclotomic_poly(int n) {
    static std::map<int, std::vector<long long>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::compute_cyclotomic(n)).first;
    return it->second;
}

inline int euler_phi(int n) {
    int r = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++r;
    return r;
}

// Element of Q(zeta_n), stored as the residue modulo the n-th cyclotomic polynomial.
class Cyclo {
public:
    Cyclo() : n_(1), c_(1, Rat(0)) {}
    Cyclo(long long v) : n_(1), c_(1, Rat(v)) {}
    Cyclo(Rat v, int n = 1) : n_(n), c_(euler_phi(n), Rat(0)) { c_[0] = std::move(v); }

    static Cyclo zeta(int n, long long k = 1) {
        k = ((k % n) + n) % n;
        std::vector<Rat> raw(k + 1, Rat(0));
        raw[k] = 1;
        return from_raw(n, std::move(raw));
    }

    int conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    // Image under Q(zeta_n) -> Q(zeta_N), zeta_n -> zeta_N^(N/n).
    Cyclo lift(int N) const {
        if (N == n_) return *this;
        if (N % n_) throw std::invalid_argument("lift target must be a multiple of the conductor");
        const int k = N / n_;
        std::vector<Rat> raw(k * (c_.size() - 1) + 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) raw[i * k] = c_[i];
        return from_raw(N, std::move(raw));
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        int N = std::lcm(a.n_, b.n_);
        Cyclo x = a.lift(N), y = b.lift(N);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclo operator-(const Cyclo& a) {
        Cyclo x = a;
        for (auto& v : x.c_) v = -v;
        return x;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        int N = std::lcm(a.n_, b.n_);
        Cyclo x = a.lift(N), y = b.lift(N);
        std::vector<Rat> raw(x.c_.size() + y.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) raw[i + j] += x.c_[i] * y.c_[j];
        }
        return from_raw(N, std::move(raw));
    }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        int N = std::lcm(a.n_, b.n_);
        return a.lift(N).c_ == b.lift(N).c_;
    }

    // Solves (multiplication by this) u = 1 over Q.
    Cyclo inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
        const int d = static_cast<int>(c_.size());
        Mat<Rat> m(d, std::vector<Rat>(d, Rat(0)));
        for (int j = 0; j < d; ++j) {
            Cyclo col = *this * basis(n_, j);
            for (int i = 0; i < d; ++i) m[i][j] = col.c_[i];
        }
        std::vector<Rat> e(d, Rat(0));
        e[0] = 1;
        Cyclo out;
        out.n_ = n_;
        out.c_ = solve(m, e);
        return out;
    }

    Cyclo pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo r(Rat(1), n_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << c_[i];
            if (i == 1) os << "*z" << n_;
            if (i > 1) os << "*z" << n_ << "^" << i;
        }
        return first ? "0" : os.str();
    }

private:
    static Cyclo basis(int n, int j) {
        Cyclo x(Rat(0), n);
        x.c_[j] = 1;
        return x;
    }

    static Cyclo from_raw(int n, std::vector<Rat> raw) {
        const auto& phi = cyclotomic_poly(n);
        const int d = static_cast<int>(phi.size()) - 1;
        for (int i = static_cast<int>(raw.size()) - 1; i >= d; --i) {
            if (raw[i] == 0) continue;
            Rat c = raw[i];
            for (int j = 0; j <= d; ++j) raw[i - d + j] -= c * phi[j];
        }
        raw.resize(d, Rat(0));
        Cyclo x;
        x.n_ = n;
        x.c_ = std::move(raw);
        return x;
    }

    int n_;
    std::vector<Rat> c_;
};

}  // namespace atlas
