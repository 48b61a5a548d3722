#pragma once

#include "atlas/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace atlas {

// Classical families of cyclic-quiver gradings. Indices are stored doubled so that
// half-integer index sets stay integral: index i is 2i, position p is 2p + off.
enum class FamilyKind { A, AI2, AII2, AIIIi2, AIIIii2, BDI, BDII, BDIII, CI, CII, CIII };

inline const std::vector<std::pair<FamilyKind, std::string>>& family_names() {
    static const std::vector<std::pair<FamilyKind, std::string>> names{
        {FamilyKind::A, "A"},           {FamilyKind::AI2, "2AI"},    {FamilyKind::AII2, "2AII"},
        {FamilyKind::AIIIi2, "2AIII-i"}, {FamilyKind::AIIIii2, "2AIII-ii"}, {FamilyKind::BDI, "BDI"},
        {FamilyKind::BDII, "BDII"},     {FamilyKind::BDIII, "BDIII"}, {FamilyKind::CI, "CI"},
        {FamilyKind::CII, "CII"},       {FamilyKind::CIII, "CIII"}};
    return names;
}

inline std::string family_name(FamilyKind k) {
    for (const auto& [kk, s] : family_names())
        if (kk == k) return s;
    return "?";
}

inline FamilyKind parse_family_kind(const std::string& s) {
    for (const auto& [k, n] : family_names())
        if (n == s) return k;
    throw std::invalid_argument("unknown family '" + s + "'");
}

enum class FormKind { None, Orthogonal, Symplectic };

struct IndexSet {
    int m0 = 1;
    bool half = false;

    int off() const { return half ? 1 : 0; }
    int period() const { return 2 * m0; }
    int doubled(int p) const { return 2 * p + off(); }
    int position(int j2) const {
        if (((j2 - off()) % 2 + 2) % 2 != 0) throw std::invalid_argument("index outside the index set");
        return (((j2 - off()) / 2) % m0 + m0) % m0;
    }
    int neg(int p) const { return position(-doubled(p)); }
    bool operator==(const IndexSet&) const = default;

    std::string str() const {
        return half ? "(1/2+Z)/" + std::to_string(m0) : "Z/" + std::to_string(m0);
    }
};

struct Family {
    FamilyKind kind = FamilyKind::A;
    int m0 = 2;
    int l = 1;
    bool half = false;

    IndexSet index_set() const { return {m0, half}; }
    // 'A' untwisted SL, 'U' unitary (outer) SL, 'B' orthogonal, 'C' symplectic
    char series() const {
        switch (kind) {
            case FamilyKind::A: return 'A';
            case FamilyKind::AI2:
            case FamilyKind::AII2:
            case FamilyKind::AIIIi2:
            case FamilyKind::AIIIii2: return 'U';
            case FamilyKind::BDI:
            case FamilyKind::BDII:
            case FamilyKind::BDIII: return 'B';
            default: return 'C';
        }
    }
    // Vinberg type I/II/III; 0 for A.
    int vinberg_type() const {
        switch (kind) {
            case FamilyKind::A: return 0;
            case FamilyKind::AI2:
            case FamilyKind::BDI:
            case FamilyKind::CI: return 1;
            case FamilyKind::AII2:
            case FamilyKind::BDII:
            case FamilyKind::CII: return 2;
            default: return 3;
        }
    }
    bool has_form() const { return kind != FamilyKind::A; }
    int m() const { return series() == 'U' ? 2 * m0 : m0; }
    std::string label() const { return family_name(kind); }
    std::string str() const { return label() + "(m0=" + std::to_string(m0) + ")"; }
    bool operator==(const Family&) const = default;

    int neg(int p) const { return index_set().neg(p); }

    // Form on a self-dual vertex p.
    FormKind vertex_form(int p) const {
        switch (series()) {
            case 'B': return FormKind::Orthogonal;
            case 'C': return FormKind::Symplectic;
            case 'U': return (index_set().doubled(p) % (2 * m0) == 0) ? FormKind::Orthogonal : FormKind::Symplectic;
            default: return FormKind::None;
        }
    }
    // Self-dual arrow p -> p+1 carries S^2 (Symplectic tag) or wedge^2 (Orthogonal tag).
    FormKind arrow_form(int p) const {
        switch (series()) {
            case 'B': return FormKind::Orthogonal;
            case 'C': return FormKind::Symplectic;
            case 'U': return ((index_set().doubled(p) + 1) % (2 * m0) == 0) ? FormKind::Orthogonal : FormKind::Symplectic;
            default: return FormKind::None;
        }
    }
};

// Family from its label and m0, checking the I/II/III parity table.
inline Family make_family(FamilyKind k, int m0) {
    if (m0 < 1) throw std::invalid_argument("m0 must be positive");
    Family f;
    f.kind = k;
    f.m0 = m0;
    const bool even = m0 % 2 == 0;
    switch (k) {
        case FamilyKind::A:
            if (m0 < 2) throw std::invalid_argument("type A needs m >= 2");
            f.l = m0;
            return f;
        case FamilyKind::BDI:
        case FamilyKind::CII:
        case FamilyKind::AIIIi2:
            if (!even) throw std::invalid_argument(family_name(k) + " needs even m0");
            f.l = m0 / 2;
            f.half = false;
            return f;
        case FamilyKind::BDII:
        case FamilyKind::CI:
        case FamilyKind::AIIIii2:
            if (!even) throw std::invalid_argument(family_name(k) + " needs even m0");
            f.l = m0 / 2;
            f.half = true;
            return f;
        case FamilyKind::BDIII:
        case FamilyKind::CIII:
        case FamilyKind::AI2:
            if (even) throw std::invalid_argument(family_name(k) + " needs odd m0");
            f.l = (m0 - 1) / 2;
            f.half = false;
            return f;
        case FamilyKind::AII2:
            if (even) throw std::invalid_argument(family_name(k) + " needs odd m0");
            f.l = (m0 - 1) / 2;
            f.half = true;
            return f;
    }
    throw std::invalid_argument("bad family");
}

inline Family make_family(const std::string& label, int m0) { return make_family(parse_family_kind(label), m0); }

// Family from the parameter l (m0 = 2l for even families, 2l+1 for odd ones).
inline Family family_from_l(FamilyKind k, int l) {
    switch (k) {
        case FamilyKind::A: return make_family(k, l);
        case FamilyKind::BDI:
        case FamilyKind::CII:
        case FamilyKind::AIIIi2:
        case FamilyKind::BDII:
        case FamilyKind::CI:
        case FamilyKind::AIIIii2:
            if (l < 1) throw std::invalid_argument("l must be at least 1");
            return make_family(k, 2 * l);
        default:
            if (l < 0) throw std::invalid_argument("l must be nonnegative");
            return make_family(k, 2 * l + 1);
    }
}

inline bool is_symmetric(const Family& f, const IVec& d) {
    for (int p = 0; p < f.m0; ++p)
        if (d[p] != d[f.neg(p)]) return false;
    return true;
}

inline void check_dims(const Family& f, const IVec& d) {
    if (static_cast<int>(d.size()) != f.m0)
        throw std::invalid_argument("dimension vector for " + f.str() + " needs " + std::to_string(f.m0) + " entries");
    for (int x : d)
        if (x < 0) throw std::invalid_argument("dimension vector entries must be nonnegative");
    if (!f.has_form()) return;
    if (!is_symmetric(f, d)) throw std::invalid_argument("dimension vector must satisfy d_i = d_{-i}");
    for (int p = 0; p < f.m0; ++p)
        if (f.neg(p) == p && f.vertex_form(p) == FormKind::Symplectic && d[p] % 2)
            throw std::invalid_argument("symplectic vertex needs even dimension");
}

// Comma-separated entries in index order.
inline std::string dims_string(const IVec& d) {
    std::string out;
    for (size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
    return out;
}

struct GroupDims {
    long long g0 = 0;
    long long g1 = 0;
};

// Block count: GL vertices d^2, SO d(d-1)/2, Sp d(d+1)/2, arrows d_i d_{i+1}, S^2 / wedge^2 on self-dual arrows.
inline GroupDims group_dims(const Family& f, const IVec& d) {
    check_dims(f, d);
    GroupDims g;
    long long total = 0;
    for (int x : d) total += x;
    for (int p = 0; p < f.m0; ++p) {
        const long long x = d[p];
        const int q = f.has_form() ? f.neg(p) : -1;
        if (q == p) {
            g.g0 += f.vertex_form(p) == FormKind::Orthogonal ? x * (x - 1) / 2 : x * (x + 1) / 2;
        } else if (!f.has_form() || p < q) {
            g.g0 += x * x;
        }
    }
    for (int p = 0; p < f.m0; ++p) {
        const int p1 = (p + 1) % f.m0;
        const long long x = d[p], y = d[p1];
        if (!f.has_form()) {
            g.g1 += x * y;
            continue;
        }
        const int src = f.neg(p1);  // dual arrow starts at -(i+1)
        if (src == p) {
            g.g1 += f.arrow_form(p) == FormKind::Orthogonal ? x * (x - 1) / 2 : x * (x + 1) / 2;
        } else if (p < src) {
            g.g1 += x * y;
        }
    }
    if (f.kind == FamilyKind::A && total > 0) g.g0 -= 1;
    return g;
}

namespace detail {
// Twice the quantity: sum of x^2 + lin_sign * x.
inline long long sum_sq(const std::vector<long long>& diffs, int lin_sign) {
    long long s = 0;
    for (long long x : diffs) s += x * x + lin_sign * x;
    return s;
}
}  // namespace detail

// r = dim g1 - dim g0 through the closed formulas (differences of consecutive entries).
inline long long r_value(const Family& f, const IVec& d) {
    check_dims(f, d);
    const int l = f.l;
    auto D = [&](int p) { return static_cast<long long>(d[((p % f.m0) + f.m0) % f.m0]); };
    std::vector<long long> diffs;
    switch (f.kind) {
        case FamilyKind::A: {
            bool zero = true;
            for (int x : d) zero = zero && x == 0;
            if (zero) return 0;
            for (int i = 0; i < f.m0; ++i) diffs.push_back(D(i) - D(i + 1));
            return 1 - detail::sum_sq(diffs, 0) / 2;
        }
        case FamilyKind::BDI:
        case FamilyKind::AI2: {
            long long s = D(0) + D(l);
            for (int k = 0; k < l; ++k) s -= (D(k) - D(k + 1)) * (D(k) - D(k + 1));
            return s / 2;
        }
        case FamilyKind::CI: {
            // positions p stand for p + 1/2
            long long s = D(0) + D(l - 1);
            for (int k = 1; k < l; ++k) s -= (D(k - 1) - D(k)) * (D(k - 1) - D(k));
            return s / 2;
        }
        case FamilyKind::AII2: {
            // positions 0..l stand for 1/2, ..., l+1/2
            for (int i = 1; i <= l; ++i) diffs.push_back(D(i - 1) - D(i));
            return -(detail::sum_sq(diffs, 0) + D(0) + D(l)) / 2;
        }
        case FamilyKind::CII: {
            for (int i = 1; i <= l; ++i) diffs.push_back(D(i) - D(i - 1));
            return -(detail::sum_sq(diffs, 0) + D(l) + D(0)) / 2;
        }
        case FamilyKind::BDII: {
            for (int i = 1; i < l; ++i) diffs.push_back(D(i) - D(i - 1));
            return -(detail::sum_sq(diffs, 0) + D(0) + D(l - 1)) / 2;
        }
        case FamilyKind::AIIIi2: {
            for (int i = 0; i < l; ++i) diffs.push_back(D(i) - D(i + 1));
            return -detail::sum_sq(diffs, -1) / 2;
        }
        case FamilyKind::AIIIii2: {
            for (int i = 1; i < l; ++i) diffs.push_back(D(i) - D(i - 1));
            return -detail::sum_sq(diffs, -1) / 2;
        }
        case FamilyKind::BDIII: {
            for (int i = 1; i <= l; ++i) diffs.push_back(D(i) - D(i - 1));
            return -detail::sum_sq(diffs, 1) / 2;
        }
        case FamilyKind::CIII: {
            for (int i = 1; i <= l; ++i) diffs.push_back(D(i) - D(i - 1));
            return -detail::sum_sq(diffs, -1) / 2;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Multi-segments

inline std::string half_str(int x2) {
    if (x2 % 2 == 0) return std::to_string(x2 / 2);
    return std::to_string(x2) + "/2";
}

class MultiSegment {
public:
    MultiSegment() = default;
    explicit MultiSegment(IndexSet I) : I_(I) {}

    const IndexSet& index_set() const { return I_; }
    // doubled endpoints -> multiplicity, canonical 0 <= a2 < 2 m0
    const std::map<std::pair<int, int>, int>& entries() const { return c_; }

    std::pair<int, int> canonical(int a2, int b2) const {
        if (a2 > b2) throw std::invalid_argument("segment needs a <= b");
        if (((a2 - I_.off()) % 2 + 2) % 2 != 0 || ((b2 - a2) % 2) != 0)
            throw std::invalid_argument("segment endpoints outside the index set");
        const int P = I_.period();
        const int s = ((a2 % P) + P) % P - a2;
        return {a2 + s, b2 + s};
    }

    // Segment [a2/2, b2/2] in doubled coordinates.
    MultiSegment& add(int a2, int b2, int mult = 1) {
        if (mult < 0) throw std::invalid_argument("negative multiplicity");
        if (mult == 0) return *this;
        c_[canonical(a2, b2)] += mult;
        return *this;
    }
    // Segment in undoubled integer coordinates (integer index sets).
    MultiSegment& add_int(int a, int b, int mult = 1) { return add(2 * a, 2 * b, mult); }

    MultiSegment operator+(const MultiSegment& o) const {
        if (!(I_ == o.I_)) throw std::invalid_argument("multi-segments on different index sets");
        MultiSegment r = *this;
        for (const auto& [k, v] : o.c_) r.c_[k] += v;
        return r;
    }

    MultiSegment dual() const {
        MultiSegment r(I_);
        for (const auto& [k, v] : c_) r.add(-k.second, -k.first, v);
        return r;
    }

    bool is_self_dual_segment(int a2, int b2) const { return ((a2 + b2) % I_.period() + I_.period()) % I_.period() == 0; }

    IVec dim_vector() const {
        IVec d(I_.m0, 0);
        for (const auto& [k, v] : c_)
            for (int j = k.first; j <= k.second; j += 2) d[I_.position(j)] += v;
        return d;
    }

    std::vector<int> jordan_blocks() const {
        std::vector<int> out;
        for (const auto& [k, v] : c_)
            for (int t = 0; t < v; ++t) out.push_back((k.second - k.first) / 2 + 1);
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    int segment_count() const {
        int n = 0;
        for (const auto& [k, v] : c_) n += v;
        return n;
    }
    bool empty() const { return c_.empty(); }

    bool operator==(const MultiSegment& o) const { return I_ == o.I_ && c_ == o.c_; }
    bool operator<(const MultiSegment& o) const {
        if (I_.m0 != o.I_.m0) return I_.m0 < o.I_.m0;
        if (I_.half != o.I_.half) return I_.half < o.I_.half;
        return c_ < o.c_;
    }

    // Human form with halved indices, e.g. "[0,1] + 2[3,4]".
    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : c_) {
            if (!first) os << " + ";
            first = false;
            if (v != 1) os << v;
            os << '[' << half_str(k.first) << ',' << half_str(k.second) << ']';
        }
        return os.str();
    }

    // Serialized form: sorted "c×[a,b]" in doubled indices with an index-set tag.
    std::string serialize() const {
        std::ostringstream os;
        os << (I_.half ? "H" : "Z") << I_.m0 << ':';
        bool first = true;
        for (const auto& [k, v] : c_) {
            os << (first ? "" : ",") << v << "×[" << k.first << ',' << k.second << ']';
            first = false;
        }
        return os.str();
    }

private:
    IndexSet I_;
    std::map<std::pair<int, int>, int> c_;
};

// Every multi-segment on I with the given dimension vector.
inline std::vector<MultiSegment> multisegments_with_dims(const IndexSet& I, const IVec& d) {
    int total = 0;
    for (int x : d) total += x;
    std::vector<std::pair<int, int>> segs;  // canonical doubled endpoints
    for (int p = 0; p < I.m0; ++p)
        for (int L = 1; L <= total; ++L) segs.push_back({I.doubled(p), I.doubled(p) + 2 * (L - 1)});
    std::vector<MultiSegment> out;
    IVec rem = d;
    std::vector<int> mult(segs.size(), 0);
    auto shift = [&](size_t i, int sign) {
        bool ok = true;
        for (int j = segs[i].first; j <= segs[i].second; j += 2) ok = (rem[I.position(j)] -= sign) >= 0 && ok;
        return ok;
    };
    std::function<void(size_t)> rec = [&](size_t i) {
        if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) {
            MultiSegment s(I);
            for (size_t k = 0; k < segs.size(); ++k) s.add(segs[k].first, segs[k].second, mult[k]);
            out.push_back(s);
            return;
        }
        if (i == segs.size()) return;
        rec(i + 1);
        int k = 0;
        while (shift(i, 1)) {
            ++k;
            mult[i] = k;
            rec(i + 1);
        }
        shift(i, -1);
        for (int t = 0; t < k; ++t) shift(i, -1);
        mult[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// Whether s labels nilpotent elements of g(d)_1: s = s* and parity on self-dual segments.
inline bool is_admissible(const Family& f, const MultiSegment& s) {
    if (!(s.index_set() == f.index_set())) return false;
    if (!f.has_form()) return true;
    if (!(s.dual() == s)) return false;
    const int m = f.m();
    for (const auto& [k, c] : s.entries()) {
        const auto [a2, b2] = k;
        if (!s.is_self_dual_segment(a2, b2)) continue;
        const bool odd_diff = ((b2 - a2) / 2) % 2 != 0;
        bool needs_even;
        switch (f.series()) {
            case 'B': needs_even = odd_diff; break;
            case 'C': needs_even = !odd_diff; break;
            default: {
                const bool m_divides = ((a2 + b2) / 2) % m == 0;
                needs_even = (odd_diff && m_divides) || (!odd_diff && !m_divides);
            }
        }
        if (needs_even && c % 2) return false;
    }
    return true;
}

inline std::vector<MultiSegment> admissible_segments(const Family& f, const IVec& d) {
    check_dims(f, d);
    std::vector<MultiSegment> out;
    for (auto& s : multisegments_with_dims(f.index_set(), d))
        if (is_admissible(f, s)) out.push_back(std::move(s));
    return out;
}

// Distinguished nilpotent orbits: self-dual, multiplicity-free segments with the family's parity.
inline std::vector<MultiSegment> distinguished_segments(const Family& f, const IVec& d) {
    if (!f.has_form()) throw std::invalid_argument("distinguished_segments needs a family with a form");
    check_dims(f, d);
    const IndexSet I = f.index_set();
    int total = 0;
    for (int x : d) total += x;
    std::vector<std::pair<int, int>> cand;
    for (int c2 : {0, f.m0}) {
        for (int L = 1; L <= total; ++L) {
            const int a2 = c2 - (L - 1), b2 = c2 + (L - 1);
            if (((a2 - I.off()) % 2 + 2) % 2 != 0) continue;
            const bool odd_diff = (L - 1) % 2 != 0;
            bool ok;
            switch (f.series()) {
                case 'B': ok = !odd_diff; break;
                case 'C': ok = odd_diff; break;
                default: ok = (c2 == 0) ? !odd_diff : odd_diff;
            }
            if (ok) cand.push_back({a2, b2});
        }
    }
    std::vector<MultiSegment> out;
    const int n = static_cast<int>(cand.size());
    IVec rem = d;
    MultiSegment cur(I);
    std::function<void(int)> rec = [&](int i) {
        bool done = true;
        for (int x : rem) done = done && x == 0;
        if (done) {
            out.push_back(cur);
            return;
        }
        if (i == n) return;
        rec(i + 1);
        bool fits = true;
        for (int j = cand[i].first; j <= cand[i].second; j += 2) fits = --rem[I.position(j)] >= 0 && fits;
        if (fits) {
            MultiSegment save = cur;
            cur.add(cand[i].first, cand[i].second);
            rec(i + 1);
            cur = save;
        }
        for (int j = cand[i].first; j <= cand[i].second; j += 2) ++rem[I.position(j)];
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Type I: (A, B) pairs, F, the bijection beta and the canonical split

struct ABPair {
    std::set<int> A, B;
    bool operator==(const ABPair&) const = default;
    bool operator<(const ABPair& o) const { return std::tie(A, B) < std::tie(o.A, o.B); }
    std::string str() const {
        auto s = [](const std::set<int>& x) {
            std::string r = "{";
            bool first = true;
            for (int v : x) {
                r += (first ? "" : ",") + std::to_string(v);
                first = false;
            }
            return r + "}";
        };
        return "(" + s(A) + "," + s(B) + ")";
    }
};

inline void require_type_one(const Family& f) {
    if (f.kind != FamilyKind::BDI && f.kind != FamilyKind::CI && f.kind != FamilyKind::AI2)
        throw std::invalid_argument("operation defined for BDI, CI and 2AI only");
}

inline MultiSegment seg_of_AB(const Family& f, const ABPair& p) {
    require_type_one(f);
    MultiSegment s(f.index_set());
    const int l2 = 2 * f.l;
    for (int a : p.A) {
        if (a < 0) throw std::invalid_argument("A must consist of naturals");
        if (f.kind == FamilyKind::CI) s.add(-(2 * a + 1), 2 * a + 1);
        else s.add(-2 * a, 2 * a);
    }
    for (int b : p.B) {
        if (b < 0) throw std::invalid_argument("B must consist of naturals");
        switch (f.kind) {
            case FamilyKind::BDI: s.add(l2 - 2 * b, l2 + 2 * b); break;
            case FamilyKind::CI: s.add(l2 - (2 * b + 1), l2 + 2 * b + 1); break;
            default: s.add(l2 - 2 * b, l2 + 2 + 2 * b);
        }
    }
    return s;
}

inline IVec dims_of_AB(const Family& f, const ABPair& p) { return seg_of_AB(f, p).dim_vector(); }

inline long long F_value(const Family& f, const IVec& d) {
    require_type_one(f);
    if (static_cast<int>(d.size()) != f.m0) throw std::invalid_argument("dimension vector has wrong length");
    if (!is_symmetric(f, d)) throw std::invalid_argument("F needs a symmetric dimension vector");
    const int l = f.l;
    auto D = [&](int p) { return static_cast<long long>(d[((p % f.m0) + f.m0) % f.m0]); };
    long long s;
    if (f.kind == FamilyKind::CI) {
        s = D(0) + D(l - 1);
        for (int k = 1; k < l; ++k) s -= (D(k - 1) - D(k)) * (D(k - 1) - D(k));
    } else {
        s = D(0) + D(l);
        for (int k = 0; k < l; ++k) s -= (D(k) - D(k + 1)) * (D(k) - D(k + 1));
    }
    return s / 2;
}

// Image of (kind, x) with kind 0 for A and 1 for B: (position, level).
inline std::pair<int, int> beta_point(const Family& f, int kind, int x) {
    require_type_one(f);
    const int m0 = f.m0, l = f.l;
    if (f.kind == FamilyKind::AI2) {
        // ordering by segment length within each end class
        if (kind == 0) return {x % m0, 2 * (x / m0) + (x % m0 > l ? 1 : 0)};
        return {(x + l + 1) % m0, 2 * (x / m0) + (x % m0 >= l ? 1 : 0)};
    }
    if (kind == 0) return {x % m0, x / l};
    return {(x + l) % m0, x / l};
}

inline std::vector<std::set<int>> beta(const Family& f, const ABPair& p) {
    std::vector<std::set<int>> S(f.m0);
    for (int a : p.A) {
        auto [k, n] = beta_point(f, 0, a);
        S[k].insert(n);
    }
    for (int b : p.B) {
        auto [k, n] = beta_point(f, 1, b);
        S[k].insert(n);
    }
    return S;
}

inline std::pair<int, int> beta_point_inverse(const Family& f, int k, int n) {
    const int bound = (n + 2) * std::max(f.m0, 1) + 2 * f.m0;
    std::pair<int, int> found{-1, -1};
    int hits = 0;
    for (int kind = 0; kind < 2; ++kind)
        for (int x = 0; x <= bound; ++x)
            if (beta_point(f, kind, x) == std::make_pair(k, n)) {
                found = {kind, x};
                ++hits;
            }
    if (hits != 1) throw std::logic_error("beta is not bijective at this point");
    return found;
}

inline ABPair beta_inverse(const Family& f, const std::vector<std::set<int>>& S) {
    require_type_one(f);
    if (static_cast<int>(S.size()) != f.m0) throw std::invalid_argument("wrong number of sets");
    ABPair p;
    for (int k = 0; k < f.m0; ++k)
        for (int n : S[k]) {
            auto [kind, x] = beta_point_inverse(f, k, n);
            (kind == 0 ? p.A : p.B).insert(x);
        }
    return p;
}

// Position of the index -k-1 for the non-adjacency clause.
inline int beta_partner(const Family& f, int k) {
    return f.kind == FamilyKind::CI ? ((-k - 2) % f.m0 + f.m0) % f.m0 : ((-k - 1) % f.m0 + f.m0) % f.m0;
}

// Initial intervals with S_k nonempty forcing S_{-k-1} empty.
inline bool zero_F_predicate(const Family& f, const std::vector<std::set<int>>& S) {
    for (int k = 0; k < f.m0; ++k) {
        int i = 0;
        for (int n : S[k])
            if (n != i++) return false;
        if (!S[k].empty() && !S[beta_partner(f, k)].empty()) return false;
    }
    return true;
}

struct CanonicalSplit {
    ABPair pair;
    long long r = 0;
};

inline CanonicalSplit canonical_split(const Family& f, const IVec& d) {
    require_type_one(f);
    if (static_cast<int>(d.size()) != f.m0 || !is_symmetric(f, d))
        throw std::invalid_argument("canonical_split needs a symmetric dimension vector");
    std::vector<std::set<int>> S(f.m0);
    for (int k = 0; k < f.m0; ++k) {
        const int diff = d[k] - d[(k + 1) % f.m0];
        for (int n = 0; n < diff; ++n) S[k].insert(n);
    }
    CanonicalSplit out;
    out.pair = beta_inverse(f, S);
    const IVec d0 = dims_of_AB(f, out.pair);
    out.r = d[0] - d0[0];
    for (int k = 0; k < f.m0; ++k)
        if (d[k] - d0[k] != out.r) throw std::logic_error("canonical split residual is not constant");
    return out;
}

// ---------------------------------------------------------------------------
// Distinguished elements

enum class DistinguishedKind { None, NilpotentOnly, Yes };

struct DistinguishedVerdict {
    DistinguishedKind kind = DistinguishedKind::None;
    long long r = 0;
    std::vector<MultiSegment> segments;  // nilpotent part(s)
    ABPair split;                        // type I only
};

// Type A single segment [a, a+N-1] with dimension vector d, if any.
inline std::optional<MultiSegment> type_a_segment(const Family& f, const IVec& d) {
    int N = 0;
    for (int x : d) N += x;
    if (N == 0) return std::nullopt;
    for (int a = 0; a < f.m0; ++a) {
        MultiSegment s(f.index_set());
        s.add_int(a, a + N - 1);
        if (s.dim_vector() == d) return s;
    }
    return std::nullopt;
}

// Segment sum_{i<m} [i, c+i-1] attached to the constant vector (c, ..., c).
inline MultiSegment type_a_regular_part(const Family& f, int c) {
    MultiSegment s(f.index_set());
    for (int i = 0; i < f.m0; ++i) s.add_int(i, c + i - 1);
    return s;
}

inline DistinguishedVerdict distinguished_exists(const Family& f, const IVec& d) {
    DistinguishedVerdict v;
    if (static_cast<int>(d.size()) != f.m0) throw std::invalid_argument("dimension vector has wrong length");
    for (int x : d)
        if (x < 0) throw std::invalid_argument("dimension vector entries must be nonnegative");
    bool zero = true;
    for (int x : d) zero = zero && x == 0;
    if (zero) return v;
    if (f.has_form() && !is_symmetric(f, d)) return v;
    switch (f.vinberg_type()) {
        case 0: {
            bool constant = std::all_of(d.begin(), d.end(), [&](int x) { return x == d[0]; });
            if (constant) {
                v.kind = DistinguishedKind::Yes;
                v.r = 1;
                v.segments.push_back(type_a_regular_part(f, d[0]));
            } else if (auto s = type_a_segment(f, d)) {
                v.kind = DistinguishedKind::Yes;
                v.r = 0;
                v.segments.push_back(*s);
            }
            return v;
        }
        case 2: return v;
        case 3: {
            check_dims(f, d);
            v.segments = distinguished_segments(f, d);
            if (!v.segments.empty()) v.kind = DistinguishedKind::NilpotentOnly;
            return v;
        }
        default: {
            auto cs = canonical_split(f, d);
            if (cs.r < 0) return v;
            v.kind = DistinguishedKind::Yes;
            v.r = cs.r;
            v.split = cs.pair;
            v.segments.push_back(seg_of_AB(f, cs.pair));
            return v;
        }
    }
}

}  // namespace atlas
