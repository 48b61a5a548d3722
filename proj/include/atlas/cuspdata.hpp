#pragma once

#include "atlas/data.hpp"
#include "atlas/rootsys.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <optional>
#include <string>
#include <vector>

namespace atlas {

// One cuspidal orbit on a simply connected simple factor, with its cuspidal systems.
struct CuspidalDatum {
    CartanType factor;
    IVec partition;                 // classical factors only
    IVec rho;                       // Bourbaki order, values 0/1
    std::vector<IVec> characters;   // fundamental-weight exponents, one per system
    std::string central_character;
    std::string provenance;
    bool validated = true;

    int count() const { return static_cast<int>(characters.size()); }
};

struct NoCuspidalData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Jordan type on the natural module of the nilpotent with weighted diagram 2*rho.
inline IVec partition_from_rho(const CartanType& t, const IVec& rho) {
    const int n = t.rank;
    if (static_cast<int>(rho.size()) != n) throw std::invalid_argument("rho length differs from the rank");
    std::vector<int> ev;  // eigenvalues of the neutral element
    int step = 2;         // spacing inside one sl2 string
    IVec h(n);
    for (int i = 0; i < n; ++i) h[i] = 2 * rho[i];
    switch (t.series) {
        case 'A': {
            int x = 0;
            ev.push_back(0);
            for (int i = 0; i < n; ++i) ev.push_back(x -= h[i]);
            // center: scale by n+1 and subtract the sum
            const int sum = std::accumulate(ev.begin(), ev.end(), 0);
            for (auto& v : ev) v = (n + 1) * v - sum;
            step = 2 * (n + 1);
            break;
        }
        case 'B':
        case 'C':
        case 'D': {
            // doubled e-coordinates
            IVec X(n + 1, 0);
            if (t.series == 'B') X[n] = 2 * h[n - 1];
            if (t.series == 'C') X[n] = h[n - 1];
            int top = n - 1;
            if (t.series == 'D') {
                X[n - 1] = h[n - 2] + h[n - 1];
                X[n] = h[n - 1] - h[n - 2];
                top = n - 2;
            }
            for (int k = top; k >= 1; --k) X[k] = X[k + 1] + 2 * h[k - 1];
            for (int k = 1; k <= n; ++k) {
                if (X[k] % 2) throw std::invalid_argument("weighted diagram is not even");
                ev.push_back(X[k] / 2);
                ev.push_back(-X[k] / 2);
            }
            if (t.series == 'B') ev.push_back(0);
            break;
        }
        default: throw std::invalid_argument("partition_from_rho needs a classical factor");
    }
    // peel off strings M, M-2, ..., -M
    std::multiset<int> pool(ev.begin(), ev.end());
    IVec parts;
    while (!pool.empty()) {
        const int M = *pool.rbegin();
        if (M < 0) throw std::invalid_argument("eigenvalues do not form sl2 strings");
        if (M % (step / 2)) throw std::invalid_argument("eigenvalues do not form sl2 strings");
        for (int v = M; v >= -M; v -= step) {
            auto it = pool.find(v);
            if (it == pool.end()) throw std::invalid_argument("eigenvalues do not form sl2 strings");
            pool.erase(it);
        }
        parts.push_back(2 * M / step + 1);
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

// Shapes allowed for cuspidal classical orbits: (n); (2,4,...,2a); (1,3,...,2a-1), (1,5,...), (3,7,...).
inline bool cuspidal_partition_shape(const CartanType& t, const IVec& p) {
    if (p.empty()) return false;
    IVec q = p;
    std::sort(q.begin(), q.end());
    auto progression = [&](int first, int step) {
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != first + step * static_cast<int>(i)) return false;
        return true;
    };
    switch (t.series) {
        case 'A': return q.size() == 1 && q[0] == t.rank + 1;
        case 'C': return progression(2, 2);
        case 'B':
        case 'D': return progression(1, 2) || progression(1, 4) || progression(3, 4);
        default: return false;
    }
}

class CuspidalTable {
public:
    static CuspidalTable from_json(const json& j) {
        CuspidalTable t;
        try {
            for (const auto& g : j.at("generic")) {
                if (g.at("series").get<std::string>() != "A") throw DataError("only the type A generic rule is supported");
                t.generic_a_ = true;
                t.generic_provenance_ = g.at("provenance").get<std::string>();
            }
            for (const auto& f : j.at("factors")) {
                const CartanType ct = parse_cartan_type(f.at("factor").get<std::string>());
                std::vector<CuspidalDatum> systems;
                for (const auto& s : f.at("systems")) {
                    CuspidalDatum d;
                    d.factor = ct;
                    d.rho = s.at("rho").get<IVec>();
                    if (!s.at("partition").is_null()) d.partition = s.at("partition").get<IVec>();
                    d.characters = s.at("characters").get<std::vector<IVec>>();
                    d.central_character = s.at("central_character").get<std::string>();
                    d.provenance = s.at("provenance").get<std::string>();
                    d.validated = s.at("validated").get<bool>();
                    validate(d);
                    systems.push_back(std::move(d));
                }
                if (!t.entries_.emplace(ct.name(), std::move(systems)).second)
                    throw DataError("duplicate cuspidal entry for " + ct.name());
            }
        } catch (const json::exception& e) {
            throw DataError(std::string("malformed cuspidal.json: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw DataError(std::string("cuspidal.json: ") + e.what());
        }
        return t;
    }

    static void validate(const CuspidalDatum& d) {
        const int n = d.factor.rank;
        const std::string who = "cuspidal.json " + d.factor.name() + ": ";
        if (static_cast<int>(d.rho.size()) != n) throw DataError(who + "rho length differs from the rank");
        for (int x : d.rho)
            if (x != 0 && x != 1) throw DataError(who + "rho values must be 0 or 1");
        if (d.characters.empty()) throw DataError(who + "a cuspidal orbit needs at least one system");
        for (const auto& c : d.characters)
            if (static_cast<int>(c.size()) != n) throw DataError(who + "character length differs from the rank");
        const bool classical = d.factor.series <= 'D';
        if (classical) {
            if (!cuspidal_partition_shape(d.factor, d.partition)) throw DataError(who + "partition has no cuspidal shape");
            IVec want = d.partition;
            std::sort(want.begin(), want.end());
            if (partition_from_rho(d.factor, d.rho) != want) throw DataError(who + "rho does not match the partition");
        } else if (!d.partition.empty()) {
            throw DataError(who + "exceptional factors carry no partition");
        }
    }

    bool covers(const CartanType& t) const { return (t.series == 'A' && generic_a_) || entries_.count(t.name()); }

    std::vector<CuspidalDatum> lookup(const CartanType& t) const {
        if (t.series == 'A' && generic_a_) {
            CuspidalDatum d;
            d.factor = t;
            d.partition = {t.rank + 1};
            d.rho.assign(t.rank, 1);
            for (int j = 1; j <= t.rank; ++j) {
                if (std::gcd(j, t.rank + 1) != 1) continue;
                IVec c(t.rank, 0);
                c[0] = j;
                d.characters.push_back(c);
            }
            d.central_character = "primitive character of mu_" + std::to_string(t.rank + 1);
            d.provenance = generic_provenance_;
            return {d};
        }
        auto it = entries_.find(t.name());
        if (it == entries_.end()) throw NoCuspidalData("no cuspidal data for " + t.name());
        return it->second;
    }

private:
    bool generic_a_ = false;
    std::string generic_provenance_;
    std::map<std::string, std::vector<CuspidalDatum>> entries_;
};

// Table from the active data directory, cached per directory.
inline const CuspidalTable& cuspidal_table() {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<CuspidalTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[data_dir()];
    if (!slot) slot = std::make_unique<CuspidalTable>(CuspidalTable::from_json(load_data_file("cuspidal.json", "atlas.cuspidal/1")));
    return *slot;
}

// Cuspidal data on a factor; with quotient (coroot coefficients of a central element, Bourbaki
// order), keeps only characters trivial on that element. Throws NoCuspidalData off the table.
inline std::vector<CuspidalDatum> cuspidal_pairs(const CartanType& t, const std::vector<Rat>* quotient = nullptr) {
    auto out = cuspidal_table().lookup(t);
    if (!quotient) return out;
    if (static_cast<int>(quotient->size()) != t.rank) throw std::invalid_argument("quotient element has the wrong length");
    std::vector<CuspidalDatum> kept;
    for (auto& d : out) {
        std::vector<IVec> chars;
        for (const auto& c : d.characters) {
            Rat v = 0;
            for (int k = 0; k < t.rank; ++k) v += Rat(c[k]) * (*quotient)[k];
            if (frac_part(v) == 0) chars.push_back(c);
        }
        d.characters = std::move(chars);
        if (!d.characters.empty()) kept.push_back(std::move(d));
    }
    return kept;
}

// rho transported to ambient nodes; -1 marks nodes outside the factor.
inline IVec rho_weights(const CuspidalDatum& d, const IVec& node_map, int ambient_size) {
    if (static_cast<int>(node_map.size()) != d.factor.rank) throw std::invalid_argument("node map does not match the factor rank");
    IVec out(ambient_size, -1);
    for (int k = 0; k < d.factor.rank; ++k) {
        if (node_map[k] < 0 || node_map[k] >= ambient_size) throw std::invalid_argument("node map points outside the diagram");
        if (out[node_map[k]] != -1) throw std::invalid_argument("node map is not injective");
        out[node_map[k]] = d.rho[k];
    }
    return out;
}

}  // namespace atlas
