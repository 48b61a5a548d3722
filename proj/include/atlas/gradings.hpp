#pragma once

#include "atlas/data.hpp"
#include "atlas/kac.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace atlas {

// Stratum data quoted for the two gradings with 0 < r < dim c.
struct StratumInfo {
    int cartan_dim = 0;
    std::string levi;
    std::string nilpotent;
};

struct LabelledGrading {
    std::string diagram;
    std::optional<std::string> label;  // RLYG label
    std::optional<int> m;
    std::optional<IVec> kac;           // display order, normalized
    std::optional<int> rank;           // dim c
    std::set<std::string> lists;
    std::optional<std::string> support;
    std::optional<std::string> weyl_group;
    std::optional<StratumInfo> stratum;
    std::string provenance;

    bool in(const std::string& list) const { return lists.count(list) > 0; }
    std::string name() const {
        if (label) return *label;
        if (kac) return "m=" + std::to_string(m.value_or(0)) + " " + kac_string(*kac);
        return "m=" + std::to_string(m.value_or(0));
    }
};

inline const std::set<std::string>& grading_list_names() {
    static const std::set<std::string> names{"git_stable", "r_zero", "r_equals_rank", "r_below_rank",
                                             "affords_full", "affords_stratum"};
    return names;
}

class GradingTable {
public:
    static GradingTable from_json(const json& j) {
        GradingTable t;
        try {
            for (const auto& [name, entries] : j.at("diagrams").items()) {
                const AffineDiagram& d = affine_by_name(name);
                auto& slot = t.by_diagram_[name];
                for (const auto& e : entries) {
                    LabelledGrading g;
                    g.diagram = name;
                    if (!e.at("label").is_null()) g.label = e.at("label").get<std::string>();
                    if (!e.at("m").is_null()) g.m = e.at("m").get<int>();
                    if (!e.at("rank").is_null()) g.rank = e.at("rank").get<int>();
                    for (const auto& l : e.at("lists")) g.lists.insert(l.get<std::string>());
                    if (e.contains("support") && !e.at("support").is_null()) g.support = e.at("support").get<std::string>();
                    if (e.contains("weyl_group") && !e.at("weyl_group").is_null())
                        g.weyl_group = e.at("weyl_group").get<std::string>();
                    if (e.contains("stratum")) {
                        const auto& s = e.at("stratum");
                        g.stratum = StratumInfo{s.at("cartan_dim").get<int>(), s.at("levi").get<std::string>(),
                                                s.at("nilpotent").get<std::string>()};
                    }
                    g.provenance = e.at("provenance").get<std::string>();
                    const std::string who = "gradings.json " + name + " " + g.name() + ": ";
                    if (!e.at("kac").is_null()) {
                        IVec raw = parse_coords(e.at("kac").get<std::string>());
                        if (static_cast<int>(raw.size()) != d.size()) throw DataError(who + "Kac diagram has the wrong length");
                        const int m = order(d, raw);
                        if (g.m && *g.m != m) throw DataError(who + "Kac diagram has order " + std::to_string(m));
                        g.m = m;
                        g.kac = normalize(d, raw);
                    }
                    if (g.lists.empty()) throw DataError(who + "no list membership");
                    for (const auto& l : g.lists)
                        if (!grading_list_names().count(l)) throw DataError(who + "unknown list '" + l + "'");
                    if (g.label)
                        for (const auto& o : slot)
                            if (o.label == g.label) throw DataError(who + "duplicate label");
                    slot.push_back(std::move(g));
                }
            }
            if (j.contains("ambiguous"))
                for (const auto& [name, entries] : j.at("ambiguous").items()) {
                    const AffineDiagram& d = affine_by_name(name);
                    for (const auto& e : entries)
                        t.ambiguous_[name].push_back({normalize(d, parse_coords(e.at("kac").get<std::string>())),
                                                      e.at("candidate").get<std::string>()});
                }
        } catch (const json::exception& e) {
            throw DataError(std::string("malformed gradings.json: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw DataError(std::string("gradings.json: ") + e.what());
        }
        return t;
    }

    const std::vector<LabelledGrading>& entries(const std::string& diagram) const {
        static const std::vector<LabelledGrading> none;
        auto it = by_diagram_.find(diagram);
        return it == by_diagram_.end() ? none : it->second;
    }

    const LabelledGrading* by_label(const std::string& diagram, const std::string& label) const {
        for (const auto& g : entries(diagram))
            if (g.label == label) return &g;
        return nullptr;
    }

    // Entry whose normalized Kac diagram equals the normalization of kc.
    const LabelledGrading* by_kac(const std::string& diagram, const IVec& kc) const {
        const IVec n = normalize(affine_by_name(diagram), kc);
        for (const auto& g : entries(diagram))
            if (g.kac == n) return &g;
        return nullptr;
    }

    // Label that an unlabelled diagram may carry, when the data cannot decide.
    std::optional<std::string> ambiguous_candidate(const std::string& diagram, const IVec& kc) const {
        auto it = ambiguous_.find(diagram);
        if (it == ambiguous_.end()) return std::nullopt;
        const IVec n = normalize(affine_by_name(diagram), kc);
        for (const auto& [k, label] : it->second)
            if (k == n) return label;
        return std::nullopt;
    }

private:
    std::map<std::string, std::vector<LabelledGrading>> by_diagram_;
    std::map<std::string, std::vector<std::pair<IVec, std::string>>> ambiguous_;
};

inline const GradingTable& grading_table() {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<GradingTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[data_dir()];
    if (!slot) slot = std::make_unique<GradingTable>(GradingTable::from_json(load_data_file("gradings.json", "atlas.gradings/1")));
    return *slot;
}

}  // namespace atlas
