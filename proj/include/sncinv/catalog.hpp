#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sncinv/errors.hpp"
#include "sncinv/model.hpp"

namespace sncinv {

// Built-in degeneration fixtures with snc special fibers: the cycles I_n
// (n >= 2) and the star-shaped types I0*, In*, II*, III*, IV*. Types whose
// minimal models are not snc (I_1, II, III, IV) are not offered. Every
// stratum class is the symbol "pt" times an L-polynomial: a component of
// the dual graph is a projective line minus its intersection points, and
// pairwise intersections are reduced points.
struct CatalogEntry {
    std::string name;
    std::optional<int> param;
    SncModel model;
};

inline const char* kCatalogSymbol = "pt";

namespace catalogdetail {

// Tree/cycle fixture from multiplicities and dual-graph edges; component i
// contributes a P^1 minus one point per neighbor.
inline SncModel graph_model(const std::vector<int>& mults,
                            const std::vector<std::pair<int, int>>& edges,
                            const std::map<StratumKey, int>& pair_points) {
    SncModel model;
    model.fiber_dim = 1;
    const int k = static_cast<int>(mults.size());
    std::vector<int> degree(static_cast<std::size_t>(k) + 1, 0);
    for (const auto& [a, b] : edges) {
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
    }
    const FormalClass pt = FormalClass::symbol(kCatalogSymbol);
    for (int i = 1; i <= k; ++i) {
        model.components[i] = mults[static_cast<std::size_t>(i - 1)];
        const LPoly cls = LPoly::var() + LPoly(1 - degree[static_cast<std::size_t>(i)]);
        model.strata[StratumKey{i}] = pt * cls;
    }
    for (const auto& [a, b] : edges) {
        const StratumKey key{a, b};
        auto it = pair_points.find(key);
        const int points = it == pair_points.end() ? 1 : it->second;
        model.strata[key] = pt * Rational(points);
    }
    return model;
}

} // namespace catalogdetail

inline std::vector<std::string> catalog_type_names() {
    return {"I_n", "I0*", "In*", "II*", "III*", "IV*"};
}

inline CatalogEntry make_catalog_entry(const std::string& type, std::optional<int> param = std::nullopt) {
    using catalogdetail::graph_model;
    CatalogEntry entry;
    entry.name = type;
    entry.param = param;

    if (type == "I_n") {
        if (!param || *param < 2)
            throw DomainError("catalog: I_n requires a parameter n >= 2 (the n-cycle)");
        const int n = *param;
        std::vector<int> mults(static_cast<std::size_t>(n), 1);
        std::vector<std::pair<int, int>> edges;
        std::map<StratumKey, int> pair_points;
        if (n == 2) {
            edges.push_back({1, 2});
            pair_points[StratumKey{1, 2}] = 2;  // two components meeting twice
        } else {
            for (int i = 1; i <= n; ++i) edges.push_back({i, i % n + 1});
        }
        entry.model = graph_model(mults, edges, pair_points);
        // each component is a P^1 minus its two cycle neighbors
        const FormalClass gm = FormalClass::symbol(kCatalogSymbol) * (LPoly::var() - LPoly(1));
        for (int i = 1; i <= n; ++i) entry.model.strata[StratumKey{i}] = gm;
        return entry;
    }
    if (type == "I0*") {
        entry.model = graph_model({2, 1, 1, 1, 1}, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}, {});
        return entry;
    }
    if (type == "In*") {
        if (!param || *param < 1) throw DomainError("catalog: In* requires a parameter n >= 1");
        const int n = *param;
        // centrals 1..n+1 of multiplicity 2, legs n+2..n+5 of multiplicity 1
        std::vector<int> mults;
        for (int i = 0; i <= n; ++i) mults.push_back(2);
        for (int i = 0; i < 4; ++i) mults.push_back(1);
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= n; ++i) edges.push_back({i, i + 1});
        edges.push_back({n + 2, 1});
        edges.push_back({n + 3, 1});
        edges.push_back({n + 4, n + 1});
        edges.push_back({n + 5, n + 1});
        entry.model = graph_model(mults, edges, {});
        return entry;
    }
    if (type == "II*") {
        entry.model = graph_model({1, 2, 3, 4, 5, 6, 4, 2, 3},
                                  {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {6, 9}}, {});
        return entry;
    }
    if (type == "III*") {
        entry.model = graph_model({1, 2, 3, 4, 3, 2, 1, 2},
                                  {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {4, 8}}, {});
        return entry;
    }
    if (type == "IV*") {
        entry.model = graph_model({3, 2, 1, 2, 1, 2, 1},
                                  {{1, 2}, {2, 3}, {1, 4}, {4, 5}, {1, 6}, {6, 7}}, {});
        return entry;
    }

    std::string known;
    for (const auto& name : catalog_type_names()) known += (known.empty() ? "" : ", ") + name;
    throw DomainError("catalog: unknown type '" + type + "' (available: " + known + ")");
}

} // namespace sncinv
