// Copyright 2026-present the ant-cf project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "antcf/recommend.hpp"

#include <algorithm>
#include <cmath>

#include "antcf/error.hpp"

namespace antcf {

namespace {

std::vector<double> all_norms(const std::vector<EntityState>& entities) {
    std::vector<double> norms(entities.size());
    for (std::size_t i = 0; i < entities.size(); ++i) {
        norms[i] = norm(entities[i].pheromones);
    }
    return norms;
}

// Top-n of all entities other than the anchor, similarity descending, ids
// ascending on ties. Zero and negative similarities participate.
std::vector<std::pair<EntityIndex, double>> top_similar(
    const std::vector<EntityState>& entities, const std::vector<double>& norms,
    EntityIndex anchor, int n) {
    const EntityState& a = entities[static_cast<std::size_t>(anchor)];
    const double anchor_norm = norms[static_cast<std::size_t>(anchor)];

    std::vector<std::pair<EntityIndex, double>> scored;
    scored.reserve(entities.size() > 0 ? entities.size() - 1 : 0);
    for (std::size_t i = 0; i < entities.size(); ++i) {
        if (static_cast<EntityIndex>(i) == anchor) {
            continue;
        }
        double sim = 0.0;
        if (!a.pheromones.empty() && !entities[i].pheromones.empty()) {
            sim = dot(a.pheromones, entities[i].pheromones) / (anchor_norm * norms[i]);
        }
        scored.emplace_back(static_cast<EntityIndex>(i), sim);
    }

    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), scored.size());
    auto by_similarity = [&entities](const auto& x, const auto& y) {
        if (x.second != y.second) {
            return x.second > y.second;
        }
        return entities[static_cast<std::size_t>(x.first)].id <
               entities[static_cast<std::size_t>(y.first)].id;
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), by_similarity);
    scored.resize(keep);
    return scored;
}

NeighborList to_neighbor_list(const std::vector<EntityState>& entities,
                              const std::string& anchor,
                              const std::vector<std::pair<EntityIndex, double>>& top) {
    NeighborList list;
    list.anchor = anchor;
    list.neighbors.reserve(top.size());
    for (const auto& [idx, sim] : top) {
        list.neighbors.push_back(ScoredEntity{entities[static_cast<std::size_t>(idx)].id, sim});
    }
    return list;
}

// One fusion term of the dual-neighborhood prediction: the weighted mean
// deviation over the neighbors that `contribution` accepts.
template <typename ContributionFn>
double fusion_term(const std::vector<std::pair<EntityIndex, double>>& neighbors,
                   bool signed_weighting, ContributionFn contribution) {
    double accumulated = 0.0;
    double similarity_mass = 0.0;
    for (const auto& [idx, sim] : neighbors) {
        double deviation = 0.0;
        if (!contribution(idx, deviation)) {
            continue;
        }
        const double weight = signed_weighting ? sim : std::fabs(sim);
        accumulated += weight * deviation;
        similarity_mass += std::fabs(sim);
    }
    if (similarity_mass == 0.0) {
        return 0.0;
    }
    return accumulated / similarity_mass;
}

double predict_with_neighbors(const Model& model, EntityIndex u, EntityIndex v,
                              const std::vector<std::pair<EntityIndex, double>>& user_nbrs,
                              const std::vector<std::pair<EntityIndex, double>>& item_nbrs,
                              const PredictOptions& options) {
    const double mean = model.global_mean();

    const double user_term = fusion_term(
        user_nbrs, options.signed_weighting, [&](EntityIndex n, double& deviation) {
            const EntityState& other = model.users[static_cast<std::size_t>(n)];
            auto it = other.ratings.find(v);
            if (it == other.ratings.end()) {
                return false;
            }
            deviation = it->second - other.mean();
            return true;
        });

    const EntityState& user = model.users[static_cast<std::size_t>(u)];
    const double item_term = fusion_term(
        item_nbrs, options.signed_weighting, [&](EntityIndex m, double& deviation) {
            auto it = user.ratings.find(m);
            if (it == user.ratings.end()) {
                return false;
            }
            deviation = it->second - model.items[static_cast<std::size_t>(m)].mean();
            return true;
        });

    return std::clamp(mean + user_term + item_term, model.params.rating_min,
                      model.params.rating_max);
}

}  // namespace

NeighborList user_neighbors(const Model& model, const std::string& user, int n) {
    auto u = model.find_user(user);
    if (!u.has_value()) {
        throw Error("unknown user id: " + user);
    }
    const auto norms = all_norms(model.users);
    return to_neighbor_list(model.users, user, top_similar(model.users, norms, *u, n));
}

NeighborList item_neighbors(const Model& model, const std::string& item, int n) {
    auto v = model.find_item(item);
    if (!v.has_value()) {
        throw Error("unknown item id: " + item);
    }
    const auto norms = all_norms(model.items);
    return to_neighbor_list(model.items, item, top_similar(model.items, norms, *v, n));
}

double predict_rating(const Model& model, const std::string& user,
                      const std::string& item, const PredictOptions& options) {
    const auto u = model.find_user(user);
    const auto v = model.find_item(item);
    if (!u.has_value() || !v.has_value()) {
        return model.global_mean();
    }
    const int n = model.params.neighborhood_size;
    const auto user_nbrs = top_similar(model.users, all_norms(model.users), *u, n);
    const auto item_nbrs = top_similar(model.items, all_norms(model.items), *v, n);
    return predict_with_neighbors(model, *u, *v, user_nbrs, item_nbrs, options);
}

RankedList rank_items(const Model& model, const std::string& user, int n,
                      bool exclude_rated) {
    RankedList list;
    list.user = user;
    const auto u = model.find_user(user);
    if (!u.has_value()) {
        return list;
    }
    const EntityState& anchor = model.users[static_cast<std::size_t>(*u)];
    const double anchor_norm = norm(anchor.pheromones);

    std::vector<std::pair<EntityIndex, double>> scored;
    scored.reserve(model.items.size());
    for (std::size_t i = 0; i < model.items.size(); ++i) {
        const auto idx = static_cast<EntityIndex>(i);
        if (exclude_rated && anchor.ratings.contains(idx)) {
            continue;
        }
        const PheromoneVector& ph = model.items[i].pheromones;
        double sim = 0.0;
        if (!anchor.pheromones.empty() && !ph.empty()) {
            sim = dot(anchor.pheromones, ph) / (anchor_norm * norm(ph));
        }
        scored.emplace_back(idx, sim);
    }

    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), [&model](const auto& x, const auto& y) {
                          if (x.second != y.second) {
                              return x.second > y.second;
                          }
                          return model.items[static_cast<std::size_t>(x.first)].id <
                                 model.items[static_cast<std::size_t>(y.first)].id;
                      });
    scored.resize(keep);
    list.entries.reserve(keep);
    for (const auto& [idx, sim] : scored) {
        list.entries.push_back(ScoredEntity{model.items[static_cast<std::size_t>(idx)].id, sim});
    }
    return list;
}

const std::vector<std::pair<EntityIndex, double>>& NeighborCache::user(EntityIndex u) {
    auto it = users_.find(u);
    if (it != users_.end()) {
        return it->second;
    }
    if (user_norms_.empty()) {
        user_norms_ = all_norms(model_.users);
    }
    auto top = top_similar(model_.users, user_norms_, u, model_.params.neighborhood_size);
    return users_.emplace(u, std::move(top)).first->second;
}

const std::vector<std::pair<EntityIndex, double>>& NeighborCache::item(EntityIndex v) {
    auto it = items_.find(v);
    if (it != items_.end()) {
        return it->second;
    }
    if (item_norms_.empty()) {
        item_norms_ = all_norms(model_.items);
    }
    auto top = top_similar(model_.items, item_norms_, v, model_.params.neighborhood_size);
    return items_.emplace(v, std::move(top)).first->second;
}

double predict_rating_cached(const Model& model, NeighborCache& cache,
                             const std::string& user, const std::string& item,
                             const PredictOptions& options) {
    const auto u = model.find_user(user);
    const auto v = model.find_item(item);
    if (!u.has_value() || !v.has_value()) {
        return model.global_mean();
    }
    return predict_with_neighbors(model, *u, *v, cache.user(*u), cache.item(*v), options);
}

}  // namespace antcf
