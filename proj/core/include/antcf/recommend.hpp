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

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "antcf/model.hpp"

namespace antcf {

struct ScoredEntity {
    std::string id;
    double similarity;

    bool operator==(const ScoredEntity&) const = default;
};

// Most similar entities of the same kind, similarity descending, ties by id
// ascending; never contains the anchor.
struct NeighborList {
    std::string anchor;
    std::vector<ScoredEntity> neighbors;
};

// Top-N items for a user by user-item pheromone similarity, similarity
// descending, ties by id ascending. rank(entry at position p) = p + 1.
struct RankedList {
    std::string user;
    std::vector<ScoredEntity> entries;
};

NeighborList user_neighbors(const Model& model, const std::string& user, int n);
NeighborList item_neighbors(const Model& model, const std::string& item, int n);

struct PredictOptions {
    // Weight neighbor deviations by the signed similarity instead of |s|.
    bool signed_weighting = false;
};

// Rating prediction by dual neighborhood fusion around the global mean:
//   prediction = mean + T_user + T_item
// where T_user averages the deviations (rating - neighbor mean) of user
// neighbors who rated the item, weighted by |similarity|, and T_item does
// the same over item neighbors the user rated. A term with no contributors
// or zero similarity mass is 0. The result is clamped to the rating scale;
// unknown users or items fall back to the global mean.
double predict_rating(const Model& model, const std::string& user,
                      const std::string& item, const PredictOptions& options = {});

// Items ranked by cosine similarity to the user's pheromone vector. Items
// the user already rated are skipped when `exclude_rated` is set. An
// unknown user yields an empty list.
RankedList rank_items(const Model& model, const std::string& user, int n,
                      bool exclude_rated = true);

// Memoizes neighbor lists and entity norms over one immutable model; the
// evaluation paths predict for many pairs against the same snapshot.
class NeighborCache {
public:
    explicit NeighborCache(const Model& model) : model_(model) {}

    const std::vector<std::pair<EntityIndex, double>>& user(EntityIndex u);
    const std::vector<std::pair<EntityIndex, double>>& item(EntityIndex v);

private:
    const Model& model_;
    std::unordered_map<EntityIndex, std::vector<std::pair<EntityIndex, double>>> users_;
    std::unordered_map<EntityIndex, std::vector<std::pair<EntityIndex, double>>> items_;
    std::vector<double> user_norms_;
    std::vector<double> item_norms_;
};

// predict_rating against memoized neighbor lists; identical results.
double predict_rating_cached(const Model& model, NeighborCache& cache,
                             const std::string& user, const std::string& item,
                             const PredictOptions& options = {});

}  // namespace antcf
