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

#include "antcf/model.hpp"

#include "antcf/error.hpp"

namespace antcf {

void ModelParams::validate() const {
    if (gamma <= 0.0) {
        throw Error("params: gamma must be > 0");
    }
    if (lambda <= 0.0) {
        throw Error("params: lambda must be > 0");
    }
    if (sigma < 0.0) {
        throw Error("params: sigma must be >= 0");
    }
    if (cluster_count < 1) {
        throw Error("params: cluster_count must be >= 1");
    }
    if (neighborhood_size < 1) {
        throw Error("params: neighborhood_size must be >= 1");
    }
    if (top_n < 1) {
        throw Error("params: top_n must be >= 1");
    }
    if (!(rating_min < rating_max)) {
        throw Error("params: rating_min must be < rating_max");
    }
    if (type_cap.has_value() && *type_cap < 1) {
        throw Error("params: type_cap must be >= 1");
    }
}

std::optional<EntityIndex> Model::find_user(const std::string& id) const {
    auto it = user_index_.find(id);
    if (it == user_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<EntityIndex> Model::find_item(const std::string& id) const {
    auto it = item_index_.find(id);
    if (it == item_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

EntityIndex Model::add_user(const std::string& id, PheromoneVector seed) {
    if (user_index_.contains(id)) {
        throw Error("duplicate user id: " + id);
    }
    const auto index = static_cast<EntityIndex>(users.size());
    user_index_.emplace(id, index);
    EntityState state;
    state.id = id;
    state.pheromones = std::move(seed);
    users.push_back(std::move(state));
    return index;
}

EntityIndex Model::add_user_fresh(const std::string& id) {
    return add_user(id, PheromoneVector::single(mint_type(), 1.0));
}

EntityIndex Model::add_item(const std::string& id) {
    if (item_index_.contains(id)) {
        throw Error("duplicate item id: " + id);
    }
    const auto index = static_cast<EntityIndex>(items.size());
    item_index_.emplace(id, index);
    EntityState state;
    state.id = id;
    items.push_back(std::move(state));
    return index;
}

double Model::global_mean() const {
    if (stats.total_count > 0) {
        return stats.total_sum / static_cast<double>(stats.total_count);
    }
    return params.midpoint();
}

double Model::mean_or_global(const EntityState& e) const {
    if (e.has_mean()) {
        return e.mean();
    }
    return global_mean();
}

bool Model::operator==(const Model& other) const {
    return mode == other.mode && params == other.params && stats == other.stats &&
           next_type == other.next_type && users == other.users && items == other.items;
}

Model init_acf(std::span<const std::string> user_ids,
               std::span<const std::string> item_ids,
               const ModelParams& params, RatingMode mode) {
    params.validate();
    Model model;
    model.mode = mode;
    model.params = params;
    for (const auto& id : user_ids) {
        model.add_user_fresh(id);
    }
    for (const auto& id : item_ids) {
        model.add_item(id);
    }
    return model;
}

}  // namespace antcf
