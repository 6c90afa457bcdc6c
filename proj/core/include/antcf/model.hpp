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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "antcf/pheromone.hpp"

namespace antcf {

using EntityIndex = std::int32_t;

enum class RatingMode { Explicit, Implicit };

struct ModelParams {
    double gamma = 0.2;    // transmission rate
    double lambda = 1.0;   // evaporation control; larger = slower decay
    double sigma = 0.01;   // cutoff threshold
    int cluster_count = 20;
    int neighborhood_size = 20;
    int top_n = 20;
    double rating_min = 1.0;
    double rating_max = 5.0;
    std::optional<std::int32_t> type_cap;  // optional per-entity support cap

    double midpoint() const { return (rating_min + rating_max) / 2.0; }

    // Throws Error on any out-of-range field.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

struct GlobalStats {
    std::int64_t total_count = 0;
    double total_sum = 0.0;

    bool operator==(const GlobalStats&) const = default;
};

// One timestamped preference observation. Explicit events carry a value on
// the rating scale; implicit 0/1 events carry none.
struct RatingEvent {
    std::string user;
    std::string item;
    std::optional<double> value;
    std::int64_t timestamp = 0;  // epoch seconds

    bool operator==(const RatingEvent&) const = default;
};

// Per-user or per-item state. `ratings` holds the latest observed value per
// counterpart and is populated on the user side only; rating prediction and
// rated-item exclusion both need it.
struct EntityState {
    std::string id;
    PheromoneVector pheromones;
    std::int64_t rating_count = 0;
    double rating_sum = 0.0;
    std::unordered_map<EntityIndex, double> ratings;

    bool has_mean() const { return rating_count > 0; }
    double mean() const { return rating_sum / static_cast<double>(rating_count); }

    bool operator==(const EntityState&) const = default;
};

class Model {
public:
    RatingMode mode = RatingMode::Explicit;
    ModelParams params;
    GlobalStats stats;
    std::vector<EntityState> users;
    std::vector<EntityState> items;
    PheromoneType next_type = 0;

    std::optional<EntityIndex> find_user(const std::string& id) const;
    std::optional<EntityIndex> find_item(const std::string& id) const;

    // Registers a new user seeded with the given vector (duplicate id throws).
    EntityIndex add_user(const std::string& id, PheromoneVector seed);
    // Registers a new user with a fresh unique pheromone type {t: 1.0}.
    EntityIndex add_user_fresh(const std::string& id);
    // Registers a new item with an empty vector.
    EntityIndex add_item(const std::string& id);

    PheromoneType mint_type() { return next_type++; }

    // Global mean rating; falls back to the scale midpoint before any
    // explicit event has been seen.
    double global_mean() const;
    // Entity mean with the fallback chain: own mean, global mean, midpoint.
    double mean_or_global(const EntityState& e) const;

    bool operator==(const Model& other) const;

private:
    std::unordered_map<std::string, EntityIndex> user_index_;
    std::unordered_map<std::string, EntityIndex> item_index_;
};

// Per-user unique pheromone seeding: every user starts as {own type: 1.0},
// items start empty, all statistics zero. Duplicate ids are rejected.
Model init_acf(std::span<const std::string> user_ids,
               std::span<const std::string> item_ids,
               const ModelParams& params,
               RatingMode mode = RatingMode::Explicit);

}  // namespace antcf
