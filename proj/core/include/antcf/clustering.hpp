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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "antcf/model.hpp"

namespace antcf {

// A user's rating pattern: the items they touched and the values they gave
// (1.0 for implicit events). Input to user clustering.
struct RatingPatternVector {
    std::string user;
    std::map<std::string, double> pattern;

    bool operator==(const RatingPatternVector&) const = default;
};

struct Clustering {
    std::unordered_map<std::string, int> assignments;  // user id -> cluster
    std::vector<std::map<std::string, double>> centroids;
    double inertia = 0.0;
    std::vector<double> inertia_history;  // one value per Lloyd iteration

    int cluster_count() const { return static_cast<int>(centroids.size()); }

    // `user_id<TAB>cluster_index` lines, sorted by user id.
    std::string to_tsv() const;
};

// One pattern vector per distinct user, in order of first appearance.
// Duplicate (user, item) pairs keep the value of the latest timestamp
// (input order breaks ties). Implicit events contribute 1.0.
std::vector<RatingPatternVector> build_pattern_vectors(std::span<const RatingEvent> events);

// Lloyd's algorithm with k-means++ seeding, Euclidean distance on the
// sparse patterns (missing dimensions are zero). Deterministic for a fixed
// seed. Stops on stable assignments, relative inertia change below 1e-6,
// or `max_iters`. Empty clusters are re-seeded from the farthest point.
// Rejects k < 1 and k larger than the number of distinct patterns.
Clustering kmeans(std::span<const RatingPatternVector> vectors, int k,
                  int max_iters = 100, std::uint64_t seed = 0);

// Clustered pheromone seeding: user u starts as {cluster(u): 1.0}, items
// start empty. Every user must appear in `clustering.assignments`; training
// then proceeds exactly as with per-user seeding.
Model init_iacf(std::span<const std::string> user_ids,
                std::span<const std::string> item_ids,
                const Clustering& clustering, const ModelParams& params,
                RatingMode mode = RatingMode::Explicit);

// Cold-start rule for users arriving after clustering: with a pattern,
// the nearest centroid (ties to the lowest index); without one, nullopt,
// telling the trainer to mint a fresh pheromone type.
std::optional<int> assign_new_user(const std::optional<RatingPatternVector>& pattern,
                                   const Clustering& clustering);

}  // namespace antcf
