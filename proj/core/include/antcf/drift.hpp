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
#include <string>
#include <vector>

#include "antcf/model.hpp"

namespace antcf {

struct DriftConfig {
    int users = 100;
    int items = 1000;
    int events_per_user = 100;
    // Full rotations of a user's preferred item group over the stream;
    // 0 keeps preferences stationary.
    double drift_rate = 0.0;
    std::uint64_t seed = 0;
    int groups = 10;
};

// Synthetic implicit-feedback stream with rotating latent interests. Each
// user samples items uniformly from one of `groups` item groups; the
// preferred group advances with time at `drift_rate`. Deterministic per
// seed. Timestamps are the slot indices 0..E-1, one event per slot.
struct DriftDataset {
    DriftConfig config;
    std::vector<RatingEvent> events;
    std::vector<std::string> user_ids;
    std::vector<std::string> item_ids;
    std::vector<int> item_group;     // item index -> group
    std::vector<int> initial_group;  // user index -> group at time 0

    std::int64_t total_slots() const {
        return static_cast<std::int64_t>(config.users) * config.events_per_user;
    }

    // Preferred group of `user` at timestamp `ts`.
    int group_at(int user, std::int64_t ts) const;

    // Ground truth for the window [ts_begin, ts_end): every item belonging
    // to a group the user preferred at any point of the window. Each event
    // the generator emits inside the window is relevant by construction.
    std::vector<std::string> relevant_items(int user, std::int64_t ts_begin,
                                            std::int64_t ts_end) const;
};

DriftDataset generate_drift(const DriftConfig& config);

}  // namespace antcf
