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

#include "antcf/drift.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "antcf/error.hpp"

namespace antcf {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string padded_id(char prefix, int value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%0*d", prefix, width, value);
    return buf;
}

// Group phase is linear in normalized time: initial + rotations * groups * tau.
double phase_at(const DriftConfig& cfg, int initial, double tau) {
    return static_cast<double>(initial) +
           cfg.drift_rate * static_cast<double>(cfg.groups) * tau;
}

}  // namespace

int DriftDataset::group_at(int user, std::int64_t ts) const {
    const double tau = static_cast<double>(ts) / static_cast<double>(total_slots());
    const auto step = static_cast<std::int64_t>(
        std::floor(phase_at(config, initial_group[static_cast<std::size_t>(user)], tau)));
    return static_cast<int>(((step % config.groups) + config.groups) % config.groups);
}

std::vector<std::string> DriftDataset::relevant_items(int user, std::int64_t ts_begin,
                                                      std::int64_t ts_end) const {
    if (ts_end <= ts_begin) {
        return {};
    }
    const double total = static_cast<double>(total_slots());
    const int initial = initial_group[static_cast<std::size_t>(user)];
    const double tau0 = static_cast<double>(ts_begin) / total;
    const double tau1 = static_cast<double>(ts_end - 1) / total;
    const auto first = static_cast<std::int64_t>(std::floor(phase_at(config, initial, tau0)));
    const auto last = static_cast<std::int64_t>(std::floor(phase_at(config, initial, tau1)));

    std::vector<bool> active(static_cast<std::size_t>(config.groups), false);
    for (std::int64_t step = first; step <= last; ++step) {
        active[static_cast<std::size_t>(((step % config.groups) + config.groups) %
                                        config.groups)] = true;
        if (step - first >= config.groups) {
            break;  // all groups covered
        }
    }

    std::vector<std::string> result;
    for (std::size_t i = 0; i < item_group.size(); ++i) {
        if (active[static_cast<std::size_t>(item_group[i])]) {
            result.push_back(item_ids[i]);
        }
    }
    return result;
}

DriftDataset generate_drift(const DriftConfig& config) {
    if (config.users < 1 || config.items < 1 || config.events_per_user < 1 ||
        config.groups < 1 || config.drift_rate < 0.0) {
        throw Error("generate_drift: all sizes must be positive and drift_rate >= 0");
    }
    if (config.items < config.groups) {
        throw Error("generate_drift: need at least one item per group");
    }

    DriftDataset data;
    data.config = config;

    const int user_width = static_cast<int>(std::to_string(config.users).size());
    const int item_width = static_cast<int>(std::to_string(config.items).size());
    data.user_ids.reserve(static_cast<std::size_t>(config.users));
    for (int u = 0; u < config.users; ++u) {
        data.user_ids.push_back(padded_id('u', u, user_width));
    }
    data.item_ids.reserve(static_cast<std::size_t>(config.items));
    data.item_group.reserve(static_cast<std::size_t>(config.items));
    for (int i = 0; i < config.items; ++i) {
        data.item_ids.push_back(padded_id('i', i, item_width));
        data.item_group.push_back(i % config.groups);
    }

    std::mt19937_64 rng(config.seed);
    data.initial_group.reserve(static_cast<std::size_t>(config.users));
    for (int u = 0; u < config.users; ++u) {
        data.initial_group.push_back(
            static_cast<int>(uniform01(rng) * config.groups) % config.groups);
    }

    // Each user owns exactly events_per_user slots; the slot order is a
    // seeded shuffle of the user multiset.
    const std::int64_t total = data.total_slots();
    std::vector<int> slot_user(static_cast<std::size_t>(total));
    for (std::int64_t s = 0; s < total; ++s) {
        slot_user[static_cast<std::size_t>(s)] = static_cast<int>(s % config.users);
    }
    for (std::int64_t s = total - 1; s > 0; --s) {
        const auto j = static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(s + 1));
        std::swap(slot_user[static_cast<std::size_t>(s)],
                  slot_user[static_cast<std::size_t>(std::min(j, s))]);
    }

    // Items of each group, for O(1) within-group sampling.
    std::vector<std::vector<int>> group_items(static_cast<std::size_t>(config.groups));
    for (int i = 0; i < config.items; ++i) {
        group_items[static_cast<std::size_t>(data.item_group[static_cast<std::size_t>(i)])]
            .push_back(i);
    }

    data.events.reserve(static_cast<std::size_t>(total));
    for (std::int64_t s = 0; s < total; ++s) {
        const int u = slot_user[static_cast<std::size_t>(s)];
        const int g = data.group_at(u, s);
        const auto& pool = group_items[static_cast<std::size_t>(g)];
        const auto pick =
            static_cast<std::size_t>(uniform01(rng) * static_cast<double>(pool.size()));
        const int item = pool[std::min(pick, pool.size() - 1)];
        RatingEvent ev;
        ev.user = data.user_ids[static_cast<std::size_t>(u)];
        ev.item = data.item_ids[static_cast<std::size_t>(item)];
        ev.timestamp = s;
        data.events.push_back(std::move(ev));
    }
    return data;
}

}  // namespace antcf
