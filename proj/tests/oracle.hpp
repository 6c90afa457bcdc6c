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

// Test-only brute-force reference for tiny instances. This is a direct,
// dense transcription of the update and recommendation rules: full rescans,
// std::map state, no sparse merging, no caching. It shares no code with the
// engine's model/training/recommend paths.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "antcf/model.hpp"

namespace antcf::oracle {

struct Instance {
    bool explicit_mode = true;
    ModelParams params;
    std::vector<std::string> users;
    std::vector<std::string> items;
    std::vector<RatingEvent> events;  // timestamp-sorted
};

struct State {
    std::map<std::string, std::map<std::int32_t, double>> user_ph;
    std::map<std::string, std::map<std::int32_t, double>> item_ph;
    std::map<std::string, long long> user_count;
    std::map<std::string, double> user_sum;
    std::map<std::string, long long> item_count;
    std::map<std::string, double> item_sum;
    long long total_count = 0;
    double total_sum = 0.0;
    std::map<std::string, std::map<std::string, double>> ratings;
    std::vector<std::string> user_order;  // registration order
    std::vector<std::string> item_order;
    std::int32_t next_type = 0;
};

State replay(const Instance& instance);

double predict(const State& state, const Instance& instance,
               const std::string& user, const std::string& item);

std::vector<std::pair<std::string, double>> rank(const State& state,
                                                 const Instance& instance,
                                                 const std::string& user, int n,
                                                 bool exclude_rated);

// Replays `instance` through both the engine and this reference and
// compares every pheromone amount (within `tolerance`), every prediction,
// and every ranking (exact). Returns an empty string on agreement or a
// description of the first divergence.
std::string check_instance(const Instance& instance, double tolerance = 1e-9);

}  // namespace antcf::oracle
