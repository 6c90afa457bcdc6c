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

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "antcf/model.hpp"

namespace antcf {

struct TrainReport {
    std::size_t events = 0;
    double seconds = 0.0;
    double events_per_second = 0.0;
    double mean_touched_entries = 0.0;

    // key=value lines, one per field.
    std::string to_text() const;
};

// Applies one event to the model in place.
//
// Both sides are updated from pre-event snapshots U (user vector) and
// V (item vector):
//   explicit:  item' = cutoff(evaporate(V) + (value - mean_u) * gamma * U)
//              user' = cutoff(evaporate(U) + (value - mean_v) * gamma * V)
//   implicit:  item' = cutoff(evaporate(V) + gamma * U)
//              user' = cutoff(evaporate(U) + gamma * V)
// where mean_u / mean_v exclude the current event and fall back to the
// global mean, then the scale midpoint. Rating statistics are folded in
// afterwards (counts only in implicit mode). Unknown users and items are
// auto-registered first; a new user gets a fresh unique pheromone type.
//
// Returns the number of pheromone entry slots touched: |U| + |V| reads plus
// the written type-union (both updates write within the same union, counted
// once). Never scales with model size.
//
// Rejects events whose presence or absence of a value contradicts the
// model's mode, and explicit values outside the rating scale.
std::size_t apply_event(Model& model, const RatingEvent& event);

// Folds `events` over the model in order. The stream must be sorted by
// timestamp (ties allowed); the first out-of-order pair is reported
// otherwise, with the model left untouched.
TrainReport train_stream(Model& model, std::span<const RatingEvent> events);

// Immutable snapshot for concurrent readers while training continues.
std::shared_ptr<const Model> snapshot(const Model& model);

}  // namespace antcf
