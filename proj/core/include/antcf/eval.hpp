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
#include <functional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "antcf/model.hpp"
#include "antcf/recommend.hpp"

namespace antcf {

// ---- Metrics -------------------------------------------------------------

// sqrt(mean of squared (truth - prediction)); rejects an empty list.
double rmse(std::span<const std::pair<double, double>> truth_prediction);

// |recommended ∩ relevant| / n. The denominator is the configured list
// length n even when fewer items were recommendable.
double precision_at_n(const RankedList& recommended,
                      const std::unordered_set<std::string>& relevant, int n);

// Rank-position penalty over the n recommendation slots: hits contribute
// rank/n, every other slot (recommended misses and unfilled slots alike)
// contributes (n+1)/n. Lower is better; range [(n+1)/2, n+1].
double ranking_accumulation(const RankedList& recommended,
                            const std::unordered_set<std::string>& relevant, int n);

// ---- Splits ----------------------------------------------------------------

struct HoldoutSplit {
    std::vector<RatingEvent> train;
    std::vector<RatingEvent> test;
};

// Seeded uniform split; both halves come back timestamp-sorted.
HoldoutSplit split_random(std::span<const RatingEvent> events, double test_fraction,
                          std::uint64_t seed);

// The earliest events train, the most recent `test_fraction` tests.
HoldoutSplit split_chronological(std::span<const RatingEvent> events,
                                 double test_fraction);

// ---- Rating evaluation -----------------------------------------------------

// A trained rating predictor; `predict` must accept unknown ids.
struct RatingPredictor {
    std::function<double(const std::string& user, const std::string& item)> predict;
    double train_seconds = 0.0;
};

using RatingModelBuilder = std::function<RatingPredictor(std::span<const RatingEvent>)>;

// Per-user unique seeding, clustered seeding, and the bias sanity baseline
// (global mean + user/item offsets, clamped).
RatingModelBuilder acf_rating_builder(const ModelParams& params,
                                      const PredictOptions& options = {});
RatingModelBuilder iacf_rating_builder(const ModelParams& params, std::uint64_t seed,
                                       const PredictOptions& options = {});
RatingModelBuilder bias_baseline_builder(const ModelParams& params);

struct RatingEvalReport {
    double rmse = 0.0;
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
    std::size_t train_events = 0;
    std::size_t test_pairs = 0;

    std::string to_text() const;
    std::string to_csv() const;
};

// Trains on split.train, predicts every test pair, reports RMSE and times.
RatingEvalReport evaluate_rating(const RatingModelBuilder& builder,
                                 const HoldoutSplit& split);

// ---- Ranking evaluation ----------------------------------------------------

using RankingModelBuilder = std::function<Model(std::span<const RatingEvent>)>;

RankingModelBuilder acf_ranking_builder(const ModelParams& params);
RankingModelBuilder iacf_ranking_builder(const ModelParams& params, std::uint64_t seed);

struct RankingEvalOptions {
    int runs = 5;
    double test_fraction = 0.1;
    std::uint64_t seed_base = 1;  // run r uses seed_base + r
    int top_n = 20;
};

struct RankingEvalReport {
    double precision = 0.0;  // averaged over users, then runs
    double ra = 0.0;
    std::vector<double> run_precision;
    std::vector<double> run_ra;
    int top_n = 0;

    std::string to_text() const;
    std::string to_csv() const;
};

// Per run: random split with the run's seed, train on the train half, rank
// top-n per test user (train-rated items excluded), score against the
// user's test items. Averages over test users, then over runs.
RankingEvalReport evaluate_ranking(
    const std::function<Model(std::span<const RatingEvent>, std::uint64_t seed)>& builder,
    std::span<const RatingEvent> events, const RankingEvalOptions& options);

// ---- Temporal experiment ---------------------------------------------------

struct TemporalCurves {
    std::vector<std::int64_t> checkpoints;
    std::vector<double> time_precision;
    std::vector<double> timeless_precision;

    std::string to_csv() const;
};

struct TemporalOptions {
    int checkpoint_count = 15;
    int top_n = 20;
    std::uint64_t seed = 1;  // shuffle + clustering seed
    bool clustered_init = true;
    int cluster_count = 20;
};

// Contrasts incremental training in true timestamp order ("time") against
// batch training on the same events in one fixed seeded shuffle order
// ("timeless"). The time span is cut into checkpoint_count+1 equal
// segments; at each interior boundary both variants are trained on all
// events before it and scored by precision@n on the users active in the
// following window. Rejects streams shorter than the checkpoint count.
TemporalCurves temporal_experiment(std::span<const RatingEvent> events,
                                   const ModelParams& params,
                                   const TemporalOptions& options);

}  // namespace antcf
