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

#include "antcf/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "antcf/clustering.hpp"
#include "antcf/error.hpp"
#include "antcf/training.hpp"

namespace antcf {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Seeded Fisher-Yates; the std shuffle helpers are implementation-defined.
template <typename T>
void seeded_shuffle(std::vector<T>& values, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j =
            static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(values[i - 1], values[std::min(j, i - 1)]);
    }
}

struct UniverseIds {
    std::vector<std::string> users;
    std::vector<std::string> items;
};

UniverseIds distinct_ids(std::span<const RatingEvent> events) {
    UniverseIds out;
    std::unordered_map<std::string, bool> seen_users, seen_items;
    for (const auto& ev : events) {
        if (seen_users.try_emplace(ev.user, true).second) {
            out.users.push_back(ev.user);
        }
        if (seen_items.try_emplace(ev.item, true).second) {
            out.items.push_back(ev.item);
        }
    }
    return out;
}

// Clustered initialization needs k <= number of distinct rating patterns;
// tiny bootstrap sets clamp k down rather than reject.
int clamp_cluster_count(int k, const std::vector<RatingPatternVector>& patterns) {
    std::set<std::map<std::string, double>> distinct;
    for (const auto& p : patterns) {
        distinct.insert(p.pattern);
    }
    return std::min<int>(k, static_cast<int>(distinct.size()));
}

Model build_acf_model(std::span<const RatingEvent> train, const ModelParams& params,
                      RatingMode mode) {
    const auto ids = distinct_ids(train);
    Model model = init_acf(ids.users, ids.items, params, mode);
    train_stream(model, train);
    return model;
}

Model build_iacf_model(std::span<const RatingEvent> train, const ModelParams& params,
                       RatingMode mode, std::uint64_t seed) {
    const auto ids = distinct_ids(train);
    const auto patterns = build_pattern_vectors(train);
    const int k = clamp_cluster_count(params.cluster_count, patterns);
    const Clustering clustering = kmeans(patterns, k, 100, seed);
    Model model = init_iacf(ids.users, ids.items, clustering, params, mode);
    train_stream(model, train);
    return model;
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

}  // namespace

// ---- Metrics ---------------------------------------------------------------

double rmse(std::span<const std::pair<double, double>> truth_prediction) {
    if (truth_prediction.empty()) {
        throw Error("rmse: empty pair list");
    }
    double sum = 0.0;
    for (const auto& [truth, prediction] : truth_prediction) {
        const double err = truth - prediction;
        sum += err * err;
    }
    return std::sqrt(sum / static_cast<double>(truth_prediction.size()));
}

double precision_at_n(const RankedList& recommended,
                      const std::unordered_set<std::string>& relevant, int n) {
    int hits = 0;
    const auto limit = std::min<std::size_t>(recommended.entries.size(),
                                             static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < limit; ++i) {
        if (relevant.contains(recommended.entries[i].id)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

double ranking_accumulation(const RankedList& recommended,
                            const std::unordered_set<std::string>& relevant, int n) {
    double sum = 0.0;
    int hits = 0;
    const auto limit = std::min<std::size_t>(recommended.entries.size(),
                                             static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < limit; ++i) {
        if (relevant.contains(recommended.entries[i].id)) {
            sum += static_cast<double>(i + 1) / static_cast<double>(n);
            ++hits;
        }
    }
    sum += static_cast<double>(n - hits) * static_cast<double>(n + 1) /
           static_cast<double>(n);
    return sum;
}

// ---- Splits ----------------------------------------------------------------

namespace {

void check_fraction(double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw Error("split: test fraction must lie in [0, 1]");
    }
}

void sort_by_time(std::vector<RatingEvent>& events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const RatingEvent& a, const RatingEvent& b) {
                         return a.timestamp < b.timestamp;
                     });
}

}  // namespace

HoldoutSplit split_random(std::span<const RatingEvent> events, double test_fraction,
                          std::uint64_t seed) {
    check_fraction(test_fraction);
    const std::size_t n = events.size();
    const auto test_count = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(n)));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    seeded_shuffle(order, seed);

    std::vector<bool> in_test(n, false);
    for (std::size_t i = 0; i < test_count; ++i) {
        in_test[order[i]] = true;
    }

    HoldoutSplit split;
    split.train.reserve(n - test_count);
    split.test.reserve(test_count);
    for (std::size_t i = 0; i < n; ++i) {
        (in_test[i] ? split.test : split.train).push_back(events[i]);
    }
    sort_by_time(split.train);
    sort_by_time(split.test);
    return split;
}

HoldoutSplit split_chronological(std::span<const RatingEvent> events,
                                 double test_fraction) {
    check_fraction(test_fraction);
    std::vector<RatingEvent> sorted(events.begin(), events.end());
    sort_by_time(sorted);
    const auto test_count = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(sorted.size())));
    const std::size_t cut = sorted.size() - test_count;

    HoldoutSplit split;
    split.train.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cut));
    split.test.assign(sorted.begin() + static_cast<std::ptrdiff_t>(cut), sorted.end());
    return split;
}

// ---- Rating evaluation -----------------------------------------------------

RatingModelBuilder acf_rating_builder(const ModelParams& params,
                                      const PredictOptions& options) {
    return [params, options](std::span<const RatingEvent> train) {
        const auto start = std::chrono::steady_clock::now();
        auto model = std::make_shared<Model>(
            build_acf_model(train, params, RatingMode::Explicit));
        const auto stop = std::chrono::steady_clock::now();

        auto cache = std::make_shared<NeighborCache>(*model);
        RatingPredictor predictor;
        predictor.train_seconds = std::chrono::duration<double>(stop - start).count();
        predictor.predict = [model, cache, options](const std::string& user,
                                                    const std::string& item) {
            return predict_rating_cached(*model, *cache, user, item, options);
        };
        return predictor;
    };
}

RatingModelBuilder iacf_rating_builder(const ModelParams& params, std::uint64_t seed,
                                       const PredictOptions& options) {
    return [params, seed, options](std::span<const RatingEvent> train) {
        const auto start = std::chrono::steady_clock::now();
        auto model = std::make_shared<Model>(
            build_iacf_model(train, params, RatingMode::Explicit, seed));
        const auto stop = std::chrono::steady_clock::now();

        auto cache = std::make_shared<NeighborCache>(*model);
        RatingPredictor predictor;
        predictor.train_seconds = std::chrono::duration<double>(stop - start).count();
        predictor.predict = [model, cache, options](const std::string& user,
                                                    const std::string& item) {
            return predict_rating_cached(*model, *cache, user, item, options);
        };
        return predictor;
    };
}

RatingModelBuilder bias_baseline_builder(const ModelParams& params) {
    return [params](std::span<const RatingEvent> train) {
        struct Stats {
            std::int64_t count = 0;
            double sum = 0.0;
        };
        auto users = std::make_shared<std::unordered_map<std::string, Stats>>();
        auto items = std::make_shared<std::unordered_map<std::string, Stats>>();
        const auto start = std::chrono::steady_clock::now();
        std::int64_t count = 0;
        double sum = 0.0;
        for (const auto& ev : train) {
            if (!ev.value.has_value()) {
                throw Error("bias baseline needs explicit events");
            }
            (*users)[ev.user].count += 1;
            (*users)[ev.user].sum += *ev.value;
            (*items)[ev.item].count += 1;
            (*items)[ev.item].sum += *ev.value;
            count += 1;
            sum += *ev.value;
        }
        const double global =
            count > 0 ? sum / static_cast<double>(count) : params.midpoint();
        const auto stop = std::chrono::steady_clock::now();

        RatingPredictor predictor;
        predictor.train_seconds = std::chrono::duration<double>(stop - start).count();
        predictor.predict = [users, items, global, params](const std::string& user,
                                                           const std::string& item) {
            double user_offset = 0.0;
            if (auto it = users->find(user); it != users->end() && it->second.count > 0) {
                user_offset = it->second.sum / static_cast<double>(it->second.count) - global;
            }
            double item_offset = 0.0;
            if (auto it = items->find(item); it != items->end() && it->second.count > 0) {
                item_offset = it->second.sum / static_cast<double>(it->second.count) - global;
            }
            return std::clamp(global + user_offset + item_offset, params.rating_min,
                              params.rating_max);
        };
        return predictor;
    };
}

std::string RatingEvalReport::to_text() const {
    std::ostringstream os;
    os << "rmse=" << rmse << "\n";
    os << "train_seconds=" << train_seconds << "\n";
    os << "predict_seconds=" << predict_seconds << "\n";
    os << "train_events=" << train_events << "\n";
    os << "test_pairs=" << test_pairs << "\n";
    return os.str();
}

std::string RatingEvalReport::to_csv() const {
    std::ostringstream os;
    os << "metric,value,run,checkpoint\n";
    os << "rmse," << rmse << ",,\n";
    os << "train_seconds," << train_seconds << ",,\n";
    os << "predict_seconds," << predict_seconds << ",,\n";
    return os.str();
}

RatingEvalReport evaluate_rating(const RatingModelBuilder& builder,
                                 const HoldoutSplit& split) {
    const RatingPredictor predictor = builder(split.train);

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(split.test.size());
    const auto start = std::chrono::steady_clock::now();
    for (const auto& ev : split.test) {
        if (!ev.value.has_value()) {
            throw Error("evaluate_rating: test event without a value");
        }
        pairs.emplace_back(*ev.value, predictor.predict(ev.user, ev.item));
    }
    const auto stop = std::chrono::steady_clock::now();

    RatingEvalReport report;
    report.rmse = rmse(pairs);
    report.train_seconds = predictor.train_seconds;
    report.predict_seconds = std::chrono::duration<double>(stop - start).count();
    report.train_events = split.train.size();
    report.test_pairs = split.test.size();
    return report;
}

// ---- Ranking evaluation ----------------------------------------------------

RankingModelBuilder acf_ranking_builder(const ModelParams& params) {
    return [params](std::span<const RatingEvent> train) {
        return build_acf_model(train, params, RatingMode::Implicit);
    };
}

RankingModelBuilder iacf_ranking_builder(const ModelParams& params, std::uint64_t seed) {
    return [params, seed](std::span<const RatingEvent> train) {
        return build_iacf_model(train, params, RatingMode::Implicit, seed);
    };
}

std::string RankingEvalReport::to_text() const {
    std::ostringstream os;
    os << "precision=" << precision << "\n";
    os << "ranking_accumulation=" << ra << "\n";
    os << "runs=" << run_precision.size() << "\n";
    os << "top_n=" << top_n << "\n";
    return os.str();
}

std::string RankingEvalReport::to_csv() const {
    std::ostringstream os;
    os << "metric,value,run,checkpoint\n";
    for (std::size_t r = 0; r < run_precision.size(); ++r) {
        os << "precision," << run_precision[r] << "," << (r + 1) << ",\n";
        os << "ranking_accumulation," << run_ra[r] << "," << (r + 1) << ",\n";
    }
    os << "precision," << precision << ",,\n";
    os << "ranking_accumulation," << ra << ",,\n";
    return os.str();
}

RankingEvalReport evaluate_ranking(
    const std::function<Model(std::span<const RatingEvent>, std::uint64_t seed)>& builder,
    std::span<const RatingEvent> events, const RankingEvalOptions& options) {
    if (options.runs < 1) {
        throw Error("evaluate_ranking: runs must be >= 1");
    }

    RankingEvalReport report;
    report.top_n = options.top_n;
    for (int run = 0; run < options.runs; ++run) {
        const std::uint64_t seed = options.seed_base + static_cast<std::uint64_t>(run);
        const HoldoutSplit split = split_random(events, options.test_fraction, seed);
        const Model model = builder(split.train, seed);

        // All of a user's test items count as relevant.
        std::map<std::string, std::unordered_set<std::string>> relevant;
        for (const auto& ev : split.test) {
            relevant[ev.user].insert(ev.item);
        }

        std::vector<double> precisions;
        std::vector<double> ras;
        precisions.reserve(relevant.size());
        for (const auto& [user, items] : relevant) {
            const RankedList ranked = rank_items(model, user, options.top_n, true);
            precisions.push_back(precision_at_n(ranked, items, options.top_n));
            ras.push_back(ranking_accumulation(ranked, items, options.top_n));
        }
        report.run_precision.push_back(mean_of(precisions));
        report.run_ra.push_back(mean_of(ras));
    }
    report.precision = mean_of(report.run_precision);
    report.ra = mean_of(report.run_ra);
    return report;
}

// ---- Temporal experiment ---------------------------------------------------

std::string TemporalCurves::to_csv() const {
    std::ostringstream os;
    os << "metric,value,run,checkpoint\n";
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        os << "precision_time," << time_precision[i] << ",," << (i + 1) << "\n";
        os << "precision_timeless," << timeless_precision[i] << ",," << (i + 1) << "\n";
    }
    return os.str();
}

TemporalCurves temporal_experiment(std::span<const RatingEvent> events,
                                   const ModelParams& params,
                                   const TemporalOptions& options) {
    if (options.checkpoint_count < 1) {
        throw Error("temporal_experiment: checkpoint_count must be >= 1");
    }
    if (events.size() < static_cast<std::size_t>(options.checkpoint_count)) {
        throw Error("temporal_experiment: fewer events than checkpoints");
    }
    for (const auto& ev : events) {
        if (ev.value.has_value()) {
            throw Error("temporal_experiment: expects implicit events");
        }
    }

    std::vector<RatingEvent> ordered(events.begin(), events.end());
    sort_by_time(ordered);
    std::vector<RatingEvent> shuffled = ordered;
    seeded_shuffle(shuffled, options.seed);

    const std::int64_t t0 = ordered.front().timestamp;
    const std::int64_t t1 = ordered.back().timestamp;
    const int cp = options.checkpoint_count;

    std::vector<std::int64_t> bounds;  // cp interior boundaries + end sentinel
    bounds.reserve(static_cast<std::size_t>(cp) + 1);
    for (int i = 1; i <= cp; ++i) {
        bounds.push_back(t0 + (t1 - t0) * i / (cp + 1));
    }
    bounds.push_back(t1 + 1);

    // Shared clustered initialization from the pre-first-checkpoint prefix.
    Clustering clustering;
    bool use_clustering = false;
    if (options.clustered_init) {
        std::vector<RatingEvent> bootstrap;
        for (const auto& ev : ordered) {
            if (ev.timestamp >= bounds[0]) {
                break;
            }
            bootstrap.push_back(ev);
        }
        if (!bootstrap.empty()) {
            const auto patterns = build_pattern_vectors(bootstrap);
            const int k = clamp_cluster_count(options.cluster_count, patterns);
            clustering = kmeans(patterns, k, 100, options.seed);
            use_clustering = true;
        }
    }

    auto fresh_model = [&]() {
        Model model;
        model.mode = RatingMode::Implicit;
        model.params = params;
        if (use_clustering) {
            model.next_type = static_cast<PheromoneType>(clustering.cluster_count());
            std::vector<std::pair<std::string, int>> seeded(clustering.assignments.begin(),
                                                            clustering.assignments.end());
            std::sort(seeded.begin(), seeded.end());
            for (const auto& [user, cluster] : seeded) {
                model.add_user(user, PheromoneVector::single(cluster, 1.0));
            }
        }
        return model;
    };

    TemporalCurves curves;
    Model time_model = fresh_model();
    std::size_t time_cursor = 0;  // next ordered event to feed the time model

    // Items each user saw before the current boundary; recommendations are
    // scored only on what was still unseen.
    std::unordered_map<std::string, std::unordered_set<std::string>> seen;
    std::size_t seen_cursor = 0;

    for (int i = 0; i < cp; ++i) {
        const std::int64_t begin = bounds[static_cast<std::size_t>(i)];
        const std::int64_t end = bounds[static_cast<std::size_t>(i) + 1];

        while (time_cursor < ordered.size() && ordered[time_cursor].timestamp < begin) {
            apply_event(time_model, ordered[time_cursor]);
            ++time_cursor;
        }
        while (seen_cursor < ordered.size() && ordered[seen_cursor].timestamp < begin) {
            seen[ordered[seen_cursor].user].insert(ordered[seen_cursor].item);
            ++seen_cursor;
        }

        Model timeless_model = fresh_model();
        for (const auto& ev : shuffled) {
            if (ev.timestamp < begin) {
                apply_event(timeless_model, ev);
            }
        }

        // Window relevants, minus what the user had already seen in training.
        std::map<std::string, std::unordered_set<std::string>> relevant;
        for (std::size_t e = time_cursor; e < ordered.size(); ++e) {
            if (ordered[e].timestamp >= end) {
                break;
            }
            const auto& ev = ordered[e];
            auto seen_it = seen.find(ev.user);
            const bool already =
                seen_it != seen.end() && seen_it->second.contains(ev.item);
            if (!already) {
                relevant[ev.user].insert(ev.item);
            }
        }

        std::vector<double> time_scores;
        std::vector<double> timeless_scores;
        for (const auto& [user, items] : relevant) {
            if (!time_model.find_user(user).has_value()) {
                continue;  // cold in both variants; nothing to score
            }
            const RankedList by_time = rank_items(time_model, user, options.top_n, true);
            const RankedList by_batch =
                rank_items(timeless_model, user, options.top_n, true);
            time_scores.push_back(precision_at_n(by_time, items, options.top_n));
            timeless_scores.push_back(precision_at_n(by_batch, items, options.top_n));
        }

        curves.checkpoints.push_back(begin);
        curves.time_precision.push_back(mean_of(time_scores));
        curves.timeless_precision.push_back(mean_of(timeless_scores));
    }
    return curves;
}

}  // namespace antcf
