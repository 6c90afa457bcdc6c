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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "antcf/clustering.hpp"
#include "antcf/dataset.hpp"
#include "antcf/drift.hpp"
#include "antcf/error.hpp"
#include "antcf/eval.hpp"
#include "antcf/model.hpp"
#include "antcf/recommend.hpp"
#include "antcf/snapshot.hpp"
#include "antcf/training.hpp"

namespace {

using namespace antcf;

struct ParamFlags {
    double gamma = 0.2;
    double lambda = 1.0;
    double sigma = 0.01;
    int clusters = 20;
    int neighbors = 20;
    int top_n = 20;
    double rating_min = 1.0;
    double rating_max = 5.0;
    int type_cap = 0;  // 0 = unlimited

    ModelParams to_params() const {
        ModelParams p;
        p.gamma = gamma;
        p.lambda = lambda;
        p.sigma = sigma;
        p.cluster_count = clusters;
        p.neighborhood_size = neighbors;
        p.top_n = top_n;
        p.rating_min = rating_min;
        p.rating_max = rating_max;
        if (type_cap > 0) {
            p.type_cap = type_cap;
        }
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--gamma", flags.gamma, "Transmission rate");
    cmd->add_option("--lambda", flags.lambda, "Evaporation control (larger = slower decay)");
    cmd->add_option("--sigma", flags.sigma, "Cutoff threshold");
    cmd->add_option("--clusters", flags.clusters, "Pheromone type count for clustered init");
    cmd->add_option("--neighbors", flags.neighbors, "Neighborhood size");
    cmd->add_option("--top-n", flags.top_n, "Recommendation list length");
    cmd->add_option("--rating-min", flags.rating_min, "Rating scale lower bound");
    cmd->add_option("--rating-max", flags.rating_max, "Rating scale upper bound");
    cmd->add_option("--type-cap", flags.type_cap, "Per-entity pheromone cap (0 = off)");
}

struct SplitSpec {
    bool chronological = false;
    double fraction = 0.1;
    std::uint64_t seed = 1;
};

SplitSpec parse_split(const std::string& text) {
    SplitSpec spec;
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(':', start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    if (parts[0] == "random" && (parts.size() == 2 || parts.size() == 3)) {
        spec.chronological = false;
        spec.fraction = std::stod(parts[1]);
        if (parts.size() == 3) {
            spec.seed = std::stoull(parts[2]);
        }
        return spec;
    }
    if (parts[0] == "chrono" && parts.size() == 2) {
        spec.chronological = true;
        spec.fraction = std::stod(parts[1]);
        return spec;
    }
    throw Error("bad --split value '" + text + "' (expected random:F[:SEED] or chrono:F)");
}

RatingMode mode_of(DatasetFormat format) {
    return format == DatasetFormat::CsvImplicit ? RatingMode::Implicit
                                                : RatingMode::Explicit;
}

Model build_model(std::span<const RatingEvent> events, const std::string& algo,
                  const ModelParams& params, RatingMode mode, std::uint64_t seed) {
    std::vector<std::string> users, items;
    {
        std::unordered_map<std::string, bool> su, si;
        for (const auto& ev : events) {
            if (su.try_emplace(ev.user, true).second) {
                users.push_back(ev.user);
            }
            if (si.try_emplace(ev.item, true).second) {
                items.push_back(ev.item);
            }
        }
    }
    if (algo == "acf") {
        Model model = init_acf(users, items, params, mode);
        std::cout << train_stream(model, events).to_text();
        return model;
    }
    const auto patterns = build_pattern_vectors(events);
    const Clustering clustering = kmeans(patterns, params.cluster_count, 100, seed);
    Model model = init_iacf(users, items, clustering, params, mode);
    std::cout << train_stream(model, events).to_text();
    return model;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw Error("cannot write " + path);
    }
    out << text;
    if (!out.good()) {
        throw Error("write failed: " + path);
    }
}

void maybe_write_csv(const std::string& path, const std::string& csv) {
    if (!path.empty()) {
        write_text(path, csv);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ant-cf: incremental collaborative filtering with pheromone vectors"};
    app.require_subcommand(1);

    // --- train ---
    std::string data_path, format_name = "csv-explicit", algo = "acf", out_model;
    std::uint64_t seed = 1;
    ParamFlags params;
    auto* train = app.add_subcommand("train", "Train a model from an event stream");
    train->add_option("--data", data_path, "Dataset path")->required();
    train->add_option("--format", format_name, "movielens | csv-explicit | csv-implicit");
    train->add_option("--mode", algo, "acf | iacf")
        ->check(CLI::IsMember({"acf", "iacf"}));
    train->add_option("--out-model", out_model, "Snapshot output path")->required();
    train->add_option("--seed", seed, "Clustering seed");
    add_param_flags(train, params);

    // --- predict ---
    std::string model_path, user_id, item_id;
    bool signed_weighting = false;
    auto* predict = app.add_subcommand("predict", "Predict one user-item rating");
    predict->add_option("--model", model_path, "Model snapshot")->required();
    predict->add_option("--user", user_id, "User id")->required();
    predict->add_option("--item", item_id, "Item id")->required();
    predict->add_flag("--signed-weighting", signed_weighting,
                      "Weight neighbor deviations by signed similarity");

    // --- recommend ---
    int rec_n = 20;
    bool include_rated = false;
    auto* recommend = app.add_subcommand("recommend", "Top-N items for a user");
    recommend->add_option("--model", model_path, "Model snapshot")->required();
    recommend->add_option("--user", user_id, "User id")->required();
    recommend->add_option("--n", rec_n, "List length");
    recommend->add_flag("--include-rated", include_rated,
                        "Keep items the user already rated");

    // --- evaluate-rating ---
    std::string split_text = "random:0.1:1", csv_path, eval_algo = "iacf";
    auto* eval_rating = app.add_subcommand("evaluate-rating",
                                           "Train/test RMSE evaluation");
    eval_rating->add_option("--data", data_path, "Dataset path")->required();
    eval_rating->add_option("--format", format_name, "movielens | csv-explicit");
    eval_rating->add_option("--split", split_text, "random:F[:SEED] | chrono:F");
    eval_rating->add_option("--algo", eval_algo, "acf | iacf | baseline")
        ->check(CLI::IsMember({"acf", "iacf", "baseline"}));
    eval_rating->add_option("--seed", seed, "Clustering seed");
    eval_rating->add_option("--csv", csv_path, "Also write the report as CSV");
    eval_rating->add_flag("--signed-weighting", signed_weighting,
                          "Weight neighbor deviations by signed similarity");
    add_param_flags(eval_rating, params);

    // --- evaluate-ranking ---
    int runs = 5;
    double test_fraction = 0.1;
    auto* eval_ranking = app.add_subcommand("evaluate-ranking",
                                            "Precision / ranking-accumulation evaluation");
    eval_ranking->add_option("--data", data_path, "Dataset path")->required();
    eval_ranking->add_option("--format", format_name, "csv-implicit");
    eval_ranking->add_option("--algo", eval_algo, "acf | iacf")
        ->check(CLI::IsMember({"acf", "iacf"}));
    eval_ranking->add_option("--n", rec_n, "Recommendation list length");
    eval_ranking->add_option("--runs", runs, "Seeded runs to average");
    eval_ranking->add_option("--test-fraction", test_fraction, "Held-out fraction");
    eval_ranking->add_option("--seed", seed, "First run seed");
    eval_ranking->add_option("--csv", csv_path, "Also write the report as CSV");
    add_param_flags(eval_ranking, params);

    // --- temporal ---
    int checkpoints = 15;
    std::string temporal_algo = "iacf";
    auto* temporal = app.add_subcommand(
        "temporal", "Time-ordered vs shuffled-batch training comparison");
    temporal->add_option("--data", data_path, "Dataset path")->required();
    temporal->add_option("--format", format_name, "csv-implicit");
    temporal->add_option("--checkpoints", checkpoints, "Checkpoint count");
    temporal->add_option("--algo", temporal_algo, "acf | iacf")
        ->check(CLI::IsMember({"acf", "iacf"}));
    temporal->add_option("--n", rec_n, "Recommendation list length");
    temporal->add_option("--seed", seed, "Shuffle and clustering seed");
    temporal->add_option("--csv", csv_path, "Also write the curves as CSV");
    add_param_flags(temporal, params);

    // --- cluster ---
    int k = 20;
    std::string out_path;
    auto* cluster = app.add_subcommand("cluster", "Cluster users by rating pattern");
    cluster->add_option("--data", data_path, "Dataset path")->required();
    cluster->add_option("--format", format_name, "movielens | csv-explicit | csv-implicit");
    cluster->add_option("--k", k, "Cluster count");
    cluster->add_option("--seed", seed, "Seeding RNG seed");
    cluster->add_option("--out", out_path, "user<TAB>cluster output path")->required();

    // --- generate-drift ---
    DriftConfig drift;
    drift.users = 500;
    drift.items = 2000;
    drift.events_per_user = 200;
    drift.drift_rate = 1.0;
    auto* generate = app.add_subcommand("generate-drift",
                                        "Synthetic implicit stream with preference drift");
    generate->add_option("--users", drift.users, "User count");
    generate->add_option("--items", drift.items, "Item count");
    generate->add_option("--events-per-user", drift.events_per_user, "Events per user");
    generate->add_option("--drift-rate", drift.drift_rate,
                         "Interest rotations over the stream (0 = stationary)");
    generate->add_option("--seed", drift.seed, "Generator seed");
    generate->add_option("--groups", drift.groups, "Item group count");
    generate->add_option("--out", out_path, "csv-implicit output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) {
            const DatasetDescriptor desc{data_path, parse_format(format_name)};
            const auto events = load_dataset(desc);
            const Model model =
                build_model(events, algo, params.to_params(), mode_of(desc.format), seed);
            save_model(model, out_model);
        } else if (*predict) {
            const Model model = load_model(model_path);
            const double value =
                predict_rating(model, user_id, item_id, PredictOptions{signed_weighting});
            std::printf("prediction=%.6f\n", value);
        } else if (*recommend) {
            const Model model = load_model(model_path);
            const RankedList ranked = rank_items(model, user_id, rec_n, !include_rated);
            for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
                std::printf("%zu\t%s\t%.6f\n", i + 1, ranked.entries[i].id.c_str(),
                            ranked.entries[i].similarity);
            }
        } else if (*eval_rating) {
            const DatasetDescriptor desc{data_path, parse_format(format_name)};
            const auto events = load_dataset(desc);
            const SplitSpec spec = parse_split(split_text);
            const HoldoutSplit split =
                spec.chronological ? split_chronological(events, spec.fraction)
                                   : split_random(events, spec.fraction, spec.seed);
            const ModelParams p = params.to_params();
            p.validate();
            RatingModelBuilder builder;
            const PredictOptions options{signed_weighting};
            if (eval_algo == "acf") {
                builder = acf_rating_builder(p, options);
            } else if (eval_algo == "iacf") {
                builder = iacf_rating_builder(p, seed, options);
            } else {
                builder = bias_baseline_builder(p);
            }
            const RatingEvalReport report = evaluate_rating(builder, split);
            std::cout << report.to_text();
            maybe_write_csv(csv_path, report.to_csv());
        } else if (*eval_ranking) {
            const DatasetDescriptor desc{data_path, parse_format(format_name)};
            const auto events = load_dataset(desc);
            const ModelParams p = params.to_params();
            p.validate();
            RankingEvalOptions options;
            options.runs = runs;
            options.test_fraction = test_fraction;
            options.seed_base = seed;
            options.top_n = rec_n;
            auto builder = [&p, &eval_algo](std::span<const RatingEvent> train_events,
                                            std::uint64_t run_seed) {
                return eval_algo == "acf" ? acf_ranking_builder(p)(train_events)
                                          : iacf_ranking_builder(p, run_seed)(train_events);
            };
            const RankingEvalReport report = evaluate_ranking(builder, events, options);
            std::cout << report.to_text();
            maybe_write_csv(csv_path, report.to_csv());
        } else if (*temporal) {
            const DatasetDescriptor desc{data_path, parse_format(format_name)};
            const auto events = load_dataset(desc);
            const ModelParams p = params.to_params();
            p.validate();
            TemporalOptions options;
            options.checkpoint_count = checkpoints;
            options.top_n = rec_n;
            options.seed = seed;
            options.clustered_init = temporal_algo == "iacf";
            options.cluster_count = params.clusters;
            const TemporalCurves curves = temporal_experiment(events, p, options);
            std::cout << curves.to_csv();
            maybe_write_csv(csv_path, curves.to_csv());
        } else if (*cluster) {
            const DatasetDescriptor desc{data_path, parse_format(format_name)};
            const auto events = load_dataset(desc);
            const auto patterns = build_pattern_vectors(events);
            const Clustering clustering = kmeans(patterns, k, 100, seed);
            write_text(out_path, clustering.to_tsv());
        } else if (*generate) {
            const DriftDataset dataset = generate_drift(drift);
            write_csv(out_path, dataset.events, /*implicit=*/true);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
