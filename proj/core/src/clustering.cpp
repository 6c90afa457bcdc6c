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

#include "antcf/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "antcf/error.hpp"

namespace antcf {

namespace {

constexpr double kInertiaTolerance = 1e-6;

// Uniform double in [0, 1) from the raw engine output; avoids the
// implementation-defined std distributions so seeds reproduce everywhere.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    auto idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

// Sparse row with interned item columns, sorted by column.
struct Row {
    std::vector<std::pair<std::int32_t, double>> entries;
    double sq_norm = 0.0;
};

double dot_rows(const Row& a, const Row& b) {
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first == b.entries[j].first) {
            sum += a.entries[i].second * b.entries[j].second;
            ++i;
            ++j;
        } else if (a.entries[i].first < b.entries[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return sum;
}

double dist2_rows(const Row& a, const Row& b) {
    return std::max(0.0, a.sq_norm + b.sq_norm - 2.0 * dot_rows(a, b));
}

// Dense-lookup centroid for fast point-to-centroid distances.
struct Centroid {
    std::unordered_map<std::int32_t, double> values;
    double sq_norm = 0.0;
};

double dist2_to_centroid(const Row& x, const Centroid& c) {
    double cross = 0.0;
    for (const auto& [col, v] : x.entries) {
        auto it = c.values.find(col);
        if (it != c.values.end()) {
            cross += v * it->second;
        }
    }
    return std::max(0.0, x.sq_norm + c.sq_norm - 2.0 * cross);
}

}  // namespace

std::string Clustering::to_tsv() const {
    std::vector<std::pair<std::string, int>> rows(assignments.begin(), assignments.end());
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    for (const auto& [user, cluster] : rows) {
        os << user << '\t' << cluster << '\n';
    }
    return os.str();
}

std::vector<RatingPatternVector> build_pattern_vectors(std::span<const RatingEvent> events) {
    std::vector<RatingPatternVector> result;
    std::unordered_map<std::string, std::size_t> row_of;
    // latest timestamp seen per (user row, item); input order breaks ties
    std::vector<std::unordered_map<std::string, std::int64_t>> seen_ts;

    for (const auto& ev : events) {
        auto [it, inserted] = row_of.try_emplace(ev.user, result.size());
        if (inserted) {
            result.push_back(RatingPatternVector{ev.user, {}});
            seen_ts.emplace_back();
        }
        const std::size_t row = it->second;
        const double value = ev.value.value_or(1.0);
        auto& ts_map = seen_ts[row];
        auto ts_it = ts_map.find(ev.item);
        if (ts_it == ts_map.end() || ev.timestamp >= ts_it->second) {
            ts_map[ev.item] = ev.timestamp;
            result[row].pattern[ev.item] = value;
        }
    }
    return result;
}

Clustering kmeans(std::span<const RatingPatternVector> vectors, int k,
                  int max_iters, std::uint64_t seed) {
    if (k < 1) {
        throw Error("kmeans: k must be >= 1");
    }
    if (vectors.empty()) {
        throw Error("kmeans: need at least one pattern vector");
    }

    // Intern item ids to columns, in order of first appearance.
    std::unordered_map<std::string, std::int32_t> column_of;
    std::vector<std::string> column_ids;
    std::vector<Row> rows(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        rows[i].entries.reserve(vectors[i].pattern.size());
        for (const auto& [item, value] : vectors[i].pattern) {
            auto [it, inserted] =
                column_of.try_emplace(item, static_cast<std::int32_t>(column_ids.size()));
            if (inserted) {
                column_ids.push_back(item);
            }
            rows[i].entries.emplace_back(it->second, value);
            rows[i].sq_norm += value * value;
        }
        std::sort(rows[i].entries.begin(), rows[i].entries.end());
    }

    {
        std::set<std::vector<std::pair<std::int32_t, double>>> distinct;
        for (const auto& row : rows) {
            distinct.insert(row.entries);
        }
        if (static_cast<std::size_t>(k) > distinct.size()) {
            std::ostringstream os;
            os << "kmeans: k=" << k << " exceeds the " << distinct.size()
               << " distinct pattern vectors";
            throw Error(os.str());
        }
    }

    const std::size_t n = rows.size();
    std::mt19937_64 rng(seed);

    // k-means++ seeding.
    std::vector<std::size_t> seed_rows;
    seed_rows.push_back(uniform_index(rng, n));
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        d2[i] = dist2_rows(rows[i], rows[seed_rows[0]]);
    }
    while (seed_rows.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (double d : d2) {
            total += d;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double cum = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum > target) {
                    pick = i;
                    break;
                }
            }
        }
        seed_rows.push_back(pick);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], dist2_rows(rows[i], rows[pick]));
        }
    }

    std::vector<Centroid> centroids(k);
    for (int c = 0; c < k; ++c) {
        const Row& src = rows[seed_rows[c]];
        for (const auto& [col, v] : src.entries) {
            centroids[c].values.emplace(col, v);
        }
        centroids[c].sq_norm = src.sq_norm;
    }

    std::vector<int> assign(n, -1);
    std::vector<double> point_d2(n, 0.0);
    Clustering out;
    double prev_inertia = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = dist2_to_centroid(rows[i], centroids[c]);
                if (d < best_d2) {
                    best_d2 = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
            point_d2[i] = best_d2;
            inertia += best_d2;
        }

        // Re-seed empty clusters from the farthest point (lowest row on ties).
        std::vector<std::size_t> members(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            members[assign[i]] += 1;
        }
        for (int c = 0; c < k; ++c) {
            if (members[c] > 0) {
                continue;
            }
            std::size_t far = 0;
            double far_d2 = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (members[assign[i]] > 1 && point_d2[i] > far_d2) {
                    far_d2 = point_d2[i];
                    far = i;
                }
            }
            members[assign[far]] -= 1;
            assign[far] = c;
            members[c] = 1;
            inertia -= far_d2;
            point_d2[far] = 0.0;
            changed = true;
        }

        out.inertia_history.push_back(inertia);
        out.inertia = inertia;

        const bool converged =
            !changed || std::fabs(prev_inertia - inertia) <=
                            kInertiaTolerance * std::max(prev_inertia, 1e-12);
        prev_inertia = inertia;

        // Recompute centroids as member means.
        for (int c = 0; c < k; ++c) {
            centroids[c].values.clear();
            centroids[c].sq_norm = 0.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [col, v] : rows[i].entries) {
                centroids[assign[i]].values[col] += v;
            }
        }
        for (int c = 0; c < k; ++c) {
            const auto count = static_cast<double>(members[c]);
            for (auto it = centroids[c].values.begin(); it != centroids[c].values.end();) {
                it->second /= count;
                if (it->second == 0.0) {
                    it = centroids[c].values.erase(it);
                } else {
                    centroids[c].sq_norm += it->second * it->second;
                    ++it;
                }
            }
        }

        if (converged) {
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        out.assignments.emplace(vectors[i].user, assign[i]);
    }
    out.centroids.resize(k);
    for (int c = 0; c < k; ++c) {
        for (const auto& [col, v] : centroids[c].values) {
            out.centroids[c].emplace(column_ids[static_cast<std::size_t>(col)], v);
        }
    }
    return out;
}

Model init_iacf(std::span<const std::string> user_ids,
                std::span<const std::string> item_ids,
                const Clustering& clustering, const ModelParams& params,
                RatingMode mode) {
    params.validate();
    Model model;
    model.mode = mode;
    model.params = params;
    model.next_type = static_cast<PheromoneType>(clustering.cluster_count());
    for (const auto& id : user_ids) {
        auto it = clustering.assignments.find(id);
        if (it == clustering.assignments.end()) {
            throw Error("init_iacf: user not present in clustering: " + id);
        }
        model.add_user(id, PheromoneVector::single(it->second, 1.0));
    }
    for (const auto& id : item_ids) {
        model.add_item(id);
    }
    return model;
}

std::optional<int> assign_new_user(const std::optional<RatingPatternVector>& pattern,
                                   const Clustering& clustering) {
    if (!pattern.has_value()) {
        return std::nullopt;
    }
    double x_sq = 0.0;
    for (const auto& [item, v] : pattern->pattern) {
        x_sq += v * v;
    }
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int c = 0; c < clustering.cluster_count(); ++c) {
        const auto& centroid = clustering.centroids[static_cast<std::size_t>(c)];
        double c_sq = 0.0;
        double cross = 0.0;
        for (const auto& [item, v] : centroid) {
            c_sq += v * v;
        }
        for (const auto& [item, v] : pattern->pattern) {
            auto it = centroid.find(item);
            if (it != centroid.end()) {
                cross += v * it->second;
            }
        }
        const double d2 = std::max(0.0, x_sq + c_sq - 2.0 * cross);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = c;
        }
    }
    return best;
}

}  // namespace antcf
