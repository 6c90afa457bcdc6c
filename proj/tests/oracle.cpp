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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "antcf/recommend.hpp"
#include "antcf/training.hpp"

namespace antcf::oracle {

namespace {

double scale_midpoint(const ModelParams& p) { return (p.rating_min + p.rating_max) / 2.0; }

double global_mean(const State& s, const ModelParams& p) {
    if (s.total_count > 0) {
        return s.total_sum / static_cast<double>(s.total_count);
    }
    return scale_midpoint(p);
}

double user_mean(const State& s, const ModelParams& p, const std::string& user) {
    auto it = s.user_count.find(user);
    if (it != s.user_count.end() && it->second > 0) {
        return s.user_sum.at(user) / static_cast<double>(it->second);
    }
    return global_mean(s, p);
}

double item_mean(const State& s, const ModelParams& p, const std::string& item) {
    auto it = s.item_count.find(item);
    if (it != s.item_count.end() && it->second > 0) {
        return s.item_sum.at(item) / static_cast<double>(it->second);
    }
    return global_mean(s, p);
}

// Evaporation, transmission and cutoff written out longhand over dense maps.
std::map<std::int32_t, double> update_side(const std::map<std::int32_t, double>& own,
                                           const std::map<std::int32_t, double>& other,
                                           double coefficient, double lambda,
                                           double sigma) {
    double highest = 0.0;
    for (const auto& [type, amount] : own) {
        if (std::fabs(amount) > highest) {
            highest = std::fabs(amount);
        }
    }
    std::map<std::int32_t, double> next;
    for (const auto& [type, amount] : own) {
        next[type] = amount * std::exp((std::fabs(amount) + lambda) / (highest + lambda) - 1.0);
    }
    if (coefficient != 0.0) {
        for (const auto& [type, amount] : other) {
            next[type] += coefficient * amount;
        }
    }
    for (auto it = next.begin(); it != next.end();) {
        if (it->second == 0.0 || std::fabs(it->second) < sigma) {
            it = next.erase(it);
        } else {
            ++it;
        }
    }
    return next;
}

double cosine(const std::map<std::int32_t, double>& a,
              const std::map<std::int32_t, double>& b) {
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    double cross = 0.0;
    for (const auto& [type, amount] : a) {
        auto it = b.find(type);
        if (it != b.end()) {
            cross += amount * it->second;
        }
    }
    double norm_a = 0.0;
    for (const auto& [type, amount] : a) {
        norm_a += amount * amount;
    }
    double norm_b = 0.0;
    for (const auto& [type, amount] : b) {
        norm_b += amount * amount;
    }
    return cross / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

// (similarity descending, id ascending), the ordering used everywhere.
void sort_scored(std::vector<std::pair<std::string, double>>& scored) {
    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) {
            return x.second > y.second;
        }
        return x.first < y.first;
    });
}

}  // namespace

State replay(const Instance& instance) {
    State state;
    for (const auto& user : instance.users) {
        state.user_ph[user] = {{state.next_type, 1.0}};
        state.user_order.push_back(user);
        ++state.next_type;
    }
    for (const auto& item : instance.items) {
        state.item_ph[item] = {};
        state.item_order.push_back(item);
    }

    const ModelParams& p = instance.params;
    for (const auto& ev : instance.events) {
        if (!state.user_ph.contains(ev.user)) {
            state.user_ph[ev.user] = {{state.next_type, 1.0}};
            state.user_order.push_back(ev.user);
            ++state.next_type;
        }
        if (!state.item_ph.contains(ev.item)) {
            state.item_ph[ev.item] = {};
            state.item_order.push_back(ev.item);
        }

        const std::map<std::int32_t, double> user_snapshot = state.user_ph[ev.user];
        const std::map<std::int32_t, double> item_snapshot = state.item_ph[ev.item];

        double to_item = p.gamma;
        double to_user = p.gamma;
        if (instance.explicit_mode) {
            to_item = (*ev.value - user_mean(state, p, ev.user)) * p.gamma;
            to_user = (*ev.value - item_mean(state, p, ev.item)) * p.gamma;
        }

        state.item_ph[ev.item] =
            update_side(item_snapshot, user_snapshot, to_item, p.lambda, p.sigma);
        state.user_ph[ev.user] =
            update_side(user_snapshot, item_snapshot, to_user, p.lambda, p.sigma);

        state.user_count[ev.user] += 1;
        state.item_count[ev.item] += 1;
        state.total_count += 1;
        if (instance.explicit_mode) {
            state.user_sum[ev.user] += *ev.value;
            state.item_sum[ev.item] += *ev.value;
            state.total_sum += *ev.value;
            state.ratings[ev.user][ev.item] = *ev.value;
        } else {
            state.ratings[ev.user][ev.item] = 1.0;
        }
    }
    return state;
}

double predict(const State& state, const Instance& instance, const std::string& user,
               const std::string& item) {
    const ModelParams& p = instance.params;
    if (!state.user_ph.contains(user) || !state.item_ph.contains(item)) {
        return global_mean(state, p);
    }

    std::vector<std::pair<std::string, double>> user_sims;
    for (const auto& other : state.user_order) {
        if (other == user) {
            continue;
        }
        user_sims.emplace_back(other, cosine(state.user_ph.at(user), state.user_ph.at(other)));
    }
    sort_scored(user_sims);
    if (user_sims.size() > static_cast<std::size_t>(p.neighborhood_size)) {
        user_sims.resize(static_cast<std::size_t>(p.neighborhood_size));
    }

    double user_prediction = 0.0;
    double user_similarity = 0.0;
    for (const auto& [other, sim] : user_sims) {
        auto rated = state.ratings.find(other);
        if (rated == state.ratings.end() || !rated->second.contains(item)) {
            continue;
        }
        user_prediction +=
            std::fabs(sim) * (rated->second.at(item) - user_mean(state, p, other));
        user_similarity += std::fabs(sim);
    }
    const double user_term = user_similarity > 0.0 ? user_prediction / user_similarity : 0.0;

    std::vector<std::pair<std::string, double>> item_sims;
    for (const auto& other : state.item_order) {
        if (other == item) {
            continue;
        }
        item_sims.emplace_back(other, cosine(state.item_ph.at(item), state.item_ph.at(other)));
    }
    sort_scored(item_sims);
    if (item_sims.size() > static_cast<std::size_t>(p.neighborhood_size)) {
        item_sims.resize(static_cast<std::size_t>(p.neighborhood_size));
    }

    double item_prediction = 0.0;
    double item_similarity = 0.0;
    auto rated_by_user = state.ratings.find(user);
    for (const auto& [other, sim] : item_sims) {
        if (rated_by_user == state.ratings.end() || !rated_by_user->second.contains(other)) {
            continue;
        }
        item_prediction +=
            std::fabs(sim) * (rated_by_user->second.at(other) - item_mean(state, p, other));
        item_similarity += std::fabs(sim);
    }
    const double item_term = item_similarity > 0.0 ? item_prediction / item_similarity : 0.0;

    return std::clamp(global_mean(state, p) + user_term + item_term, p.rating_min,
                      p.rating_max);
}

std::vector<std::pair<std::string, double>> rank(const State& state,
                                                 const Instance& instance,
                                                 const std::string& user, int n,
                                                 bool exclude_rated) {
    if (!state.user_ph.contains(user)) {
        return {};
    }
    auto rated = state.ratings.find(user);
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& item : state.item_order) {
        if (exclude_rated && rated != state.ratings.end() && rated->second.contains(item)) {
            continue;
        }
        scored.emplace_back(item, cosine(state.user_ph.at(user), state.item_ph.at(item)));
    }
    sort_scored(scored);
    if (scored.size() > static_cast<std::size_t>(n)) {
        scored.resize(static_cast<std::size_t>(n));
    }
    return scored;
}

std::string check_instance(const Instance& instance, double tolerance) {
    const auto mode = instance.explicit_mode ? RatingMode::Explicit : RatingMode::Implicit;
    Model model = init_acf(instance.users, instance.items, instance.params, mode);
    train_stream(model, instance.events);

    const State state = replay(instance);

    std::ostringstream os;

    if (model.next_type != state.next_type) {
        os << "next_type: engine " << model.next_type << " oracle " << state.next_type;
        return os.str();
    }
    if (model.users.size() != state.user_order.size() ||
        model.items.size() != state.item_order.size()) {
        return "registered entity counts differ";
    }
    if (model.stats.total_count != state.total_count ||
        model.stats.total_sum != state.total_sum) {
        return "global statistics differ";
    }

    auto compare_side = [&](const std::vector<EntityState>& entities,
                            const std::map<std::string, std::map<std::int32_t, double>>& ph,
                            const std::map<std::string, long long>& counts,
                            const std::map<std::string, double>& sums,
                            const char* kind) -> std::string {
        for (const auto& entity : entities) {
            const auto& expected = ph.at(entity.id);
            if (entity.pheromones.size() != expected.size()) {
                os << kind << " " << entity.id << ": support size engine "
                   << entity.pheromones.size() << " oracle " << expected.size();
                return os.str();
            }
            for (const auto& entry : entity.pheromones.entries()) {
                auto it = expected.find(entry.type);
                if (it == expected.end()) {
                    os << kind << " " << entity.id << ": engine-only type " << entry.type;
                    return os.str();
                }
                if (std::fabs(entry.amount - it->second) > tolerance) {
                    os << kind << " " << entity.id << " type " << entry.type
                       << ": engine " << entry.amount << " oracle " << it->second;
                    return os.str();
                }
            }
            const long long count =
                counts.contains(entity.id) ? counts.at(entity.id) : 0;
            const double sum = sums.contains(entity.id) ? sums.at(entity.id) : 0.0;
            if (entity.rating_count != count || entity.rating_sum != sum) {
                os << kind << " " << entity.id << ": statistics differ";
                return os.str();
            }
        }
        return {};
    };

    if (auto err = compare_side(model.users, state.user_ph, state.user_count,
                                state.user_sum, "user");
        !err.empty()) {
        return err;
    }
    if (auto err = compare_side(model.items, state.item_ph, state.item_count,
                                state.item_sum, "item");
        !err.empty()) {
        return err;
    }

    if (instance.explicit_mode) {
        for (const auto& user : state.user_order) {
            for (const auto& item : state.item_order) {
                const double engine = predict_rating(model, user, item);
                const double expected = predict(state, instance, user, item);
                if (engine != expected) {
                    os << "prediction(" << user << "," << item << "): engine " << engine
                       << " oracle " << expected;
                    return os.str();
                }
            }
        }
        const double engine_cold = predict_rating(model, "@nobody", state.item_order.front());
        const double oracle_cold = predict(state, instance, "@nobody", state.item_order.front());
        if (engine_cold != oracle_cold) {
            return fail("cold-user prediction differs");
        }
    }

    for (const auto& user : state.user_order) {
        for (const bool exclude : {true, false}) {
            const RankedList engine =
                rank_items(model, user, instance.params.top_n, exclude);
            const auto expected = rank(state, instance, user, instance.params.top_n, exclude);
            if (engine.entries.size() != expected.size()) {
                os << "ranking(" << user << "): lengths differ";
                return os.str();
            }
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (engine.entries[i].id != expected[i].first ||
                    engine.entries[i].similarity != expected[i].second) {
                    os << "ranking(" << user << ") position " << i << ": engine "
                       << engine.entries[i].id << "/" << engine.entries[i].similarity
                       << " oracle " << expected[i].first << "/" << expected[i].second;
                    return os.str();
                }
            }
        }
    }
    return {};
}

}  // namespace antcf::oracle
