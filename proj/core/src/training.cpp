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

#include "antcf/training.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "antcf/error.hpp"

namespace antcf {

namespace {

std::string describe(const RatingEvent& ev) {
    std::ostringstream os;
    os << "event(user=" << ev.user << ", item=" << ev.item;
    if (ev.value.has_value()) {
        os << ", value=" << *ev.value;
    }
    os << ", ts=" << ev.timestamp << ")";
    return os.str();
}

}  // namespace

std::string TrainReport::to_text() const {
    std::ostringstream os;
    os << "events=" << events << "\n";
    os << "seconds=" << seconds << "\n";
    os << "events_per_second=" << events_per_second << "\n";
    os << "mean_touched_entries=" << mean_touched_entries << "\n";
    return os.str();
}

std::size_t apply_event(Model& model, const RatingEvent& ev) {
    const bool is_explicit = model.mode == RatingMode::Explicit;
    if (is_explicit && !ev.value.has_value()) {
        throw Error("explicit model got a valueless event: " + describe(ev));
    }
    if (!is_explicit && ev.value.has_value()) {
        throw Error("implicit model got a valued event: " + describe(ev));
    }
    if (is_explicit &&
        (*ev.value < model.params.rating_min || *ev.value > model.params.rating_max)) {
        throw Error("rating outside scale: " + describe(ev));
    }

    EntityIndex u;
    if (auto found = model.find_user(ev.user)) {
        u = *found;
    } else {
        u = model.add_user_fresh(ev.user);
    }
    EntityIndex v;
    if (auto found = model.find_item(ev.item)) {
        v = *found;
    } else {
        v = model.add_item(ev.item);
    }
    EntityState& user = model.users[u];
    EntityState& item = model.items[v];

    // Pre-event snapshots; both updates read these, never each other's output.
    const PheromoneVector user_ph = user.pheromones;
    const PheromoneVector item_ph = item.pheromones;

    const double gamma = model.params.gamma;
    const double lambda = model.params.lambda;
    const double sigma = model.params.sigma;
    const auto cap = model.params.type_cap;

    double to_item = gamma;
    double to_user = gamma;
    if (is_explicit) {
        to_item = (*ev.value - model.mean_or_global(user)) * gamma;
        to_user = (*ev.value - model.mean_or_global(item)) * gamma;
    }

    std::size_t item_slots = 0;
    std::size_t user_slots = 0;

    PheromoneVector item_next = item_ph;
    evaporate(item_next, lambda);
    item.pheromones = cutoff(add_scaled(item_next, to_item, user_ph, &item_slots), sigma, cap);

    PheromoneVector user_next = user_ph;
    evaporate(user_next, lambda);
    user.pheromones = cutoff(add_scaled(user_next, to_user, item_ph, &user_slots), sigma, cap);

    user.rating_count += 1;
    item.rating_count += 1;
    model.stats.total_count += 1;
    if (is_explicit) {
        user.rating_sum += *ev.value;
        item.rating_sum += *ev.value;
        model.stats.total_sum += *ev.value;
        user.ratings[v] = *ev.value;
    } else {
        user.ratings[v] = 1.0;
    }

    return user_ph.size() + item_ph.size() + std::max(item_slots, user_slots);
}

TrainReport train_stream(Model& model, std::span<const RatingEvent> events) {
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].timestamp < events[i - 1].timestamp) {
            std::ostringstream os;
            os << "events not sorted by timestamp: index " << (i - 1) << " (ts="
               << events[i - 1].timestamp << ") precedes index " << i << " (ts="
               << events[i].timestamp << ")";
            throw Error(os.str());
        }
    }

    const auto start = std::chrono::steady_clock::now();
    std::size_t touched = 0;
    for (const auto& ev : events) {
        touched += apply_event(model, ev);
    }
    const auto stop = std::chrono::steady_clock::now();

    TrainReport report;
    report.events = events.size();
    report.seconds = std::chrono::duration<double>(stop - start).count();
    report.events_per_second =
        report.seconds > 0.0 ? static_cast<double>(report.events) / report.seconds : 0.0;
    report.mean_touched_entries =
        events.empty() ? 0.0 : static_cast<double>(touched) / static_cast<double>(events.size());
    return report;
}

std::shared_ptr<const Model> snapshot(const Model& model) {
    return std::make_shared<const Model>(model);
}

}  // namespace antcf
