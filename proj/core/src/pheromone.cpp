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

#include "antcf/pheromone.hpp"

#include <algorithm>
#include <cmath>

#include "antcf/error.hpp"

namespace antcf {

PheromoneVector::PheromoneVector(std::initializer_list<PheromoneEntry> entries) {
    for (const auto& e : entries) {
        set(e.type, e.amount);
    }
}

PheromoneVector PheromoneVector::single(PheromoneType type, double amount) {
    PheromoneVector ph;
    ph.set(type, amount);
    return ph;
}

namespace {

auto lower_bound_type(const std::vector<PheromoneEntry>& entries, PheromoneType type) {
    return std::lower_bound(entries.begin(), entries.end(), type,
                            [](const PheromoneEntry& e, PheromoneType t) { return e.type < t; });
}

}  // namespace

double PheromoneVector::amount(PheromoneType type) const {
    auto it = lower_bound_type(entries_, type);
    if (it != entries_.end() && it->type == type) {
        return it->amount;
    }
    return 0.0;
}

void PheromoneVector::set(PheromoneType type, double amount) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), type,
                               [](const PheromoneEntry& e, PheromoneType t) { return e.type < t; });
    const bool present = it != entries_.end() && it->type == type;
    if (amount == 0.0) {
        if (present) {
            entries_.erase(it);
        }
        return;
    }
    if (present) {
        it->amount = amount;
    } else {
        entries_.insert(it, PheromoneEntry{type, amount});
    }
}

double max_magnitude(const PheromoneVector& ph) {
    double m = 0.0;
    for (const auto& e : ph.entries()) {
        m = std::max(m, std::fabs(e.amount));
    }
    return m;
}

double dot(const PheromoneVector& a, const PheromoneVector& b) {
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].type == eb[j].type) {
            sum += ea[i].amount * eb[j].amount;
            ++i;
            ++j;
        } else if (ea[i].type < eb[j].type) {
            ++i;
        } else {
            ++j;
        }
    }
    return sum;
}

double norm(const PheromoneVector& ph) {
    double sum = 0.0;
    for (const auto& e : ph.entries()) {
        sum += e.amount * e.amount;
    }
    return std::sqrt(sum);
}

double cosine_similarity(const PheromoneVector& a, const PheromoneVector& b) {
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    return dot(a, b) / (norm(a) * norm(b));
}

void evaporate(PheromoneVector& ph, double lambda) {
    if (lambda <= 0.0) {
        throw Error("evaporate: lambda must be > 0");
    }
    if (ph.empty()) {
        return;
    }
    const double m = max_magnitude(ph);
    for (auto& e : ph.entries_) {
        const double factor = std::exp((std::fabs(e.amount) + lambda) / (m + lambda) - 1.0);
        e.amount *= factor;
    }
}

PheromoneVector add_scaled(const PheromoneVector& a, double scale,
                           const PheromoneVector& b, std::size_t* merged_slots) {
    if (scale == 0.0) {
        if (merged_slots != nullptr) {
            *merged_slots = a.size();
        }
        return a;
    }
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    PheromoneVector out;
    out.entries_.reserve(ea.size() + eb.size());
    std::size_t slots = 0;
    std::size_t i = 0, j = 0;
    auto push = [&out](PheromoneType type, double amount) {
        if (amount != 0.0) {
            out.entries_.push_back(PheromoneEntry{type, amount});
        }
    };
    while (i < ea.size() && j < eb.size()) {
        ++slots;
        if (ea[i].type == eb[j].type) {
            push(ea[i].type, ea[i].amount + scale * eb[j].amount);
            ++i;
            ++j;
        } else if (ea[i].type < eb[j].type) {
            push(ea[i].type, ea[i].amount);
            ++i;
        } else {
            push(eb[j].type, scale * eb[j].amount);
            ++j;
        }
    }
    for (; i < ea.size(); ++i, ++slots) {
        push(ea[i].type, ea[i].amount);
    }
    for (; j < eb.size(); ++j, ++slots) {
        push(eb[j].type, scale * eb[j].amount);
    }
    if (merged_slots != nullptr) {
        *merged_slots = slots;
    }
    return out;
}

PheromoneVector cutoff(PheromoneVector ph, double sigma, std::optional<std::int32_t> cap) {
    if (sigma < 0.0) {
        throw Error("cutoff: sigma must be >= 0");
    }
    auto& entries = ph.entries_;
    std::erase_if(entries, [sigma](const PheromoneEntry& e) {
        return std::fabs(e.amount) < sigma;
    });
    if (cap.has_value() && entries.size() > static_cast<std::size_t>(*cap)) {
        std::vector<PheromoneEntry> ranked = entries;
        std::sort(ranked.begin(), ranked.end(), [](const PheromoneEntry& x, const PheromoneEntry& y) {
            const double mx = std::fabs(x.amount);
            const double my = std::fabs(y.amount);
            if (mx != my) {
                return mx > my;
            }
            return x.type < y.type;
        });
        ranked.resize(static_cast<std::size_t>(*cap));
        std::sort(ranked.begin(), ranked.end(), [](const PheromoneEntry& x, const PheromoneEntry& y) {
            return x.type < y.type;
        });
        entries = std::move(ranked);
    }
    return ph;
}

}  // namespace antcf
