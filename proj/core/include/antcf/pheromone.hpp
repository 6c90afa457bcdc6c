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
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace antcf {

// A pheromone type is an opaque small integer. With per-user seeding every
// user owns one type; with clustered seeding the types are cluster indices,
// and fresh types minted for cold users continue the same id space.
using PheromoneType = std::int32_t;

struct PheromoneEntry {
    PheromoneType type;
    double amount;

    bool operator==(const PheromoneEntry&) const = default;
};

// Sparse signed pheromone vector. Entries are kept sorted by type id and an
// exact 0.0 amount is never stored; absent types are semantically zero.
class PheromoneVector {
public:
    PheromoneVector() = default;
    PheromoneVector(std::initializer_list<PheromoneEntry> entries);

    static PheromoneVector single(PheromoneType type, double amount);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<PheromoneEntry>& entries() const { return entries_; }

    // 0.0 when the type is absent.
    double amount(PheromoneType type) const;

    // Inserts, overwrites, or (on 0.0) removes the entry for `type`.
    void set(PheromoneType type, double amount);

    bool operator==(const PheromoneVector&) const = default;

private:
    std::vector<PheromoneEntry> entries_;  // sorted by type

    friend void evaporate(PheromoneVector& ph, double lambda);
    friend PheromoneVector add_scaled(const PheromoneVector& a, double scale,
                                      const PheromoneVector& b,
                                      std::size_t* merged_slots);
    friend PheromoneVector cutoff(PheromoneVector ph, double sigma,
                                  std::optional<std::int32_t> cap);
};

// Largest |amount| over all entries; 0 for the empty vector.
double max_magnitude(const PheromoneVector& ph);

// Dot product over the union of types (merge of the sorted entry lists).
double dot(const PheromoneVector& a, const PheromoneVector& b);

// Euclidean norm.
double norm(const PheromoneVector& ph);

// Cosine of the two sparse vectors; 0 when either one is empty.
double cosine_similarity(const PheromoneVector& a, const PheromoneVector& b);

// Multiplies every entry by exp((|amount| + lambda) / (M + lambda) - 1)
// where M = max_magnitude(ph). The factor lies in (e^-1, 1]; entries at the
// maximal magnitude keep factor exp(0) = 1 exactly. Signs are preserved.
void evaporate(PheromoneVector& ph, double lambda);

// a + scale * b, merging the sorted entry lists. Amounts that cancel to an
// exact 0.0 are dropped. When `merged_slots` is non-null it receives the
// number of candidate entry slots processed by the merge (|a ∪ b|, or |a|
// when scale == 0 short-circuits).
PheromoneVector add_scaled(const PheromoneVector& a, double scale,
                           const PheromoneVector& b,
                           std::size_t* merged_slots = nullptr);

// Drops entries with |amount| < sigma. When `cap` is set, at most `cap`
// entries survive: the largest magnitudes win, ties go to the smaller type
// id. Idempotent.
PheromoneVector cutoff(PheromoneVector ph, double sigma,
                       std::optional<std::int32_t> cap = std::nullopt);

}  // namespace antcf
