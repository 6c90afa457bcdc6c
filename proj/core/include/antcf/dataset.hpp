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

#include <string>
#include <vector>

#include "antcf/model.hpp"

namespace antcf {

enum class DatasetFormat { MovieLensDat, CsvExplicit, CsvImplicit };

struct DatasetDescriptor {
    std::string path;
    DatasetFormat format = DatasetFormat::CsvExplicit;
    char delimiter = ',';
    enum class TimeUnit { Seconds, Milliseconds } time_unit = TimeUnit::Seconds;
};

// `UserID::MovieID::Rating::Timestamp` lines, five-star scale. Ratings
// outside [1, 5] and malformed lines are rejected with their line number.
// Events come back sorted by timestamp.
std::vector<RatingEvent> load_movielens(const std::string& path);

// CSV with a `user,item[,value],timestamp` header. The explicit format
// requires a value on every row; the implicit format requires none (a
// populated value column is a mode mismatch). Events come back sorted.
std::vector<RatingEvent> load_csv(const DatasetDescriptor& descriptor);

std::vector<RatingEvent> load_dataset(const DatasetDescriptor& descriptor);

// Writes events in the csv-explicit / csv-implicit layout above.
void write_csv(const std::string& path, std::span<const RatingEvent> events,
               bool implicit);

DatasetFormat parse_format(const std::string& name);  // "movielens" | "csv-explicit" | "csv-implicit"

}  // namespace antcf
