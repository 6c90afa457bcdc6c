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

#include "antcf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "antcf/error.hpp"
#include "detail/number_io.hpp"

namespace antcf {

namespace {

void sort_events(std::vector<RatingEvent>& events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const RatingEvent& a, const RatingEvent& b) {
                         return a.timestamp < b.timestamp;
                     });
}

[[noreturn]] void reject(const std::string& path, std::size_t line_no,
                         const std::string& why) {
    std::ostringstream os;
    os << path << ":" << line_no << ": " << why;
    throw Error(os.str());
}

double parse_double(std::string_view text, const std::string& path, std::size_t line_no,
                    const char* field) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        reject(path, line_no, std::string("unparseable ") + field + ": '" +
                                   std::string(text) + "'");
    }
    return value;
}

std::int64_t parse_timestamp(std::string_view text, const std::string& path,
                             std::size_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        reject(path, line_no, "unparseable timestamp: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_view(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

}  // namespace

std::vector<RatingEvent> load_movielens(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw Error("cannot open " + path);
    }
    std::vector<RatingEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = strip_cr(line);
        if (text.empty()) {
            continue;
        }
        // UserID::MovieID::Rating::Timestamp
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = text.find("::", start);
            if (pos == std::string_view::npos) {
                fields.push_back(text.substr(start));
                break;
            }
            fields.push_back(text.substr(start, pos - start));
            start = pos + 2;
        }
        if (fields.size() != 4) {
            reject(path, line_no, "expected UserID::MovieID::Rating::Timestamp");
        }
        if (fields[0].empty() || fields[1].empty()) {
            reject(path, line_no, "empty user or item id");
        }
        const double rating = parse_double(fields[2], path, line_no, "rating");
        if (rating < 1.0 || rating > 5.0) {
            reject(path, line_no, "rating outside the 1-5 scale");
        }
        RatingEvent ev;
        ev.user = std::string(fields[0]);
        ev.item = std::string(fields[1]);
        ev.value = rating;
        ev.timestamp = parse_timestamp(fields[3], path, line_no);
        events.push_back(std::move(ev));
    }
    sort_events(events);
    return events;
}

std::vector<RatingEvent> load_csv(const DatasetDescriptor& descriptor) {
    const bool implicit = descriptor.format == DatasetFormat::CsvImplicit;
    if (descriptor.format == DatasetFormat::MovieLensDat) {
        throw Error("load_csv: descriptor has the movielens format");
    }
    std::ifstream in(descriptor.path);
    if (!in.is_open()) {
        throw Error("cannot open " + descriptor.path);
    }

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        reject(descriptor.path, 1, "missing header row");
    }
    ++line_no;
    const auto header = split_view(strip_cr(line), descriptor.delimiter);
    bool has_value_column = false;
    if (header.size() == 4 && header[0] == "user" && header[1] == "item" &&
        header[2] == "value" && header[3] == "timestamp") {
        has_value_column = true;
    } else if (header.size() == 3 && header[0] == "user" && header[1] == "item" &&
               header[2] == "timestamp") {
        has_value_column = false;
    } else {
        reject(descriptor.path, 1, "header must be user,item[,value],timestamp");
    }
    if (!implicit && !has_value_column) {
        reject(descriptor.path, 1, "explicit format requires a value column");
    }

    const std::int64_t unit =
        descriptor.time_unit == DatasetDescriptor::TimeUnit::Milliseconds ? 1000 : 1;

    std::vector<RatingEvent> events;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = strip_cr(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = split_view(text, descriptor.delimiter);
        if (fields.size() != header.size()) {
            reject(descriptor.path, line_no, "wrong field count");
        }
        if (fields[0].empty() || fields[1].empty()) {
            reject(descriptor.path, line_no, "empty user or item id");
        }
        RatingEvent ev;
        ev.user = std::string(fields[0]);
        ev.item = std::string(fields[1]);
        const std::string_view ts_field = fields.back();
        ev.timestamp = parse_timestamp(ts_field, descriptor.path, line_no) / unit;
        if (has_value_column) {
            const std::string_view value_field = fields[2];
            if (implicit) {
                if (!value_field.empty()) {
                    reject(descriptor.path, line_no,
                           "implicit dataset has a populated value column (mode mismatch)");
                }
            } else {
                if (value_field.empty()) {
                    reject(descriptor.path, line_no, "explicit dataset has an empty value");
                }
                ev.value = parse_double(value_field, descriptor.path, line_no, "value");
            }
        }
        events.push_back(std::move(ev));
    }
    sort_events(events);
    return events;
}

std::vector<RatingEvent> load_dataset(const DatasetDescriptor& descriptor) {
    if (descriptor.format == DatasetFormat::MovieLensDat) {
        return load_movielens(descriptor.path);
    }
    return load_csv(descriptor);
}

void write_csv(const std::string& path, std::span<const RatingEvent> events,
               bool implicit) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw Error("cannot write " + path);
    }
    out << (implicit ? "user,item,timestamp\n" : "user,item,value,timestamp\n");
    for (const auto& ev : events) {
        if (implicit) {
            out << ev.user << ',' << ev.item << ',' << ev.timestamp << '\n';
        } else {
            if (!ev.value.has_value()) {
                throw Error("write_csv: explicit output but event has no value");
            }
            out << ev.user << ',' << ev.item << ',' << detail::format_double(*ev.value)
                << ',' << ev.timestamp << '\n';
        }
    }
    if (!out.good()) {
        throw Error("write failed: " + path);
    }
}

DatasetFormat parse_format(const std::string& name) {
    if (name == "movielens") {
        return DatasetFormat::MovieLensDat;
    }
    if (name == "csv-explicit") {
        return DatasetFormat::CsvExplicit;
    }
    if (name == "csv-implicit") {
        return DatasetFormat::CsvImplicit;
    }
    throw Error("unknown dataset format: " + name +
                " (expected movielens, csv-explicit, or csv-implicit)");
}

}  // namespace antcf
