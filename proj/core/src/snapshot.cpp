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

#include "antcf/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "antcf/error.hpp"
#include "detail/number_io.hpp"

namespace antcf {

namespace {

using detail::format_double;
using detail::parse_double_exact;
using detail::parse_int64;

constexpr std::string_view kMagic = "antcf-model";
constexpr std::string_view kVersion = "1";

void check_id(const std::string& id) {
    if (id.empty() || id.find_first_of(" \t\r\n") != std::string::npos) {
        throw Error("snapshot: entity id empty or contains whitespace: '" + id + "'");
    }
}

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos) {
            tokens.push_back(line.substr(pos));
            break;
        }
        if (next > pos) {
            tokens.push_back(line.substr(pos, next - pos));
        }
        pos = next + 1;
    }
    return tokens;
}

struct LineReader {
    std::istringstream in;
    std::string line;
    std::size_t line_no = 0;

    explicit LineReader(const std::string& text) : in(text) {}

    bool next() {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty()) {
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        std::ostringstream os;
        os << "snapshot line " << line_no << ": " << why;
        throw Error(os.str());
    }
};

void write_entity(std::ostringstream& os, char tag, const EntityState& e) {
    os << tag << ' ' << e.id << ' ' << e.rating_count << ' '
       << format_double(e.rating_sum);
    for (const auto& entry : e.pheromones.entries()) {
        os << ' ' << entry.type << ':' << format_double(entry.amount);
    }
    os << '\n';
}

}  // namespace

std::string serialize_model(const Model& model) {
    std::ostringstream os;
    os << kMagic << ' ' << kVersion << '\n';
    os << "mode " << (model.mode == RatingMode::Explicit ? "explicit" : "implicit")
       << '\n';
    os << "next_type " << model.next_type << '\n';
    const ModelParams& p = model.params;
    os << "param gamma " << format_double(p.gamma) << '\n';
    os << "param lambda " << format_double(p.lambda) << '\n';
    os << "param sigma " << format_double(p.sigma) << '\n';
    os << "param clusters " << p.cluster_count << '\n';
    os << "param neighbors " << p.neighborhood_size << '\n';
    os << "param top_n " << p.top_n << '\n';
    os << "param rating_min " << format_double(p.rating_min) << '\n';
    os << "param rating_max " << format_double(p.rating_max) << '\n';
    if (p.type_cap.has_value()) {
        os << "param type_cap " << *p.type_cap << '\n';
    }
    os << "G " << model.stats.total_count << ' ' << format_double(model.stats.total_sum)
       << '\n';
    for (const auto& user : model.users) {
        check_id(user.id);
        write_entity(os, 'U', user);
    }
    for (const auto& item : model.items) {
        check_id(item.id);
        write_entity(os, 'V', item);
    }
    for (const auto& user : model.users) {
        if (user.ratings.empty()) {
            continue;
        }
        std::vector<std::pair<std::string, double>> rated;
        rated.reserve(user.ratings.size());
        for (const auto& [item_index, value] : user.ratings) {
            rated.emplace_back(model.items[static_cast<std::size_t>(item_index)].id, value);
        }
        std::sort(rated.begin(), rated.end());
        os << "R " << user.id;
        for (const auto& [item_id, value] : rated) {
            os << ' ' << item_id << ':' << format_double(value);
        }
        os << '\n';
    }
    return os.str();
}

Model parse_model(const std::string& text) {
    LineReader reader(text);

    if (!reader.next()) {
        throw Error("snapshot: empty input");
    }
    {
        const auto header = tokens_of(reader.line);
        if (header.size() != 2 || header[0] != kMagic) {
            reader.fail("not an antcf model snapshot");
        }
        if (header[1] != kVersion) {
            reader.fail("unsupported snapshot version '" + std::string(header[1]) + "'");
        }
    }

    Model model;
    if (!reader.next()) {
        throw Error("snapshot: truncated before mode line");
    }
    {
        const auto tokens = tokens_of(reader.line);
        if (tokens.size() != 2 || tokens[0] != "mode") {
            reader.fail("expected 'mode explicit|implicit'");
        }
        if (tokens[1] == "explicit") {
            model.mode = RatingMode::Explicit;
        } else if (tokens[1] == "implicit") {
            model.mode = RatingMode::Implicit;
        } else {
            reader.fail("unknown mode '" + std::string(tokens[1]) + "'");
        }
    }
    if (!reader.next()) {
        throw Error("snapshot: truncated before next_type line");
    }
    {
        const auto tokens = tokens_of(reader.line);
        long long value = 0;
        if (tokens.size() != 2 || tokens[0] != "next_type" || !parse_int64(tokens[1], value)) {
            reader.fail("expected 'next_type <id>'");
        }
        model.next_type = static_cast<PheromoneType>(value);
    }

    bool saw_stats = false;
    while (reader.next()) {
        const auto tokens = tokens_of(reader.line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "param") {
            if (saw_stats) {
                reader.fail("param line after the G line");
            }
            if (tokens.size() != 3) {
                reader.fail("expected 'param <name> <value>'");
            }
            const std::string name(tokens[1]);
            double d = 0.0;
            long long i = 0;
            if (name == "gamma" && parse_double_exact(tokens[2], d)) {
                model.params.gamma = d;
            } else if (name == "lambda" && parse_double_exact(tokens[2], d)) {
                model.params.lambda = d;
            } else if (name == "sigma" && parse_double_exact(tokens[2], d)) {
                model.params.sigma = d;
            } else if (name == "clusters" && parse_int64(tokens[2], i)) {
                model.params.cluster_count = static_cast<int>(i);
            } else if (name == "neighbors" && parse_int64(tokens[2], i)) {
                model.params.neighborhood_size = static_cast<int>(i);
            } else if (name == "top_n" && parse_int64(tokens[2], i)) {
                model.params.top_n = static_cast<int>(i);
            } else if (name == "rating_min" && parse_double_exact(tokens[2], d)) {
                model.params.rating_min = d;
            } else if (name == "rating_max" && parse_double_exact(tokens[2], d)) {
                model.params.rating_max = d;
            } else if (name == "type_cap" && parse_int64(tokens[2], i)) {
                model.params.type_cap = static_cast<std::int32_t>(i);
            } else {
                reader.fail("unknown or unparseable param '" + name + "'");
            }
        } else if (tokens[0] == "G") {
            long long count = 0;
            double sum = 0.0;
            if (tokens.size() != 3 || !parse_int64(tokens[1], count) ||
                !parse_double_exact(tokens[2], sum)) {
                reader.fail("expected 'G <count> <sum>'");
            }
            model.stats.total_count = count;
            model.stats.total_sum = sum;
            saw_stats = true;
        } else if (tokens[0] == "U" || tokens[0] == "V") {
            if (!saw_stats) {
                reader.fail("entity line before the G line");
            }
            if (tokens.size() < 4) {
                reader.fail("expected '<U|V> <id> <count> <sum> [entries...]'");
            }
            long long count = 0;
            double sum = 0.0;
            if (!parse_int64(tokens[2], count) || !parse_double_exact(tokens[3], sum)) {
                reader.fail("unparseable entity statistics");
            }
            PheromoneVector ph;
            for (std::size_t t = 4; t < tokens.size(); ++t) {
                const std::string_view pair = tokens[t];
                const std::size_t colon = pair.find(':');
                long long type = 0;
                double amount = 0.0;
                if (colon == std::string_view::npos ||
                    !parse_int64(pair.substr(0, colon), type) ||
                    !parse_double_exact(pair.substr(colon + 1), amount)) {
                    reader.fail("unparseable pheromone entry '" + std::string(pair) + "'");
                }
                if (amount == 0.0) {
                    reader.fail("pheromone entry with zero amount");
                }
                ph.set(static_cast<PheromoneType>(type), amount);
            }
            const std::string id(tokens[1]);
            try {
                if (tokens[0] == "U") {
                    const EntityIndex idx = model.add_user(id, std::move(ph));
                    model.users[static_cast<std::size_t>(idx)].rating_count = count;
                    model.users[static_cast<std::size_t>(idx)].rating_sum = sum;
                } else {
                    const EntityIndex idx = model.add_item(id);
                    model.items[static_cast<std::size_t>(idx)].pheromones = std::move(ph);
                    model.items[static_cast<std::size_t>(idx)].rating_count = count;
                    model.items[static_cast<std::size_t>(idx)].rating_sum = sum;
                }
            } catch (const Error& e) {
                reader.fail(e.what());
            }
        } else if (tokens[0] == "R") {
            if (tokens.size() < 2) {
                reader.fail("expected 'R <user id> [item:value...]'");
            }
            const auto user = model.find_user(std::string(tokens[1]));
            if (!user.has_value()) {
                reader.fail("R line references unknown user '" + std::string(tokens[1]) +
                            "'");
            }
            auto& store = model.users[static_cast<std::size_t>(*user)].ratings;
            if (!store.empty()) {
                reader.fail("duplicate R line for user '" + std::string(tokens[1]) + "'");
            }
            for (std::size_t t = 2; t < tokens.size(); ++t) {
                const std::string_view pair = tokens[t];
                const std::size_t colon = pair.rfind(':');
                double value = 0.0;
                if (colon == std::string_view::npos ||
                    !parse_double_exact(pair.substr(colon + 1), value)) {
                    reader.fail("unparseable rating entry '" + std::string(pair) + "'");
                }
                const auto item = model.find_item(std::string(pair.substr(0, colon)));
                if (!item.has_value()) {
                    reader.fail("R line references unknown item '" +
                                std::string(pair.substr(0, colon)) + "'");
                }
                store[*item] = value;
            }
        } else {
            reader.fail("unknown line tag '" + std::string(tokens[0]) + "'");
        }
    }
    if (!saw_stats) {
        throw Error("snapshot: truncated, no G line");
    }
    return model;
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw Error("cannot write " + path);
    }
    out << serialize_model(model);
    if (!out.good()) {
        throw Error("write failed: " + path);
    }
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw Error("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

}  // namespace antcf
