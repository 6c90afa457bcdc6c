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

#include "antcf/model.hpp"

namespace antcf {

// Versioned line-oriented text snapshot. load(save(model)) reproduces the
// model exactly; amounts are written in shortest-round-trip form.
//
//   antcf-model 1
//   mode explicit|implicit
//   next_type <id>
//   param <name> <value>          (one per parameter)
//   G <count> <sum>
//   U <id> <count> <sum> [<type>:<amount>...]
//   V <id> <count> <sum> [<type>:<amount>...]
//   R <user id> [<item id>:<value>...]
//
// U/V lines appear in registration order, R lines in user order with items
// sorted by id. Entity ids must be whitespace-free; serialization rejects
// models violating that.
std::string serialize_model(const Model& model);
Model parse_model(const std::string& text);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace antcf
