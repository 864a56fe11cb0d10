// Copyright 2026 The DQJ Authors
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
#include <string_view>
#include <vector>

#include "dqj/bench/config.hpp"
#include "dqj/bench/experiment.hpp"

namespace dqj::bench {

// CSV header in column order.
const std::vector<std::string>& result_columns();

// Floats carry 17 significant digits so parsing restores them exactly.
std::string format_rows(const std::vector<ResultRow>& rows, OutputFormat format);
std::vector<ResultRow> parse_rows(std::string_view text, OutputFormat format);

// Empty path writes to stdout. Throws IoError when the file cannot be written.
void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path);

}  // namespace dqj::bench
