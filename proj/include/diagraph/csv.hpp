// Copyright 2026 The Diagraph Authors
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

// Minimal RFC 4180 CSV: comma separated, double-quote escaping, CRLF or LF.

#ifndef DIAGRAPH_CSV_HPP_
#define DIAGRAPH_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace diagraph::csv {

using Row = std::vector<std::string>;

/// Throws Error(kMalformedDocument) on an unterminated quoted field.
/// Blank lines are skipped; a leading UTF-8 BOM is dropped.
std::vector<Row> parse(std::string_view text);

std::string escape(std::string_view field);
std::string format_row(const Row& row);

}  // namespace diagraph::csv

#endif  // DIAGRAPH_CSV_HPP_
