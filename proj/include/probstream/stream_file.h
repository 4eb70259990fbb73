/*
 * Copyright 2026 The probstream Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Line format:
//
//   line     := comment | blank | header | fraction
//   comment  := '#' anything
//   header   := "!threshold" spaces fraction
//   fraction := digits '/' digits
//
// Surrounding whitespace is ignored.  Decimals such as 0.5 are rejected.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "probstream/numerics.h"

namespace probstream {

struct StreamFile {
  std::optional<Probability> threshold;
  std::vector<Probability> elements;
};

/// Throws std::invalid_argument with a "line N: ..." message.
StreamFile parse_stream(std::istream& in);
StreamFile parse_stream_text(const std::string& text);
StreamFile read_stream_file(const std::string& path);

/// Writes `comment` lines (prefixed with '#'), the header if present, then
/// one fraction per line.
void write_stream(std::ostream& out, const StreamFile& file,
                  const std::vector<std::string>& comment = {});
void write_stream_file(const std::string& path, const StreamFile& file,
                       const std::vector<std::string>& comment = {});

}  // namespace probstream
