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

#include "probstream/stream_file.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace probstream {

namespace {

constexpr const char* kHeader = "!threshold";

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Probability parse_probability(const std::string& text) {
  const Rational x = parse_fraction(text);
  if (x > 1) throw std::invalid_argument("'" + text + "' is above 1");
  return Probability::from_rational(x);
}

}  // namespace

StreamFile parse_stream(std::istream& in) {
  StreamFile out;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line[0] == '!') {
        if (line.rfind(kHeader, 0) != 0) throw std::invalid_argument("unknown directive '" + line + "'");
        const std::string rest = line.substr(std::string(kHeader).size());
        if (rest.empty() || (rest[0] != ' ' && rest[0] != '\t')) {
          throw std::invalid_argument("expected '!threshold r/s'");
        }
        if (out.threshold) throw std::invalid_argument("duplicate threshold header");
        if (seen_data) throw std::invalid_argument("threshold header after data lines");
        out.threshold = parse_probability(trim(rest));
        continue;
      }
      out.elements.push_back(parse_probability(line));
      seen_data = true;
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

StreamFile parse_stream_text(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

StreamFile read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_stream(in);
}

void write_stream(std::ostream& out, const StreamFile& file,
                  const std::vector<std::string>& comment) {
  for (const auto& c : comment) out << "# " << c << "\n";
  if (file.threshold) out << kHeader << " " << file.threshold->to_string() << "\n";
  for (const auto& q : file.elements) out << q.to_string() << "\n";
}

void write_stream_file(const std::string& path, const StreamFile& file,
                       const std::vector<std::string>& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_stream(out, file, comment);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace probstream
