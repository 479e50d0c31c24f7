// Copyright 2026 The qwpk Authors
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

// QWS1 text format for walker states:
//
//   QWS1 N=<decimal>
//   <re> <im>          (2N lines, flat-index order, 17 significant digits)
//
// LF line endings, a single LF after the last amplitude line.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qwpk/errors.hpp"
#include "qwpk/quantum_state.hpp"

namespace qwpk {

inline std::string to_qws(const QuantumState& state) {
  std::string out = "QWS1 N=" + std::to_string(state.n_positions()) + "\n";
  char line[96];
  for (const auto& a : state.amplitudes()) {
    const int len = std::snprintf(line, sizeof line, "%.17g %.17g\n", a.real(), a.imag());
    out.append(line, static_cast<std::size_t>(len));
  }
  return out;
}

namespace detail {

inline double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw FormatError("QWS1 line " + std::to_string(line_no) + ": bad number '" +
                      std::string(token) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses a QWS1 document. Structural problems raise FormatError; a
/// well-formed but non-normalized vector raises NumericalError.
inline QuantumState parse_qws(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  if (lines.empty()) throw FormatError("QWS1: empty input");

  constexpr std::string_view kMagic = "QWS1 N=";
  const std::string_view header = lines.front();
  if (!header.starts_with(kMagic)) throw FormatError("QWS1: missing 'QWS1 N=' header");
  std::size_t n = 0;
  {
    const auto digits = header.substr(kMagic.size());
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw FormatError("QWS1: bad N in header '" + std::string(header) + "'");
    }
  }
  if (n < 2) throw FormatError("QWS1: N must be >= 2");
  if (n > (std::size_t{1} << 26)) throw FormatError("QWS1: N too large");

  if (lines.size() != 2 * n + 1) {
    throw FormatError("QWS1: expected " + std::to_string(2 * n) + " amplitude lines, found " +
                      std::to_string(lines.size() - 1));
  }

  std::vector<Amplitude> amps;
  amps.reserve(2 * n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos || line.find(' ', space + 1) != std::string_view::npos) {
      throw FormatError("QWS1 line " + std::to_string(i + 1) + ": expected '<re> <im>'");
    }
    amps.emplace_back(detail::parse_double(line.substr(0, space), i + 1),
                      detail::parse_double(line.substr(space + 1), i + 1));
  }
  return QuantumState::from_amplitudes(std::move(amps));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

inline QuantumState read_qws(const std::string& path) { return parse_qws(read_text_file(path)); }

inline void write_qws(const std::string& path, const QuantumState& state) {
  write_text_file(path, to_qws(state));
}

}  // namespace qwpk
