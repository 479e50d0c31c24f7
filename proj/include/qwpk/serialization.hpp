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

// JSON forms of the public parameters, secret keys and security reports.

#include <nlohmann/json.hpp>

#include <string>

#include "qwpk/errors.hpp"
#include "qwpk/protocol.hpp"
#include "qwpk/security.hpp"
#include "qwpk/state_io.hpp"

namespace qwpk {

using json = nlohmann::ordered_json;

inline json config_to_json(const WalkConfig& c) {
  return json{{"n", c.n}, {"N", c.N}, {"d", c.d}, {"t_min", c.t_min}, {"t_max", c.t_max}};
}

inline json secret_key_to_json(const SecretKey& sk, const WalkConfig& c) {
  json j = config_to_json(c);
  j["k"] = sk.k;
  j["t"] = sk.t;
  j["l"] = sk.l;
  j["s"] = std::string(1, coin_label(sk.s));
  return j;
}

inline json report_to_json(const SecurityReport& r) {
  return json{{"von_neumann_entropy_bits", r.von_neumann_entropy_bits},
              {"shannon_entropy_bits", r.shannon_entropy_bits},
              {"holevo_bound_bits", r.holevo_bound_bits},
              {"holevo_gap_bits", r.holevo_gap_bits},
              {"consistent_key_count", r.consistent_key_count}};
}

namespace detail {

template <class T>
T required_field(const json& j, const char* name) {
  if (!j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field '") + name + "' has the wrong type");
  }
}

inline json parse_json(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw FormatError("expected a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

/// Reads {n, N, d, t_min, t_max}; N defaults to 2^n when absent. Validates.
inline WalkConfig config_from_json(const json& j) {
  WalkConfig c;
  c.n = detail::required_field<unsigned>(j, "n");
  if (c.n > WalkConfig::kMaxMessageBits) throw ValidationError("n must be <= 30");
  c.N = j.contains("N") ? detail::required_field<std::size_t>(j, "N") : (std::size_t{1} << c.n);
  c.d = detail::required_field<std::size_t>(j, "d");
  c.t_min = detail::required_field<std::uint64_t>(j, "t_min");
  c.t_max = detail::required_field<std::uint64_t>(j, "t_max");
  c.validate();
  return c;
}

struct KeyFile {
  WalkConfig config;
  SecretKey key;
};

inline KeyFile secret_key_from_json(const json& j) {
  KeyFile f{config_from_json(j), {}};
  f.key.k = detail::required_field<std::size_t>(j, "k");
  f.key.t = detail::required_field<std::uint64_t>(j, "t");
  f.key.l = detail::required_field<std::size_t>(j, "l");
  const auto s = detail::required_field<std::string>(j, "s");
  if (s == "R") {
    f.key.s = Coin::R;
  } else if (s == "L") {
    f.key.s = Coin::L;
  } else {
    throw FormatError("field 's' must be \"L\" or \"R\"");
  }
  f.key.validate(f.config);
  return f;
}

inline WalkConfig read_config(const std::string& path) {
  return config_from_json(detail::parse_json(read_text_file(path)));
}

inline KeyFile read_secret_key(const std::string& path) {
  return secret_key_from_json(detail::parse_json(read_text_file(path)));
}

inline void write_json(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

/// Sidecar holding the public parameters of a QWS1 state file.
inline std::string sidecar_path(const std::string& state_path) { return state_path + ".json"; }

/// Writes `state` as QWS1 plus its config sidecar.
inline void write_state_with_config(const std::string& path, const QuantumState& state,
                                    const WalkConfig& config) {
  write_qws(path, state);
  write_json(sidecar_path(path), config_to_json(config));
}

/// Reads a QWS1 state and its sidecar; the two must agree on N.
inline PublicKey read_state_with_config(const std::string& path) {
  const WalkConfig config = read_config(sidecar_path(path));
  QuantumState state = read_qws(path);
  if (state.n_positions() != config.N) {
    throw DimensionMismatch("state file has N=" + std::to_string(state.n_positions()) +
                            " but sidecar says N=" + std::to_string(config.N));
  }
  return PublicKey{config, std::move(state)};
}

}  // namespace qwpk
