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

// Command-line front end: keygen / encrypt / decrypt / analyze / demo.
//
// Exit codes: 0 success, 2 validation error, 3 format or I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>
#include <string>
#include <vector>

#include "qwpk/qwpk.hpp"

namespace qwpk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitFormat = 3;

inline constexpr std::uint64_t kDefaultSeed = 0;

struct ConfigFlags {
  std::string config_path;
  std::optional<unsigned> n;
  std::optional<std::size_t> N;
  std::optional<std::size_t> d;
  std::optional<std::uint64_t> t_min;
  std::optional<std::uint64_t> t_max;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "JSON file with {n, N, d, t_min, t_max}");
    app.add_option("--n", n, "message width in bits");
    app.add_option("--N", N, "circle size (default 2^n)");
    app.add_option("--d", d, "coin family size (default 2^n)");
    app.add_option("--t-min", t_min, "smallest step count (default n)");
    app.add_option("--t-max", t_max, "largest step count (default n^2)");
  }

  /// File values first, then explicit flags on top.
  WalkConfig resolve() const {
    WalkConfig c;
    if (!config_path.empty()) {
      c = read_config(config_path);
    } else if (n) {
      if (*n < 1 || *n > WalkConfig::kMaxMessageBits) throw ValidationError("--n must be in [1, 30]");
      c = WalkConfig::with_defaults(*n);
    } else {
      throw ValidationError("either --config or --n is required");
    }
    if (n && *n != c.n) {
      c.n = *n;
      if (!N) c.N = std::size_t{1} << c.n;
    }
    if (N) c.N = *N;
    if (d) c.d = *d;
    if (t_min) c.t_min = *t_min;
    if (t_max) c.t_max = *t_max;
    c.validate();
    return c;
  }
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  int verbosity = 0;
};

inline void cmd_keygen(const WalkConfig& config, std::uint64_t seed, const std::string& base, Streams& io) {
  const SecretKey sk = sample_secret_key(config, seed);
  const PublicKey pk = generate_public_key(sk, config);
  const std::string sk_path = base + ".sk.json";
  const std::string pk_path = base + ".pk.qws";
  write_json(sk_path, secret_key_to_json(sk, config));
  write_state_with_config(pk_path, pk.state, config);

  // Read the public key back through the parser; it must round-trip with unit norm.
  const PublicKey check = read_state_with_config(pk_path);
  if (std::abs(check.state.norm() - 1.0) > kStateTolerance) {
    throw NumericalError("written public key failed the norm check");
  }
  if (io.verbosity > 0) {
    io.err << "wrote " << sk_path << ", " << pk_path << ", " << sidecar_path(pk_path) << "\n";
  }
}

inline void cmd_encrypt(const std::string& pk_path, std::uint64_t message, const std::string& out_path,
                        Streams& io) {
  const PublicKey pk = read_state_with_config(pk_path);
  const QuantumState cipher = encrypt(pk, Message{message});
  write_state_with_config(out_path, cipher, pk.config);
  if (io.verbosity > 0) io.err << "wrote " << out_path << "\n";
}

inline void cmd_decrypt(const std::string& cipher_path, const std::string& sk_path, std::uint64_t seed,
                        Streams& io) {
  const KeyFile key = read_secret_key(sk_path);
  const QuantumState cipher = read_qws(cipher_path);
  if (cipher.n_positions() != key.config.N) {
    throw DimensionMismatch("cipher has N=" + std::to_string(cipher.n_positions()) +
                            " but the secret key config says N=" + std::to_string(key.config.N));
  }
  const DecryptResult r = decrypt(cipher, key.key, key.config, seed);
  if (!r.eigenstate) {
    io.err << "warning: unwound cipher is not a position eigenstate (max probability "
           << r.max_position_probability << "); the cipher may have been tampered with\n";
  }
  io.out << r.message.value << "\n";
}

inline json eavesdropper_to_json(const EavesdropperTable& t, std::uint64_t message, std::size_t space) {
  json counts = json::object();
  for (const auto& [m, c] : t.counts) counts[std::to_string(m)] = c;
  return json{{"message", message},
              {"total_keys", t.total_keys},
              {"ambiguous_keys", t.ambiguous_keys},
              {"counts", counts},
              {"uniform", t.uniform(space)}};
}

inline json analyze_one(const WalkConfig& config, std::size_t k, std::uint64_t t, bool brute_force,
                        std::uint64_t seed) {
  json j = config_to_json(config);
  j["k"] = k;
  j["t"] = t;
  const json report = report_to_json(holevo_report(config, k, t));
  for (const auto& [key, value] : report.items()) j[key] = value;
  if (brute_force) {
    const SecretKey sk = sample_secret_key(config, seed);
    std::mt19937_64 gen(seed + 2);
    const std::uint64_t m =
        std::uniform_int_distribution<std::uint64_t>(0, config.message_space() - 1)(gen);
    const QuantumState cipher = encrypt(generate_public_key(sk, config), Message{m});
    j["eavesdropper"] = eavesdropper_to_json(exhaustive_eavesdropper(cipher, config), m,
                                             config.message_space());
  }
  return j;
}

/// Configurations swept by `analyze --grid`.
inline std::vector<WalkConfig> analysis_grid() {
  std::vector<WalkConfig> grid;
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::size_t d : {1, 2, 4}) {
      for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{1, 1}, {1, 2}, {2, 5}}) {
        grid.push_back(WalkConfig{n, std::size_t{1} << n, d, lo, hi});
      }
    }
  }
  return grid;
}

inline void cmd_analyze(const ConfigFlags& flags, std::optional<std::size_t> k, std::optional<std::uint64_t> t,
                        bool brute_force, bool grid, std::uint64_t seed, Streams& io) {
  if (grid) {
    for (const WalkConfig& c : analysis_grid()) {
      io.out << analyze_one(c, k.value_or(1) <= c.d ? k.value_or(1) : 1, t.value_or(c.t_min), brute_force,
                            seed)
                    .dump()
             << "\n";
    }
    return;
  }
  const WalkConfig config = flags.resolve();
  io.out << analyze_one(config, k.value_or(1), t.value_or(config.t_min), brute_force, seed).dump(2) << "\n";
}

inline std::string summarize(const QuantumState& s) {
  std::string out;
  const auto probs = s.position_probabilities();
  std::size_t shown = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 1e-12) continue;
    if (shown == 8) {
      out += " ...";
      break;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%zu:%.4f", shown ? " " : "", i, probs[i]);
    out += buf;
    ++shown;
  }
  return "N=" + std::to_string(s.n_positions()) + " support=" + std::to_string(s.support_size()) +
         " P(pos)={" + out + "}";
}

inline void cmd_demo(const WalkConfig& config, std::uint64_t message, std::uint64_t seed, Streams& io) {
  const Transcript tr = roundtrip(config, Message{message}, seed);
  io.out << "config:    " << config_to_json(config).dump() << "\n"
         << "secret:    " << secret_key_to_json(tr.secret_key, config).dump() << "\n"
         << "public:    " << summarize(tr.public_key.state) << "\n"
         << "cipher:    " << summarize(tr.cipher) << "\n"
         << "unwound:   " << summarize(tr.pre_measurement) << "\n"
         << "measured:  " << tr.decrypted.measured_position << "\n"
         << "sent:      " << message << "\n"
         << "recovered: " << tr.decrypted.message.value << "\n";
}

/// Runs the CLI on `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Quantum-walk public-key encryption on the N-cycle"};
  app.require_subcommand(1);
  std::uint64_t seed = kDefaultSeed;
  int verbosity = 0;
  app.add_option("--seed", seed, "RNG seed (default 0)");
  app.add_flag("-v,--verbose", verbosity, "more output on stderr");

  ConfigFlags keygen_flags;
  std::string keygen_out;
  auto* keygen = app.add_subcommand("keygen", "sample a secret key and write the public-key state");
  keygen_flags.attach(*keygen);
  keygen->add_option("--seed", seed, "RNG seed (default 0)");
  keygen->add_option("--out", keygen_out, "output base path")->required();

  std::string pk_path;
  std::string cipher_out;
  std::uint64_t message = 0;
  auto* enc = app.add_subcommand("encrypt", "translate the public-key state by the message");
  enc->add_option("--public-key", pk_path, "public-key QWS1 file (sidecar at <path>.json)")->required();
  enc->add_option("--message", message, "message in [0, 2^n)")->required();
  enc->add_option("--out", cipher_out, "cipher QWS1 output path")->required();
  enc->add_option("--seed", seed, "unused; accepted for uniformity");

  std::string cipher_path;
  std::string sk_path;
  auto* dec = app.add_subcommand("decrypt", "unwind the walk, measure, print the message");
  dec->add_option("--cipher", cipher_path, "cipher QWS1 file")->required();
  dec->add_option("--secret-key", sk_path, "secret-key JSON file")->required();
  dec->add_option("--seed", seed, "measurement seed (default 0)");

  ConfigFlags analyze_flags;
  std::optional<std::size_t> fixed_k;
  std::optional<std::uint64_t> fixed_t;
  bool brute_force = false;
  bool grid = false;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "entropy / Holevo report for a configuration");
  analyze_flags.attach(*analyze);
  analyze->add_option("--k", fixed_k, "walk index known to the eavesdropper (default 1)");
  analyze->add_option("--t", fixed_t, "step count known to the eavesdropper (default t_min)");
  analyze->add_flag("--brute-force", brute_force, "decode a sampled honest cipher under every key");
  analyze->add_flag("--grid", grid, "sweep the built-in grid, one JSON object per line");
  analyze->add_option("--seed", seed, "seed for the brute-force cipher (default 0)");
  analyze->add_option("--out", analyze_out, "write the report here instead of stdout");

  ConfigFlags demo_flags;
  std::uint64_t demo_message = 0;
  auto* demo = app.add_subcommand("demo", "run one honest protocol execution and print the transcript");
  demo_flags.attach(*demo);
  demo->add_option("--message", demo_message, "message in [0, 2^n)");
  demo->add_option("--seed", seed, "seed (default 0)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Streams io{out, err, verbosity};
  try {
    if (*keygen) {
      cmd_keygen(keygen_flags.resolve(), seed, keygen_out, io);
    } else if (*enc) {
      cmd_encrypt(pk_path, message, cipher_out, io);
    } else if (*dec) {
      cmd_decrypt(cipher_path, sk_path, seed, io);
    } else if (*analyze) {
      if (analyze_out.empty()) {
        cmd_analyze(analyze_flags, fixed_k, fixed_t, brute_force, grid, seed, io);
      } else {
        std::ostringstream buffer;
        Streams file_io{buffer, err, verbosity};
        cmd_analyze(analyze_flags, fixed_k, fixed_t, brute_force, grid, seed, file_io);
        write_text_file(analyze_out, buffer.str());
      }
    } else if (*demo) {
      cmd_demo(demo_flags.resolve(), demo_message, seed, io);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  return kExitOk;
}

}  // namespace qwpk::cli
