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

// Public-key encryption with coined quantum walks on the N-cycle.
//
//   keygen:  |psi_PK> = U_k^t |l>|s>            secret (k, t, l, s)
//   encrypt: |psi(m)> = (T_m (x) I_c)|psi_PK>    public key + message m < 2^n
//   decrypt: measure position of U_k^{-t}|psi(m)>, giving m' = l + m mod N;
//            the message is m' - l mod N.
//
// Decryption is exact because every U_k^t commutes with every translation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "qwpk/errors.hpp"
#include "qwpk/quantum_state.hpp"
#include "qwpk/walk.hpp"

namespace qwpk {

/// Public parameters: message width n, circle size N >= 2^n, coin family size d,
/// and the step set T = {t_min, ..., t_max}.
struct WalkConfig {
  unsigned n = 0;
  std::size_t N = 2;
  std::size_t d = 1;
  std::uint64_t t_min = 1;
  std::uint64_t t_max = 1;

  static constexpr unsigned kMaxMessageBits = 30;

  /// N = 2^n, d = 2^n, T = {n, ..., n^2}. Requires n >= 1.
  static WalkConfig with_defaults(unsigned n) {
    if (n < 1 || n > kMaxMessageBits) throw ValidationError("default config needs 1 <= n <= 30");
    const std::size_t size = std::size_t{1} << n;
    return WalkConfig{n, size, size, n, static_cast<std::uint64_t>(n) * n};
  }

  std::size_t message_space() const { return std::size_t{1} << n; }
  std::uint64_t step_count() const { return t_max - t_min + 1; }

  void validate() const {
    if (n > kMaxMessageBits) throw ValidationError("n must be <= 30");
    if (N < 2) throw ValidationError("N must be >= 2");
    if (N < message_space()) {
      throw ValidationError("N must be >= 2^n (N=" + std::to_string(N) + ", n=" + std::to_string(n) + ")");
    }
    if (d < 1) throw ValidationError("d must be >= 1");
    if (t_min < 1) throw ValidationError("t_min must be >= 1");
    if (t_min > t_max) throw ValidationError("t_min must not exceed t_max");
  }

  bool operator==(const WalkConfig&) const = default;
};

/// Alice's secret: walk index k, step count t, initial position l, initial coin s.
/// Decryption only needs (k, t, l); s is kept for checking the final coin state.
struct SecretKey {
  std::size_t k = 1;
  std::uint64_t t = 1;
  std::size_t l = 0;
  Coin s = Coin::R;

  void validate(const WalkConfig& config) const {
    if (k < 1 || k > config.d) throw ValidationError("secret key k outside [1, d]");
    if (t < config.t_min || t > config.t_max) throw ValidationError("secret key t outside T");
    if (l >= config.message_space()) throw ValidationError("secret key l outside [0, 2^n)");
  }

  Unitary2 coin(const WalkConfig& config) const { return build_coin(k, config.d); }

  bool operator==(const SecretKey&) const = default;
};

struct Message {
  std::uint64_t value = 0;

  auto operator<=>(const Message&) const = default;
};

struct PublicKey {
  WalkConfig config;
  QuantumState state;
};

/// Independent uniform draws of k, t, l, s from a generator seeded with `seed`.
inline SecretKey sample_secret_key(const WalkConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> pick_k(1, config.d);
  std::uniform_int_distribution<std::uint64_t> pick_t(config.t_min, config.t_max);
  std::uniform_int_distribution<std::size_t> pick_l(0, config.message_space() - 1);
  std::uniform_int_distribution<int> pick_s(0, 1);
  SecretKey sk;
  sk.k = pick_k(gen);
  sk.t = pick_t(gen);
  sk.l = pick_l(gen);
  sk.s = pick_s(gen) == 0 ? Coin::R : Coin::L;
  return sk;
}

inline PublicKey generate_public_key(const SecretKey& sk, const WalkConfig& config) {
  config.validate();
  sk.validate(config);
  const auto initial = QuantumState::basis(config.N, sk.l, sk.s);
  return PublicKey{config, walk_evolve(initial, sk.coin(config), sk.t)};
}

inline QuantumState encrypt(const PublicKey& pk, Message msg) {
  if (pk.state.n_positions() != pk.config.N) {
    throw DimensionMismatch("public-key state has " + std::to_string(pk.state.n_positions()) +
                            " positions but config says N=" + std::to_string(pk.config.N));
  }
  if (msg.value >= pk.config.message_space()) {
    throw ValidationError("message " + std::to_string(msg.value) + " outside [0, 2^" +
                          std::to_string(pk.config.n) + ")");
  }
  return apply_translation(pk.state, static_cast<std::size_t>(msg.value));
}

inline constexpr double kEigenstateTolerance = 1e-9;

struct DecryptResult {
  Message message;
  std::size_t measured_position = 0;
  /// Largest position probability before measurement; 1 for honest ciphers.
  double max_position_probability = 0.0;
  /// False when the pre-measurement state was not a position eigenstate, i.e.
  /// the cipher was tampered with or the key does not match.
  bool eigenstate = false;
};

/// Pre-measurement state U_k^{-t}|cipher>.
inline QuantumState unwind_cipher(const QuantumState& cipher, const SecretKey& sk,
                                  const WalkConfig& config) {
  config.validate();
  sk.validate(config);
  if (cipher.n_positions() != config.N) {
    throw DimensionMismatch("cipher has " + std::to_string(cipher.n_positions()) +
                            " positions but config says N=" + std::to_string(config.N));
  }
  return walk_evolve_inverse(cipher, sk.coin(config), sk.t);
}

inline DecryptResult decrypt(const QuantumState& cipher, const SecretKey& sk, const WalkConfig& config,
                             std::uint64_t seed) {
  const QuantumState unwound = unwind_cipher(cipher, sk, config);
  double largest = 0.0;
  for (double p : unwound.position_probabilities()) largest = std::max(largest, p);

  const auto measured = measure_position(unwound, seed);
  const std::size_t N = config.N;
  DecryptResult result;
  result.measured_position = measured.outcome;
  result.message = Message{(measured.outcome + N - sk.l % N) % N};
  result.max_position_probability = largest;
  result.eigenstate = largest >= 1.0 - kEigenstateTolerance;
  return result;
}

struct Transcript {
  SecretKey secret_key;
  PublicKey public_key;
  QuantumState cipher;
  QuantumState pre_measurement;
  DecryptResult decrypted;
};

/// Full honest run: key sampled from `seed`, measurement sampled from `seed + 1`.
inline Transcript roundtrip(const WalkConfig& config, Message msg, std::uint64_t seed) {
  const SecretKey sk = sample_secret_key(config, seed);
  PublicKey pk = generate_public_key(sk, config);
  QuantumState cipher = encrypt(pk, msg);
  QuantumState unwound = unwind_cipher(cipher, sk, config);
  const DecryptResult res = decrypt(cipher, sk, config, seed + 1);
  return Transcript{sk, std::move(pk), std::move(cipher), std::move(unwound), res};
}

}  // namespace qwpk
