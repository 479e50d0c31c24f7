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

// Discrete-time coined walk on the N-cycle. One step is S (I_p (x) C): the coin
// mixes the (R, L) pair at every site, then R amplitude hops to i+1 and L
// amplitude hops to i-1, both modulo N.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qwpk/errors.hpp"
#include "qwpk/quantum_state.hpp"

namespace qwpk {

/// [[e^{i xi} cos theta,  e^{i zeta} sin theta], [-e^{-i zeta} sin theta, e^{-i xi} cos theta]]
inline Unitary2 build_coin(const CoinParams& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return Unitary2{{std::polar(1.0, p.xi) * c, std::polar(1.0, p.zeta) * s,
                   -std::polar(1.0, -p.zeta) * s, std::polar(1.0, -p.xi) * c}};
}

inline Unitary2 build_coin(std::size_t k, std::size_t d) {
  return build_coin(CoinParams::from_index(k, d));
}

namespace detail {

using Buffer = std::vector<Amplitude>;

inline void coin_in_place(Buffer& a, const Unitary2& u) {
  for (std::size_t i = 0; i < a.size(); i += 2) {
    const Amplitude r = a[i];
    const Amplitude l = a[i + 1];
    a[i] = u.m[0] * r + u.m[1] * l;
    a[i + 1] = u.m[2] * r + u.m[3] * l;
  }
}

// Coin then shift, written into `out`.
inline void forward_step(const Buffer& in, Buffer& out, const Unitary2& u) {
  const std::size_t n = in.size() / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const Amplitude r = in[2 * i];
    const Amplitude l = in[2 * i + 1];
    const std::size_t next = i + 1 == n ? 0 : i + 1;
    const std::size_t prev = i == 0 ? n - 1 : i - 1;
    out[2 * next] = u.m[0] * r + u.m[1] * l;
    out[2 * prev + 1] = u.m[2] * r + u.m[3] * l;
  }
}

// Inverse shift then adjoint coin, written into `out`.
inline void inverse_step(const Buffer& in, Buffer& out, const Unitary2& u_dag) {
  const std::size_t n = in.size() / 2;
  for (std::size_t i = 0; i < n; ++i) {
    // After S^-1, site i holds R from i+1 and L from i-1.
    const std::size_t next = i + 1 == n ? 0 : i + 1;
    const std::size_t prev = i == 0 ? n - 1 : i - 1;
    const Amplitude r = in[2 * next];
    const Amplitude l = in[2 * prev + 1];
    out[2 * i] = u_dag.m[0] * r + u_dag.m[1] * l;
    out[2 * i + 1] = u_dag.m[2] * r + u_dag.m[3] * l;
  }
}

inline Buffer copy_amplitudes(const QuantumState& s) {
  const auto a = s.amplitudes();
  return Buffer(a.begin(), a.end());
}

}  // namespace detail

/// (I_p (x) C)|psi>
inline QuantumState apply_coin(const QuantumState& state, const Unitary2& coin) {
  auto a = detail::copy_amplitudes(state);
  detail::coin_in_place(a, coin);
  return detail::StateBuilder::make(std::move(a));
}

/// Conditional shift: (i,R) -> (i+1 mod N, R), (i,L) -> (i-1 mod N, L).
inline QuantumState apply_shift(const QuantumState& state) {
  const auto in = state.amplitudes();
  const std::size_t n = state.n_positions();
  detail::Buffer out(in.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * ((i + 1) % n)] = in[2 * i];
    out[2 * ((i + n - 1) % n) + 1] = in[2 * i + 1];
  }
  return detail::StateBuilder::make(std::move(out));
}

/// One walk step S (I_p (x) C).
inline QuantumState walk_step(const QuantumState& state, const Unitary2& coin) {
  const auto in = detail::copy_amplitudes(state);
  detail::Buffer out(in.size());
  detail::forward_step(in, out, coin);
  return detail::StateBuilder::make(std::move(out));
}

/// U^t |psi>, O(N) per step with two ping-pong buffers.
inline QuantumState walk_evolve(const QuantumState& state, const Unitary2& coin, std::uint64_t t) {
  auto cur = detail::copy_amplitudes(state);
  detail::Buffer next(cur.size());
  for (std::uint64_t step = 0; step < t; ++step) {
    detail::forward_step(cur, next, coin);
    cur.swap(next);
  }
  return detail::StateBuilder::make(std::move(cur));
}

/// U^{-t} |psi>: each step undoes the shift and then applies the adjoint coin.
inline QuantumState walk_evolve_inverse(const QuantumState& state, const Unitary2& coin,
                                        std::uint64_t t) {
  const Unitary2 dag = coin.adjoint();
  auto cur = detail::copy_amplitudes(state);
  detail::Buffer next(cur.size());
  for (std::uint64_t step = 0; step < t; ++step) {
    detail::inverse_step(cur, next, dag);
    cur.swap(next);
  }
  return detail::StateBuilder::make(std::move(cur));
}

/// (T_m (x) I_c)|psi>: relabels position i as i+m mod N. A single pass over the
/// amplitudes regardless of m.
inline QuantumState apply_translation(const QuantumState& state, std::size_t m) {
  const std::size_t n = state.n_positions();
  if (m >= n) {
    throw ValidationError("translation offset must satisfy 0 <= m < N; got m=" + std::to_string(m) +
                          ", N=" + std::to_string(n));
  }
  const auto in = state.amplitudes();
  detail::Buffer out(in.size());
  // Two contiguous blocks: sites [0, N-m) move up by m, sites [N-m, N) wrap to the front.
  const std::size_t split = 2 * (n - m);
  std::copy(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(split),
            out.begin() + static_cast<std::ptrdiff_t>(2 * m));
  std::copy(in.begin() + static_cast<std::ptrdiff_t>(split), in.end(), out.begin());
  return detail::StateBuilder::make(std::move(out));
}

struct PositionMeasurement {
  std::size_t outcome = 0;
  double probability = 0.0;
  QuantumState collapsed;
};

/// Projective measurement of sum_i |i><i| (x) I_c, sampled from a generator
/// seeded with `seed`. Throws NumericalError when every position probability is
/// below 1e-12.
inline PositionMeasurement measure_position(const QuantumState& state, std::uint64_t seed) {
  const auto probs = state.position_probabilities();
  double total = 0.0;
  double largest = 0.0;
  for (double p : probs) {
    total += p;
    largest = std::max(largest, p);
  }
  if (largest < 1e-12) {
    throw NumericalError("measurement on a degenerate state: all position probabilities < 1e-12");
  }

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uniform(0.0, total);
  const double u = uniform(gen);

  std::size_t outcome = probs.size();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (probs[i] > 0.0 && u < cumulative) {
      outcome = i;
      break;
    }
  }
  if (outcome == probs.size()) {
    // u landed on the rounding slack past the last bin.
    for (std::size_t i = probs.size(); i-- > 0;) {
      if (probs[i] > 0.0) {
        outcome = i;
        break;
      }
    }
  }

  const double p = probs[outcome];
  const double scale = 1.0 / std::sqrt(p);
  detail::Buffer collapsed(state.dimension());
  collapsed[2 * outcome] = state.amplitudes()[2 * outcome] * scale;
  collapsed[2 * outcome + 1] = state.amplitudes()[2 * outcome + 1] * scale;
  return PositionMeasurement{outcome, p / total, detail::StateBuilder::make(std::move(collapsed))};
}

}  // namespace qwpk
