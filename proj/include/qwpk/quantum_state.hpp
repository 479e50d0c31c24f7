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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qwpk/errors.hpp"

namespace qwpk {

using Amplitude = std::complex<double>;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-12;

/// Coin basis label. The numeric value is the coin offset in the flat index.
enum class Coin : std::uint8_t { R = 0, L = 1 };

inline constexpr char coin_label(Coin c) { return c == Coin::R ? 'R' : 'L'; }

/// Flat amplitude index of |position>|coin>.
inline constexpr std::size_t flat_index(std::size_t position, Coin coin) {
  return 2 * position + static_cast<std::size_t>(coin);
}

class QuantumState;

namespace detail {
// Builds states without the unit-norm check. Used by the unitary kernels,
// whose outputs are normalized by construction, and by tests that need
// deliberately corrupted states.
struct StateBuilder {
  static QuantumState make(std::vector<Amplitude> amplitudes);
};
}  // namespace detail

/// Pure state of a walker on the N-cycle: 2N amplitudes over position (x) coin,
/// flat index 2*i + c with c = 0 for |R> and c = 1 for |L>.
class QuantumState {
 public:
  /// |position>|coin> on a cycle of `n_positions` sites.
  static QuantumState basis(std::size_t n_positions, std::size_t position, Coin coin) {
    if (n_positions < 2) throw ValidationError("cycle needs at least 2 positions");
    if (position >= n_positions) throw ValidationError("position out of range");
    std::vector<Amplitude> amps(2 * n_positions);
    amps[flat_index(position, coin)] = 1.0;
    return QuantumState(std::move(amps));
  }

  /// Validated construction: even length >= 4 and unit norm within 1e-10.
  static QuantumState from_amplitudes(std::vector<Amplitude> amplitudes) {
    if (amplitudes.size() < 4 || amplitudes.size() % 2 != 0) {
      throw ValidationError("amplitude vector must have even length 2N with N >= 2, got " +
                            std::to_string(amplitudes.size()));
    }
    QuantumState s(std::move(amplitudes));
    if (std::abs(s.norm() - 1.0) > kStateTolerance) {
      throw NumericalError("state is not normalized (norm " + std::to_string(s.norm()) + ")");
    }
    return s;
  }

  std::size_t n_positions() const { return amps_.size() / 2; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }

  Amplitude amplitude(std::size_t position, Coin coin) const {
    return amps_.at(flat_index(position, coin));
  }

  double norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
  }

  /// |amp(i,R)|^2 + |amp(i,L)|^2
  double position_probability(std::size_t position) const {
    return std::norm(amps_.at(2 * position)) + std::norm(amps_.at(2 * position + 1));
  }

  std::vector<double> position_probabilities() const {
    std::vector<double> p(n_positions());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = position_probability(i);
    return p;
  }

  /// Number of amplitudes with magnitude above `threshold`.
  std::size_t support_size(double threshold = 1e-12) const {
    std::size_t count = 0;
    for (const auto& a : amps_) count += std::abs(a) > threshold ? 1 : 0;
    return count;
  }

  bool operator==(const QuantumState&) const = default;

 private:
  friend struct detail::StateBuilder;
  explicit QuantumState(std::vector<Amplitude> amplitudes) : amps_(std::move(amplitudes)) {}

  std::vector<Amplitude> amps_;
};

inline QuantumState detail::StateBuilder::make(std::vector<Amplitude> amplitudes) {
  return QuantumState(std::move(amplitudes));
}

/// 2x2 matrix in the ordered basis (|R>, |L>), row-major.
struct Unitary2 {
  std::array<Amplitude, 4> m{};

  static constexpr Unitary2 identity() { return Unitary2{{1.0, 0.0, 0.0, 1.0}}; }

  Amplitude operator()(std::size_t row, std::size_t col) const { return m[2 * row + col]; }

  Unitary2 adjoint() const {
    return Unitary2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }

  Unitary2 operator*(const Unitary2& o) const {
    return Unitary2{{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                     m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
  }

  /// Largest entrywise deviation of U^dagger U from the identity.
  double unitarity_error() const {
    const Unitary2 p = adjoint() * *this;
    const Unitary2 id = identity();
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(p.m[i] - id.m[i]));
    return worst;
  }

  bool is_unitary(double tol = kUnitaryTolerance) const { return unitarity_error() <= tol; }
};

/// Angles of the general U(2) coin.
struct CoinParams {
  double theta = 0.0;
  double xi = 0.0;
  double zeta = 0.0;

  /// Walk family member k of d: theta = xi = zeta = 2*pi*k/d, 1 <= k <= d.
  /// The angle is reduced as 2*pi*(k mod d)/d so k = d gives the exact identity.
  static CoinParams from_index(std::size_t k, std::size_t d) {
    if (d == 0) throw ValidationError("coin divisor d must be >= 1");
    if (k < 1 || k > d) {
      throw ValidationError("coin index k must lie in [1, d]; got k=" + std::to_string(k) +
                            ", d=" + std::to_string(d));
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d);
    return CoinParams{angle, angle, angle};
  }
};

/// |<a|b>|^2
inline double state_fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("fidelity of states with " + std::to_string(a.n_positions()) + " and " +
                            std::to_string(b.n_positions()) + " positions");
  }
  Amplitude overlap = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * y[i];
  return std::min(1.0, std::norm(overlap));
}

/// Euclidean distance between amplitude vectors (phase-sensitive).
inline double state_distance(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("state dimensions differ");
  double acc = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(x[i] - y[i]);
  return std::sqrt(acc);
}

}  // namespace qwpk
