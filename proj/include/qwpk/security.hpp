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

// Eavesdropper-side analysis at desk scale: ensemble density matrices built by
// explicit summation, their von Neumann entropy, the Shannon entropy of the
// key distribution, the Holevo gap between the two, and a brute-force decoder
// that counts how many secret keys map a given cipher to each message.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qwpk/errors.hpp"
#include "qwpk/protocol.hpp"
#include "qwpk/quantum_state.hpp"
#include "qwpk/walk.hpp"

namespace qwpk {

/// Largest N for which 2N x 2N density matrices are built.
inline constexpr std::size_t kMaxDensePositions = 64;

inline constexpr double kDensityTolerance = 1e-12;
inline constexpr double kEigenvalueCutoff = 1e-14;
inline constexpr double kNegativeEigenvalueLimit = 1e-10;

using ComplexMatrix = Eigen::MatrixXcd;

/// Hermitian, unit-trace, positive semidefinite 2N x 2N matrix.
class DensityMatrix {
 public:
  /// Checks the invariants (Hermitian and unit trace within 1e-12, eigenvalues
  /// >= -1e-12) and throws NumericalError on violation.
  static DensityMatrix from_matrix(ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 4 || m.rows() % 2 != 0) {
      throw DimensionMismatch("density matrix must be square with even dimension >= 4");
    }
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kDensityTolerance) {
      throw NumericalError("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double trace_err = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    if (trace_err > kDensityTolerance) {
      throw NumericalError("density matrix trace differs from 1 by " + std::to_string(trace_err));
    }
    DensityMatrix rho(std::move(m));
    const double lowest = rho.eigenvalues().minCoeff();
    if (lowest < -kDensityTolerance) {
      throw NumericalError("density matrix has negative eigenvalue " + std::to_string(lowest));
    }
    return rho;
  }

  /// |psi><psi|
  static DensityMatrix pure(const QuantumState& psi) {
    const auto a = psi.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> v(a.data(), static_cast<Eigen::Index>(a.size()));
    return from_matrix(v * v.adjoint());
  }

  /// I / dim
  static DensityMatrix maximally_mixed(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return from_matrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
  }

  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
    return solver.eigenvalues();
  }

  /// max_ij |rho_ij - delta_ij / dim|
  double max_deviation_from_maximally_mixed() const {
    const auto n = m_.rows();
    const ComplexMatrix target = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
    return (m_ - target).cwiseAbs().maxCoeff();
  }

  double max_deviation(const DensityMatrix& other) const {
    if (other.dimension() != dimension()) throw DimensionMismatch("density matrix dimensions differ");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

namespace detail {

inline void require_dense(const WalkConfig& config) {
  config.validate();
  if (config.N > kMaxDensePositions) {
    throw ValidationError("N=" + std::to_string(config.N) + " exceeds the dense analysis limit of " +
                          std::to_string(kMaxDensePositions) + " positions; use n <= 6");
  }
}

// (1/2^{n+1}) sum_{l,s} |phi_ls><phi_ls| with phi_ls = T_m U^t |l>|s>, summed in
// fixed (l, s) order.
inline ComplexMatrix initial_state_ensemble(const WalkConfig& config, std::size_t k, std::uint64_t t,
                                            std::size_t m) {
  const Unitary2 coin = build_coin(k, config.d);
  const auto dim = static_cast<Eigen::Index>(2 * config.N);
  const double weight = 1.0 / static_cast<double>(2 * config.message_space());
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (std::size_t l = 0; l < config.message_space(); ++l) {
    for (Coin s : {Coin::R, Coin::L}) {
      const auto psi = apply_translation(walk_evolve(QuantumState::basis(config.N, l, s), coin, t), m);
      const auto a = psi.amplitudes();
      const Eigen::Map<const Eigen::VectorXcd> v(a.data(), dim);
      acc.noalias() += weight * (v * v.adjoint());
    }
  }
  return acc;
}

}  // namespace detail

/// Eve's view of the public key when she knows the walk k and the step count t
/// but not the initial state: the uniform mixture over all 2^{n+1} (l, s).
/// `fixed_t` may lie outside T (t = 0 gives the mixture of initial states).
inline DensityMatrix public_key_density(const WalkConfig& config, std::size_t fixed_k,
                                        std::uint64_t fixed_t) {
  detail::require_dense(config);
  return DensityMatrix::from_matrix(detail::initial_state_ensemble(config, fixed_k, fixed_t, 0));
}

/// Mixture over the entire key space (k, t, l, s) with uniform weights.
inline DensityMatrix public_key_density_full_key_space(const WalkConfig& config) {
  detail::require_dense(config);
  const auto dim = static_cast<Eigen::Index>(2 * config.N);
  const double weight = 1.0 / (static_cast<double>(config.d) * static_cast<double>(config.step_count()));
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 1; k <= config.d; ++k) {
    for (std::uint64_t t = config.t_min; t <= config.t_max; ++t) {
      acc.noalias() += weight * detail::initial_state_ensemble(config, k, t, 0);
    }
  }
  return DensityMatrix::from_matrix(std::move(acc));
}

/// Eve's view of the cipher for message m with (k, t) known.
inline DensityMatrix cipher_density(const WalkConfig& config, std::size_t m, std::size_t fixed_k,
                                    std::uint64_t fixed_t) {
  detail::require_dense(config);
  if (m >= config.message_space()) throw ValidationError("message outside [0, 2^n)");
  return DensityMatrix::from_matrix(detail::initial_state_ensemble(config, fixed_k, fixed_t, m));
}

/// -sum lambda log2 lambda over the spectrum, in bits. Eigenvalues <= 1e-14
/// contribute 0; an eigenvalue below -1e-10 is rejected.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd lambda = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double v = lambda[i];
    if (v < -kNegativeEigenvalueLimit) {
      throw NumericalError("negative eigenvalue " + std::to_string(v) + " in entropy computation");
    }
    if (v > kEigenvalueCutoff) s -= v * std::log2(v);
  }
  return s;
}

/// Marginal and joint probabilities of the four independent key draws.
struct KeyDistribution {
  std::vector<double> p_k;
  std::vector<double> p_t;
  std::vector<double> p_ls;

  static KeyDistribution uniform(const WalkConfig& config) {
    config.validate();
    const auto steps = static_cast<std::size_t>(config.step_count());
    const std::size_t states = 2 * config.message_space();
    return KeyDistribution{std::vector<double>(config.d, 1.0 / static_cast<double>(config.d)),
                           std::vector<double>(steps, 1.0 / static_cast<double>(steps)),
                           std::vector<double>(states, 1.0 / static_cast<double>(states))};
  }

  /// p_SK = p_k p_t p_ls
  double p_sk(std::size_t k_index, std::size_t t_index, std::size_t ls_index) const {
    return p_k.at(k_index) * p_t.at(t_index) * p_ls.at(ls_index);
  }

  /// -sum p log2 p over the product distribution, enumerated term by term.
  double shannon_entropy_bits() const {
    double h = 0.0;
    for (std::size_t a = 0; a < p_k.size(); ++a) {
      for (std::size_t b = 0; b < p_t.size(); ++b) {
        for (std::size_t c = 0; c < p_ls.size(); ++c) {
          const double p = p_sk(a, b, c);
          if (p > 0.0) h -= p * std::log2(p);
        }
      }
    }
    return h;
  }
};

/// H(p_SK) = log2(d |T|) + n + 1 for the uniform key distribution.
inline double shannon_entropy_secret_key(const WalkConfig& config) {
  config.validate();
  return std::log2(static_cast<double>(config.d) * static_cast<double>(config.step_count())) +
         static_cast<double>(config.n + 1);
}

struct SecurityReport {
  double von_neumann_entropy_bits = 0.0;
  double shannon_entropy_bits = 0.0;
  /// Upper bound on I(SK, E); equals the von Neumann entropy of Eve's state.
  double holevo_bound_bits = 0.0;
  double holevo_gap_bits = 0.0;
  /// d |T| = 2^gap: keys left indistinguishable after the maximal extractable information.
  std::uint64_t consistent_key_count = 0;
};

/// Compares the information Eve can extract from the public key with the key's
/// entropy. Throws std::logic_error if S < H fails while d |T| > 1.
inline SecurityReport holevo_report(const WalkConfig& config, std::size_t fixed_k, std::uint64_t fixed_t) {
  SecurityReport r;
  r.von_neumann_entropy_bits = von_neumann_entropy(public_key_density(config, fixed_k, fixed_t));
  r.shannon_entropy_bits = shannon_entropy_secret_key(config);
  r.holevo_bound_bits = r.von_neumann_entropy_bits;
  r.holevo_gap_bits = r.shannon_entropy_bits - r.von_neumann_entropy_bits;
  r.consistent_key_count = static_cast<std::uint64_t>(config.d) * config.step_count();
  if (r.consistent_key_count > 1 && !(r.von_neumann_entropy_bits < r.shannon_entropy_bits)) {
    throw std::logic_error("Holevo ordering S(rho_PK) < H(p_SK) violated");
  }
  return r;
}

/// Largest parameters accepted by exhaustive_eavesdropper.
struct EavesdropperLimits {
  static constexpr std::size_t max_d = 4;
  static constexpr std::uint64_t max_steps = 4;
  static constexpr unsigned max_n = 4;
};

struct EavesdropperTable {
  /// message value -> number of candidate keys decoding the cipher to it
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total_keys = 0;
  std::uint64_t ambiguous_keys = 0;

  std::uint64_t consistent_keys() const {
    std::uint64_t sum = 0;
    for (const auto& [m, c] : counts) sum += c;
    return sum;
  }

  /// Every message in [0, message_space) is reached, all by the same number of keys.
  bool uniform(std::size_t message_space) const {
    if (counts.empty()) return false;
    const std::uint64_t first = counts.begin()->second;
    for (std::uint64_t m = 0; m < message_space; ++m) {
      const auto it = counts.find(m);
      if (it == counts.end() || it->second != first) return false;
    }
    for (const auto& [m, c] : counts) {
      if (c != first) return false;
    }
    return true;
  }
};

/// Decodes `cipher` under every candidate key (k, t, l, s) of `config` and
/// tallies the resulting messages. A candidate whose unwound state is not a
/// position eigenstate (max probability < 1 - 1e-9) is counted as ambiguous.
inline EavesdropperTable exhaustive_eavesdropper(const QuantumState& cipher, const WalkConfig& config) {
  config.validate();
  if (config.d > EavesdropperLimits::max_d || config.step_count() > EavesdropperLimits::max_steps ||
      config.n > EavesdropperLimits::max_n) {
    throw ValidationError("exhaustive eavesdropper needs d <= 4, |T| <= 4, n <= 4");
  }
  if (cipher.n_positions() != config.N) throw DimensionMismatch("cipher size does not match config N");

  const std::size_t N = config.N;
  const std::uint64_t per_walk = 2 * config.message_space();
  EavesdropperTable table;
  for (std::size_t k = 1; k <= config.d; ++k) {
    const Unitary2 coin = build_coin(k, config.d);
    for (std::uint64_t t = config.t_min; t <= config.t_max; ++t) {
      table.total_keys += per_walk;
      // The unwound state depends only on (k, t); l and s enter through m = p - l.
      const auto probs = walk_evolve_inverse(cipher, coin, t).position_probabilities();
      std::size_t peak = 0;
      for (std::size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[peak]) peak = i;
      }
      if (probs[peak] < 1.0 - kEigenstateTolerance) {
        table.ambiguous_keys += per_walk;
        continue;
      }
      for (std::size_t l = 0; l < config.message_space(); ++l) {
        table.counts[(peak + N - l) % N] += 2;  // both coin labels s
      }
    }
  }
  return table;
}

}  // namespace qwpk
