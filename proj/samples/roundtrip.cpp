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

// Alice publishes a walk state, Bob translates it by his message, Alice unwinds
// the walk and reads the message off the walker's position.

#include <cstdio>

#include "qwpk/qwpk.hpp"

int main() {
  const qwpk::WalkConfig config = qwpk::WalkConfig::with_defaults(4);  // N = 16, d = 16, T = {4..16}

  const qwpk::SecretKey sk = qwpk::sample_secret_key(config, 2026);
  const qwpk::PublicKey pk = qwpk::generate_public_key(sk, config);

  const qwpk::Message sent{11};
  const qwpk::QuantumState cipher = qwpk::encrypt(pk, sent);

  const qwpk::DecryptResult got = qwpk::decrypt(cipher, sk, config, /*seed=*/1);
  std::printf("k=%zu t=%llu l=%zu s=%c\n", sk.k, static_cast<unsigned long long>(sk.t), sk.l,
              qwpk::coin_label(sk.s));
  std::printf("sent %llu, measured position %zu, recovered %llu\n",
              static_cast<unsigned long long>(sent.value), got.measured_position,
              static_cast<unsigned long long>(got.message.value));

  const auto report = qwpk::holevo_report(config, sk.k, sk.t);
  std::printf("S(rho_PK) = %.6f bits, H(p_SK) = %.6f bits, gap = %.6f bits\n",
              report.von_neumann_entropy_bits, report.shannon_entropy_bits, report.holevo_gap_bits);
  return got.message == sent ? 0 : 1;
}
