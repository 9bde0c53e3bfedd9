// Copyright 2026 The stratcomm Authors.
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

#ifndef STRATCOMM_TABLE1_HPP_
#define STRATCOMM_TABLE1_HPP_

// Three-word example: rows g0..g2 are encoder strategies, columns h0..h2
// decoder strategies, entries (encoder distortion, decoder distortion).
// alpha and beta are the semantic distances of the middle word to word 0
// as seen by the encoder and the decoder.
//
//          h0            h1               h2
//   g0   (0, 0)        (alpha, beta+1.2)  (7, 8)
//   g1   (alpha, beta) (0, 1.2)           (6, 7)
//   g2   (7, 7)        (6, 7.2)           (0, 1)

#include "stratcomm/equilibria.hpp"

namespace stratcomm {

inline Matrix table1_encoder_matrix(double alpha) {
  return {{0.0, alpha, 7.0}, {alpha, 0.0, 6.0}, {7.0, 6.0, 0.0}};
}

inline Matrix table1_decoder_matrix(double beta) {
  return {{0.0, beta + 1.2, 8.0}, {beta, 1.2, 7.0}, {7.0, 7.2, 1.0}};
}

inline ReducedGame table1_game(double alpha, double beta) {
  ReducedGame g;
  g.enc_distortion = table1_encoder_matrix(alpha);
  g.dec_distortion = table1_decoder_matrix(beta);
  g.enc_labels = {"g0", "g1", "g2"};
  g.dec_labels = {"h0", "h1", "h2"};
  return g;
}

}  // namespace stratcomm

#endif  // STRATCOMM_TABLE1_HPP_
