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

#include "stratcomm/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "stratcomm/random_models.hpp"
#include "stratcomm/table1.hpp"

using namespace stratcomm;

namespace {

const AlphabetSizes kBinary{2, 2, 2, 2, 2, 2};

// Largest gain either player gets from a pure deviation, by direct sums.
double best_deviation(const ReducedGame& g, const ConditionalKernel& x,
                      const ConditionalKernel& y) {
  auto value = [&](const Matrix& m, std::size_t i, std::size_t j) { return m[i][j]; };
  double enc = 0.0, dec = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      enc += x(0, i) * y(0, j) * value(g.enc_distortion, i, j);
      dec += x(0, i) * y(0, j) * value(g.dec_distortion, i, j);
    }
  double gain = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j) v += y(0, j) * g.enc_distortion[i][j];
    gain = std::max(gain, enc - v);
  }
  for (std::size_t j = 0; j < g.cols(); ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) v += x(0, i) * g.dec_distortion[i][j];
    gain = std::max(gain, dec - v);
  }
  return gain;
}

bool has_pure_profile(const std::vector<EquilibriumOutcome>& ne, std::size_t i, std::size_t j) {
  for (const auto& e : ne) {
    if (e.encoder(0, i) > 1 - 1e-12 && e.decoder(0, j) > 1 - 1e-12) return true;
  }
  return false;
}

// Scalar counterexample on a grid: encoder plays g, decoder h, both in
// {-1, -0.5, 0, 0.5, 1}; D_E = h (h - g), decoder indifferent.
ReducedGame scalar_grid_game() {
  const std::vector<double> pts = {-1, -0.5, 0, 0.5, 1};
  ReducedGame game;
  for (double g : pts) {
    std::vector<double> row;
    for (double h : pts) row.push_back(h * (h - g));
    game.enc_distortion.push_back(row);
    game.dec_distortion.push_back(std::vector<double>(pts.size(), 0.0));
    game.enc_labels.push_back("g=" + std::to_string(g));
    game.dec_labels.push_back("h=" + std::to_string(g));
  }
  return game;
}

}  // namespace

TEST_CASE("decoder best responses agree with exhaustive decoder search") {
  Rng rng(61);
  for (int t = 0; t < 40; ++t) {
    RandomModelOptions opt;
    opt.form = t % 2 ? DistortionForm::kFull : DistortionForm::kReduced;
    const auto m = random_chain_model(rng, opt);
    const auto& s = m.sizes;
    const auto g = t % 3 == 0 ? ConditionalKernel::deterministic(
                                    std::vector<std::size_t>(s.u, 0), s.x)
                              : random_kernel(rng, s.u, s.x);
    const auto br = decoder_best_responses(m, {g});
    const auto all = oracle::deterministic_kernels(s.contexts(), s.what);
    double lo = std::numeric_limits<double>::infinity();
    std::vector<double> dd;
    for (const auto& h : all) {
      dd.push_back(oracle::expected(m, g, h, Party::kDecoder));
      lo = std::min(lo, dd.back());
    }
    for (std::size_t k = 0; k < all.size(); ++k) {
      CHECK(br.contains({all[k]}) == (dd[k] <= lo + 1e-9));
    }
    double mass = 0.0;
    for (const auto& c : br.per_context) {
      CHECK_FALSE(c.members.empty());
      mass += c.probability;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("committed values match the exhaustive optimistic and pessimistic oracles") {
  Rng rng(67);
  for (int t = 0; t < 30; ++t) {
    const auto m = random_chain_model(rng);
    const auto& s = m.sizes;
    const auto form = bilinear_form(m);
    const auto all = oracle::deterministic_kernels(s.contexts(), s.what);
    // Deterministic encoders produce exact decoder ties when contexts collide.
    const auto g = t % 2 ? random_kernel(rng, s.u, s.x)
                         : ConditionalKernel::deterministic(std::vector<std::size_t>(s.u, t % s.x), s.x);
    const auto c = oracle::committed_values(m, g, all);
    const auto o = optimistic_value(form, g, 1e-9);
    const auto p = pessimistic_value(form, g, 1e-9);
    CHECK(o.enc_value == doctest::Approx(c.optimistic).epsilon(1e-12));
    CHECK(p.enc_value == doctest::Approx(c.pessimistic).epsilon(1e-12));
    CHECK(evaluate(form, g, o.decoder, Party::kEncoder) == doctest::Approx(o.enc_value).epsilon(1e-12));
    CHECK(evaluate(form, g, p.decoder, Party::kDecoder) == doctest::Approx(c.decoder_min).epsilon(1e-12));
  }
}

TEST_CASE("three-word game at alpha = beta = 1") {
  const auto game = table1_game(1.0, 1.0);
  const Matrix enc = {{0, 1, 7}, {1, 0, 6}, {7, 6, 0}};
  const Matrix dec = {{0, 2.2, 8}, {1, 1.2, 7}, {7, 7.2, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(game.enc_distortion[i][j] == enc[i][j]);
      CHECK(game.dec_distortion[i][j] == doctest::Approx(dec[i][j]).epsilon(1e-15));
    }

  SolverOptions pure;
  pure.commitment = Commitment::kPure;
  for (const auto& opt : {SolverOptions{}, pure}) {
    CHECK(solve_ose(game, opt).enc_value == doctest::Approx(0.0));
    CHECK(solve_rse(game, opt).enc_value == doctest::Approx(0.0));
  }
  const auto ne = solve_ne(game);
  CHECK(has_pure_profile(ne, 0, 0));
  CHECK(has_pure_profile(ne, 2, 2));
  for (const auto& e : ne) CHECK(best_deviation(game, e.encoder, e.decoder) <= 1e-9);
}

TEST_CASE("three-word game: robust commitment can lose to both optimistic and Nash") {
  const auto game = table1_game(-1.0, 1.2);
  SolverOptions pure;
  pure.commitment = Commitment::kPure;
  const auto ose = solve_ose(game, pure), rse = solve_rse(game, pure);
  const auto ne = solve_ne(game, pure);
  CHECK(ose.enc_value == doctest::Approx(-1.0));
  CHECK(rse.enc_value == doctest::Approx(0.0));
  double min_ne = std::numeric_limits<double>::infinity();
  for (const auto& e : ne) min_ne = std::min(min_ne, e.enc_value);
  CHECK(min_ne == doctest::Approx(-1.0));

  // With mixed commitment the robust value approaches -1 but never reaches it.
  const auto mixed = solve_rse(game);
  CHECK(mixed.enc_value < -0.99);
  CHECK(mixed.enc_value > -1.0);
  REQUIRE(mixed.diagnostics.infimum.has_value());
  CHECK(*mixed.diagnostics.infimum == doctest::Approx(-1.0));
  CHECK(mixed.diagnostics.attained == false);
  // The reported strategy really achieves the reported value.
  const auto cols = best_response_columns(game, mixed.encoder.values(), 1e-9);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j : cols) {
    std::vector<double> y(3, 0.0);
    y[j] = 1.0;
    worst = std::max(worst, game_value(game.enc_distortion, mixed.encoder.values(), y));
  }
  CHECK(worst == doctest::Approx(mixed.enc_value).epsilon(1e-9));
}

TEST_CASE("matching-pennies game has one fully mixed equilibrium") {
  ReducedGame game;
  game.enc_distortion = {{0, 1}, {1, 0}};
  game.dec_distortion = {{1, 0}, {0, 1}};
  game.enc_labels = {"a", "b"};
  game.dec_labels = {"c", "d"};
  const auto ne = solve_ne(game);
  REQUIRE(ne.size() == 1);
  CHECK(ne[0].encoder(0, 0) == doctest::Approx(0.5));
  CHECK(ne[0].decoder(0, 0) == doctest::Approx(0.5));
  CHECK(ne[0].enc_value == doctest::Approx(0.5));
  // Committing to 1/2 leaves the decoder indifferent, so the optimistic
  // leader gets its best column at 1/2 and the robust one is held at 1/2.
  CHECK(solve_ose(game).enc_value == doctest::Approx(0.5));
  CHECK(solve_rse(game).enc_value == doctest::Approx(0.5));
}

TEST_CASE("identical interests") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    auto game = random_game(rng, 2 + t % 4, 2 + (t / 4) % 4);
    game.dec_distortion = game.enc_distortion;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& row : game.enc_distortion)
      for (double v : row) lo = std::min(lo, v);
    CHECK(solve_ose(game).enc_value == doctest::Approx(lo).epsilon(1e-12));
    CHECK(solve_rse(game).enc_value == doctest::Approx(lo).epsilon(1e-9));
    const auto ne = solve_ne(game);
    double best_ne = std::numeric_limits<double>::infinity();
    for (const auto& e : ne) best_ne = std::min(best_ne, e.enc_value);
    CHECK(best_ne == doctest::Approx(lo).epsilon(1e-12));
  }
}

TEST_CASE("random bimatrix games: solver outputs are self-consistent") {
  Rng rng(73);
  for (int t = 0; t < 60; ++t) {
    const auto game = random_game(rng, 2 + t % 5, 2 + (t / 5) % 5,
                                  t % 2 ? DistortionRange::kSigned : DistortionRange::kUnit);
    const auto ose = solve_ose(game), rse = solve_rse(game);
    const auto ne = solve_ne(game);
    REQUIRE_FALSE(ne.empty());
    for (const auto& e : ne) {
      CHECK(best_deviation(game, e.encoder, e.decoder) <= 1e-9);
      CHECK(ose.enc_value <= e.enc_value + 1e-9);
    }
    CHECK(rse.enc_value >= ose.enc_value - 1e-9);
    // Pure commitment can only do worse.
    SolverOptions pure;
    pure.commitment = Commitment::kPure;
    CHECK(solve_ose(game, pure).enc_value >= ose.enc_value - 1e-9);
    const auto prse = solve_rse(game, pure);
    REQUIRE(rse.diagnostics.infimum.has_value());
    CHECK(prse.enc_value >= *rse.diagnostics.infimum - 1e-9);
  }
}

TEST_CASE("reduced bimatrix entries equal expected distortions of the underlying maps") {
  Rng rng(79);
  for (int t = 0; t < 10; ++t) {
    RandomModelOptions opt;
    opt.max_alphabet = 2;
    opt.form = DistortionForm::kFull;
    const auto m = random_chain_model(rng, opt);
    const auto& s = m.sizes;
    const auto game = reduce_to_bimatrix(m, false);
    REQUIRE(game.rows() == static_cast<std::size_t>(std::pow(s.x, s.u)));
    REQUIRE(game.cols() == static_cast<std::size_t>(std::pow(s.what, s.contexts())));
    for (std::size_t i = 0; i < game.rows(); ++i) {
      const auto g = ConditionalKernel::deterministic(game.enc_maps[i], s.x);
      for (std::size_t j = 0; j < game.cols(); j += 3) {
        const auto h = ConditionalKernel::deterministic(game.dec_maps[j], s.what);
        CHECK(game.enc_distortion[i][j] == doctest::Approx(oracle::expected(m, g, h, Party::kEncoder)).epsilon(1e-12));
        CHECK(game.dec_distortion[i][j] == doctest::Approx(oracle::expected(m, g, h, Party::kDecoder)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("mixtures over deterministic strategies match their behavior strategies") {
  Rng rng(83);
  for (int t = 0; t < 10; ++t) {
    RandomModelOptions opt;
    opt.max_alphabet = 2;
    const auto m = random_chain_model(rng, opt);
    const auto game = reduce_to_bimatrix(m, false);
    const auto x = random_simplex_point(rng, game.rows());
    const auto y = random_simplex_point(rng, game.cols());
    const auto g = behavior_encoder(game, x, m.sizes.x);
    const auto h = behavior_decoder(game, y, m.sizes.what);
    CHECK(g.kernel.valid());
    CHECK(h.kernel.valid());
    for (auto p : {Party::kEncoder, Party::kDecoder}) {
      const auto& mat = p == Party::kEncoder ? game.enc_distortion : game.dec_distortion;
      CHECK(expected_distortion(m, g, h, p) == doctest::Approx(game_value(mat, x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chain and reduced-game solvers agree") {
  Rng rng(89);
  for (int t = 0; t < 20; ++t) {
    RandomModelOptions opt;
    opt.max_alphabet = 2;
    opt.range = t % 2 ? DistortionRange::kSigned : DistortionRange::kUnit;
    const auto m = random_chain_model(rng, opt);
    const auto game = reduce_to_bimatrix(m, false);
    const auto chain_ose = solve_ose(m), game_ose = solve_ose(game);
    CHECK(chain_ose.enc_value == doctest::Approx(game_ose.enc_value).epsilon(1e-9));
    const auto chain_rse = solve_rse(m);
    CHECK(chain_rse.enc_value >= chain_ose.enc_value - 1e-9);
    for (const auto& e : solve_ne(m)) {
      CHECK(chain_ose.enc_value <= e.enc_value + 1e-9);
      // Behavior profile values are consistent with the chain functional.
      CHECK(expected_distortion(m, {e.encoder}, {e.decoder}, Party::kEncoder) ==
            doctest::Approx(e.enc_value).epsilon(1e-12));
    }
  }
}

TEST_CASE("Stackelberg solvers against a brute-force grid oracle on binary instances") {
  Rng rng(97);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_chain_model(rng, kBinary);
    const auto grid = oracle::grid_stackelberg(m, 50);
    const auto ose = solve_ose(m), rse = solve_rse(m);
    REQUIRE(ose.diagnostics.error_bound.has_value());
    REQUIRE(rse.diagnostics.error_bound.has_value());
    CHECK(ose.enc_value <= grid.ose + 1e-9);
    CHECK(grid.ose - ose.enc_value <= *ose.diagnostics.error_bound + 1e-9);
    CHECK(std::abs(rse.enc_value - grid.rse) <= *rse.diagnostics.error_bound + 1e-9);
  }
}

TEST_CASE("rate constraint restricts the encoder") {
  Rng rng(101);
  auto m = random_chain_model(rng, kBinary);
  m.channel = ConditionalKernel::constant(2, std::vector<double>{0.5, 0.5});
  SolverOptions opt;
  opt.enforce_rate_constraint = true;
  opt.z_kernel = ConditionalKernel::identity(2);
  const auto ose = solve_ose(m, opt);
  // Only encoders carrying no information about (W, U) given Y survive.
  CHECK(achievable_rate(m, {ose.encoder}, *opt.z_kernel) <= 1e-9);
  REQUIRE(ose.diagnostics.feasibility_margin.has_value());
  CHECK(*ose.diagnostics.feasibility_margin >= -1e-9);
  CHECK(ose.enc_value >= solve_ose(m).enc_value - 1e-12);
  const auto game = reduce_to_bimatrix(m, true, opt);
  CHECK(game.rows() == 2);
  CHECK(game.excluded_encoders.size() == 2);
}

TEST_CASE("discretized scalar counterexample") {
  const auto game = scalar_grid_game();
  CHECK(solve_rse(game).enc_value == doctest::Approx(1.0).epsilon(1e-9));
  SolverOptions pure;
  pure.commitment = Commitment::kPure;
  const auto prse = solve_rse(game, pure);
  CHECK(prse.enc_value == doctest::Approx(1.0));
  CHECK(prse.encoder(0, 2) == doctest::Approx(1.0));  // g = 0
  CHECK(solve_ose(game).enc_value == doctest::Approx(-0.25));
  const auto ne = solve_ne(game);
  std::size_t pure_count = 0;
  double max_ne = -std::numeric_limits<double>::infinity();
  for (const auto& e : ne) {
    max_ne = std::max(max_ne, e.enc_value);
    if (e.encoder.as_deterministic() && e.decoder.as_deterministic()) {
      ++pure_count;
      CHECK(e.enc_value <= 1e-12);
      CHECK(e.enc_value >= -0.25 - 1e-12);
    }
  }
  CHECK(pure_count > 0);
  // An indifferent decoder mixing h = -1 and h = 1 equally costs the encoder
  // 1 whatever it plays, so among mixed profiles some NE reaches the robust
  // value.
  CHECK(max_ne == doctest::Approx(1.0));
  const auto audit = ordering_audit(game);
  CHECK(audit.rse_at_least_ose);
  CHECK(audit.ose_at_most_every_ne);
  CHECK(audit.some_ne_at_least_rse);
}

TEST_CASE("ordering audit on random chains") {
  Rng rng(103);
  for (int t = 0; t < 30; ++t) {
    RandomModelOptions opt;
    opt.range = t % 2 ? DistortionRange::kSigned : DistortionRange::kUnit;
    const auto a = ordering_audit(random_chain_model(rng, opt));
    CHECK(a.rse_at_least_ose);
    CHECK(a.ose_at_most_every_ne);
    CHECK_FALSE(a.ne.empty());
  }
}

TEST_CASE("game validation and caps") {
  ReducedGame bad;
  bad.enc_distortion = {{0, 1}};
  bad.dec_distortion = {{0}};
  CHECK_THROWS(validate_game(bad));
  ReducedGame inf_entry = table1_game(1, 1);
  inf_entry.enc_distortion[0][0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS(validate_game(inf_entry));

  Rng rng(107);
  const auto m = random_chain_model(rng, AlphabetSizes{3, 3, 3, 3, 3, 3});
  SolverOptions tight;
  tight.max_reduced_cells = 100;
  CHECK_THROWS_AS(reduce_to_bimatrix(m, false, tight), CapExceededError);
  CHECK(std::string(to_string(EquilibriumKind::kRse)) == "RSE");
  CHECK(std::string(to_string(Commitment::kPure)) == "pure");
}
