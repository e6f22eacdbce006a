#include <doctest.h>

#include <cmath>

#include "qet/protocol.hpp"
#include "test_util.hpp"

using namespace qet;
using qet::testing::simulate;

namespace {

ProtocolConfig config_for(int n, double h, double k,
                          std::uint64_t shots = 100000,
                          std::uint64_t seed = 1) {
  ProtocolConfig c;
  c.params = {n, h, k};
  c.shots = shots;
  c.master_seed = seed;
  return c;
}

double receiver_excitation(int n, double h, double k) {
  return h * h / (n * (h * h + k * k));
}

}  // namespace

TEST_CASE("inject on the vacuum flips a fair coin and leaves receivers cold") {
  int plus = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    RngStream rng(11, static_cast<std::uint64_t>(t));
    auto [mu, state] = inject(QuantumState(3), rng);
    if (mu == +1) ++plus;
    for (int q = 1; q < 3; ++q) {
      CHECK(state.outcome_one_probability(q, Basis::Z) <
            kTolProbability);
    }
  }
  CHECK(std::abs(plus / static_cast<double>(trials) - 0.5) < 0.05);
}

TEST_CASE("feedforward is the identity for mu=+1 and flips phases for mu=-1") {
  auto base = simulate(build_initial_state(3, 1.0, 1.0,
                                           PrepStrategy::LinearCascade));
  auto same = feedforward(base, +1, {1, 2});
  CHECK(qet::testing::max_amplitude_difference(base.amplitudes(),
                                               same.amplitudes()) == 0.0);

  auto flipped = feedforward(base, -1, {1, 2});
  for (int q = 1; q < 3; ++q) {
    CHECK(std::abs(flipped.expectation_z(q) - base.expectation_z(q)) <
          kTolProbability);
  }
  // the weight-one receiver amplitudes change sign
  CHECK(std::abs(flipped.amplitude(0b010) + base.amplitude(0b010)) <
        kTolAlgebraic);
}

TEST_CASE("harvest keeps the single-excitation sector") {
  for (int t = 0; t < 500; ++t) {
    RngStream rng(21, static_cast<std::uint64_t>(t));
    auto w = simulate(build_initial_state(3, 1.0, 0.0,
                                          PrepStrategy::LinearCascade));
    auto [mu, state] = inject(std::move(w), rng);
    state = feedforward(std::move(state), mu, {1, 2});
    const ShotRecord rec = harvest(state, mu, {1, 2}, rng);
    const int excited =
        rec.receiver_outcomes.at(1) + rec.receiver_outcomes.at(2);
    CHECK(excited <= 1);
  }
}

TEST_CASE("exact ledger matches the closed form") {
  SUBCASE("N=3, (1,1)") {
    const EnergyLedger ledger = run_protocol_exact(config_for(3, 1.0, 1.0));
    CHECK(ledger.h_sub[0].mean == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(ledger.h_sub[1].mean == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(ledger.h_total_post.mean ==
          doctest::Approx(0.5 + 1.0 / 3.0).epsilon(1e-12));
    CHECK(ledger.local[0].mean == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("N=5, (2,1)") {
    const EnergyLedger ledger = run_protocol_exact(config_for(5, 2.0, 1.0));
    for (int q = 1; q < 5; ++q) {
      CHECK(ledger.local[q].mean == doctest::Approx(0.16).epsilon(1e-12));
    }
    CHECK(ledger.h_sub[0].mean == doctest::Approx(0.64).epsilon(1e-12));
  }
  SUBCASE("vacuum: only the injected half remains") {
    const EnergyLedger ledger = run_protocol_exact(config_for(4, 0.0, 1.0));
    CHECK(ledger.h_total_post.mean == doctest::Approx(0.5).epsilon(1e-12));
    for (const auto& e : ledger.h_sub) {
      CHECK(e.mean == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampled ledger agrees with the exact ledger within 5 sigma") {
  for (auto [n, h, k] : {std::tuple{3, 1.0, 1.0}, std::tuple{4, 2.0, 1.0}}) {
    const ProtocolConfig config = config_for(n, h, k, 100000, 9);
    const EnergyLedger sampled = run_protocol(config);
    const EnergyLedger exact = run_protocol_exact(config);
    auto check = [&](const Estimate& s, const Estimate& e) {
      CHECK(std::abs(s.mean - e.mean) <= 5.0 * s.stderr_);
      CHECK(s.stderr_ >= 0.0);
    };
    check(sampled.h_total_post, exact.h_total_post);
    for (std::size_t i = 0; i < sampled.h_sub.size(); ++i) {
      check(sampled.h_sub[i], exact.h_sub[i]);
    }
    for (std::size_t i = 0; i < sampled.local.size(); ++i) {
      check(sampled.local[i], exact.local[i]);
    }
  }
}

TEST_CASE("sampled standard errors stay small at 1e5 shots") {
  const EnergyLedger ledger = run_protocol(config_for(3, 2.0, 1.0, 100000, 5));
  CHECK(ledger.h_total_post.stderr_ <= 0.007);
  for (const auto& e : ledger.h_sub) CHECK(e.stderr_ <= 0.007);
  for (const auto& e : ledger.harvested) CHECK(e.stderr_ <= 0.007);
}

TEST_CASE("telescoping: harvested energies sum to H_sub(1)") {
  for (auto mode_exact : {true, false}) {
    const ProtocolConfig config = config_for(4, 2.0, 1.0, 20000, 3);
    const EnergyLedger ledger =
        mode_exact ? run_protocol_exact(config) : run_protocol(config);
    double sum = 0.0;
    for (const auto& e : ledger.harvested) sum += e.mean;
    CHECK(std::abs(sum - ledger.h_sub[0].mean) < kTolProbability);
  }
}

TEST_CASE("decremental distribution in exact mode") {
  for (auto [h, k] : {std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
    for (int n : {3, 4, 5}) {
      const EnergyLedger ledger = run_protocol_exact(config_for(n, h, k));
      for (std::size_t i = 0; i + 1 < ledger.h_sub.size(); ++i) {
        CHECK(ledger.h_sub[i].mean > ledger.h_sub[i + 1].mean + 1e-6);
      }
      CHECK(ledger.h_sub.back().mean > 1e-6);
    }
  }
}

TEST_CASE("feedforward neutrality for diagonal observables (exact)") {
  ProtocolConfig with = config_for(3, 2.0, 1.0);
  ProtocolConfig without = with;
  without.feedforward_enabled = false;
  const EnergyLedger a = run_protocol_exact(with);
  const EnergyLedger b = run_protocol_exact(without);
  CHECK(std::abs(a.h_sub[0].mean - b.h_sub[0].mean) < kTolProbability);
  CHECK(std::abs(a.h_total_post.mean - b.h_total_post.mean) < kTolProbability);
}

TEST_CASE("receiver order does not change the exact ledger") {
  ProtocolConfig fwd = config_for(3, 1.0, 1.0);
  ProtocolConfig rev = fwd;
  rev.receiver_order = {2, 1};
  const EnergyLedger a = run_protocol_exact(fwd);
  const EnergyLedger b = run_protocol_exact(rev);
  for (std::size_t i = 0; i < a.h_sub.size(); ++i) {
    CHECK(std::abs(a.h_sub[i].mean - b.h_sub[i].mean) < kTolProbability);
  }
  for (std::size_t i = 0; i < a.local.size(); ++i) {
    CHECK(std::abs(a.local[i].mean - b.local[i].mean) < kTolProbability);
  }
}

TEST_CASE("ledger is deterministic for a fixed seed") {
  const ProtocolConfig config = config_for(4, 1.0, 1.0, 20000, 77);
  const EnergyLedger a = run_protocol(config);
  const EnergyLedger b = run_protocol(config);
  CHECK(a.h_total_post.mean == b.h_total_post.mean);
  CHECK(a.h_total_post.stderr_ == b.h_total_post.stderr_);
  for (std::size_t i = 0; i < a.local.size(); ++i) {
    CHECK(a.local[i].mean == b.local[i].mean);
  }
}

TEST_CASE("mu marginal: closed form for the (1,1) three-qubit run") {
  const ProtocolConfig config = config_for(3, 1.0, 1.0, 100000, 8);
  const EnergyLedger exact = run_protocol_exact(config);
  const double expected = 0.5 + 1.0 / (std::sqrt(2.0) * std::sqrt(6.0));
  CHECK(exact.mu_plus_probability.mean ==
        doctest::Approx(expected).epsilon(1e-12));
  const EnergyLedger sampled = run_protocol(config);
  const double binom =
      std::sqrt(expected * (1 - expected) / static_cast<double>(config.shots));
  CHECK(std::abs(sampled.mu_plus_probability.mean - expected) <= 5 * binom);
}

TEST_CASE("closed-form injection floor") {
  for (auto [n, h, k] : {std::tuple{3, 1.0, 1.0}, std::tuple{4, 2.0, 1.0},
                         std::tuple{5, 1.0, 1.0}}) {
    const EnergyLedger ledger = run_protocol_exact(config_for(n, h, k));
    const double expected = 0.5 + (n - 1) * receiver_excitation(n, h, k);
    CHECK(ledger.h_total_post.mean == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("config validation") {
  ProtocolConfig bad = config_for(3, 1.0, 1.0);
  bad.receiver_order = {1, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.receiver_order = {1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.receiver_order = {2, 1};
  CHECK_NOTHROW(bad.validate());
}
