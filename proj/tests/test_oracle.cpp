#include <doctest.h>

#include <cmath>

#include "qet/oracle.hpp"
#include "qet/protocol.hpp"
#include "test_util.hpp"

using namespace qet;
using qet::testing::one_hot_index;
using qet::testing::simulate;

namespace {

ProtocolConfig config_for(int n, double h, double k) {
  ProtocolConfig c;
  c.params = {n, h, k};
  return c;
}

}  // namespace

TEST_CASE("single H + measure splits into two equal branches") {
  Circuit c{1, {}};
  c.append(gates::h(0));
  c.append(gates::measure(0, Basis::Z, 0));
  const auto dist = enumerate_branches(c);
  REQUIRE(dist.branches.size() == 2);
  CHECK(dist.branches[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.branches[1].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.total_probability() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("QET circuit mu marginal matches the amplitude inner product") {
  const auto circuit = build_protocol_circuit(config_for(3, 1.0, 1.0));
  const auto dist = enumerate_branches(circuit);
  CHECK(dist.total_probability() == doctest::Approx(1.0).epsilon(1e-12));
  // P(mu=+1) = 1/2 + <X0>/2 with <X0> = 2ab, a = 1/sqrt(2), b = 1/sqrt(6)
  const double expected = 0.5 + (2.0 / (std::sqrt(2.0) * std::sqrt(6.0))) / 2.0;
  CHECK(bit_zero_probability(dist, mu_cbit()) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.7887).epsilon(1e-4));
}

TEST_CASE("sampled frequencies track branch probabilities") {
  ProtocolConfig config = config_for(3, 2.0, 1.0);
  config.shots = 100000;
  config.master_seed = 314;
  const auto dist = enumerate_branches(build_protocol_circuit(config));
  const double p_plus = bit_zero_probability(dist, mu_cbit());

  const EnergyLedger ledger = run_protocol(config);
  const Estimate& est = ledger.mu_plus_probability;
  const double binom_stderr =
      std::sqrt(p_plus * (1.0 - p_plus) / static_cast<double>(config.shots));
  CHECK(std::abs(est.mean - p_plus) <= 5.0 * binom_stderr);
}

TEST_CASE("exact averaged expectations") {
  SUBCASE("H0 after injection is one half for any h > 0") {
    for (auto [h, k] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0},
                        std::pair{1.0, 0.0}, std::pair{0.3, 2.0}}) {
      const auto dist =
          enumerate_branches(build_protocol_circuit(config_for(3, h, k)));
      CHECK(exact_averaged_expectation(dist, local_number_operator(0)) ==
            doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("H_sub(1) closed form for N=3 (1,1)") {
    const auto dist =
        enumerate_branches(build_protocol_circuit(config_for(3, 1.0, 1.0)));
    CHECK(exact_averaged_expectation(dist, subsystem_hamiltonian(1, 3)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("vacuum circuit with no measurements has zero energy") {
    Circuit c{3, {}};
    const auto dist = enumerate_branches(c);
    REQUIRE(dist.branches.size() == 1);
    CHECK(exact_averaged_expectation(dist, total_hamiltonian(3)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("branch cap is enforced") {
  Circuit c{1, {}};
  for (int i = 0; i < 21; ++i) {
    c.append(gates::h(0));
    c.append(gates::measure(0, Basis::Z, i));
  }
  CHECK_THROWS_AS(enumerate_branches(c), std::invalid_argument);
}

TEST_CASE("reduced states") {
  SUBCASE("W3 keep {1,2}: purity 5/9") {
    const auto w3 = simulate(
        build_initial_state(3, 1.0, 0.0, PrepStrategy::LinearCascade));
    const auto red = reduced_state(w3, {1, 2});
    double purity = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        purity += (red.at(r, c) * red.at(c, r)).real();
      }
    }
    CHECK(purity == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    // 2/3 of the weight in the single-excitation block
    CHECK((red.at(1, 1) + red.at(2, 2)).real() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // trace one, Hermitian
    cplx tr = 0.0;
    for (std::size_t r = 0; r < 4; ++r) tr += red.at(r, r);
    CHECK(std::abs(tr - 1.0) < kTolProbability);
  }
  SUBCASE("product state reduces to a pure state") {
    QuantumState s(3);
    s.apply_unitary(gates::hadamard_matrix(), 1);
    const auto red = reduced_state(s, {0, 1});
    CHECK(entanglement_witness(red).purity == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("partial trace consistency with full-state expectations") {
    const auto s = simulate(
        build_initial_state(4, 2.0, 1.0, PrepStrategy::LogDepthTree));
    const auto red = reduced_state(s, {1, 3});
    // H on kept slot 0 (= qubit 1 of the full register)
    const double from_red = reduced_expectation(red, local_number_operator(0));
    const double from_full = exact_expectation(s, local_number_operator(1));
    CHECK(std::abs(from_red - from_full) < kTolProbability);
  }
  SUBCASE("invalid keep sets") {
    QuantumState s(2);
    CHECK_THROWS_AS(reduced_state(s, {}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_state(s, {5}), std::out_of_range);
  }
}

TEST_CASE("entanglement witness") {
  SUBCASE("Bell pair: pure and entangled") {
    const auto bell = simulate(build_ghz(2));
    const auto w = entanglement_witness(reduced_state(bell, {0, 1}));
    CHECK(w.purity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.entangled);
  }
  SUBCASE("W3 after measuring qubit 0 out, outcome 0: remaining pair is W2") {
    auto w3 = simulate(
        build_initial_state(3, 1.0, 0.0, PrepStrategy::LinearCascade));
    w3.collapse(0, Basis::Z, 0);
    const auto w = entanglement_witness(reduced_state(w3, {1, 2}));
    CHECK(w.purity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.entangled);
  }
  SUBCASE("maximally mixed pair: purity 1/4, separable") {
    // Bell pairs on (0,2) and (1,3); tracing out 2,3 leaves I/4 on (0,1)
    Circuit c{4, {}};
    c.append(gates::h(0));
    c.append(gates::cx(0, 2));
    c.append(gates::h(1));
    c.append(gates::cx(1, 3));
    const auto s = simulate(c);
    const auto w = entanglement_witness(reduced_state(s, {0, 1}));
    CHECK(w.purity == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(w.entangled);
  }
  SUBCASE("wrong dimension rejected") {
    QuantumState s(3);
    CHECK_THROWS_AS(entanglement_witness(reduced_state(s, {0})),
                    std::invalid_argument);
  }
}

TEST_CASE("W versus GHZ robustness under one receiver measurement") {
  for (int n : {3, 4, 5}) {
    // W: every remaining pair stays entangled on the outcome-0 branch
    for (int measured = 1; measured < n; ++measured) {
      auto w = simulate(
          build_initial_state(n, 1.0, 0.0, PrepStrategy::LinearCascade));
      w.collapse(measured, Basis::Z, 0);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (a == measured || b == measured) continue;
          CHECK(entanglement_witness(reduced_state(w, {a, b})).entangled);
        }
      }
    }
    // GHZ: both branches collapse to products
    for (int outcome : {0, 1}) {
      auto ghz = simulate(build_ghz(n));
      ghz.collapse(1, Basis::Z, outcome);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (a == 1 || b == 1) continue;
          const auto w = entanglement_witness(reduced_state(ghz, {a, b}));
          CHECK(w.purity == doctest::Approx(1.0).epsilon(1e-9));
          CHECK_FALSE(w.entangled);
        }
      }
    }
  }
}
