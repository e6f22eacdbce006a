#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qet/symmetry.hpp"

using namespace qet;

namespace {

ProtocolConfig config_for(int n, double h, double k,
                          std::uint64_t shots = 100000,
                          std::uint64_t seed = 4) {
  ProtocolConfig c;
  c.params = {n, h, k};
  c.shots = shots;
  c.master_seed = seed;
  return c;
}

std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> base(n - 1);
  std::iota(base.begin(), base.end(), 1);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return all;
}

}  // namespace

TEST_CASE("exact translational symmetry for all paper configurations") {
  for (int n : {3, 4, 5}) {
    for (auto [h, k] : {std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
      const auto report =
          translational_test(config_for(n, h, k), SymmetryMode::Exact);
      CHECK(report.pass);
      CHECK(report.max_deviation <= 1e-12);
    }
  }
}

TEST_CASE("sampled translational symmetry passes at 5 sigma") {
  const auto report = translational_test(config_for(3, 1.0, 1.0, 100000, 12),
                                         SymmetryMode::Sampled);
  CHECK(report.pass);
}

TEST_CASE("exact exchange symmetry, exhaustive for N <= 4") {
  for (int n : {3, 4}) {
    const auto perms = permutations_of(n);
    for (const auto& order : perms) {
      const auto report = exchange_test(config_for(n, 2.0, 1.0), perms.front(),
                                        order, SymmetryMode::Exact);
      CHECK(report.pass);
      CHECK(report.max_deviation <= 1e-12);
    }
  }
}

TEST_CASE("exact exchange symmetry, random pairs for N = 5") {
  std::mt19937_64 gen(2718);
  std::vector<int> order_a{1, 2, 3, 4}, order_b{1, 2, 3, 4};
  for (int rep = 0; rep < 5; ++rep) {
    std::shuffle(order_a.begin(), order_a.end(), gen);
    std::shuffle(order_b.begin(), order_b.end(), gen);
    const auto report = exchange_test(config_for(5, 1.0, 1.0), order_a, order_b,
                                      SymmetryMode::Exact);
    CHECK(report.pass);
  }
}

TEST_CASE("sampled exchange symmetry") {
  const auto report = exchange_test(config_for(3, 2.0, 1.0, 100000, 6), {1, 2},
                                    {2, 1}, SymmetryMode::Sampled);
  CHECK(report.pass);
}

TEST_CASE("negative control: truncated prep fails the translational test") {
  ProtocolConfig broken = config_for(4, 1.0, 1.0);
  broken.broken_prep = true;
  const auto report = translational_test(broken, SymmetryMode::Exact);
  CHECK_FALSE(report.pass);
  CHECK(report.max_deviation > 0.01);
}

TEST_CASE("mismatched receiver sets are rejected") {
  CHECK_THROWS_AS(exchange_test(config_for(3, 1.0, 1.0), {1, 2}, {1, 1},
                                SymmetryMode::Exact),
                  std::invalid_argument);
}

TEST_CASE("translational test needs at least one receiver pair") {
  CHECK_THROWS_AS(translational_test(config_for(2, 1.0, 1.0),
                                     SymmetryMode::Exact),
                  std::invalid_argument);
}
