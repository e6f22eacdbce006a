#include "qet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qet {

std::vector<int> ProtocolConfig::effective_order() const {
  if (!receiver_order.empty()) return receiver_order;
  std::vector<int> order(params.num_qubits - 1);
  std::iota(order.begin(), order.end(), 1);
  return order;
}

void ProtocolConfig::validate() const {
  params.validate();
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const auto order = effective_order();
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() != static_cast<std::size_t>(params.num_qubits - 1)) {
    throw std::invalid_argument("receiver order must list every receiver once");
  }
  for (int i = 0; i < params.num_qubits - 1; ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i + 1) {
      throw std::invalid_argument(
          "receiver order must be a permutation of 1..N-1");
    }
  }
}

Circuit build_protocol_circuit(const ProtocolConfig& config) {
  config.validate();
  const int n = config.params.num_qubits;
  Circuit c = config.broken_prep
                  ? build_truncated_distribution(n, config.params.h,
                                                 config.params.k)
                  : build_initial_state(n, config.params.h, config.params.k,
                                        config.strategy);
  c.append(gates::measure(0, Basis::X, mu_cbit()));
  if (config.feedforward_enabled) {
    for (int q = 1; q < n; ++q) {
      c.append(gates::conditioned(mu_cbit(), 1, gates::z(q)));
    }
  }
  for (int q : config.effective_order()) {
    c.append(gates::measure(q, Basis::Z, receiver_cbit(q)));
  }
  c.append(gates::measure(0, Basis::Z, alice_frame_cbit(n)));
  return c;
}

std::pair<int, QuantumState> inject(QuantumState state, RngStream& rng) {
  auto [outcome, prob] = measure_projective(state, 0, Basis::X, rng);
  (void)prob;
  return {outcome == 0 ? +1 : -1, std::move(state)};
}

QuantumState feedforward(QuantumState state, int mu,
                         const std::vector<int>& receivers) {
  if (mu == -1) {
    for (int q : receivers) state.apply_unitary(gates::pauli_z_matrix(), q);
  }
  return state;
}

ShotRecord harvest(QuantumState& state, int mu,
                   const std::vector<int>& receiver_order, RngStream& rng) {
  ShotRecord rec;
  rec.mu = mu;
  for (int q : receiver_order) {
    auto [outcome, prob] = measure_projective(state, q, Basis::Z, rng);
    (void)prob;
    rec.receiver_outcomes[q] = outcome;
  }
  auto [frame, prob] = measure_projective(state, 0, Basis::Z, rng);
  (void)prob;
  rec.alice_frame_bit = frame;
  return rec;
}

namespace {

// Per-shot outcome packed as bits: bit q (from the MSB side, matching basis
// labels) = Z outcome of qubit q with qubit 0 being Alice's frame bit;
// bit 31 = mu sign (set iff mu = -1).
constexpr std::uint32_t kMuBit = 1u << 31;

std::uint32_t pack_shot(const ClassicalRecord& record, int n) {
  std::uint32_t mask = 0;
  if (record.bit(alice_frame_cbit(n)) == 1) mask |= 1u << (n - 1);
  for (int q = 1; q < n; ++q) {
    if (record.bit(receiver_cbit(q)) == 1) mask |= 1u << (n - 1 - q);
  }
  if (record.bit(mu_cbit()) == 1) mask |= kMuBit;
  return mask;
}

template <typename ValueFn>
Estimate estimate_over_shots(const std::vector<std::uint32_t>& masks,
                             ValueFn value) {
  const auto shots = static_cast<std::uint64_t>(masks.size());
  double sum = 0.0;
  for (std::uint32_t m : masks) sum += value(m);
  const double mean = sum / static_cast<double>(shots);
  double ss = 0.0;
  for (std::uint32_t m : masks) {
    const double d = value(m) - mean;
    ss += d * d;
  }
  const double stderr_ =
      shots > 1 ? std::sqrt(ss / static_cast<double>(shots - 1) /
                            static_cast<double>(shots))
                : 0.0;
  return {mean, stderr_, shots};
}

double bit_value(std::uint32_t mask, int qubit, int n) {
  return (mask & (1u << (n - 1 - qubit))) ? 1.0 : 0.0;
}

double sub_value(std::uint32_t mask, int m, int n) {
  double v = 0.0;
  for (int q = std::max(m, 1); q < n; ++q) v += bit_value(mask, q, n);
  return v;
}

}  // namespace

EnergyLedger run_protocol(const ProtocolConfig& config) {
  config.validate();
  const Circuit circuit = build_protocol_circuit(config);
  const int n = config.params.num_qubits;

  std::vector<std::uint32_t> masks(config.shots);
#pragma omp parallel for schedule(static)
  for (long long shot = 0; shot < static_cast<long long>(config.shots);
       ++shot) {
    RngStream rng(config.master_seed, static_cast<std::uint64_t>(shot));
    auto [state, record] = run_circuit(circuit, rng);
    masks[static_cast<std::size_t>(shot)] = pack_shot(record, n);
  }

  EnergyLedger ledger;
  ledger.e0 = e0(config.params.h, config.params.k, config.convention);
  ledger.h_total_post = estimate_over_shots(masks, [&](std::uint32_t m) {
    return bit_value(m, 0, n) + sub_value(m, 1, n);
  });
  for (int m = 1; m < n; ++m) {
    ledger.h_sub.push_back(estimate_over_shots(
        masks, [&](std::uint32_t mk) { return sub_value(mk, m, n); }));
  }
  for (int q = 0; q < n; ++q) {
    ledger.local.push_back(estimate_over_shots(
        masks, [&](std::uint32_t mk) { return bit_value(mk, q, n); }));
  }
  // dE_j = H_sub(j) - H_sub(j+1), which per shot is the bit of qubit j.
  for (int j = 1; j < n; ++j) {
    ledger.harvested.push_back(estimate_over_shots(
        masks, [&](std::uint32_t mk) { return bit_value(mk, j, n); }));
  }
  ledger.mu_plus_probability = estimate_over_shots(
      masks, [&](std::uint32_t mk) { return (mk & kMuBit) ? 0.0 : 1.0; });
  return ledger;
}

EnergyLedger run_protocol_exact(const ProtocolConfig& config) {
  config.validate();
  const Circuit circuit = build_protocol_circuit(config);
  const int n = config.params.num_qubits;
  const BranchDistribution dist = enumerate_branches(circuit);

  auto exact = [&](const ObservableSpec& obs) {
    return Estimate{exact_averaged_expectation(dist, obs), 0.0, 0};
  };

  EnergyLedger ledger;
  ledger.e0 = e0(config.params.h, config.params.k, config.convention);
  ledger.h_total_post = exact(total_hamiltonian(n));
  for (int m = 1; m < n; ++m) {
    ledger.h_sub.push_back(exact(subsystem_hamiltonian(m, n)));
  }
  for (int q = 0; q < n; ++q) {
    ledger.local.push_back(exact(local_number_operator(q)));
  }
  for (int j = 1; j < n; ++j) {
    const double hi = ledger.h_sub[static_cast<std::size_t>(j - 1)].mean;
    const double lo = j < n - 1 ? ledger.h_sub[static_cast<std::size_t>(j)].mean
                                : 0.0;
    ledger.harvested.push_back({hi - lo, 0.0, 0});
  }
  ledger.mu_plus_probability = {bit_zero_probability(dist, mu_cbit()), 0.0, 0};
  return ledger;
}

}  // namespace qet
