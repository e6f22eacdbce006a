// Times the OpenMP statevector kernels against the serial reference at
// growing register widths. Usage: bench_kernels [max_qubits] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qet/gates.hpp"
#include "qet/rng.hpp"
#include "qet/state.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::vector<qet::cplx> random_state(int n, qet::RngStream& rng) {
  std::vector<qet::cplx> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {rng.next_unit() - 0.5, rng.next_unit() - 0.5};
  return amps;
}

template <typename Fn>
double time_seconds(int repeats, Fn&& fn) {
  const auto start = Clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  return std::chrono::duration<double>(Clock::now() - start).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const int max_qubits = argc > 1 ? std::atoi(argv[1]) : 22;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%7s %14s %14s %8s\n", "qubits", "serial (s)", "parallel (s)",
              "speedup");

  qet::RngStream rng(42, 0);
  const qet::Mat2 h = qet::gates::hadamard_matrix();
  for (int n = 12; n <= max_qubits; n += 2) {
    auto base = random_state(n, rng);
    const std::size_t dim = base.size();

    auto serial_copy = base;
    const double t_serial = time_seconds(repeats, [&] {
      for (int q = 0; q < n; ++q) {
        qet::kernels::serial::apply_1q(serial_copy.data(), dim, q, h);
      }
    });

    auto parallel_copy = base;
    const double t_parallel = time_seconds(repeats, [&] {
      for (int q = 0; q < n; ++q) {
        qet::kernels::apply_1q(parallel_copy.data(), dim, q, h);
      }
    });

    std::printf("%7d %14.6f %14.6f %8.2f\n", n, t_serial, t_parallel,
                t_serial / t_parallel);
  }
  return 0;
}
