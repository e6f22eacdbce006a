#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace qet {

using cplx = std::complex<double>;

// Centralized tolerance constants.
inline constexpr double kTolAlgebraic = 1e-10;   // norms, amplitudes, unitarity
inline constexpr double kTolProbability = 1e-12; // probability sums, exact-mode equality
inline constexpr double kBranchPrune = 1e-14;    // branch probabilities treated as zero

// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx operator()(int r, int c) const { return m[2 * r + c]; }
  cplx& operator()(int r, int c) { return m[2 * r + c]; }
};

inline Mat2 mat2(cplx a, cplx b, cplx c, cplx d) { return Mat2{{a, b, c, d}}; }

// max |(U†U - I)_{ij}|
inline double unitarity_defect(const Mat2& u) {
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k) s += std::conj(u(k, r)) * u(k, c);
      if (r == c) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

inline bool is_unitary(const Mat2& u, double tol = kTolAlgebraic) {
  return unitarity_defect(u) <= tol;
}

}  // namespace qet
