#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mqc/types.hpp"

namespace mqc {

/// Exact non-negative rational in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) noexcept {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

/// One row of the maximal-intensity table.
struct RankReport {
  int qubits;
  int order;
  std::int64_t rank_bound;
  Rational two_max_intensity;  // 2 I_n^max = N_n / 2^{2N}
};

/// N_n = Σ_k min(C(N,k), C(N,k+n) + C(N,k-n)).
std::int64_t rank_bound(int qubits, int order);

/// 2 I_n^max as an exact rational.
Rational max_intensity(int qubits, int order);

/// (I_0^min, I_0^max) = (1/2^N, 1).
std::pair<Rational, Rational> zero_order_bounds(int qubits);

std::vector<RankReport> table1(int min_qubits = 2, int max_qubits = 5);
std::string table1_csv(const std::vector<RankReport>& rows);

struct PairingReport {
  RVector eigenvalues;  // ascending
  double residual;      // max_k |λ_k + λ_{d-1-k}|
};

/// Checks that the spectrum of a single-order Hermitian matrix is symmetric
/// about zero. Throws PreconditionError if entries of other orders are present.
PairingReport verify_eigen_pairing(const CMatrix& m, int qubits, int order);

/// Tr m^power for a square matrix.
Complex power_trace(const CMatrix& m, int power);

/// Singular values above 1e-9 of the largest.
int numeric_rank(const CMatrix& m, double relative_threshold = 1e-9);

/// Hermitian matrix with complex Gaussian entries on exactly the ±order positions.
CMatrix random_single_order(int qubits, int order, std::mt19937_64& rng);

/// Replaces every nonzero eigenvalue λ of `m` by sign(λ)/2^N on the same eigenvectors.
CMatrix constructive_maximum(const CMatrix& m, int qubits, double relative_threshold = 1e-9);

}  // namespace mqc
