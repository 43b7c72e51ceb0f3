#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mqc/types.hpp"

namespace mqc {

/// Multiplicative basis state |i_1 ... i_N> of an N-qubit register.
///
/// Bit value 0 is the spin-up ground state (I_z = +1/2), bit value 1 an
/// excitation (I_z = -1/2). The zero-based matrix index is the bit pattern
/// read with qubit 1 as the most significant bit, which matches the
/// Kronecker ordering used by `tensor`.
class BasisLabel {
 public:
  BasisLabel(StateBits index, int qubits);

  /// Builds a label from per-qubit bits (i_1, ..., i_N).
  static BasisLabel from_bits(std::span<const int> bits);

  StateBits index() const noexcept { return index_; }
  int qubits() const noexcept { return qubits_; }

  /// Bit of qubit `q`, with q in 1..N.
  int bit(int q) const;
  std::vector<int> bits() const;
  int excitations() const noexcept;

  /// Eigenvalue of total I_z, (N - 2 * excitations) / 2.
  double iz_eigenvalue() const noexcept;

 private:
  StateBits index_;
  int qubits_;
};

int excitation_count(StateBits bits) noexcept;

/// Net excitation change Σ_k (j_k - i_k) of the transition behind element (i, j).
int coherence_order(const BasisLabel& i, const BasisLabel& j);
int coherence_order(StateBits i, StateBits j) noexcept;

/// Binomial coefficient, zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k) noexcept;

/// All `nbits`-bit patterns with exactly `excitations` set bits, ascending.
std::vector<StateBits> patterns_with_excitations(int nbits, int excitations);

/// Position of `bits` inside the ascending list of patterns with the same popcount.
Index rank_in_sector(StateBits bits) noexcept;

}  // namespace mqc
