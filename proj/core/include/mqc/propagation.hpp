#pragma once

#include <vector>

#include "mqc/coherence.hpp"
#include "mqc/density_matrix.hpp"
#include "mqc/sectors.hpp"

namespace mqc {

/// Per-sector propagators V^(l)(t) = exp(-i H^(l) t).
class PropagatorSet {
 public:
  PropagatorSet(SectorSystemPtr system, double time, std::vector<CMatrix> blocks);

  double time() const noexcept { return time_; }
  const SectorSystem& system() const noexcept { return *system_; }
  const SectorSystemPtr& system_ptr() const noexcept { return system_; }
  const CMatrix& block(int l) const { return blocks_.at(static_cast<std::size_t>(l)); }
  int max_excitation() const noexcept { return static_cast<int>(blocks_.size()) - 1; }

 private:
  SectorSystemPtr system_;
  double time_;
  std::vector<CMatrix> blocks_;
};

PropagatorSet propagators(SectorSystemPtr system, double t);

/// ρ(t) = V ρ V† applied block by block: ρ^(l,l')(t) = V^(l) ρ^(l,l')(0) V^(l')†.
/// Requires a complete sector system.
DensityMatrix evolve(const DensityMatrix& rho, const PropagatorSet& props);
CMatrix evolve(const CMatrix& m, const PropagatorSet& props);

/// P^(n): ρ^(n)(t) = Σ_l V^(l) ρ^(l,l+n)(0) V^(l+n)†, built from a decomposition.
CMatrix evolve_order(const CoherenceDecomposition& parts, int n, const PropagatorSet& props);

/// Density matrix stored as sector blocks (l, l') with l, l' <= l_max.
class SectorBlockState {
 public:
  SectorBlockState(SectorSystemPtr system, std::vector<std::vector<CMatrix>> blocks);

  const SectorSystem& system() const noexcept { return *system_; }
  int max_excitation() const noexcept { return static_cast<int>(blocks_.size()) - 1; }
  const CMatrix& block(int l, int lp) const;

  /// Element (i, j) of the full matrix; zero outside the retained sectors.
  Complex element(StateBits i, StateBits j) const;
  /// Dense 2^N matrix (N must be small enough to allocate).
  CMatrix to_dense() const;
  Complex trace() const;

 private:
  SectorSystemPtr system_;
  std::vector<std::vector<CMatrix>> blocks_;
};

/// Sender operator on the first M qubits tensored with a thermal tail on the rest.
struct ThermalProduct {
  CMatrix sender;  // 2^M x 2^M; may be a non-Hermitian probe
  int sender_qubits;
  int tail_qubits;
  double beta;

  int qubits() const noexcept { return sender_qubits + tail_qubits; }
};

struct TruncatedEvolution {
  SectorBlockState state;
  /// Initial diagonal weight in sectors above l_max that was discarded.
  double neglected_weight;
};

/// Evolves the components of a thermal product whose bra and ket both lie in
/// sectors <= l_max (the propagator set's highest sector).
TruncatedEvolution evolve_truncated(const ThermalProduct& initial, const PropagatorSet& props);

/// Σ_i |S_ii| P(tail excitations > l_max - exc(i)), the discarded diagonal weight.
double truncated_weight(const ThermalProduct& initial, int l_max);

/// Largest excitation count among sender basis states with a nonzero row or column.
int sender_excitation_reach(const CMatrix& sender, int sender_qubits);

}  // namespace mqc

namespace mqc {

/// Tr over all but the last `output_qubits` qubits of V ρ0 V†, where ρ0 is the
/// sector-truncated thermal product. The full chain state is never formed.
CMatrix reduce_evolved_product(const ThermalProduct& initial, const PropagatorSet& props,
                               int output_qubits);

/// The same reduction for every sender probe |i><j| at once; entry i*2^M + j
/// is the 2^r x 2^r image. Probes with `needed[i*2^M + j] == false` stay zero.
std::vector<CMatrix> reduce_evolved_probes(int sender_qubits, int tail_qubits, double beta,
                                           const PropagatorSet& props, int output_qubits,
                                           const std::vector<bool>& needed);

}  // namespace mqc
