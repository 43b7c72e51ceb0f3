#pragma once

#include <span>
#include <vector>

#include "mqc/density_matrix.hpp"
#include "mqc/types.hpp"

namespace mqc {

struct OrderEntry {
  Index row;
  Index col;
  Complex value;
};

/// Partition of a matrix into its coherence-order components ρ^(n), n = -N..N.
///
/// Each component is stored as a coordinate list; every (row, col) of the
/// parent appears in exactly one component.
class CoherenceDecomposition {
 public:
  CoherenceDecomposition(int qubits, std::vector<std::vector<OrderEntry>> components);

  int qubits() const noexcept { return qubits_; }
  int max_order() const noexcept { return qubits_; }

  const std::vector<OrderEntry>& component(int n) const;
  CMatrix component_matrix(int n) const;

  /// I_n = Tr(ρ^(n) ρ^(-n)).
  double intensity(int n) const;
  const std::vector<double>& intensities() const noexcept { return intensities_; }

  /// Σ_n ρ^(n).
  CMatrix resum() const;

 private:
  int qubits_;
  std::vector<std::vector<OrderEntry>> components_;
  std::vector<double> intensities_;
};

CoherenceDecomposition decompose(const DensityMatrix& rho);
CoherenceDecomposition decompose(const CMatrix& m, int qubits);

double intensity(const DensityMatrix& rho, int n);
double intensity(const CMatrix& m, int qubits, int n);

/// Intensities for n = -N..N (index n + N).
std::vector<double> intensities(const CMatrix& m, int qubits);

/// Dense projection of `m` onto order `n`; all other entries zeroed.
CMatrix order_part(const CMatrix& m, int qubits, int n);

/// Largest |m_ij| over entries whose order is not in `allowed`.
double max_outside_orders(const CMatrix& m, int qubits, std::span<const int> allowed);

}  // namespace mqc
