#pragma once

#include <vector>

#include "mqc/propagation.hpp"
#include "mqc/sectors.hpp"

namespace mqc {

struct ElementPosition {
  Index row;
  Index col;
};

/// Time series of selected reduced-state elements of an evolving thermal product.
///
/// In the sector eigenbases every element is a finite sum
///   ρ_ab(t) = Σ_{l,l'} Σ_{p,q} A^{ab}_{pq} e^{-i(E_p - E_q) t},
/// with A time independent, so a grid of times costs one matrix-vector
/// product per sector pair and time point.
class SpectralSeries {
 public:
  struct Term {
    int ket_sector;
    int bra_sector;
    CMatrix weights;  // d_l x d_l'
  };

  SpectralSeries(SectorSystemPtr system, std::vector<ElementPosition> elements,
                 std::vector<std::vector<Term>> terms);

  const std::vector<ElementPosition>& elements() const noexcept { return elements_; }
  std::vector<Complex> evaluate(double t) const;

 private:
  SectorSystemPtr system_;
  std::vector<ElementPosition> elements_;
  std::vector<std::vector<Term>> terms_;
};

SpectralSeries build_spectral_series(SectorSystemPtr system, const ThermalProduct& initial,
                                     int output_qubits, std::vector<ElementPosition> elements);

}  // namespace mqc
