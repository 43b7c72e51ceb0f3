#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "mqc/density_matrix.hpp"
#include "mqc/propagation.hpp"
#include "mqc/sectors.hpp"
#include "mqc/spectral_series.hpp"

namespace mqc {

inline constexpr double kDefaultTailTolerance = 1e-8;

/// Sender on qubits 1..M, receiver on qubits N-M+1..N, transmission line between.
/// Transmission line and receiver start in the thermal state e^{b I_z}/Z.
struct ChainLayout {
  int qubits = 20;
  int sender_qubits = 2;
  double beta = 10.0;

  void validate() const;
  int tail_qubits() const noexcept { return qubits - sender_qubits; }
  int receiver_first_qubit() const noexcept { return qubits - sender_qubits + 1; }
};

/// Discarded initial weight bound for any sender: P(tail excitations > l_max - M).
double tail_weight_bound(const ChainLayout& layout, int max_excitation);

/// Smallest l_max >= M whose tail bound is below `tolerance` (capped at N).
int auto_max_excitation(const ChainLayout& layout, double tolerance = kDefaultTailTolerance);

/// ρ^S ⊗ ρ^{TL,R}, formed densely.
DensityMatrix initial_state(const DensityMatrix& sender, const ChainLayout& layout);

/// Linear map from sender matrix elements to receiver matrix elements at one time:
/// ρ^R_ab = Σ_ij α_{ab;ij} ρ^S_ij.
class TransferMap {
 public:
  TransferMap(double time, int sender_qubits, int receiver_qubits, CMatrix coefficients);

  double time() const noexcept { return time_; }
  int sender_qubits() const noexcept { return sender_qubits_; }
  int receiver_qubits() const noexcept { return receiver_qubits_; }
  Index sender_dim() const noexcept { return Index{1} << sender_qubits_; }
  Index receiver_dim() const noexcept { return Index{1} << receiver_qubits_; }

  /// α_{ab;ij}, zero-based indices.
  Complex alpha(Index a, Index b, Index i, Index j) const;
  const CMatrix& coefficients() const noexcept { return coefficients_; }

  CMatrix apply(const CMatrix& sender) const;

  /// Map followed by receiver-side conjugation ρ^R -> U ρ^R U†.
  TransferMap conjugated(const CMatrix& u) const;
  /// Map followed by a trace over all but the last `kept` receiver qubits.
  TransferMap reduced_to_trailing(int kept) const;

  /// Largest |α_{ab;ij}| with coherence_order(a,b) != coherence_order(i,j).
  double max_cross_order() const;
  /// Largest |α_{ba;ji} - conj(α_{ab;ij})|.
  double max_conjugation_asymmetry() const;

  /// Coefficients grouped "order0", "order1", ... with 1-based labels "a_ab_ij".
  nlohmann::json to_json() const;

 private:
  double time_;
  int sender_qubits_;
  int receiver_qubits_;
  CMatrix coefficients_;  // row a*dR + b, column i*dS + j
};

struct ReceiverState {
  DensityMatrix state;
  double neglected_weight;
};

struct OptimalTime {
  double time;
  double value;  // |α| at `time`
  std::vector<double> grid_times;
  std::vector<double> grid_values;
};

struct TransferScanRow {
  double time;
  double abs_alpha_top;             // |α_{top;top}| for the maximal coherence order
  std::vector<double> intensities;  // receiver I_n for n = 0..M, supplied sender
};

/// Sector system plus thermal layout for repeated transfer computations.
///
/// Only sectors up to `max_excitation` are built; their eigensystems are
/// computed once and reused by every call.
class TransferEngine {
 public:
  TransferEngine(ChainLayout layout, double coupling, int max_excitation,
                 SectorOptions options = {});

  const ChainLayout& layout() const noexcept { return layout_; }
  double coupling() const noexcept { return coupling_; }
  int max_excitation() const noexcept { return max_excitation_; }
  const SectorSystemPtr& system() const noexcept { return system_; }
  double neglected_weight_bound() const { return tail_weight_bound(layout_, max_excitation_); }

  ThermalProduct product(const CMatrix& sender) const;

  /// Reduced state on the last `output_qubits` sites (0 means M).
  ReceiverState receiver_state(const DensityMatrix& sender, double t, int output_qubits = 0) const;
  TransferMap transfer_map(double t, int output_qubits = 0) const;

  /// |α_{top;top}(t)| where top pairs the all-ground and all-excited states.
  SpectralSeries top_coherence_series() const;
  /// Every receiver element for a fixed sender state.
  SpectralSeries receiver_series(const CMatrix& sender, int output_qubits = 0) const;

  OptimalTime find_optimal_time(double t_min, double t_max, int grid_points,
                                double relative_tolerance = 1e-5) const;
  std::vector<TransferScanRow> scan(const CMatrix& sender, const std::vector<double>& times) const;

 private:
  ChainLayout layout_;
  double coupling_;
  int max_excitation_;
  SectorSystemPtr system_;
};

// Free-function entry points; each builds a fresh engine.
ReceiverState receiver_state(const DensityMatrix& sender, const ChainLayout& layout,
                             double coupling, double t, int max_excitation);
TransferMap extract_transfer_map(const ChainLayout& layout, double coupling, double t,
                                 int max_excitation);
OptimalTime find_optimal_time(const ChainLayout& layout, double coupling, double t_min,
                              double t_max, int grid_points, int max_excitation);

/// Evenly spaced grid with `points` samples on [t_min, t_max].
std::vector<double> time_grid(double t_min, double t_max, int points);

}  // namespace mqc
