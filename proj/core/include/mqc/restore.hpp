#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mqc/density_matrix.hpp"
#include "mqc/transfer.hpp"
#include "mqc/types.hpp"

namespace mqc {

/// Operator-basis element commuting with the total I_z of an M_ext-qubit block.
struct CommutingElement {
  std::string label;  // e.g. "Iz1 I+2 I-3"
  CMatrix op;
};

/// Products of single-site {E, I_z, I+, I-} with as many raising as lowering
/// factors; C(2M, M) elements in total.
class CommutingBasis {
 public:
  CommutingBasis(int qubits, std::vector<CommutingElement> elements);

  int qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return elements_.size(); }
  /// The identity only contributes a global phase.
  std::size_t effective_parameter_count() const noexcept { return elements_.size() - 1; }
  const std::vector<CommutingElement>& elements() const noexcept { return elements_; }

  /// Hermitian generators spanning the same space: diagonal products as-is,
  /// raising/lowering products P paired into P + P† and i(P - P†).
  const std::vector<CMatrix>& hermitian_generators() const noexcept { return generators_; }

 private:
  int qubits_;
  std::vector<CommutingElement> elements_;
  std::vector<CMatrix> generators_;
};

CommutingBasis build_commuting_basis(int qubits);

/// exp(i Σ_g φ_g G_g) over the Hermitian generators of `basis`.
CMatrix unitary_from_generators(const CommutingBasis& basis, std::span<const double> phases);

struct RestorePhases {
  std::vector<double> phi;
};

/// U = e^{iφ1 (I1+ I2- + I1- I2+)} e^{φ2 (I1+ I2- - I1- I2+)} e^{iΦ}, Φ = diag(φ3..φ6).
CMatrix build_unitary_2q(const RestorePhases& phases);

/// Tr over the extended receiver's leading qubits of U ρ^{R_ext} U†.
CMatrix restore_receiver(const CMatrix& extended_receiver, int extended_qubits,
                         int receiver_qubits, const CMatrix& u);

/// Reduces a full chain state to the last M_ext qubits, applies U, then keeps the last M.
DensityMatrix apply_restore(const DensityMatrix& full, const ChainLayout& layout,
                            int extended_qubits, const CMatrix& u);

/// Receiver elements to null for a given sender pattern.
struct RestoreTarget {
  CMatrix sender_pattern;                           // sender input fed through the map
  std::vector<std::pair<Index, Index>> zero_positions;  // zero-based receiver (row, col)
};

/// Single-quantum family with a = 1 at (1,2), (1,3), (2,4) and the target α_34 = 0.
RestoreTarget single_quantum_target();
/// The ±1-order sender matrix of that family for amplitude a (1-based positions above).
CMatrix single_quantum_pattern(Complex a);

struct OptimizerSettings {
  int starts = 64;
  double diameter_tolerance = 1e-8;
  int max_evaluations = 20000;
  std::uint64_t seed = 1;
  double exact_threshold = 1e-10;
  /// Extra deterministic start points tried before the random ones.
  std::vector<std::vector<double>> seed_points;
};

struct PhaseOptimization {
  RestorePhases phases;
  double residual;              // Σ_targets |α|²
  bool exact;                   // residual below exact_threshold
  std::vector<Complex> alphas;  // restored pattern coefficients at every order-1 upper position
  std::vector<std::pair<Index, Index>> alpha_positions;  // zero-based, row-major
  int starts_run;
};

/// Unitary family parameterized by a real vector.
struct UnitaryFamily {
  int parameters;
  std::function<CMatrix(std::span<const double>)> build;
};

UnitaryFamily two_qubit_family();
UnitaryFamily generator_family(const CommutingBasis& basis);

/// Minimizes Σ_targets |(U Φ(P) U†)_ab|² by multi-start Nelder-Mead, where
/// Φ is the transfer map to the receiver (or extended receiver, for families
/// acting on more qubits than the target receiver).
PhaseOptimization optimize_phases(const TransferMap& map, const RestoreTarget& target,
                                  const UnitaryFamily& family, int receiver_qubits,
                                  const OptimizerSettings& settings = {});
/// Two-qubit receiver, product-form unitary.
PhaseOptimization optimize_phases(const TransferMap& map, const RestoreTarget& target,
                                  const OptimizerSettings& settings = {});

/// Σ_targets |α|² of the restored pattern for a given unitary.
double restore_residual(const TransferMap& map, const RestoreTarget& target, const CMatrix& u,
                        int receiver_qubits);

struct RestoredFormReport {
  struct Entry {
    Index row;
    Index col;
    Complex receiver;
    Complex sender;
    std::optional<Complex> scale;  // receiver / sender when sender != 0
  };
  std::vector<Entry> proportional;
  std::vector<Entry> zeros;
  double max_zero_magnitude;
  bool restored;  // every zero position below tolerance
};

/// Checks ρ^R_ij = f_ij ρ^S_ij on the proportional positions and ρ^R_ij = 0 on
/// the zero positions (zero-based).
RestoredFormReport verify_restored_form(const CMatrix& receiver, const CMatrix& sender,
                                        const std::vector<std::pair<Index, Index>>& proportional,
                                        const std::vector<std::pair<Index, Index>>& zeros,
                                        double zero_tolerance = 1e-8);

nlohmann::json to_json(const PhaseOptimization& result);

}  // namespace mqc
