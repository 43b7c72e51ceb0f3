#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mqc/linalg.hpp"
#include "mqc/types.hpp"

namespace mqc {

struct SectorOptions {
  /// Highest excitation sector to build; negative means all (0..N).
  int max_excitation = -1;
  /// Largest N for which all sectors may be built.
  int dense_qubit_cap = 14;
  /// Largest single sector block allowed in truncated mode.
  Index max_sector_dimension = 12000;
};

/// Basis states with a fixed excitation number and the Hamiltonian block on them.
struct Sector {
  int excitations;
  std::vector<StateBits> states;  // ascending bit patterns
  RMatrix hamiltonian;

  Index dim() const noexcept { return static_cast<Index>(states.size()); }
};

/// Nearest-neighbor XX chain H = D Σ (I_x I_x + I_y I_y), split by excitation number.
///
/// Adjacent flip-flops couple with amplitude D/2. Sector eigensystems are
/// computed on first use (split by the chain's mirror symmetry) and cached; the object is otherwise immutable and
/// safe to share across threads.
class SectorSystem {
 public:
  SectorSystem(int qubits, double coupling, std::vector<Sector> sectors);

  int qubits() const noexcept { return qubits_; }
  double coupling() const noexcept { return coupling_; }
  int max_excitation() const noexcept { return static_cast<int>(sectors_.size()) - 1; }
  bool complete() const noexcept { return max_excitation() == qubits_; }

  const Sector& sector(int l) const;
  const SymmetricEigensystem& spectrum(int l) const;

  /// Position of a basis state inside its sector, if that sector was built.
  std::optional<Index> position(StateBits state) const;

  /// Full 2^N Hamiltonian reassembled from the blocks (complete systems only).
  RMatrix assemble_hamiltonian() const;

 private:
  int qubits_;
  double coupling_;
  std::vector<Sector> sectors_;
  mutable std::vector<std::once_flag> spectrum_once_;
  mutable std::vector<std::unique_ptr<SymmetricEigensystem>> spectra_;
};

using SectorSystemPtr = std::shared_ptr<const SectorSystem>;

SectorSystemPtr build_sectors(int qubits, double coupling, SectorOptions options = {});

}  // namespace mqc
