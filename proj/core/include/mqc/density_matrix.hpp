#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "mqc/types.hpp"

namespace mqc {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdFloor = -1e-10;

enum class Physicality {
  physical,   // Hermitian, unit trace, positive semidefinite
  unchecked,  // Hermitian, unit trace; positivity not enforced
};

/// Hermitian unit-trace matrix over the 2^N multiplicative basis.
class DensityMatrix {
 public:
  /// Validates the invariants; `trace_tolerance` may be widened by callers
  /// that knowingly discard weight (sector-truncated evolution).
  DensityMatrix(int qubits, CMatrix entries, Physicality kind = Physicality::physical,
                double trace_tolerance = kTraceTolerance);

  static DensityMatrix maximally_mixed(int qubits);
  static DensityMatrix basis_state(int qubits, StateBits index);

  int qubits() const noexcept { return qubits_; }
  Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }
  bool physical() const noexcept { return kind_ == Physicality::physical; }

  double purity() const;
  double min_eigenvalue() const;

 private:
  int qubits_;
  CMatrix entries_;
  Physicality kind_;
};

int qubits_for_dimension(Index dim);
double max_hermitian_deviation(const CMatrix& m);
bool is_positive_semidefinite(const CMatrix& m, double floor = kPsdFloor);

nlohmann::json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const nlohmann::json& doc,
                                       Physicality kind = Physicality::physical);
DensityMatrix read_density_matrix(const std::filesystem::path& path,
                                  Physicality kind = Physicality::physical);
void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho);

}  // namespace mqc
