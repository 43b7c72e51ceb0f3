#pragma once

#include <span>
#include <vector>

#include "mqc/density_matrix.hpp"
#include "mqc/types.hpp"

namespace mqc {

/// Kronecker product; A's qubits precede B's.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Reduced matrix over the qubits in `keep` (1-based, any order; result keeps
/// them in ascending chain order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
CMatrix partial_trace(const CMatrix& m, int qubits, std::span<const int> keep);

/// Trace over all but the last `kept` qubits.
CMatrix reduce_to_trailing(const CMatrix& m, int qubits, int kept);

/// Single-qubit thermal populations (ground, excited) of e^{b I_z} / (2 cosh(b/2)).
std::pair<double, double> thermal_populations(double beta);

/// Diagonal of e^{b I_z}/Z on N qubits, Z = (2 cosh(b/2))^N.
RVector thermal_diagonal(double beta, int qubits);
DensityMatrix thermal_state(double beta, int qubits);

/// Probability that a thermal register of `qubits` sites holds more than
/// `excitations` excitations.
double thermal_tail_probability(double beta, int qubits, int excitations);

/// Total I_z on `qubits` sites (diagonal).
CMatrix total_iz(int qubits);

}  // namespace mqc
