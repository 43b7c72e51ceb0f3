#pragma once

// Brute-force reference implementations built from Pauli matrices and a
// generic matrix exponential. Nothing here uses the sector machinery.

#include <random>
#include <vector>

#include "mqc/types.hpp"

namespace oracle {

using mqc::CMatrix;
using mqc::Complex;

/// Single-site operator `op` acting on qubit q (1-based) of an N-qubit register.
CMatrix site_operator(const CMatrix& op, int q, int qubits);

CMatrix spin_x();
CMatrix spin_y();
CMatrix spin_z();

/// D Σ (Ix Ix + Iy Iy) over nearest neighbours.
CMatrix xx_hamiltonian(int qubits, double coupling);
CMatrix total_iz(int qubits);

/// exp(-i H t) through the Padé matrix exponential.
CMatrix propagator(const CMatrix& h, double t);

/// Keeps the qubits listed (1-based, ascending) by explicit index bookkeeping.
CMatrix partial_trace(const CMatrix& m, int qubits, const std::vector<int>& keep);

/// exp(b Iz) / Tr exp(b Iz).
CMatrix thermal(double beta, int qubits);

/// Order of element (i, j) read off the total-Iz diagonal: Iz_ii - Iz_jj.
int order_of(const CMatrix& iz, mqc::Index i, mqc::Index j);

/// Σ_{order(i,j) = n} |m_ij|².
double intensity(const CMatrix& m, int qubits, int n);

/// Random density matrix G G† / Tr.
CMatrix random_state(int qubits, std::mt19937_64& rng);

/// Receiver image of the sender probe |i><j| after time t, full dense pipeline.
CMatrix probe_image(int qubits, int sender, double beta, double coupling, double t, int i, int j,
                    int kept);

/// α_{ab;ij} as a (dR², dS²) matrix, row a*dR+b, column i*dS+j.
CMatrix transfer_coefficients(int qubits, int sender, double beta, double coupling, double t,
                              int kept);

}  // namespace oracle
