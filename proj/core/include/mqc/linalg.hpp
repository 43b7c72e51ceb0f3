#pragma once

#include "mqc/types.hpp"

namespace mqc {

struct SymmetricEigensystem {
  RVector values;   // ascending
  RMatrix vectors;  // columns are orthonormal eigenvectors
};

/// Eigensystem of a real symmetric matrix.
SymmetricEigensystem symmetric_eigensystem(const RMatrix& h);

/// U diag(e^{-i E t}) U^T for a real orthogonal U.
CMatrix spectral_propagator(const SymmetricEigensystem& eig, double t);

/// exp(i·scale·h) for a Hermitian h.
CMatrix hermitian_exp_i(const CMatrix& h, double scale);

double max_abs(const CMatrix& m);

/// max |U†U - I|.
double unitarity_error(const CMatrix& u);

}  // namespace mqc
