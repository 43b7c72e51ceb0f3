#include "mqc/state_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"

namespace mqc {

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const auto kind = a.physical() && b.physical() ? Physicality::physical : Physicality::unchecked;
  return DensityMatrix(a.qubits() + b.qubits(), tensor(a.matrix(), b.matrix()), kind);
}

CMatrix partial_trace(const CMatrix& m, int qubits, std::span<const int> keep) {
  const Index dim = Index{1} << qubits;
  if (m.rows() != dim || m.cols() != dim) throw DimensionError("partial_trace: shape mismatch");
  if (keep.empty()) throw RangeError("partial_trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw RangeError("partial_trace: repeated qubit in keep set");
  }
  for (int q : kept) {
    if (q < 1 || q > qubits) throw RangeError("partial_trace: qubit " + std::to_string(q) +
                                              " outside 1.." + std::to_string(qubits));
  }
  StateBits keep_mask = 0;
  for (int q : kept) keep_mask |= StateBits{1} << (qubits - q);
  const int k = static_cast<int>(kept.size());

  // Compress the kept bits of a full index into a k-bit index, preserving chain order.
  auto compress = [&](StateBits full) {
    StateBits out = 0;
    for (int q : kept) out = (out << 1) | ((full >> (qubits - q)) & 1U);
    return static_cast<Index>(out);
  };

  const Index rdim = Index{1} << k;
  CMatrix out = CMatrix::Zero(rdim, rdim);
  for (Index j = 0; j < dim; ++j) {
    const auto jb = static_cast<StateBits>(j);
    const Index jr = compress(jb);
    for (Index i = 0; i < dim; ++i) {
      const auto ib = static_cast<StateBits>(i);
      // Traced-out bits must agree between row and column.
      if (((ib ^ jb) & ~keep_mask) != 0) continue;
      out(compress(ib), jr) += m(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  CMatrix r = partial_trace(rho.matrix(), rho.qubits(), keep);
  const auto kind = rho.physical() ? Physicality::physical : Physicality::unchecked;
  return DensityMatrix(static_cast<int>(keep.size()), std::move(r), kind, 1e-10);
}

CMatrix reduce_to_trailing(const CMatrix& m, int qubits, int kept) {
  if (kept < 1 || kept > qubits) throw RangeError("reduce_to_trailing: bad kept count");
  const Index rdim = Index{1} << kept;
  const Index outer = Index{1} << (qubits - kept);
  CMatrix out = CMatrix::Zero(rdim, rdim);
  for (Index c = 0; c < outer; ++c) out += m.block(c * rdim, c * rdim, rdim, rdim);
  return out;
}

std::pair<double, double> thermal_populations(double beta) {
  if (!std::isfinite(beta)) throw RangeError("inverse temperature must be finite");
  // e^{±b/2} / (2 cosh(b/2)) written to stay finite for large |b|.
  const double e = std::exp(-std::abs(beta));
  const double major = 1.0 / (1.0 + e);
  const double minor = e / (1.0 + e);
  return beta >= 0 ? std::pair{major, minor} : std::pair{minor, major};
}

RVector thermal_diagonal(double beta, int qubits) {
  if (qubits < 1) throw RangeError("thermal state needs at least one qubit");
  const auto [ground, excited] = thermal_populations(beta);
  const Index dim = Index{1} << qubits;
  RVector d(dim);
  for (Index i = 0; i < dim; ++i) {
    const int e = excitation_count(static_cast<StateBits>(i));
    d(i) = std::pow(ground, qubits - e) * std::pow(excited, e);
  }
  return d;
}

DensityMatrix thermal_state(double beta, int qubits) {
  const RVector d = thermal_diagonal(beta, qubits);
  CMatrix m = d.cast<Complex>().asDiagonal();
  return DensityMatrix(qubits, std::move(m), Physicality::physical, 1e-10);
}

double thermal_tail_probability(double beta, int qubits, int excitations) {
  const auto [ground, excited] = thermal_populations(beta);
  double tail = 0.0;
  for (int e = std::max(excitations + 1, 0); e <= qubits; ++e) {
    tail += static_cast<double>(binomial(qubits, e)) * std::pow(ground, qubits - e) *
            std::pow(excited, e);
  }
  return tail;
}

CMatrix total_iz(int qubits) {
  const Index dim = Index{1} << qubits;
  CMatrix iz = CMatrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    iz(i, i) = 0.5 * (qubits - 2 * excitation_count(static_cast<StateBits>(i)));
  }
  return iz;
}

}  // namespace mqc
