#include "mqc/coherence.hpp"

#include <algorithm>
#include <string>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"

namespace mqc {

namespace {

void check_order(int n, int qubits) {
  if (n < -qubits || n > qubits) {
    throw RangeError("coherence order " + std::to_string(n) + " outside [-" +
                     std::to_string(qubits) + ", " + std::to_string(qubits) + "]");
  }
}

void check_shape(const CMatrix& m, int qubits) {
  const Index dim = Index{1} << qubits;
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError("matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
  }
}

}  // namespace

CoherenceDecomposition::CoherenceDecomposition(int qubits,
                                               std::vector<std::vector<OrderEntry>> components)
    : qubits_(qubits), components_(std::move(components)) {
  if (components_.size() != static_cast<std::size_t>(2 * qubits_ + 1)) {
    throw DimensionError("decomposition needs 2N+1 components");
  }
  intensities_.reserve(components_.size());
  for (const auto& comp : components_) {
    double s = 0.0;
    for (const auto& e : comp) s += std::norm(e.value);
    intensities_.push_back(s);
  }
}

const std::vector<OrderEntry>& CoherenceDecomposition::component(int n) const {
  check_order(n, qubits_);
  return components_[static_cast<std::size_t>(n + qubits_)];
}

CMatrix CoherenceDecomposition::component_matrix(int n) const {
  const Index dim = Index{1} << qubits_;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& e : component(n)) m(e.row, e.col) = e.value;
  return m;
}

double CoherenceDecomposition::intensity(int n) const {
  check_order(n, qubits_);
  return intensities_[static_cast<std::size_t>(n + qubits_)];
}

CMatrix CoherenceDecomposition::resum() const {
  const Index dim = Index{1} << qubits_;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& comp : components_) {
    for (const auto& e : comp) m(e.row, e.col) += e.value;
  }
  return m;
}

CoherenceDecomposition decompose(const CMatrix& m, int qubits) {
  check_shape(m, qubits);
  std::vector<std::vector<OrderEntry>> parts(static_cast<std::size_t>(2 * qubits + 1));
  const Index dim = m.rows();
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const int n = coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j));
      parts[static_cast<std::size_t>(n + qubits)].push_back({i, j, m(i, j)});
    }
  }
  return CoherenceDecomposition(qubits, std::move(parts));
}

CoherenceDecomposition decompose(const DensityMatrix& rho) {
  return decompose(rho.matrix(), rho.qubits());
}

double intensity(const CMatrix& m, int qubits, int n) {
  check_shape(m, qubits);
  check_order(n, qubits);
  double s = 0.0;
  const Index dim = m.rows();
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      if (coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j)) == n) {
        s += std::norm(m(i, j));
      }
    }
  }
  return s;
}

double intensity(const DensityMatrix& rho, int n) { return intensity(rho.matrix(), rho.qubits(), n); }

std::vector<double> intensities(const CMatrix& m, int qubits) {
  check_shape(m, qubits);
  std::vector<double> out(static_cast<std::size_t>(2 * qubits + 1), 0.0);
  const Index dim = m.rows();
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const int n = coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j));
      out[static_cast<std::size_t>(n + qubits)] += std::norm(m(i, j));
    }
  }
  return out;
}

CMatrix order_part(const CMatrix& m, int qubits, int n) {
  check_shape(m, qubits);
  check_order(n, qubits);
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j)) == n) {
        out(i, j) = m(i, j);
      }
    }
  }
  return out;
}

double max_outside_orders(const CMatrix& m, int qubits, std::span<const int> allowed) {
  check_shape(m, qubits);
  double worst = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const int n = coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j));
      if (std::find(allowed.begin(), allowed.end(), n) == allowed.end()) {
        worst = std::max(worst, std::abs(m(i, j)));
      }
    }
  }
  return worst;
}

}  // namespace mqc
