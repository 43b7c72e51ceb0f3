#include "mqc/density_matrix.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "mqc/errors.hpp"

namespace mqc {

int qubits_for_dimension(Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

double max_hermitian_deviation(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_positive_semidefinite(const CMatrix& m, double floor) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= floor;
}

DensityMatrix::DensityMatrix(int qubits, CMatrix entries, Physicality kind,
                             double trace_tolerance)
    : qubits_(qubits), entries_(std::move(entries)), kind_(kind) {
  if (qubits < 1) throw RangeError("density matrix needs at least one qubit");
  const Index dim = Index{1} << qubits;
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw DimensionError("density matrix over " + std::to_string(qubits) + " qubits must be " +
                         std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (const double dev = max_hermitian_deviation(entries_); dev > kHermitianTolerance) {
    throw PreconditionError("density matrix is not Hermitian (deviation " + std::to_string(dev) +
                            ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > trace_tolerance) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr.real() << " differs from 1";
    throw PreconditionError(msg.str());
  }
  if (kind_ == Physicality::physical && min_eigenvalue() < kPsdFloor) {
    throw PreconditionError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  const Index dim = Index{1} << qubits;
  return DensityMatrix(qubits, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int qubits, StateBits index) {
  const Index dim = Index{1} << qubits;
  if (static_cast<Index>(index) >= dim) throw RangeError("basis index out of range");
  CMatrix m = CMatrix::Zero(dim, dim);
  m(static_cast<Index>(index), static_cast<Index>(index)) = 1.0;
  return DensityMatrix(qubits, std::move(m));
}

double DensityMatrix::purity() const {
  // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
  return entries_.squaredNorm();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json entries = nlohmann::json::array();
  const CMatrix& m = rho.matrix();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"n_qubits", rho.qubits()}, {"entries", std::move(entries)}};
}

DensityMatrix density_matrix_from_json(const nlohmann::json& doc, Physicality kind) {
  if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("entries")) {
    throw ParseError("state JSON needs \"n_qubits\" and \"entries\"");
  }
  if (!doc["n_qubits"].is_number_integer()) throw ParseError("\"n_qubits\" must be an integer");
  const int n = doc["n_qubits"].get<int>();
  if (n < 1 || n > 14) throw ParseError("\"n_qubits\" must be in 1..14");
  const auto& entries = doc["entries"];
  const Index dim = Index{1} << n;
  if (!entries.is_array() || static_cast<Index>(entries.size()) != dim * dim) {
    throw ParseError("\"entries\" must hold " + std::to_string(dim * dim) + " [re, im] pairs");
  }
  CMatrix m(dim, dim);
  for (Index k = 0; k < dim * dim; ++k) {
    const auto& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("entry " + std::to_string(k) + " is not a [re, im] number pair");
    }
    m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return DensityMatrix(n, std::move(m), kind);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("invalid state: ") + ex.what());
  }
}

namespace {

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

DensityMatrix read_density_matrix(const std::filesystem::path& path, Physicality kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    // Byte positions point one past the offending character.
    const auto [line, col] = line_and_column(text, ex.byte == 0 ? 0 : ex.byte - 1);
    throw ParseError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON");
  }
  try {
    return density_matrix_from_json(doc, kind);
  } catch (const ParseError& ex) {
    throw ParseError(path.string() + ": " + ex.what());
  }
}

void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write state file " + path.string());
  out << to_json(rho).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace mqc
