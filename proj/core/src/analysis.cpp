#include "mqc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "mqc/basis.hpp"
#include "mqc/coherence.hpp"
#include "mqc/errors.hpp"

namespace mqc {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw RangeError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

namespace {

void check_qubits_and_order(int qubits, int order) {
  if (qubits < 1 || qubits > 30) throw RangeError("qubit count outside 1..30");
  if (order < 1 || order > qubits) {
    throw RangeError("order " + std::to_string(order) + " outside 1.." + std::to_string(qubits));
  }
}

}  // namespace

std::int64_t rank_bound(int qubits, int order) {
  check_qubits_and_order(qubits, order);
  std::int64_t total = 0;
  for (int k = 0; k <= qubits; ++k) {
    const auto here = static_cast<std::int64_t>(binomial(qubits, k));
    const auto reach = static_cast<std::int64_t>(binomial(qubits, k + order) +
                                                 binomial(qubits, k - order));
    total += std::min(here, reach);
  }
  return total;
}

Rational max_intensity(int qubits, int order) {
  return Rational::make(rank_bound(qubits, order), std::int64_t{1} << (2 * qubits));
}

std::pair<Rational, Rational> zero_order_bounds(int qubits) {
  if (qubits < 1 || qubits > 60) throw RangeError("qubit count outside 1..60");
  return {Rational::make(1, std::int64_t{1} << qubits), Rational{1, 1}};
}

std::vector<RankReport> table1(int min_qubits, int max_qubits) {
  std::vector<RankReport> rows;
  for (int n_q = min_qubits; n_q <= max_qubits; ++n_q) {
    for (int n = 1; n <= n_q; ++n) {
      rows.push_back({n_q, n, rank_bound(n_q, n), max_intensity(n_q, n)});
    }
  }
  return rows;
}

std::string table1_csv(const std::vector<RankReport>& rows) {
  std::ostringstream out;
  out << "N,n,N_n,two_I_max_num,two_I_max_den\n";
  for (const auto& r : rows) {
    out << r.qubits << ',' << r.order << ',' << r.rank_bound << ',' << r.two_max_intensity.num
        << ',' << r.two_max_intensity.den << '\n';
  }
  return out.str();
}

PairingReport verify_eigen_pairing(const CMatrix& m, int qubits, int order) {
  check_qubits_and_order(qubits, order);
  const int allowed[] = {order, -order};
  if (max_outside_orders(m, qubits, allowed) != 0.0) {
    throw PreconditionError("matrix has entries outside coherence orders ±" +
                            std::to_string(order));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  RVector lambda = es.eigenvalues();
  const Index d = lambda.size();
  double residual = 0.0;
  for (Index k = 0; k < d / 2; ++k) {
    residual = std::max(residual, std::abs(lambda(k) + lambda(d - 1 - k)));
  }
  return {std::move(lambda), residual};
}

Complex power_trace(const CMatrix& m, int power) {
  if (power < 1) throw RangeError("power must be positive");
  CMatrix acc = m;
  for (int p = 1; p < power; ++p) acc = acc * m;
  return acc.trace();
}

int numeric_rank(const CMatrix& m, double relative_threshold) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = relative_threshold * s(0);
  return static_cast<int>((s.array() > cut).count());
}

CMatrix random_single_order(int qubits, int order, std::mt19937_64& rng) {
  check_qubits_and_order(qubits, order);
  std::normal_distribution<double> gauss;
  const Index dim = Index{1} << qubits;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      if (coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j)) == order) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        m(i, j) = Complex(re, im);
        m(j, i) = std::conj(m(i, j));
      }
    }
  }
  return m;
}

CMatrix constructive_maximum(const CMatrix& m, int qubits, double relative_threshold) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const RVector& lambda = es.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  const double level = 1.0 / static_cast<double>(Index{1} << qubits);
  RVector replaced(lambda.size());
  for (Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) <= relative_threshold * scale) {
      replaced(k) = 0.0;
    } else {
      replaced(k) = lambda(k) > 0 ? level : -level;
    }
  }
  return es.eigenvectors() * replaced.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace mqc
