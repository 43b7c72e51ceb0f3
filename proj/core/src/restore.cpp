#include "mqc/restore.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"
#include "mqc/linalg.hpp"
#include "mqc/optimize.hpp"
#include "mqc/state_ops.hpp"

namespace mqc {

namespace {

// Single-site factors; bit 0 is spin up, so I+ = |0><1|.
enum Factor { kE = 0, kZ = 1, kPlus = 2, kMinus = 3 };

CMatrix site_matrix(int f) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (f) {
    case kE: m(0, 0) = m(1, 1) = 1.0; break;
    case kZ: m(0, 0) = 0.5; m(1, 1) = -0.5; break;
    case kPlus: m(0, 1) = 1.0; break;
    default: m(1, 0) = 1.0; break;
  }
  return m;
}

CMatrix product_operator(const std::vector<int>& factors) {
  CMatrix op = CMatrix::Identity(1, 1);
  for (const int f : factors) op = tensor(op, site_matrix(f));
  return op;
}

std::string product_label(const std::vector<int>& factors) {
  static const char* names[] = {"", "Iz", "I+", "I-"};
  std::string label;
  for (std::size_t q = 0; q < factors.size(); ++q) {
    if (factors[q] == kE) continue;
    if (!label.empty()) label += ' ';
    label += names[factors[q]] + std::to_string(q + 1);
  }
  return label.empty() ? "E" : label;
}

// Order-1 positions (a < b) of a receiver register, row-major.
std::vector<std::pair<Index, Index>> single_quantum_positions(int qubits) {
  const Index d = Index{1} << qubits;
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < d; ++a) {
    for (Index b = a + 1; b < d; ++b) {
      if (coherence_order(static_cast<StateBits>(a), static_cast<StateBits>(b)) == 1) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

CMatrix restored_pattern(const TransferMap& map, const RestoreTarget& target, const CMatrix& u,
                         int receiver_qubits) {
  const CMatrix image = map.apply(target.sender_pattern);
  if (u.rows() != image.rows()) {
    throw DimensionError("restoring unitary is " + std::to_string(u.rows()) +
                         "-dimensional, transfer map output " + std::to_string(image.rows()));
  }
  return restore_receiver(image, map.receiver_qubits(), receiver_qubits, u);
}

}  // namespace

CommutingBasis::CommutingBasis(int qubits, std::vector<CommutingElement> elements)
    : qubits_(qubits), elements_(std::move(elements)) {
  const Index d = Index{1} << qubits_;
  for (const auto& e : elements_) {
    if (e.op.rows() != d || e.op.cols() != d) throw DimensionError("basis element " + e.label);
  }
  // Pair each off-diagonal product with its adjoint; diagonal products are Hermitian already.
  std::vector<bool> used(elements_.size());
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (used[k]) continue;
    const CMatrix& p = elements_[k].op;
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() == 0.0) {
      generators_.push_back(p);
      used[k] = true;
      continue;
    }
    for (std::size_t m = k + 1; m < elements_.size(); ++m) {
      if (!used[m] && (elements_[m].op - p.adjoint()).cwiseAbs().maxCoeff() == 0.0) {
        used[k] = used[m] = true;
        generators_.push_back(p + p.adjoint());
        generators_.push_back(Complex(0.0, 1.0) * (p - p.adjoint()));
        break;
      }
    }
    if (!used[k]) throw PreconditionError("basis element " + elements_[k].label + " has no adjoint");
  }
}

CommutingBasis build_commuting_basis(int qubits) {
  if (qubits < 1 || qubits > 4) {
    throw RangeError("extended receiver size " + std::to_string(qubits) + " outside 1..4");
  }
  std::vector<CommutingElement> elements;
  const int combos = 1 << (2 * qubits);
  for (int code = 0; code < combos; ++code) {
    std::vector<int> factors(static_cast<std::size_t>(qubits));
    int raising = 0;
    int lowering = 0;
    for (int q = 0; q < qubits; ++q) {
      // Most significant digit is site 1, so identity-heavy products come first.
      const int f = (code >> (2 * (qubits - 1 - q))) & 3;
      factors[static_cast<std::size_t>(q)] = f;
      raising += f == kPlus;
      lowering += f == kMinus;
    }
    if (raising != lowering) continue;
    elements.push_back({product_label(factors), product_operator(factors)});
  }
  return CommutingBasis(qubits, std::move(elements));
}

CMatrix unitary_from_generators(const CommutingBasis& basis, std::span<const double> phases) {
  const auto& gens = basis.hermitian_generators();
  if (phases.size() != gens.size()) {
    throw DimensionError("expected " + std::to_string(gens.size()) + " phases, got " +
                         std::to_string(phases.size()));
  }
  const Index d = Index{1} << basis.qubits();
  CMatrix h = CMatrix::Zero(d, d);
  for (std::size_t g = 0; g < gens.size(); ++g) h += phases[g] * gens[g];
  return hermitian_exp_i(h, 1.0);
}

CMatrix build_unitary_2q(const RestorePhases& phases) {
  const auto& phi = phases.phi;
  if (phi.size() != 6) throw DimensionError("two-qubit restoring unitary takes six phases");
  for (const double p : phi) {
    if (!std::isfinite(p)) throw RangeError("restoring phase is not finite");
  }
  const CMatrix pm = product_operator({kPlus, kMinus});
  const CMatrix mp = product_operator({kMinus, kPlus});
  const CMatrix first = hermitian_exp_i(pm + mp, phi[0]);
  // e^{φ2 A} with A anti-Hermitian equals e^{i φ2 (-i A)}.
  const CMatrix second = hermitian_exp_i(Complex(0.0, -1.0) * (pm - mp), phi[1]);
  CMatrix third = CMatrix::Zero(4, 4);
  for (Index k = 0; k < 4; ++k) third(k, k) = std::polar(1.0, phi[static_cast<std::size_t>(k) + 2]);
  return first * second * third;
}

CMatrix restore_receiver(const CMatrix& extended_receiver, int extended_qubits,
                         int receiver_qubits, const CMatrix& u) {
  const Index d = Index{1} << extended_qubits;
  if (extended_receiver.rows() != d || extended_receiver.cols() != d || u.rows() != d ||
      u.cols() != d) {
    throw DimensionError("extended receiver and unitary must both be " + std::to_string(d) +
                         "-dimensional");
  }
  return reduce_to_trailing(u * extended_receiver * u.adjoint(), extended_qubits,
                            receiver_qubits);
}

DensityMatrix apply_restore(const DensityMatrix& full, const ChainLayout& layout,
                            int extended_qubits, const CMatrix& u) {
  layout.validate();
  if (full.qubits() != layout.qubits) throw DimensionError("state does not match the layout");
  if (extended_qubits < layout.sender_qubits || extended_qubits > layout.qubits) {
    throw RangeError("extended receiver size out of range");
  }
  const CMatrix ext = reduce_to_trailing(full.matrix(), full.qubits(), extended_qubits);
  return DensityMatrix(layout.sender_qubits,
                       restore_receiver(ext, extended_qubits, layout.sender_qubits, u),
                       full.physical() ? Physicality::physical : Physicality::unchecked);
}

CMatrix single_quantum_pattern(Complex a) {
  CMatrix s = CMatrix::Zero(4, 4);
  for (const auto& [i, j] : single_quantum_positions(2)) {
    if (i == 2 && j == 3) continue;
    s(i, j) = a;
    s(j, i) = std::conj(a);
  }
  return s;
}

RestoreTarget single_quantum_target() { return {single_quantum_pattern(1.0), {{2, 3}}}; }

UnitaryFamily two_qubit_family() {
  return {6, [](std::span<const double> x) {
            return build_unitary_2q({std::vector<double>(x.begin(), x.end())});
          }};
}

UnitaryFamily generator_family(const CommutingBasis& basis) {
  return {static_cast<int>(basis.hermitian_generators().size()),
          [basis](std::span<const double> x) { return unitary_from_generators(basis, x); }};
}

double restore_residual(const TransferMap& map, const RestoreTarget& target, const CMatrix& u,
                        int receiver_qubits) {
  const CMatrix r = restored_pattern(map, target, u, receiver_qubits);
  double sum = 0.0;
  for (const auto& [a, b] : target.zero_positions) sum += std::norm(r(a, b));
  return sum;
}

PhaseOptimization optimize_phases(const TransferMap& map, const RestoreTarget& target,
                                  const UnitaryFamily& family, int receiver_qubits,
                                  const OptimizerSettings& settings) {
  if (target.sender_pattern.rows() != map.sender_dim() ||
      target.sender_pattern.cols() != map.sender_dim()) {
    throw DimensionError("sender pattern does not match the transfer map");
  }
  const Index dr = Index{1} << receiver_qubits;
  for (const auto& [a, b] : target.zero_positions) {
    if (a < 0 || b < 0 || a >= dr || b >= dr) throw RangeError("zero position outside receiver");
  }

  PhaseOptimization out{};
  out.phases.phi.assign(static_cast<std::size_t>(family.parameters), 0.0);
  if (target.zero_positions.empty()) {
    out.residual = 0.0;
    out.starts_run = 0;
  } else {
    const Objective objective = [&](std::span<const double> x) {
      return restore_residual(map, target, family.build(x), receiver_qubits);
    };
    const SimplexSettings simplex{0.5, settings.diameter_tolerance, settings.max_evaluations};
    std::mt19937_64 rng(settings.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    std::vector<std::vector<double>> starts;
    for (const auto& s : settings.seed_points) {
      if (s.size() != static_cast<std::size_t>(family.parameters)) {
        throw DimensionError("seed point has " + std::to_string(s.size()) + " phases, family " +
                             std::to_string(family.parameters));
      }
      starts.push_back(s);
    }
    for (int k = 0; k < settings.starts; ++k) {
      std::vector<double> x(static_cast<std::size_t>(family.parameters));
      for (double& v : x) v = angle(rng);
      starts.push_back(std::move(x));
    }
    out.residual = objective(out.phases.phi);
    for (const auto& s : starts) {
      const SimplexResult r = nelder_mead(objective, s, simplex);
      if (r.value < out.residual) {
        out.residual = r.value;
        out.phases.phi = r.x;
      }
    }
    out.starts_run = static_cast<int>(starts.size());
  }
  out.exact = out.residual < settings.exact_threshold;

  const CMatrix restored =
      restored_pattern(map, target, family.build(out.phases.phi), receiver_qubits);
  out.alpha_positions = single_quantum_positions(receiver_qubits);
  for (const auto& [a, b] : out.alpha_positions) out.alphas.push_back(restored(a, b));
  return out;
}

PhaseOptimization optimize_phases(const TransferMap& map, const RestoreTarget& target,
                                  const OptimizerSettings& settings) {
  if (map.receiver_qubits() != 2) throw DimensionError("two-qubit family needs a two-qubit receiver");
  return optimize_phases(map, target, two_qubit_family(), 2, settings);
}

RestoredFormReport verify_restored_form(const CMatrix& receiver, const CMatrix& sender,
                                        const std::vector<std::pair<Index, Index>>& proportional,
                                        const std::vector<std::pair<Index, Index>>& zeros,
                                        double zero_tolerance) {
  if (receiver.rows() != sender.rows() || receiver.cols() != sender.cols()) {
    throw DimensionError("receiver and sender must have equal dimensions");
  }
  auto entry = [&](Index i, Index j) {
    if (i < 0 || j < 0 || i >= receiver.rows() || j >= receiver.cols()) {
      throw RangeError("pattern position outside the matrix");
    }
    RestoredFormReport::Entry e{i, j, receiver(i, j), sender(i, j), std::nullopt};
    if (sender(i, j) != Complex{}) e.scale = receiver(i, j) / sender(i, j);
    return e;
  };
  RestoredFormReport report{};
  for (const auto& [i, j] : proportional) report.proportional.push_back(entry(i, j));
  report.max_zero_magnitude = 0.0;
  for (const auto& [i, j] : zeros) {
    report.zeros.push_back(entry(i, j));
    report.max_zero_magnitude = std::max(report.max_zero_magnitude, std::abs(receiver(i, j)));
  }
  report.restored = report.max_zero_magnitude < zero_tolerance;
  return report;
}

nlohmann::json to_json(const PhaseOptimization& result) {
  nlohmann::json alphas = nlohmann::json::object();
  for (std::size_t k = 0; k < result.alphas.size(); ++k) {
    const auto& [a, b] = result.alpha_positions[k];
    alphas["a_" + std::to_string(a + 1) + std::to_string(b + 1)] = {result.alphas[k].real(),
                                                                     result.alphas[k].imag()};
  }
  return {{"phi", result.phases.phi},
          {"residual", result.residual},
          {"exact", result.exact},
          {"starts", result.starts_run},
          {"alphas", alphas}};
}

}  // namespace mqc
