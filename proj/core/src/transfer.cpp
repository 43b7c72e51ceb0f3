#include "mqc/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"
#include "mqc/optimize.hpp"
#include "mqc/state_ops.hpp"

namespace mqc {

void ChainLayout::validate() const {
  if (sender_qubits < 1) throw RangeError("sender needs at least one qubit");
  if (2 * sender_qubits > qubits) {
    throw RangeError("sender and receiver of " + std::to_string(sender_qubits) +
                     " qubits do not fit a chain of " + std::to_string(qubits));
  }
  if (qubits > 62) throw RangeError("chain longer than 62 qubits");
  if (!std::isfinite(beta)) throw RangeError("inverse temperature must be finite");
}

double tail_weight_bound(const ChainLayout& layout, int max_excitation) {
  return thermal_tail_probability(layout.beta, layout.tail_qubits(),
                                  max_excitation - layout.sender_qubits);
}

int auto_max_excitation(const ChainLayout& layout, double tolerance) {
  layout.validate();
  for (int l = layout.sender_qubits; l < layout.qubits; ++l) {
    if (tail_weight_bound(layout, l) < tolerance) return l;
  }
  return layout.qubits;
}

DensityMatrix initial_state(const DensityMatrix& sender, const ChainLayout& layout) {
  layout.validate();
  if (sender.qubits() != layout.sender_qubits) {
    throw DimensionError("sender has " + std::to_string(sender.qubits()) + " qubits, layout " +
                         std::to_string(layout.sender_qubits));
  }
  return tensor(sender, thermal_state(layout.beta, layout.tail_qubits()));
}

// ---------------------------------------------------------------------------

TransferMap::TransferMap(double time, int sender_qubits, int receiver_qubits,
                         CMatrix coefficients)
    : time_(time),
      sender_qubits_(sender_qubits),
      receiver_qubits_(receiver_qubits),
      coefficients_(std::move(coefficients)) {
  const Index ds = sender_dim();
  const Index dr = receiver_dim();
  if (coefficients_.rows() != dr * dr || coefficients_.cols() != ds * ds) {
    throw DimensionError("transfer coefficients must be " + std::to_string(dr * dr) + "x" +
                         std::to_string(ds * ds));
  }
}

Complex TransferMap::alpha(Index a, Index b, Index i, Index j) const {
  const Index ds = sender_dim();
  const Index dr = receiver_dim();
  if (a < 0 || b < 0 || a >= dr || b >= dr || i < 0 || j < 0 || i >= ds || j >= ds) {
    throw RangeError("transfer coefficient index out of range");
  }
  return coefficients_(a * dr + b, i * ds + j);
}

CMatrix TransferMap::apply(const CMatrix& sender) const {
  const Index ds = sender_dim();
  if (sender.rows() != ds || sender.cols() != ds) throw DimensionError("sender dimension mismatch");
  CVector in(ds * ds);
  for (Index i = 0; i < ds; ++i) {
    for (Index j = 0; j < ds; ++j) in(i * ds + j) = sender(i, j);
  }
  const CVector out = coefficients_ * in;
  const Index dr = receiver_dim();
  CMatrix r(dr, dr);
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) r(a, b) = out(a * dr + b);
  }
  return r;
}

namespace {

CMatrix unvec(const CMatrix& coefficients, Index column, Index dr) {
  CMatrix m(dr, dr);
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) m(a, b) = coefficients(a * dr + b, column);
  }
  return m;
}

void vec_into(const CMatrix& m, CMatrix& coefficients, Index column) {
  const Index dr = m.rows();
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) coefficients(a * dr + b, column) = m(a, b);
  }
}

}  // namespace

TransferMap TransferMap::conjugated(const CMatrix& u) const {
  const Index dr = receiver_dim();
  if (u.rows() != dr || u.cols() != dr) throw DimensionError("unitary does not match receiver");
  CMatrix c(coefficients_.rows(), coefficients_.cols());
  for (Index col = 0; col < coefficients_.cols(); ++col) {
    vec_into(u * unvec(coefficients_, col, dr) * u.adjoint(), c, col);
  }
  return TransferMap(time_, sender_qubits_, receiver_qubits_, std::move(c));
}

TransferMap TransferMap::reduced_to_trailing(int kept) const {
  if (kept < 1 || kept > receiver_qubits_) throw RangeError("kept qubit count out of range");
  const Index dk = Index{1} << kept;
  CMatrix c(dk * dk, coefficients_.cols());
  for (Index col = 0; col < coefficients_.cols(); ++col) {
    vec_into(reduce_to_trailing(unvec(coefficients_, col, receiver_dim()), receiver_qubits_, kept),
             c, col);
  }
  return TransferMap(time_, sender_qubits_, kept, std::move(c));
}

double TransferMap::max_cross_order() const {
  const Index ds = sender_dim();
  const Index dr = receiver_dim();
  double worst = 0.0;
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) {
      const int m = coherence_order(static_cast<StateBits>(a), static_cast<StateBits>(b));
      for (Index i = 0; i < ds; ++i) {
        for (Index j = 0; j < ds; ++j) {
          if (coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j)) == m) continue;
          worst = std::max(worst, std::abs(coefficients_(a * dr + b, i * ds + j)));
        }
      }
    }
  }
  return worst;
}

double TransferMap::max_conjugation_asymmetry() const {
  const Index ds = sender_dim();
  const Index dr = receiver_dim();
  double worst = 0.0;
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) {
      for (Index i = 0; i < ds; ++i) {
        for (Index j = 0; j < ds; ++j) {
          worst = std::max(worst, std::abs(coefficients_(b * dr + a, j * ds + i) -
                                           std::conj(coefficients_(a * dr + b, i * ds + j))));
        }
      }
    }
  }
  return worst;
}

nlohmann::json TransferMap::to_json() const {
  const Index ds = sender_dim();
  const Index dr = receiver_dim();
  nlohmann::json doc;
  doc["time"] = time_;
  const int top = std::min(sender_qubits_, receiver_qubits_);
  for (int n = 0; n <= top; ++n) {
    nlohmann::json group = nlohmann::json::object();
    for (Index a = 0; a < dr; ++a) {
      for (Index b = a; b < dr; ++b) {
        if (a == dr - 1 && b == dr - 1) continue;  // fixed by the unit trace
        if (coherence_order(static_cast<StateBits>(a), static_cast<StateBits>(b)) != n) continue;
        for (Index i = 0; i < ds; ++i) {
          for (Index j = 0; j < ds; ++j) {
            if (coherence_order(static_cast<StateBits>(i), static_cast<StateBits>(j)) != n) continue;
            const Complex v = coefficients_(a * dr + b, i * ds + j);
            const std::string label = "a_" + std::to_string(a + 1) + std::to_string(b + 1) + "_" +
                                      std::to_string(i + 1) + std::to_string(j + 1);
            group[label] = {v.real(), v.imag()};
          }
        }
      }
    }
    doc["order" + std::to_string(n)] = std::move(group);
  }
  return doc;
}

// ---------------------------------------------------------------------------

TransferEngine::TransferEngine(ChainLayout layout, double coupling, int max_excitation,
                               SectorOptions options)
    : layout_(layout), coupling_(coupling) {
  layout_.validate();
  if (!std::isfinite(coupling) || coupling == 0.0) {
    throw RangeError("coupling constant must be finite and nonzero");
  }
  max_excitation_ = max_excitation < 0 ? auto_max_excitation(layout_) : max_excitation;
  if (max_excitation_ < layout_.sender_qubits || max_excitation_ > layout_.qubits) {
    throw RangeError("maximum excitation " + std::to_string(max_excitation_) + " outside " +
                     std::to_string(layout_.sender_qubits) + ".." + std::to_string(layout_.qubits));
  }
  options.max_excitation = max_excitation_;
  system_ = build_sectors(layout_.qubits, coupling_, options);
}

ThermalProduct TransferEngine::product(const CMatrix& sender) const {
  return ThermalProduct{sender, layout_.sender_qubits, layout_.tail_qubits(), layout_.beta};
}

ReceiverState TransferEngine::receiver_state(const DensityMatrix& sender, double t,
                                             int output_qubits) const {
  if (sender.qubits() != layout_.sender_qubits) {
    throw DimensionError("sender has " + std::to_string(sender.qubits()) + " qubits, layout " +
                         std::to_string(layout_.sender_qubits));
  }
  const int r = output_qubits == 0 ? layout_.sender_qubits : output_qubits;
  const ThermalProduct initial = product(sender.matrix());
  CMatrix rho = reduce_evolved_product(initial, propagators(system_, t), r);
  const double lost = truncated_weight(initial, max_excitation_);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {DensityMatrix(r, std::move(rho), Physicality::physical,
                        std::max(kTraceTolerance, 2.0 * lost + 1e-12)),
          lost};
}

TransferMap TransferEngine::transfer_map(double t, int output_qubits) const {
  const int r = output_qubits == 0 ? layout_.sender_qubits : output_qubits;
  const Index ds = Index{1} << layout_.sender_qubits;
  const Index dr = Index{1} << r;
  const auto images =
      reduce_evolved_probes(layout_.sender_qubits, layout_.tail_qubits(), layout_.beta,
                            propagators(system_, t), r,
                            std::vector<bool>(static_cast<std::size_t>(ds * ds), true));
  CMatrix c(dr * dr, ds * ds);
  for (Index col = 0; col < ds * ds; ++col) {
    vec_into(images[static_cast<std::size_t>(col)], c, col);
  }
  return TransferMap(t, layout_.sender_qubits, r, std::move(c));
}

SpectralSeries TransferEngine::top_coherence_series() const {
  const Index ds = Index{1} << layout_.sender_qubits;
  CMatrix probe = CMatrix::Zero(ds, ds);
  probe(0, ds - 1) = 1.0;
  return build_spectral_series(system_, product(probe), layout_.sender_qubits,
                               {ElementPosition{0, ds - 1}});
}

SpectralSeries TransferEngine::receiver_series(const CMatrix& sender, int output_qubits) const {
  const int r = output_qubits == 0 ? layout_.sender_qubits : output_qubits;
  const Index dr = Index{1} << r;
  std::vector<ElementPosition> elements;
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) elements.push_back({a, b});
  }
  return build_spectral_series(system_, product(sender), r, std::move(elements));
}

OptimalTime TransferEngine::find_optimal_time(double t_min, double t_max, int grid_points,
                                              double relative_tolerance) const {
  if (!(t_max > t_min) || t_min < 0.0) throw RangeError("empty or negative time range");
  if (grid_points < 2) throw RangeError("time grid needs at least two points");
  const SpectralSeries series = top_coherence_series();
  auto value = [&](double t) { return std::abs(series.evaluate(t).front()); };

  OptimalTime out{};
  out.grid_times = time_grid(t_min, t_max, grid_points);
  out.grid_values.reserve(out.grid_times.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < out.grid_times.size(); ++k) {
    out.grid_values.push_back(value(out.grid_times[k]));
    if (out.grid_values[k] > out.grid_values[best]) best = k;  // strict: ties keep the earliest
  }
  out.time = out.grid_times[best];
  out.value = out.grid_values[best];
  const double lo = out.grid_times[best == 0 ? 0 : best - 1];
  const double hi = out.grid_times[std::min(best + 1, out.grid_times.size() - 1)];
  const ScalarExtremum refined = golden_section_maximize(value, lo, hi, relative_tolerance);
  if (refined.value > out.value) {
    out.time = refined.x;
    out.value = refined.value;
  }
  return out;
}

std::vector<TransferScanRow> TransferEngine::scan(const CMatrix& sender,
                                                  const std::vector<double>& times) const {
  const int m = layout_.sender_qubits;
  const SpectralSeries top = top_coherence_series();
  const SpectralSeries full = receiver_series(sender, m);
  const Index dr = Index{1} << m;
  std::vector<TransferScanRow> rows;
  rows.reserve(times.size());
  for (const double t : times) {
    const auto values = full.evaluate(t);
    TransferScanRow row{t, std::abs(top.evaluate(t).front()), std::vector<double>(m + 1, 0.0)};
    for (Index a = 0; a < dr; ++a) {
      for (Index b = 0; b < dr; ++b) {
        const int n = coherence_order(static_cast<StateBits>(a), static_cast<StateBits>(b));
        if (n >= 0) row.intensities[static_cast<std::size_t>(n)] +=
            std::norm(values[static_cast<std::size_t>(a * dr + b)]);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

ReceiverState receiver_state(const DensityMatrix& sender, const ChainLayout& layout,
                             double coupling, double t, int max_excitation) {
  return TransferEngine(layout, coupling, max_excitation).receiver_state(sender, t);
}

TransferMap extract_transfer_map(const ChainLayout& layout, double coupling, double t,
                                 int max_excitation) {
  return TransferEngine(layout, coupling, max_excitation).transfer_map(t);
}

OptimalTime find_optimal_time(const ChainLayout& layout, double coupling, double t_min,
                              double t_max, int grid_points, int max_excitation) {
  return TransferEngine(layout, coupling, max_excitation)
      .find_optimal_time(t_min, t_max, grid_points);
}

std::vector<double> time_grid(double t_min, double t_max, int points) {
  if (points < 2) throw RangeError("time grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (t_max - t_min) / (points - 1);
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = t_min + step * k;
  grid.back() = t_max;
  return grid;
}

}  // namespace mqc
