#include "mqc/spectral_series.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"
#include "mqc/state_ops.hpp"

namespace mqc {

SpectralSeries::SpectralSeries(SectorSystemPtr system, std::vector<ElementPosition> elements,
                               std::vector<std::vector<Term>> terms)
    : system_(std::move(system)), elements_(std::move(elements)), terms_(std::move(terms)) {
  if (terms_.size() != elements_.size()) {
    throw DimensionError("spectral series needs one term list per element");
  }
}

std::vector<Complex> SpectralSeries::evaluate(double t) const {
  std::vector<CVector> phases(static_cast<std::size_t>(system_->max_excitation() + 1));
  auto phase = [&](int l) -> const CVector& {
    CVector& u = phases[static_cast<std::size_t>(l)];
    if (u.size() == 0) {
      const RVector& e = system_->spectrum(l).values;
      u = e.unaryExpr([t](double x) { return std::polar(1.0, -x * t); });
    }
    return u;
  };
  std::vector<Complex> out(elements_.size());
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    Complex sum{};
    for (const Term& term : terms_[k]) {
      const CVector& u = phase(term.ket_sector);
      const CVector v = phase(term.bra_sector).conjugate();
      sum += u.cwiseProduct(term.weights * v).sum();
    }
    out[k] = sum;
  }
  return out;
}

SpectralSeries build_spectral_series(SectorSystemPtr system, const ThermalProduct& initial,
                                     int output_qubits, std::vector<ElementPosition> elements) {
  const int nq = system->qubits();
  if (initial.qubits() != nq) throw DimensionError("thermal product does not match the chain");
  const Index ds = Index{1} << initial.sender_qubits;
  if (initial.sender.rows() != ds || initial.sender.cols() != ds) {
    throw DimensionError("sender operator has the wrong dimension");
  }
  if (output_qubits < 1 || output_qubits > nq) throw RangeError("output qubit count out of range");
  const Index dr = Index{1} << output_qubits;
  for (const auto& e : elements) {
    if (e.row < 0 || e.col < 0 || e.row >= dr || e.col >= dr) {
      throw RangeError("element (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                       ") outside the output register");
    }
  }
  const int lmax = system->max_excitation();
  const int nt = initial.tail_qubits;
  const int rest = nq - output_qubits;
  const auto [ground, excited] = thermal_populations(initial.beta);

  // Rows (i, k) of U^(l) over tail configurations k with ek excitations.
  auto sender_rows = [&](int l, Index i, const std::vector<StateBits>& tails) {
    std::vector<Index> rows(tails.size());
    for (std::size_t t = 0; t < tails.size(); ++t) {
      rows[t] = rank_in_sector((static_cast<StateBits>(i) << nt) | tails[t]);
    }
    return RMatrix(system->spectrum(l).vectors(rows, Eigen::all));
  };

  // P^(l,l') = Σ_{i,j,ek} S_ij w(ek) X_i^T Y_j, built only for the pairs elements need.
  std::map<std::pair<int, int>, std::optional<CMatrix>> sender_part;
  auto sender_weights = [&](int l, int lp) -> const std::optional<CMatrix>& {
    auto [it, fresh] = sender_part.try_emplace({l, lp});
    if (!fresh) return it->second;
    RMatrix re = RMatrix::Zero(system->sector(l).dim(), system->sector(lp).dim());
    RMatrix im = re;
    bool any = false;
    for (int ek = 0; ek <= std::min(nt, std::min(l, lp)); ++ek) {
      const auto tails = patterns_with_excitations(nt, ek);
      const double w = std::pow(ground, nt - ek) * std::pow(excited, ek);
      for (Index i = 0; i < ds; ++i) {
        if (excitation_count(static_cast<StateBits>(i)) + ek != l) continue;
        std::optional<RMatrix> x;
        for (Index j = 0; j < ds; ++j) {
          const Complex s = initial.sender(i, j) * w;
          if (initial.sender(i, j) == Complex{} ||
              excitation_count(static_cast<StateBits>(j)) + ek != lp) {
            continue;
          }
          if (!x) x = sender_rows(l, i, tails);
          const RMatrix prod = x->transpose() * sender_rows(lp, j, tails);
          if (s.real() != 0.0) re += s.real() * prod;
          if (s.imag() != 0.0) im += s.imag() * prod;
          any = true;
        }
      }
    }
    if (any) {
      CMatrix p(re.rows(), re.cols());
      p.real() = re;
      p.imag() = im;
      it->second = std::move(p);
    }
    return it->second;
  };

  // Rows (c, a) of U^(l), c over leading patterns with l - exc(a) excitations.
  auto output_rows = [&](int l, Index a) {
    const auto lead = patterns_with_excitations(rest, l - excitation_count(static_cast<StateBits>(a)));
    std::vector<Index> rows(lead.size());
    for (std::size_t c = 0; c < lead.size(); ++c) {
      rows[c] = rank_in_sector((lead[c] << output_qubits) | static_cast<StateBits>(a));
    }
    return RMatrix(system->spectrum(l).vectors(rows, Eigen::all));
  };

  std::vector<std::vector<SpectralSeries::Term>> terms(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const Index a = elements[k].row;
    const Index b = elements[k].col;
    const int shift = excitation_count(static_cast<StateBits>(b)) -
                      excitation_count(static_cast<StateBits>(a));
    for (int l = 0; l <= lmax; ++l) {
      const int lp = l + shift;
      if (lp < 0 || lp > lmax) continue;
      const int ec = l - excitation_count(static_cast<StateBits>(a));
      if (ec < 0 || ec > rest) continue;
      const auto& p = sender_weights(l, lp);
      if (!p) continue;
      const RMatrix g = output_rows(l, a).transpose() * output_rows(lp, b);
      terms[k].push_back({l, lp, p->cwiseProduct(g.cast<Complex>())});
    }
  }
  return SpectralSeries(std::move(system), std::move(elements), std::move(terms));
}

}  // namespace mqc
