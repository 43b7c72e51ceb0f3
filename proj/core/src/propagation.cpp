#include "mqc/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"
#include "mqc/state_ops.hpp"

namespace mqc {

namespace {

const SectorSystem& require_complete(const PropagatorSet& props) {
  const SectorSystem& sys = props.system();
  if (!sys.complete() || props.max_excitation() != sys.qubits()) {
    throw PreconditionError("dense evolution needs propagators for every sector");
  }
  return sys;
}

// Thermal weight of one tail configuration with `excitations` excited sites.
double tail_weight(double beta, int tail_qubits, int excitations) {
  const auto [ground, excited] = thermal_populations(beta);
  return std::pow(ground, tail_qubits - excitations) * std::pow(excited, excitations);
}

void check_product(const ThermalProduct& initial, const PropagatorSet& props) {
  if (initial.sender_qubits < 1 || initial.tail_qubits < 0) {
    throw RangeError("thermal product needs at least one sender qubit");
  }
  const Index ds = Index{1} << initial.sender_qubits;
  if (initial.sender.rows() != ds || initial.sender.cols() != ds) {
    throw DimensionError("sender operator is " + std::to_string(initial.sender.rows()) + "x" +
                         std::to_string(initial.sender.cols()) + ", expected " +
                         std::to_string(ds) + "x" + std::to_string(ds));
  }
  if (props.system().qubits() != initial.qubits()) {
    throw DimensionError("propagators act on " + std::to_string(props.system().qubits()) +
                         " qubits, product has " + std::to_string(initial.qubits()));
  }
}

}  // namespace

PropagatorSet::PropagatorSet(SectorSystemPtr system, double time, std::vector<CMatrix> blocks)
    : system_(std::move(system)), time_(time), blocks_(std::move(blocks)) {}

PropagatorSet propagators(SectorSystemPtr system, double t) {
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(system->max_excitation() + 1));
  for (int l = 0; l <= system->max_excitation(); ++l) {
    blocks.push_back(spectral_propagator(system->spectrum(l), t));
  }
  return PropagatorSet(std::move(system), t, std::move(blocks));
}

CMatrix evolve(const CMatrix& m, const PropagatorSet& props) {
  const SectorSystem& sys = require_complete(props);
  const Index dim = Index{1} << sys.qubits();
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError("matrix does not match the " + std::to_string(sys.qubits()) +
                         "-qubit chain");
  }
  std::vector<std::vector<Index>> idx;
  for (int l = 0; l <= sys.qubits(); ++l) {
    const auto& st = sys.sector(l).states;
    idx.emplace_back(st.begin(), st.end());
  }
  CMatrix out(dim, dim);
  for (int l = 0; l <= sys.qubits(); ++l) {
    for (int lp = 0; lp <= sys.qubits(); ++lp) {
      const auto& rows = idx[static_cast<std::size_t>(l)];
      const auto& cols = idx[static_cast<std::size_t>(lp)];
      const CMatrix block = m(rows, cols);
      out(rows, cols) = props.block(l) * block * props.block(lp).adjoint();
    }
  }
  return out;
}

DensityMatrix evolve(const DensityMatrix& rho, const PropagatorSet& props) {
  return DensityMatrix(rho.qubits(), evolve(rho.matrix(), props),
                       rho.physical() ? Physicality::physical : Physicality::unchecked);
}

CMatrix evolve_order(const CoherenceDecomposition& parts, int n, const PropagatorSet& props) {
  const SectorSystem& sys = require_complete(props);
  const int nq = sys.qubits();
  if (parts.qubits() != nq) throw DimensionError("decomposition size does not match the chain");
  if (n < -nq || n > nq) throw RangeError("coherence order out of range");
  std::vector<CMatrix> blocks(static_cast<std::size_t>(nq + 1));
  for (int l = 0; l <= nq; ++l) {
    if (l + n < 0 || l + n > nq) continue;
    blocks[static_cast<std::size_t>(l)] =
        CMatrix::Zero(sys.sector(l).dim(), sys.sector(l + n).dim());
  }
  for (const OrderEntry& e : parts.component(n)) {
    const auto row = static_cast<StateBits>(e.row);
    const auto col = static_cast<StateBits>(e.col);
    blocks[static_cast<std::size_t>(excitation_count(row))](rank_in_sector(row),
                                                            rank_in_sector(col)) = e.value;
  }
  const Index dim = Index{1} << nq;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int l = 0; l <= nq; ++l) {
    if (l + n < 0 || l + n > nq) continue;
    const auto& rs = sys.sector(l).states;
    const auto& cs = sys.sector(l + n).states;
    const std::vector<Index> rows(rs.begin(), rs.end());
    const std::vector<Index> cols(cs.begin(), cs.end());
    out(rows, cols) =
        props.block(l) * blocks[static_cast<std::size_t>(l)] * props.block(l + n).adjoint();
  }
  return out;
}

SectorBlockState::SectorBlockState(SectorSystemPtr system,
                                   std::vector<std::vector<CMatrix>> blocks)
    : system_(std::move(system)), blocks_(std::move(blocks)) {}

const CMatrix& SectorBlockState::block(int l, int lp) const {
  if (l < 0 || lp < 0 || l > max_excitation() || lp > max_excitation()) {
    throw RangeError("sector block (" + std::to_string(l) + "," + std::to_string(lp) +
                     ") not retained");
  }
  return blocks_[static_cast<std::size_t>(l)][static_cast<std::size_t>(lp)];
}

Complex SectorBlockState::element(StateBits i, StateBits j) const {
  const int li = excitation_count(i);
  const int lj = excitation_count(j);
  if (li > max_excitation() || lj > max_excitation()) return {};
  return block(li, lj)(rank_in_sector(i), rank_in_sector(j));
}

CMatrix SectorBlockState::to_dense() const {
  const int nq = system_->qubits();
  if (nq > 14) throw CapacityError("dense state of " + std::to_string(nq) + " qubits");
  const Index dim = Index{1} << nq;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int l = 0; l <= max_excitation(); ++l) {
    const auto& rs = system_->sector(l).states;
    const std::vector<Index> rows(rs.begin(), rs.end());
    for (int lp = 0; lp <= max_excitation(); ++lp) {
      const auto& cs = system_->sector(lp).states;
      const std::vector<Index> cols(cs.begin(), cs.end());
      out(rows, cols) = block(l, lp);
    }
  }
  return out;
}

Complex SectorBlockState::trace() const {
  Complex tr{};
  for (int l = 0; l <= max_excitation(); ++l) tr += block(l, l).trace();
  return tr;
}

double truncated_weight(const ThermalProduct& initial, int l_max) {
  const Index ds = initial.sender.rows();
  double lost = 0.0;
  for (Index i = 0; i < ds; ++i) {
    const int ei = excitation_count(static_cast<StateBits>(i));
    lost += std::abs(initial.sender(i, i)) *
            thermal_tail_probability(initial.beta, initial.tail_qubits, l_max - ei);
  }
  return lost;
}

int sender_excitation_reach(const CMatrix& sender, int sender_qubits) {
  int reach = 0;
  const Index ds = Index{1} << sender_qubits;
  for (Index i = 0; i < ds; ++i) {
    if (sender.row(i).cwiseAbs().maxCoeff() > 0.0 || sender.col(i).cwiseAbs().maxCoeff() > 0.0) {
      reach = std::max(reach, excitation_count(static_cast<StateBits>(i)));
    }
  }
  return reach;
}

TruncatedEvolution evolve_truncated(const ThermalProduct& initial, const PropagatorSet& props) {
  check_product(initial, props);
  const SectorSystem& sys = props.system();
  const int lmax = props.max_excitation();
  const int nt = initial.tail_qubits;
  const Index ds = initial.sender.rows();

  std::vector<std::vector<CMatrix>> blocks(static_cast<std::size_t>(lmax + 1));
  for (int l = 0; l <= lmax; ++l) {
    for (int lp = 0; lp <= lmax; ++lp) {
      blocks[static_cast<std::size_t>(l)].push_back(
          CMatrix::Zero(sys.sector(l).dim(), sys.sector(lp).dim()));
    }
  }
  std::vector<std::vector<bool>> touched(static_cast<std::size_t>(lmax + 1),
                                         std::vector<bool>(static_cast<std::size_t>(lmax + 1)));
  for (int ek = 0; ek <= std::min(nt, lmax); ++ek) {
    const auto tails = patterns_with_excitations(nt, ek);
    const double w = tail_weight(initial.beta, nt, ek);
    for (Index i = 0; i < ds; ++i) {
      const int l = excitation_count(static_cast<StateBits>(i)) + ek;
      if (l > lmax) continue;
      for (Index j = 0; j < ds; ++j) {
        const Complex s = initial.sender(i, j);
        const int lp = excitation_count(static_cast<StateBits>(j)) + ek;
        if (s == Complex{} || lp > lmax) continue;
        CMatrix& blk = blocks[static_cast<std::size_t>(l)][static_cast<std::size_t>(lp)];
        touched[static_cast<std::size_t>(l)][static_cast<std::size_t>(lp)] = true;
        for (const StateBits k : tails) {
          const StateBits x = (static_cast<StateBits>(i) << nt) | k;
          const StateBits y = (static_cast<StateBits>(j) << nt) | k;
          blk(rank_in_sector(x), rank_in_sector(y)) += s * w;
        }
      }
    }
  }
  for (int l = 0; l <= lmax; ++l) {
    for (int lp = 0; lp <= lmax; ++lp) {
      if (!touched[static_cast<std::size_t>(l)][static_cast<std::size_t>(lp)]) continue;
      CMatrix& blk = blocks[static_cast<std::size_t>(l)][static_cast<std::size_t>(lp)];
      blk = props.block(l) * blk * props.block(lp).adjoint();
    }
  }
  return {SectorBlockState(props.system_ptr(), std::move(blocks)),
          truncated_weight(initial, lmax)};
}

std::vector<CMatrix> reduce_evolved_probes(int sender_qubits, int tail_qubits, double beta,
                                           const PropagatorSet& props, int output_qubits,
                                           const std::vector<bool>& needed) {
  const SectorSystem& sys = props.system();
  const int nq = sender_qubits + tail_qubits;
  if (sys.qubits() != nq) throw DimensionError("propagators do not match the chain length");
  if (output_qubits < 1 || output_qubits > nq) {
    throw RangeError("output qubit count " + std::to_string(output_qubits) + " outside 1.." +
                     std::to_string(nq));
  }
  const Index ds = Index{1} << sender_qubits;
  const Index dr = Index{1} << output_qubits;
  if (needed.size() != static_cast<std::size_t>(ds * ds)) {
    throw DimensionError("probe mask has the wrong size");
  }
  const int lmax = props.max_excitation();
  const int rest = nq - output_qubits;  // leading qubits traced out

  std::vector<CMatrix> images(static_cast<std::size_t>(ds * ds), CMatrix::Zero(dr, dr));
  std::vector<bool> row_used(static_cast<std::size_t>(ds)), col_used(static_cast<std::size_t>(ds));
  for (Index i = 0; i < ds; ++i) {
    for (Index j = 0; j < ds; ++j) {
      if (needed[static_cast<std::size_t>(i * ds + j)]) {
        row_used[static_cast<std::size_t>(i)] = true;
        col_used[static_cast<std::size_t>(j)] = true;
      }
    }
  }

  for (int ek = 0; ek <= std::min(tail_qubits, lmax); ++ek) {
    const auto tails = patterns_with_excitations(tail_qubits, ek);
    const double w = tail_weight(beta, tail_qubits, ek);
    // gathered[i][a]: rows (c, a) of V^(l), columns (i, k) over tails k, l = exc(i) + ek.
    std::vector<std::vector<CMatrix>> gathered(static_cast<std::size_t>(ds));
    for (Index i = 0; i < ds; ++i) {
      const int l = excitation_count(static_cast<StateBits>(i)) + ek;
      if (l > lmax || !(row_used[static_cast<std::size_t>(i)] || col_used[static_cast<std::size_t>(i)])) {
        continue;
      }
      std::vector<Index> cols(tails.size());
      for (std::size_t t = 0; t < tails.size(); ++t) {
        cols[t] = rank_in_sector((static_cast<StateBits>(i) << tail_qubits) | tails[t]);
      }
      const CMatrix& v = props.block(l);
      auto& per_a = gathered[static_cast<std::size_t>(i)];
      per_a.resize(static_cast<std::size_t>(dr));
      for (Index a = 0; a < dr; ++a) {
        const int ec = l - excitation_count(static_cast<StateBits>(a));
        const auto lead = patterns_with_excitations(rest, ec);
        if (lead.empty()) continue;
        std::vector<Index> rows(lead.size());
        for (std::size_t c = 0; c < lead.size(); ++c) {
          rows[c] = rank_in_sector((lead[c] << output_qubits) | static_cast<StateBits>(a));
        }
        per_a[static_cast<std::size_t>(a)] = v(rows, cols);
      }
    }
    for (Index i = 0; i < ds; ++i) {
      const auto& xi = gathered[static_cast<std::size_t>(i)];
      if (xi.empty()) continue;
      for (Index j = 0; j < ds; ++j) {
        if (!needed[static_cast<std::size_t>(i * ds + j)]) continue;
        const auto& xj = gathered[static_cast<std::size_t>(j)];
        if (xj.empty()) continue;
        CMatrix& img = images[static_cast<std::size_t>(i * ds + j)];
        for (Index a = 0; a < dr; ++a) {
          const CMatrix& xa = xi[static_cast<std::size_t>(a)];
          if (xa.size() == 0) continue;
          for (Index b = 0; b < dr; ++b) {
            const CMatrix& xb = xj[static_cast<std::size_t>(b)];
            if (xb.rows() != xa.rows() || xb.size() == 0) continue;
            // Same leading excitation count on both sides pins a common trace index c.
            if (excitation_count(static_cast<StateBits>(b)) - excitation_count(static_cast<StateBits>(a)) !=
                excitation_count(static_cast<StateBits>(j)) - excitation_count(static_cast<StateBits>(i))) {
              continue;
            }
            img(a, b) += w * xa.cwiseProduct(xb.conjugate()).sum();
          }
        }
      }
    }
  }
  return images;
}

CMatrix reduce_evolved_product(const ThermalProduct& initial, const PropagatorSet& props,
                               int output_qubits) {
  check_product(initial, props);
  const Index ds = initial.sender.rows();
  std::vector<bool> needed(static_cast<std::size_t>(ds * ds));
  for (Index i = 0; i < ds; ++i) {
    for (Index j = 0; j < ds; ++j) {
      needed[static_cast<std::size_t>(i * ds + j)] = initial.sender(i, j) != Complex{};
    }
  }
  const auto images = reduce_evolved_probes(initial.sender_qubits, initial.tail_qubits,
                                            initial.beta, props, output_qubits, needed);
  const Index dr = Index{1} << output_qubits;
  CMatrix out = CMatrix::Zero(dr, dr);
  for (Index i = 0; i < ds; ++i) {
    for (Index j = 0; j < ds; ++j) {
      if (needed[static_cast<std::size_t>(i * ds + j)]) {
        out += initial.sender(i, j) * images[static_cast<std::size_t>(i * ds + j)];
      }
    }
  }
  return out;
}

}  // namespace mqc
