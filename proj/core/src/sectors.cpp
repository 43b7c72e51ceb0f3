#include "mqc/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Sparse>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"

namespace mqc {

namespace {

// Site q <-> N+1-q reflection of a bit pattern.
StateBits mirror(StateBits x, int qubits) {
  StateBits y = 0;
  for (int p = 0; p < qubits; ++p) y |= ((x >> p) & 1U) << (qubits - 1 - p);
  return y;
}

// The uniform chain commutes with the reflection, so each sector splits into
// even and odd blocks; diagonalizing the two halves is ~4x cheaper.
SymmetricEigensystem mirror_adapted_eigensystem(const Sector& s, int qubits) {
  using Sparse = Eigen::SparseMatrix<double>;
  using Triplet = Eigen::Triplet<double>;
  const Index d = s.dim();
  const double h = std::sqrt(0.5);
  std::vector<Triplet> even, odd;
  Index ne = 0, no = 0;
  for (Index a = 0; a < d; ++a) {
    const Index b = rank_in_sector(mirror(s.states[static_cast<std::size_t>(a)], qubits));
    if (a == b) {
      even.emplace_back(a, ne++, 1.0);
    } else if (a < b) {
      even.emplace_back(a, ne, h);
      even.emplace_back(b, ne++, h);
      odd.emplace_back(a, no, h);
      odd.emplace_back(b, no++, -h);
    }
  }
  Sparse pe(d, ne), po(d, no);
  pe.setFromTriplets(even.begin(), even.end());
  po.setFromTriplets(odd.begin(), odd.end());
  const Sparse hs = s.hamiltonian.sparseView();

  SymmetricEigensystem out{RVector(d), RMatrix(d, d)};
  Index col = 0;
  for (const Sparse* p : {&pe, &po}) {
    if (p->cols() == 0) continue;
    const RMatrix block = RMatrix(Sparse(p->transpose() * hs * *p));
    const SymmetricEigensystem part = symmetric_eigensystem(block);
    out.values.segment(col, p->cols()) = part.values;
    out.vectors.middleCols(col, p->cols()) = *p * part.vectors;
    col += p->cols();
  }
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return out.values(x) < out.values(y); });
  SymmetricEigensystem sorted{RVector(d), RMatrix(d, d)};
  for (Index k = 0; k < d; ++k) {
    sorted.values(k) = out.values(order[static_cast<std::size_t>(k)]);
    sorted.vectors.col(k) = out.vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return sorted;
}

}  // namespace

SectorSystem::SectorSystem(int qubits, double coupling, std::vector<Sector> sectors)
    : qubits_(qubits),
      coupling_(coupling),
      sectors_(std::move(sectors)),
      spectrum_once_(sectors_.size()),
      spectra_(sectors_.size()) {}

const Sector& SectorSystem::sector(int l) const {
  if (l < 0 || l > max_excitation()) {
    throw RangeError("sector " + std::to_string(l) + " not built (max " +
                     std::to_string(max_excitation()) + ")");
  }
  return sectors_[static_cast<std::size_t>(l)];
}

const SymmetricEigensystem& SectorSystem::spectrum(int l) const {
  const Sector& s = sector(l);
  const auto k = static_cast<std::size_t>(l);
  std::call_once(spectrum_once_[k], [&] {
    spectra_[k] = std::make_unique<SymmetricEigensystem>(mirror_adapted_eigensystem(s, qubits_));
  });
  return *spectra_[k];
}

std::optional<Index> SectorSystem::position(StateBits state) const {
  if (state >> qubits_ != 0) return std::nullopt;
  if (excitation_count(state) > max_excitation()) return std::nullopt;
  return rank_in_sector(state);
}

RMatrix SectorSystem::assemble_hamiltonian() const {
  if (!complete()) throw PreconditionError("assemble_hamiltonian needs every sector");
  const Index dim = Index{1} << qubits_;
  RMatrix h = RMatrix::Zero(dim, dim);
  for (const auto& s : sectors_) {
    for (Index a = 0; a < s.dim(); ++a) {
      for (Index b = 0; b < s.dim(); ++b) {
        h(static_cast<Index>(s.states[static_cast<std::size_t>(a)]),
          static_cast<Index>(s.states[static_cast<std::size_t>(b)])) = s.hamiltonian(a, b);
      }
    }
  }
  return h;
}

SectorSystemPtr build_sectors(int qubits, double coupling, SectorOptions options) {
  if (qubits < 2) throw RangeError("XX chain needs at least two qubits");
  if (qubits > 62) throw RangeError("qubit count above 62");
  if (coupling == 0.0) throw RangeError("coupling constant must be nonzero");
  const int top = options.max_excitation < 0 ? qubits : std::min(options.max_excitation, qubits);
  if (top == qubits && qubits > options.dense_qubit_cap) {
    throw CapacityError("building all sectors of " + std::to_string(qubits) +
                        " qubits exceeds the dense cap of " +
                        std::to_string(options.dense_qubit_cap) +
                        "; set a maximum excitation for truncated mode");
  }
  for (int l = 0; l <= top; ++l) {
    if (static_cast<Index>(binomial(qubits, l)) > options.max_sector_dimension) {
      throw CapacityError("sector " + std::to_string(l) + " has dimension " +
                          std::to_string(binomial(qubits, l)) + " above the limit " +
                          std::to_string(options.max_sector_dimension));
    }
  }

  const double amplitude = 0.5 * coupling;
  std::vector<Sector> sectors;
  sectors.reserve(static_cast<std::size_t>(top + 1));
  for (int l = 0; l <= top; ++l) {
    Sector s{l, patterns_with_excitations(qubits, l), {}};
    s.hamiltonian = RMatrix::Zero(s.dim(), s.dim());
    for (Index col = 0; col < s.dim(); ++col) {
      const StateBits state = s.states[static_cast<std::size_t>(col)];
      // Bond between qubits q and q+1 sits at bit positions (N-q, N-q-1).
      for (int pos = 0; pos + 1 < qubits; ++pos) {
        const StateBits pair = (state >> pos) & 3U;
        if (pair == 1U || pair == 2U) {
          const StateBits flipped = state ^ (StateBits{3} << pos);
          s.hamiltonian(rank_in_sector(flipped), col) = amplitude;
        }
      }
    }
    sectors.push_back(std::move(s));
  }
  return std::make_shared<const SectorSystem>(qubits, coupling, std::move(sectors));
}

}  // namespace mqc
