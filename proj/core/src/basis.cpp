#include "mqc/basis.hpp"

#include <bit>
#include <string>

#include "mqc/errors.hpp"

namespace mqc {

namespace {

constexpr int kMaxQubits = 62;

}  // namespace

BasisLabel::BasisLabel(StateBits index, int qubits) : index_(index), qubits_(qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw RangeError("qubit count " + std::to_string(qubits) + " outside 1.." +
                     std::to_string(kMaxQubits));
  }
  if (index >> qubits != 0) {
    throw RangeError("basis index " + std::to_string(index) + " exceeds 2^" +
                     std::to_string(qubits));
  }
}

BasisLabel BasisLabel::from_bits(std::span<const int> bits) {
  StateBits index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw RangeError("basis bits must be 0 or 1");
    index = (index << 1) | static_cast<StateBits>(b);
  }
  return BasisLabel(index, static_cast<int>(bits.size()));
}

int BasisLabel::bit(int q) const {
  if (q < 1 || q > qubits_) throw RangeError("qubit " + std::to_string(q) + " out of range");
  return static_cast<int>((index_ >> (qubits_ - q)) & 1U);
}

std::vector<int> BasisLabel::bits() const {
  std::vector<int> out(static_cast<std::size_t>(qubits_));
  for (int q = 1; q <= qubits_; ++q) out[static_cast<std::size_t>(q - 1)] = bit(q);
  return out;
}

int BasisLabel::excitations() const noexcept { return excitation_count(index_); }

double BasisLabel::iz_eigenvalue() const noexcept {
  return 0.5 * static_cast<double>(qubits_ - 2 * excitations());
}

int excitation_count(StateBits bits) noexcept { return std::popcount(bits); }

int coherence_order(const BasisLabel& i, const BasisLabel& j) {
  if (i.qubits() != j.qubits()) {
    throw DimensionError("coherence_order: labels over " + std::to_string(i.qubits()) +
                         " and " + std::to_string(j.qubits()) + " qubits");
  }
  return coherence_order(i.index(), j.index());
}

int coherence_order(StateBits i, StateBits j) noexcept {
  return excitation_count(j) - excitation_count(i);
}

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int m = 1; m <= k; ++m) {
    r = r * static_cast<std::uint64_t>(n - k + m) / static_cast<std::uint64_t>(m);
  }
  return r;
}

std::vector<StateBits> patterns_with_excitations(int nbits, int excitations) {
  std::vector<StateBits> out;
  if (excitations < 0 || excitations > nbits) return out;
  out.reserve(binomial(nbits, excitations));
  if (excitations == 0) {
    out.push_back(0);
    return out;
  }
  const StateBits limit = StateBits{1} << nbits;
  // Gosper's hack walks same-popcount patterns in increasing order.
  for (StateBits v = (StateBits{1} << excitations) - 1; v < limit;) {
    out.push_back(v);
    const StateBits t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

Index rank_in_sector(StateBits bits) noexcept {
  // Combinatorial number system: Σ_r C(p_r, r) over set-bit positions p_1 < p_2 < ...
  Index rank = 0;
  int r = 0;
  while (bits != 0) {
    const int p = std::countr_zero(bits);
    ++r;
    rank += static_cast<Index>(binomial(p, r));
    bits &= bits - 1;
  }
  return rank;
}

}  // namespace mqc
