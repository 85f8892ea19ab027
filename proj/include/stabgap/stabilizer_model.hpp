#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stabgap/bitvec.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"

namespace stabgap {

/// M-bit commutation fingerprint of a Pauli against the generator list.
struct Syndrome {
  BitVec bits;

  Syndrome() = default;
  explicit Syndrome(std::size_t m) : bits(m) {}
  explicit Syndrome(BitVec b) : bits(std::move(b)) {}

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t weight() const noexcept { return bits.popcount(); }
  bool get(std::size_t k) const noexcept { return bits.get(k); }

  Syndrome& operator^=(const Syndrome& o) {
    bits ^= o.bits;
    return *this;
  }
  friend Syndrome operator^(Syndrome a, const Syndrome& b) { return a ^= b; }
  friend bool operator==(const Syndrome& a, const Syndrome& b) noexcept { return a.bits == b.bits; }
  friend bool operator<(const Syndrome& a, const Syndrome& b) noexcept { return a.bits < b.bits; }
};

inline constexpr std::size_t kDefaultSyndromeRankCap = 24;

/// H = -sum_k J_k g_k over mutually commuting Pauli generators with J_k > 0.
///
/// Immutable after construction. The constructor validates commutation,
/// positivity and the absence of -I from the generated group, and computes
/// the GF(2) rank together with a reduced basis of the realized syndromes
/// (the image of the syndrome map). Realized syndromes are addressed by
/// their coordinates in that basis, an integer in [0, 2^rank).
class StabilizerModel {
 public:
  StabilizerModel() = default;

  StabilizerModel(std::size_t n_qubits, std::vector<PauliOperator> generators, std::vector<Rational> couplings)
      : n_(n_qubits), generators_(std::move(generators)), couplings_(std::move(couplings)) {
    validate();
    build_syndrome_basis();
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t n_generators() const noexcept { return generators_.size(); }
  const std::vector<PauliOperator>& generators() const noexcept { return generators_; }
  const PauliOperator& generator(std::size_t k) const { return generators_.at(k); }
  const std::vector<Rational>& couplings() const noexcept { return couplings_; }
  const Rational& coupling(std::size_t k) const { return couplings_.at(k); }
  Rational max_coupling() const { return *std::max_element(couplings_.begin(), couplings_.end()); }

  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<Syndrome>& realized_syndrome_basis() const noexcept { return basis_; }

  /// Generators whose support contains `site`.
  std::vector<std::size_t> generators_on(std::size_t site) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < generators_.size(); ++k)
      if (generators_[k].at(site) != LocalPauli::I) out.push_back(k);
    return out;
  }

  std::vector<std::size_t> support(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
      if (generators_.at(k).at(j) != LocalPauli::I) out.push_back(j);
    return out;
  }

  Syndrome syndrome(const PauliOperator& p) const {
    check_qubits(p);
    Syndrome s(n_generators());
    for (std::size_t k = 0; k < generators_.size(); ++k)
      if (symplectic_product(p, generators_[k])) s.bits.set(k);
    return s;
  }

  Syndrome zero_syndrome() const { return Syndrome(n_generators()); }

  /// eps(b) = -sum_k J_k (-1)^{b_k}.
  Rational energy(const Syndrome& b) const {
    check_bits(b);
    Rational e;
    for (std::size_t k = 0; k < couplings_.size(); ++k) e += b.get(k) ? couplings_[k] : -couplings_[k];
    return e;
  }

  Rational ground_energy() const { return energy(zero_syndrome()); }

  /// omega^p(a) = -sum_k 2 J_k (-1)^{a_k} e_k(p) = eps(a) - eps(a xor e(p)).
  Rational bohr_frequency(const Syndrome& a, const PauliOperator& p, bool allow_unrealized = false) const {
    check_bits(a);
    if (!allow_unrealized && !is_realized(a)) throw ValidationError("syndrome " + a.bits.str() + " is not realized");
    const Syndrome e = syndrome(p);
    Rational w;
    for (std::size_t k = 0; k < couplings_.size(); ++k) {
      if (!e.get(k)) continue;
      const Rational t = couplings_[k] * Rational(2);
      w += a.get(k) ? t : -t;
    }
    return w;
  }

  bool is_realized(const Syndrome& b) const {
    check_bits(b);
    Syndrome r = b;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (r.get(pivots_[i])) r ^= basis_[i];
    return r.bits.none();
  }

  /// Coordinates of a realized syndrome in the reduced basis.
  std::uint64_t syndrome_index(const Syndrome& b) const {
    if (rank() > 63) throw ResourceError("syndrome rank exceeds 63; indices unavailable");
    if (!is_realized(b)) throw ValidationError("syndrome " + b.bits.str() + " is not realized");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (b.get(pivots_[i])) idx |= std::uint64_t{1} << i;
    return idx;
  }

  Syndrome syndrome_at(std::uint64_t index) const {
    Syndrome s = zero_syndrome();
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if ((index >> i) & 1u) s ^= basis_[i];
    return s;
  }

  /// All 2^rank realized syndromes in index order; index 0 is the zero syndrome.
  std::vector<Syndrome> realized_syndromes(std::size_t rank_cap = kDefaultSyndromeRankCap) const {
    if (rank() > rank_cap)
      throw ResourceError("realized syndrome enumeration needs 2^" + std::to_string(rank()) +
                          " entries; cap is 2^" + std::to_string(rank_cap));
    std::vector<Syndrome> out;
    out.reserve(std::size_t{1} << rank());
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << rank()); ++i) out.push_back(syndrome_at(i));
    return out;
  }

  friend bool operator==(const StabilizerModel& a, const StabilizerModel& b) {
    return a.n_ == b.n_ && a.generators_ == b.generators_ && a.couplings_ == b.couplings_;
  }

 private:
  void check_qubits(const PauliOperator& p) const {
    if (p.n_qubits() != n_)
      throw DimensionError("Pauli acts on " + std::to_string(p.n_qubits()) + " qubits, model has " +
                           std::to_string(n_));
  }
  void check_bits(const Syndrome& b) const {
    if (b.size() != n_generators())
      throw DimensionError("syndrome has " + std::to_string(b.size()) + " bits, model has " +
                           std::to_string(n_generators()) + " generators");
  }

  void validate() const {
    if (n_ == 0) throw ValidationError("model must have at least one qubit");
    if (generators_.empty()) throw ValidationError("model must have at least one term");
    if (generators_.size() != couplings_.size())
      throw ValidationError("generator and coupling counts differ");
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      if (generators_[k].n_qubits() != n_)
        throw DimensionError("generator " + std::to_string(k + 1) + " acts on " +
                             std::to_string(generators_[k].n_qubits()) + " qubits, expected " + std::to_string(n_));
      if (generators_[k].is_identity()) throw ValidationError("generator " + std::to_string(k + 1) + " is the identity");
      if (couplings_[k].sign() <= 0)
        throw ValidationError("coupling of generator " + std::to_string(k + 1) + " must be positive, got " +
                              couplings_[k].str());
    }
    for (std::size_t k = 0; k < generators_.size(); ++k)
      for (std::size_t l = k + 1; l < generators_.size(); ++l)
        if (!commute(generators_[k], generators_[l]))
          throw ValidationError("generators " + std::to_string(k + 1) + " and " + std::to_string(l + 1) +
                                " do not commute");
    check_no_minus_identity();
  }

  // Every GF(2) dependency among the generators must multiply to +I, else
  // some syndrome in the image of the syndrome map labels an empty eigenspace.
  void check_no_minus_identity() const {
    const std::size_t m = generators_.size();
    std::vector<std::pair<PauliOperator, BitVec>> rows;
    rows.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      BitVec combo(m);
      combo.set(k);
      rows.emplace_back(generators_[k], std::move(combo));
    }
    // Row-reduce on the 2N-bit symplectic vectors, tracking combinations.
    std::vector<std::size_t> pivot_rows;
    std::size_t next = 0;
    for (std::size_t col = 0; col < 2 * n_ && next < m; ++col) {
      auto bit = [&](std::size_t r) { return col < n_ ? rows[r].first.x().get(col) : rows[r].first.z().get(col - n_); };
      std::size_t sel = m;
      for (std::size_t r = next; r < m; ++r)
        if (bit(r)) {
          sel = r;
          break;
        }
      if (sel == m) continue;
      std::swap(rows[sel], rows[next]);
      for (std::size_t r = 0; r < m; ++r)
        if (r != next && bit(r)) {
          rows[r].first *= rows[next].first;
          rows[r].second ^= rows[next].second;
        }
      ++next;
    }
    for (std::size_t r = next; r < m; ++r) {
      PhasedPauli prod(n_);
      for (std::size_t k = 0; k < m; ++k)
        if (rows[r].second.get(k)) prod *= generators_[k];
      if (prod.phase == 2) {
        std::string idx;
        for (std::size_t k = 0; k < m; ++k)
          if (rows[r].second.get(k)) idx += (idx.empty() ? "" : ",") + std::to_string(k + 1);
        throw ValidationError("product of generators {" + idx + "} equals -I; the stabilizer group must exclude -I");
      }
    }
  }

  void build_syndrome_basis() {
    std::vector<Syndrome> vecs;
    vecs.reserve(2 * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      vecs.push_back(syndrome(PauliOperator::single(n_, j, LocalPauli::X)));
      vecs.push_back(syndrome(PauliOperator::single(n_, j, LocalPauli::Z)));
    }
    // Reduced row echelon form keyed by lowest set bit.
    std::vector<Syndrome> basis;
    std::vector<std::size_t> pivots;
    for (auto v : vecs) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (v.get(pivots[i])) v ^= basis[i];
      if (v.bits.none()) continue;
      const std::size_t p = v.bits.first_set();
      for (auto& b : basis)
        if (b.get(p)) b ^= v;
      basis.push_back(std::move(v));
      pivots.push_back(p);
    }
    std::vector<std::size_t> order(basis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
    for (auto i : order) {
      basis_.push_back(basis[i]);
      pivots_.push_back(pivots[i]);
    }
  }

  std::size_t n_ = 0;
  std::vector<PauliOperator> generators_;
  std::vector<Rational> couplings_;
  std::vector<Syndrome> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace stabgap
