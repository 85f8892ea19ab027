#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "stabgap/bitvec.hpp"
#include "stabgap/errors.hpp"

namespace stabgap {

/// Single-qubit Pauli label; bit 0 is the x-part, bit 1 the z-part.
enum class LocalPauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr std::array<LocalPauli, 4> kLocalPaulis = {LocalPauli::I, LocalPauli::X, LocalPauli::Y,
                                                           LocalPauli::Z};
inline constexpr std::array<LocalPauli, 3> kNontrivialLocalPaulis = {LocalPauli::X, LocalPauli::Y,
                                                                     LocalPauli::Z};

inline constexpr bool x_part(LocalPauli p) noexcept { return static_cast<std::uint8_t>(p) & 1u; }
inline constexpr bool z_part(LocalPauli p) noexcept { return static_cast<std::uint8_t>(p) & 2u; }

inline char to_char(LocalPauli p) noexcept {
  switch (p) {
    case LocalPauli::I: return 'I';
    case LocalPauli::X: return 'X';
    case LocalPauli::Y: return 'Y';
    case LocalPauli::Z: return 'Z';
  }
  return '?';
}

/// Phase-free N-qubit Pauli operator, stored as x- and z-bit vectors.
///
/// Bit j of x (resp. z) is set when the site-j factor contains sigma^x
/// (resp. sigma^z); both set means sigma^y. Composition is XOR, so the
/// group is Z_2^{2N} and phases are never tracked.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : x_(n), z_(n) {}
  PauliOperator(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) throw DimensionError("x and z parts differ in length");
  }

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

  static PauliOperator single(std::size_t n, std::size_t site, LocalPauli p) {
    if (site >= n) throw DimensionError("site " + std::to_string(site) + " out of range for N=" + std::to_string(n));
    PauliOperator op(n);
    op.set(site, p);
    return op;
  }

  /// Parses a string over {I,X,Y,Z}; character i is qubit i.
  static PauliOperator from_string(std::string_view s) {
    PauliOperator op(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      switch (s[i]) {
        case 'I': break;
        case 'X': op.set(i, LocalPauli::X); break;
        case 'Y': op.set(i, LocalPauli::Y); break;
        case 'Z': op.set(i, LocalPauli::Z); break;
        default:
          throw ValidationError(std::string("invalid Pauli character '") + s[i] + "' at position " +
                                std::to_string(i + 1));
      }
    }
    return op;
  }

  /// Compact constructor for N <= 64.
  static PauliOperator from_words(std::size_t n, std::uint64_t x, std::uint64_t z) {
    return PauliOperator(BitVec::from_word(n, x), BitVec::from_word(n, z));
  }

  std::size_t n_qubits() const noexcept { return x_.size(); }
  const BitVec& x() const noexcept { return x_; }
  const BitVec& z() const noexcept { return z_; }

  LocalPauli at(std::size_t site) const noexcept {
    return static_cast<LocalPauli>((x_.get(site) ? 1u : 0u) | (z_.get(site) ? 2u : 0u));
  }
  void set(std::size_t site, LocalPauli p) noexcept {
    x_.set(site, x_part(p));
    z_.set(site, z_part(p));
  }

  bool is_identity() const noexcept { return x_.none() && z_.none(); }
  std::size_t weight() const noexcept { return (x_ | z_).popcount(); }

  std::string str() const {
    std::string s(n_qubits(), 'I');
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = to_char(at(i));
    return s;
  }

  PauliOperator& operator*=(const PauliOperator& o) {
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
  }
  friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

  friend bool operator==(const PauliOperator& a, const PauliOperator& b) noexcept {
    return a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator<(const PauliOperator& a, const PauliOperator& b) noexcept {
    if (a.x_ == b.x_) return a.z_ < b.z_;
    return a.x_ < b.x_;
  }

 private:
  BitVec x_;
  BitVec z_;
};

/// Symplectic product x_p.z_q + z_p.x_q mod 2: 0 when p and q commute, 1 when they anticommute.
inline int symplectic_product(const PauliOperator& p, const PauliOperator& q) {
  if (p.n_qubits() != q.n_qubits())
    throw DimensionError("Pauli operators act on " + std::to_string(p.n_qubits()) + " and " +
                         std::to_string(q.n_qubits()) + " qubits");
  return static_cast<int>(BitVec::dot(p.x(), q.z()) ^ BitVec::dot(p.z(), q.x()));
}

inline bool commute(const PauliOperator& p, const PauliOperator& q) { return symplectic_product(p, q) == 0; }

/// Sign theta = (-1)^{symplectic product}, used when conjugating one Pauli by another.
inline int commutation_sign(const PauliOperator& p, const PauliOperator& q) {
  return symplectic_product(p, q) ? -1 : 1;
}

/// A Pauli with its phase i^phase tracked, in the convention
/// sigma(x, z) = i^{|x & z|} X^x Z^z (so that Y is the Hermitian matrix).
///
/// Only used to decide whether a dependent product of generators equals +I or -I.
struct PhasedPauli {
  PauliOperator op;
  int phase = 0;  // exponent of i, mod 4

  explicit PhasedPauli(std::size_t n) : op(n) {}
  explicit PhasedPauli(PauliOperator p) : op(std::move(p)) {}

  PhasedPauli& operator*=(const PauliOperator& rhs) {
    // Write both as i^k X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1 & x2|}.
    const int k1 = phase + static_cast<int>((op.x() & op.z()).popcount());
    const int k2 = static_cast<int>((rhs.x() & rhs.z()).popcount());
    const int swap = static_cast<int>(BitVec::overlap(op.z(), rhs.x()) & 1u) * 2;
    op *= rhs;
    const int k = k1 + k2 + swap - static_cast<int>((op.x() & op.z()).popcount());
    phase = ((k % 4) + 4) % 4;
    return *this;
  }
};

}  // namespace stabgap
