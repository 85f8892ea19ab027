#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stabgap/errors.hpp"

namespace stabgap {

enum class Axis : unsigned char { Z, X };

inline char to_char(Axis a) noexcept { return a == Axis::Z ? 'Z' : 'X'; }

struct Slot {
  std::size_t site = 0;
  Axis axis = Axis::Z;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Enumeration of (site, axis) slots that builds every Pauli one factor at a time.
///
/// Each of the 2N slots appears exactly once, so the path length l_* is 2N.
/// A sigma^y factor is reached through its Z slot and its X slot.
class SiteOrdering {
 public:
  SiteOrdering() = default;
  SiteOrdering(std::size_t n_qubits, std::vector<Slot> slots) : n_(n_qubits), slots_(std::move(slots)) {
    if (slots_.size() != 2 * n_)
      throw ValidationError("ordering has " + std::to_string(slots_.size()) + " slots, expected 2N = " +
                            std::to_string(2 * n_));
    std::vector<char> seen(2 * n_, 0);
    for (const auto& s : slots_) {
      if (s.site >= n_) throw ValidationError("ordering slot site " + std::to_string(s.site) + " out of range");
      char& flag = seen[2 * s.site + (s.axis == Axis::X ? 1 : 0)];
      if (flag)
        throw ValidationError("duplicate ordering slot (" + std::to_string(s.site) + ", " + to_char(s.axis) + ")");
      flag = 1;
    }
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t l_star() const noexcept { return slots_.size(); }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  const Slot& operator[](std::size_t i) const { return slots_.at(i); }

  friend bool operator==(const SiteOrdering&, const SiteOrdering&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Slot> slots_;
};

}  // namespace stabgap
