#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabgap/bath.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

inline constexpr std::size_t kDefaultLocalPatternCap = 24;

/// Heat-bath weight G_j restricted to the generators touching site j.
///
/// G_j(a)^{-2} = 1/4 sum_{alpha in {I,X,Y,Z}} e^{beta omega^{alpha_j}(a)} only
/// reads the syndrome bits of S_j, so it is evaluated on local patterns:
/// bit i of a pattern is the syndrome bit of support()[i].
class LocalG {
 public:
  LocalG(const StabilizerModel& model, std::size_t site, double beta,
         std::size_t pattern_cap = kDefaultLocalPatternCap)
      : site_(site), beta_(beta), support_(model.generators_on(site)) {
    if (site >= model.n_qubits()) throw DimensionError("site out of range");
    if (support_.size() > pattern_cap || support_.size() > 62)
      throw ResourceError("site " + std::to_string(site) + " touches " + std::to_string(support_.size()) +
                          " generators; local pattern cap is " + std::to_string(pattern_cap));
    for (std::size_t i = 0; i < support_.size(); ++i) coupling_.push_back(model.coupling(support_[i]).to_double());
    for (std::size_t a = 0; a < 3; ++a) {
      const PauliOperator p = PauliOperator::single(model.n_qubits(), site, kNontrivialLocalPaulis[a]);
      flip_[a] = local_mask(model, p);
    }
  }

  std::size_t site() const noexcept { return site_; }
  const std::vector<std::size_t>& support() const noexcept { return support_; }
  std::uint64_t n_patterns() const noexcept { return std::uint64_t{1} << support_.size(); }

  /// Local flip mask of a Pauli: the bits of S_j whose generators anticommute with it.
  std::uint64_t local_mask(const StabilizerModel& model, const PauliOperator& p) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < support_.size(); ++i)
      if (symplectic_product(p, model.generator(support_[i]))) m |= std::uint64_t{1} << i;
    return m;
  }

  /// Local flip masks of X, Y, Z at this site, in that order.
  const std::array<std::uint64_t, 3>& flips() const noexcept { return flip_; }

  /// omega for a local flip mask: sum over flipped bits of +2J_k if set, -2J_k if clear.
  double omega(std::uint64_t pattern, std::uint64_t flip) const {
    double w = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i)
      if ((flip >> i) & 1u) w += ((pattern >> i) & 1u) ? 2.0 * coupling_[i] : -2.0 * coupling_[i];
    return w;
  }

  double g_squared(std::uint64_t pattern) const {
    double s = 1.0;
    for (auto f : flip_) s += std::exp(beta_ * omega(pattern, f));
    return 4.0 / s;
  }

  double value(std::uint64_t pattern) const { return std::sqrt(g_squared(pattern)); }

  std::uint64_t project(const Syndrome& a) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < support_.size(); ++i)
      if (a.get(support_[i])) m |= std::uint64_t{1} << i;
    return m;
  }

 private:
  std::size_t site_;
  double beta_;
  std::vector<std::size_t> support_;
  std::vector<double> coupling_;
  std::array<std::uint64_t, 3> flip_{};
};

/// G_j(a) = (1/4 sum_{alpha_j in {I,X,Y,Z}} e^{beta omega^{alpha_j}(a)})^{-1/2}.
inline double g_function(const StabilizerModel& model, const BathSpec& bath, std::size_t site, const Syndrome& a) {
  if (a.size() != model.n_generators()) throw DimensionError("syndrome size differs from generator count");
  const LocalG g(model, site, bath.beta);
  return g.value(g.project(a));
}

}  // namespace stabgap
