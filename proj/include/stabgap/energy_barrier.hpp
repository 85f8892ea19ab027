#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "stabgap/errors.hpp"
#include "stabgap/ordering.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

/// Energy penalty of one Pauli along one ordering.
struct PenaltyResult {
  Rational penalty;             // 2 J violated_count
  std::size_t argmax_step = 0;  // first path step l attaining the maximum
  std::size_t violated_count = 0;
};

/// eta_0 = identity, eta_l = eta restricted to the first l slots; eta_{l_*} = eta.
inline std::vector<PauliOperator> pauli_path(const PauliOperator& eta, const SiteOrdering& gamma) {
  if (eta.n_qubits() != gamma.n_qubits()) throw DimensionError("Pauli and ordering sizes differ");
  std::vector<PauliOperator> path;
  path.reserve(gamma.l_star() + 1);
  PauliOperator cur = PauliOperator::identity(eta.n_qubits());
  path.push_back(cur);
  for (const auto& s : gamma.slots()) {
    const LocalPauli f = eta.at(s.site);
    const LocalPauli have = cur.at(s.site);
    const bool x = x_part(have) || (s.axis == Axis::X && x_part(f));
    const bool z = z_part(have) || (s.axis == Axis::Z && z_part(f));
    cur.set(s.site, static_cast<LocalPauli>((x ? 1u : 0u) | (z ? 2u : 0u)));
    path.push_back(cur);
  }
  return path;
}

/// Precomputed slot-to-generator incidence for fast penalty evaluation.
///
/// Adding the Z factor at a site toggles anticommutation with every generator
/// carrying an X part there, and vice versa, so a path is walked with one
/// O(deg) update per slot.
class PenaltyEngine {
 public:
  PenaltyEngine(const StabilizerModel& model, const SiteOrdering& gamma)
      : model_(&model), gamma_(gamma), two_j_(model.max_coupling() * Rational(2)) {
    if (model.n_qubits() != gamma.n_qubits()) throw DimensionError("model and ordering sizes differ");
    flips_.resize(gamma.l_star());
    for (std::size_t l = 0; l < gamma.l_star(); ++l) flips_[l] = flips_for(model, gamma[l]);
  }

  const SiteOrdering& ordering() const noexcept { return gamma_; }
  const Rational& two_j() const noexcept { return two_j_; }

  PenaltyResult evaluate(const PauliOperator& eta) const {
    if (eta.n_qubits() != model_->n_qubits()) throw DimensionError("Pauli and model sizes differ");
    std::vector<std::uint8_t> active(gamma_.l_star());
    for (std::size_t l = 0; l < gamma_.l_star(); ++l) {
      const auto& s = gamma_[l];
      active[l] = s.axis == Axis::Z ? eta.z().get(s.site) : eta.x().get(s.site);
    }
    return evaluate_active(active);
  }

  /// `active[l]` says whether slot l contributes a factor.
  PenaltyResult evaluate_active(const std::vector<std::uint8_t>& active) const {
    const std::size_t m = model_->n_generators();
    full_.assign(m, 0);
    cur_.assign(m, 0);
    for (std::size_t l = 0; l < active.size(); ++l)
      if (active[l])
        for (auto k : flips_[l]) full_[k] ^= 1u;
    std::size_t count = 0, best = 0, arg = 0;
    for (std::size_t l = 0; l < active.size(); ++l) {
      if (!active[l]) continue;
      for (auto k : flips_[l]) {
        cur_[k] ^= 1u;
        if (full_[k]) continue;  // generators anticommuting with eta never count
        if (cur_[k])
          ++count;
        else
          --count;
      }
      if (count > best) {
        best = count;
        arg = l + 1;
      }
    }
    return {two_j_ * Rational(static_cast<std::int64_t>(best)), arg, best};
  }

  static std::vector<std::size_t> flips_for(const StabilizerModel& model, const Slot& s) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < model.n_generators(); ++k) {
      const LocalPauli g = model.generator(k).at(s.site);
      if (s.axis == Axis::Z ? x_part(g) : z_part(g)) out.push_back(k);
    }
    return out;
  }

 private:
  const StabilizerModel* model_;
  SiteOrdering gamma_;
  Rational two_j_;
  std::vector<std::vector<std::size_t>> flips_;
  mutable std::vector<std::uint8_t> full_, cur_;
};

/// eps_Gamma(eta) = 2J max_l #{g in G_eta : g anticommutes with eta_l},
/// G_eta = generators commuting with eta and J = max_k J_k.
inline PenaltyResult energy_penalty(const StabilizerModel& model, const PauliOperator& eta, const SiteOrdering& gamma) {
  return PenaltyEngine(model, gamma).evaluate(eta);
}

inline constexpr std::uint64_t kDefaultExhaustiveCap = std::uint64_t{1} << 26;

struct MaxPenaltyResult {
  Rational value;
  PauliOperator witness;
  PenaltyResult witness_penalty;
  bool exact = false;  // false: sampled lower bound
  std::uint64_t evaluated = 0;
};

/// Exact max over all 4^N Paulis. Enumeration index is x + 2^N z; the witness
/// is the first maximizer in that order.
inline MaxPenaltyResult max_penalty_exhaustive(const StabilizerModel& model, const SiteOrdering& gamma,
                                               std::uint64_t cap = kDefaultExhaustiveCap) {
  const std::size_t n = model.n_qubits();
  if (2 * n >= 63 || (std::uint64_t{1} << (2 * n)) > cap)
    throw ResourceError("exhaustive penalty search over 4^" + std::to_string(n) +
                        " Paulis exceeds the cap; use sampled mode (--samples/--seed)");
  const PenaltyEngine engine(model, gamma);
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  std::vector<std::uint8_t> active(gamma.l_star());
  MaxPenaltyResult best;
  best.exact = true;
  best.witness = PauliOperator::identity(n);
  best.witness_penalty = {Rational(0), 0, 0};
  for (std::uint64_t i = 0; i < total; ++i) {
    const std::uint64_t x = i & ((std::uint64_t{1} << n) - 1);
    const std::uint64_t z = i >> n;
    for (std::size_t l = 0; l < gamma.l_star(); ++l) {
      const auto& s = gamma[l];
      active[l] = ((s.axis == Axis::Z ? z : x) >> s.site) & 1u;
    }
    const PenaltyResult r = engine.evaluate_active(active);
    if (r.violated_count > best.witness_penalty.violated_count) {
      best.witness_penalty = r;
      best.witness = PauliOperator::from_words(n, x, z);
    }
  }
  best.value = best.witness_penalty.penalty;
  best.evaluated = total;
  return best;
}

/// Lower bound on the max from `count` seeded samples. The sampler cycles
/// through uniform nonidentity Paulis, products of random generator subsets,
/// low-weight strings, and generator products dressed with a low-weight string.
inline MaxPenaltyResult max_penalty_sampled(const StabilizerModel& model, const SiteOrdering& gamma,
                                            std::uint64_t count, std::uint64_t seed) {
  const std::size_t n = model.n_qubits();
  const PenaltyEngine engine(model, gamma);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> local(1, 3);
  std::uniform_int_distribution<std::size_t> site(0, n - 1);
  std::bernoulli_distribution coin(0.5);
  const std::size_t max_w = std::min<std::size_t>(4, n);
  std::uniform_int_distribution<std::size_t> weight(1, max_w);

  auto low_weight = [&](PauliOperator& p) {
    const std::size_t w = weight(rng);
    for (std::size_t i = 0; i < w; ++i) p.set(site(rng), static_cast<LocalPauli>(local(rng)));
  };
  auto stabilizer = [&](PauliOperator& p) {
    for (const auto& g : model.generators())
      if (coin(rng)) p *= g;
  };

  MaxPenaltyResult best;
  best.exact = false;
  best.witness = PauliOperator::identity(n);
  best.witness_penalty = {Rational(0), 0, 0};
  for (std::uint64_t i = 0; i < count; ++i) {
    PauliOperator eta(n);
    switch (i % 4) {
      case 0:
        for (std::size_t j = 0; j < n; ++j) eta.set(j, static_cast<LocalPauli>(rng() & 3u));
        break;
      case 1: stabilizer(eta); break;
      case 2: low_weight(eta); break;
      default:
        stabilizer(eta);
        low_weight(eta);
        break;
    }
    if (eta.is_identity()) eta.set(site(rng), static_cast<LocalPauli>(local(rng)));
    const PenaltyResult r = engine.evaluate(eta);
    if (r.violated_count > best.witness_penalty.violated_count) {
      best.witness_penalty = r;
      best.witness = eta;
    }
  }
  best.value = best.witness_penalty.penalty;
  best.evaluated = count;
  return best;
}

inline constexpr std::uint64_t kDefaultBarrierCap = std::uint64_t{1} << 24;

struct BarrierResult {
  Rational value;            // min over orderings of max over Paulis
  std::size_t violated_count = 0;
  SiteOrdering optimal;      // an ordering attaining the value
};

/// Exact generalized energy barrier min_Gamma max_eta eps_Gamma(eta).
///
/// The penalty of a path is a max over its prefixes, and the count at a
/// prefix depends only on the set S of slots already placed. With
/// F(S) = max_eta #{g in G_eta : g anticommutes with eta|_S}, the barrier is
/// a bottleneck path through the subset lattice:
///   best(S) = max(F(S), min_{s in S} best(S \ {s})).
/// Cost is 16^N, bounded by `cap`.
inline BarrierResult generalized_barrier_exact(const StabilizerModel& model,
                                               std::uint64_t cap = kDefaultBarrierCap) {
  const std::size_t n = model.n_qubits();
  const std::size_t m = model.n_generators();
  if (4 * n >= 63 || (std::uint64_t{1} << (4 * n)) > cap)
    throw ResourceError("exact barrier needs 16^" + std::to_string(n) + " evaluations; cap exceeded");
  if (m > 64) throw ResourceError("exact barrier supports at most 64 generators");
  const std::size_t slots = 2 * n;
  const std::uint64_t subsets = std::uint64_t{1} << slots;
  // Slot 2j is (j, Z), slot 2j+1 is (j, X).
  std::vector<std::uint64_t> flip(slots, 0);
  for (std::size_t s = 0; s < slots; ++s)
    for (auto k : PenaltyEngine::flips_for(model, {s / 2, (s & 1u) ? Axis::X : Axis::Z}))
      flip[s] |= std::uint64_t{1} << k;
  std::vector<std::uint64_t> syn(subsets, 0);
  for (std::uint64_t t = 1; t < subsets; ++t) {
    const auto low = static_cast<std::size_t>(std::countr_zero(t));
    syn[t] = syn[t & (t - 1)] ^ flip[low];
  }
  std::vector<std::uint8_t> f(subsets, 0);
  for (std::uint64_t s = 0; s < subsets; ++s) {
    int worst = 0;
    for (std::uint64_t a = 0; a < subsets; ++a) {
      const int c = std::popcount(~syn[a] & syn[a & s]);
      if (c > worst) worst = c;
    }
    f[s] = static_cast<std::uint8_t>(worst);
  }
  std::vector<std::uint8_t> best(subsets, 0);
  best[0] = f[0];
  for (std::uint64_t s = 1; s < subsets; ++s) {
    int lo = std::numeric_limits<int>::max();
    for (std::uint64_t rest = s; rest; rest &= rest - 1) {
      const auto bit = std::uint64_t{1} << std::countr_zero(rest);
      lo = std::min<int>(lo, best[s ^ bit]);
    }
    best[s] = static_cast<std::uint8_t>(std::max<int>(lo, f[s]));
  }
  // Walk back from the full set, always removing the lowest-index slot that keeps the optimum.
  std::vector<Slot> order(slots);
  std::uint64_t s = subsets - 1;
  for (std::size_t pos = slots; pos-- > 0;) {
    for (std::uint64_t rest = s; rest; rest &= rest - 1) {
      const auto bit_index = static_cast<std::size_t>(std::countr_zero(rest));
      const std::uint64_t prev = s ^ (std::uint64_t{1} << bit_index);
      if (std::max<int>(best[prev], f[s]) == best[s]) {
        order[pos] = {bit_index / 2, (bit_index & 1u) ? Axis::X : Axis::Z};
        s = prev;
        break;
      }
    }
  }
  BarrierResult r;
  r.violated_count = best[subsets - 1];
  r.value = model.max_coupling() * Rational(2) * Rational(static_cast<std::int64_t>(r.violated_count));
  r.optimal = SiteOrdering(n, std::move(order));
  return r;
}

/// h_min / (4 l_*) * exp(-2 beta eps_bar).
inline double low_temp_gap_bound(const Rational& epsilon_bar, double beta, double h_min, std::size_t l_star) {
  if (l_star == 0) throw ValidationError("path length must be positive");
  if (beta < 0.0 || h_min <= 0.0 || epsilon_bar.sign() < 0)
    throw ValidationError("low-temperature bound needs beta >= 0, h_min > 0 and eps_bar >= 0");
  return h_min / (4.0 * static_cast<double>(l_star)) * std::exp(-2.0 * beta * epsilon_bar.to_double());
}

}  // namespace stabgap
