#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "stabgap/stabgap.hpp"

using namespace stabgap;

namespace {

PauliOperator random_pauli(std::size_t n, std::mt19937_64& rng) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return PauliOperator::from_words(n, rng() & mask, rng() & mask);
}

// Peak number of violated generators from G_eta along the slot path, recomputed
// from scratch at every step with plain commutation checks.
std::size_t oracle_count(const StabilizerModel& m, const PauliOperator& eta, const std::vector<Slot>& order) {
  std::vector<std::size_t> g_eta;
  for (std::size_t k = 0; k < m.n_generators(); ++k)
    if (commute(eta, m.generator(k))) g_eta.push_back(k);
  PauliOperator cur(m.n_qubits());
  std::size_t best = 0;
  for (const auto& s : order) {
    const LocalPauli f = eta.at(s.site);
    const bool take = s.axis == Axis::Z ? z_part(f) : x_part(f);
    if (take) cur *= PauliOperator::single(m.n_qubits(), s.site, s.axis == Axis::Z ? LocalPauli::Z : LocalPauli::X);
    std::size_t c = 0;
    for (auto k : g_eta)
      if (!commute(cur, m.generator(k))) ++c;
    best = std::max(best, c);
  }
  return best;
}

std::size_t oracle_max(const StabilizerModel& m, const std::vector<Slot>& order) {
  const std::size_t n = m.n_qubits();
  std::size_t best = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z)
      best = std::max(best, oracle_count(m, PauliOperator::from_words(n, x, z), order));
  return best;
}

// min over all (2N)! slot orders of the peak count.
std::size_t oracle_barrier(const StabilizerModel& m) {
  std::vector<Slot> slots;
  for (std::size_t j = 0; j < m.n_qubits(); ++j) {
    slots.push_back({j, Axis::Z});
    slots.push_back({j, Axis::X});
  }
  auto key = [](const Slot& s) { return 2 * s.site + (s.axis == Axis::X ? 1 : 0); };
  std::sort(slots.begin(), slots.end(), [&](const Slot& a, const Slot& b) { return key(a) < key(b); });
  std::size_t best = SIZE_MAX;
  do {
    best = std::min(best, oracle_max(m, slots));
  } while (std::next_permutation(slots.begin(), slots.end(), [&](const Slot& a, const Slot& b) { return key(a) < key(b); }));
  return best;
}

Rational two_j(const StabilizerModel& m) { return m.max_coupling() * Rational(2); }

}  // namespace

TEST(Path, IdentityStaysIdentity) {
  const auto path = pauli_path(PauliOperator::identity(8), toric_zx_ordering(2));
  ASSERT_EQ(path.size(), 17u);
  for (const auto& p : path) EXPECT_TRUE(p.is_identity());
}

TEST(Path, YIsReachedThroughZ) {
  const auto eta = PauliOperator::from_string("IYI");
  const auto path = pauli_path(eta, site_major_ordering(3));
  ASSERT_EQ(path.size(), 7u);
  EXPECT_EQ(path[2].str(), "III");
  EXPECT_EQ(path[3].str(), "IZI");
  EXPECT_EQ(path[4].str(), "IYI");
  EXPECT_EQ(path.back(), eta);
}

TEST(Path, EndsAtEta) {
  const auto o = toric_zx_ordering(2);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10000; ++i) {
    const auto eta = random_pauli(8, rng);
    ASSERT_EQ(pauli_path(eta, o).back(), eta);
  }
}

TEST(Penalty, MatchesOracleOnRandomPaulis) {
  std::mt19937_64 rng(31);
  for (const auto& m : {build_toric(2), oracle::mixed3(), oracle::torus2()}) {
    for (const auto& o : {lexicographic_zx_ordering(m.n_qubits()), site_major_ordering(m.n_qubits())}) {
      for (int i = 0; i < 300; ++i) {
        const auto eta = random_pauli(m.n_qubits(), rng);
        const auto r = energy_penalty(m, eta, o);
        const std::size_t c = oracle_count(m, eta, o.slots());
        EXPECT_EQ(r.violated_count, c);
        EXPECT_EQ(r.penalty, two_j(m) * Rational(static_cast<std::int64_t>(c)));
      }
    }
  }
}

TEST(Penalty, OnlyGeneratorsCommutingWithEtaCount) {
  // an X string violating both generators of the chain at its endpoint has empty G_eta
  const auto m = oracle::chain3();
  const auto eta = PauliOperator::from_string("IXI");
  EXPECT_EQ(m.syndrome(eta).weight(), 2u);
  EXPECT_EQ(energy_penalty(m, eta, lexicographic_zx_ordering(3)).penalty, Rational(0));
}

TEST(Penalty, IdentityIsFree) {
  const auto m = build_toric(2);
  EXPECT_EQ(energy_penalty(m, PauliOperator::identity(8), toric_zx_ordering(2)).penalty, Rational(0));
}

TEST(Penalty, ToricTwoLinkXStringsCostTwoJ) {
  const auto m = build_toric(2);
  const auto o = toric_zx_ordering(2);
  std::size_t strings = 0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = a + 1; b < 8; ++b) {
      PauliOperator eta(8);
      eta.set(a, LocalPauli::X);
      eta.set(b, LocalPauli::X);
      if (m.syndrome(eta).weight() != 2) continue;  // links sharing exactly one vertex
      ++strings;
      const auto r = energy_penalty(m, eta, o);
      EXPECT_EQ(r.penalty, Rational(2)) << eta.str();
      EXPECT_EQ(r.violated_count, 1u);
    }
  EXPECT_EQ(strings, 16u);
}

TEST(Penalty, ToricGeneratorsUnderToricZx) {
  const auto m = build_toric(2);
  const auto o = toric_zx_ordering(2);
  for (const auto& g : m.generators()) {
    const auto path = pauli_path(g, o);
    EXPECT_EQ(m.syndrome(path.back()).weight(), 0u);
    const auto r = energy_penalty(m, g, o);
    EXPECT_EQ(r.violated_count, oracle_count(m, g, o.slots()));
  }
}

TEST(MaxPenalty, ExhaustiveMatchesOracle) {
  for (const auto& m : {oracle::single_z(), oracle::ising_pair(), oracle::chain3(), oracle::mixed3()}) {
    for (const auto& o : {lexicographic_zx_ordering(m.n_qubits()), site_major_ordering(m.n_qubits())}) {
      const auto r = max_penalty_exhaustive(m, o);
      EXPECT_TRUE(r.exact);
      EXPECT_EQ(r.value, two_j(m) * Rational(static_cast<std::int64_t>(oracle_max(m, o.slots()))));
      EXPECT_EQ(energy_penalty(m, r.witness, o).penalty, r.value);
    }
  }
}

TEST(MaxPenalty, ToricExhaustiveMatchesOracle) {
  const auto m = build_toric(2);
  for (bool swapped : {false, true}) {
    const auto o = toric_zx_ordering(2, swapped);
    const auto r = max_penalty_exhaustive(m, o);
    EXPECT_EQ(r.evaluated, 65536u);
    EXPECT_EQ(r.value, Rational(2 * static_cast<std::int64_t>(oracle_max(m, o.slots()))));
    EXPECT_EQ(r.witness_penalty.penalty, r.value);
  }
}

TEST(MaxPenalty, SwappedPassesExceedTwoJ) {
  const auto m = build_toric(2);
  EXPECT_GT(max_penalty_exhaustive(m, toric_zx_ordering(2, true)).value, Rational(2));
}

TEST(MaxPenalty, SingleQubitIsZero) {
  const auto m = oracle::single_z();
  for (const auto& o : {lexicographic_zx_ordering(1), SiteOrdering(1, {{0, Axis::X}, {0, Axis::Z}})})
    EXPECT_EQ(max_penalty_exhaustive(m, o).value, Rational(0));
}

TEST(MaxPenalty, WitnessIsFirstMaximizer) {
  const auto m = oracle::chain3();
  const auto o = lexicographic_zx_ordering(3);
  const auto r = max_penalty_exhaustive(m, o);
  for (std::uint64_t z = 0; z < 8; ++z)
    for (std::uint64_t x = 0; x < 8; ++x) {
      const auto eta = PauliOperator::from_words(3, x, z);
      if (energy_penalty(m, eta, o).penalty == r.value) {
        EXPECT_EQ(eta, r.witness);
        return;
      }
    }
}

TEST(MaxPenalty, CapExceeded) {
  const auto m = build_toric(3);
  EXPECT_THROW(max_penalty_exhaustive(m, toric_zx_ordering(3)), ResourceError);
}

TEST(MaxPenalty, SampledIsDeterministicLowerBound) {
  for (const auto& m : {build_toric(2), oracle::mixed3()}) {
    const auto o = lexicographic_zx_ordering(m.n_qubits());
    const auto exact = max_penalty_exhaustive(m, o);
    const auto a = max_penalty_sampled(m, o, 2000, 42);
    const auto b = max_penalty_sampled(m, o, 2000, 42);
    EXPECT_FALSE(a.exact);
    EXPECT_LE(a.value, exact.value);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(energy_penalty(m, a.witness, o).penalty, a.value);
  }
}

TEST(Barrier, TinyModels) {
  EXPECT_EQ(generalized_barrier_exact(oracle::single_z()).value, Rational(0));
  EXPECT_EQ(generalized_barrier_exact(oracle::ising_pair()).value, Rational(2));
}

TEST(Barrier, MatchesBruteForceOverAllOrderings) {
  for (const auto& m : {oracle::ising_pair(), oracle::chain3(), oracle::mixed3(),
                        parse_model("qubits 3\nterm 1 XZI\nterm 1 ZXZ\nterm 1 IZX\n")}) {
    const auto r = generalized_barrier_exact(m);
    EXPECT_EQ(r.value, two_j(m) * Rational(static_cast<std::int64_t>(oracle_barrier(m))));
    EXPECT_EQ(max_penalty_exhaustive(m, r.optimal).value, r.value);
  }
}

TEST(Barrier, NeverExceedsAnySuppliedOrdering) {
  std::mt19937_64 rng(37);
  for (const auto& m : {oracle::chain3(), oracle::torus2(), oracle::mixed3()}) {
    const auto bar = generalized_barrier_exact(m).value;
    std::vector<Slot> slots = lexicographic_zx_ordering(m.n_qubits()).slots();
    for (int i = 0; i < 20; ++i) {
      std::shuffle(slots.begin(), slots.end(), rng);
      EXPECT_LE(bar, max_penalty_exhaustive(m, SiteOrdering(m.n_qubits(), slots)).value);
    }
  }
}

TEST(Barrier, CapExceeded) { EXPECT_THROW(generalized_barrier_exact(build_ising(1, 7, false)), ResourceError); }

TEST(LowTempBound, ToricFormula) {
  const auto m = build_toric(2);
  const std::size_t n = m.n_qubits();
  for (double beta : {0.0, 0.1, 0.5, 2.0}) {
    const double h = h_min(m, BathSpec::glauber(beta));
    const double expect = h / (8.0 * static_cast<double>(n)) * std::exp(-4.0 * beta);
    EXPECT_NEAR(low_temp_gap_bound(Rational(2), beta, h, 2 * n), expect, 1e-15 * expect);
  }
}

TEST(LowTempBound, LimitsAndMonotonicity) {
  EXPECT_DOUBLE_EQ(low_temp_gap_bound(Rational(4), 0.0, 0.5, 16), 0.5 / 64.0);
  EXPECT_DOUBLE_EQ(low_temp_gap_bound(Rational(0), 3.0, 0.5, 16), low_temp_gap_bound(Rational(0), 0.1, 0.5, 16));
  double prev = low_temp_gap_bound(Rational(2), 0.0, 0.5, 16);
  for (double beta = 0.1; beta < 3.0; beta += 0.1) {
    const double cur = low_temp_gap_bound(Rational(2), beta, 0.5, 16);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}
