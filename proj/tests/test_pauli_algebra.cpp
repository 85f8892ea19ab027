#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "stabgap/stabgap.hpp"

using namespace stabgap;

namespace {

PauliOperator random_pauli(std::size_t n, std::mt19937_64& rng) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return PauliOperator::from_words(n, rng() & mask, rng() & mask);
}

Syndrome random_realized(const StabilizerModel& m, std::mt19937_64& rng) {
  return m.syndrome_at(rng() & ((std::uint64_t{1} << m.rank()) - 1));
}

}  // namespace

TEST(Pauli, XAndZOnOneSiteAnticommute) {
  const auto x = PauliOperator::single(1, 0, LocalPauli::X);
  const auto z = PauliOperator::single(1, 0, LocalPauli::Z);
  EXPECT_EQ(symplectic_product(x, z), 1);
  EXPECT_FALSE(commute(x, z));
}

TEST(Pauli, IdentityCommutesWithEverything) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(symplectic_product(PauliOperator::identity(4), random_pauli(4, rng)), 0);
}

TEST(Pauli, CommutationMatchesDenseCommutator) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_pauli(3, rng);
    const auto q = random_pauli(3, rng);
    const oracle::Mat a = oracle::matrix(p), b = oracle::matrix(q);
    const bool dense_commute = (a * b - b * a).norm() < 1e-12;
    EXPECT_EQ(commute(p, q), dense_commute) << p.str() << " " << q.str();
  }
}

TEST(Pauli, MismatchedLengthsThrow) {
  EXPECT_THROW(symplectic_product(PauliOperator::identity(2), PauliOperator::identity(3)), DimensionError);
  const auto m = oracle::chain3();
  EXPECT_THROW(m.syndrome(PauliOperator::identity(2)), DimensionError);
}

TEST(Pauli, SelfCompositionIsIdentity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_pauli(6, rng);
    EXPECT_TRUE((p * p).is_identity());
  }
}

TEST(Pauli, SymplecticFormIsBilinear) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_pauli(5, rng), q = random_pauli(5, rng), r = random_pauli(5, rng);
    EXPECT_EQ(symplectic_product(p * q, r), symplectic_product(p, r) ^ symplectic_product(q, r));
  }
}

TEST(Pauli, StringRoundTrip) {
  const auto p = PauliOperator::from_string("IXYZ");
  EXPECT_EQ(p.str(), "IXYZ");
  EXPECT_EQ(p.at(2), LocalPauli::Y);
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_THROW(PauliOperator::from_string("IXQ"), ValidationError);
}

TEST(Syndrome, ToricSingleLinkXHitsTwoAdjacentVertices) {
  const auto m = build_toric(2);
  for (std::size_t link = 0; link < m.n_qubits(); ++link) {
    const auto p = PauliOperator::single(8, link, LocalPauli::X);
    const Syndrome s = m.syndrome(p);
    EXPECT_EQ(s.weight(), 2u);
    const oracle::Mat a = oracle::matrix(p);
    for (std::size_t k = 0; k < m.n_generators(); ++k) {
      const oracle::Mat g = oracle::matrix(m.generator(k));
      const bool anti = (a * g + g * a).norm() < 1e-12;
      EXPECT_EQ(s.get(k), anti);
      // only Z-type (vertex) generators respond to an X error
      if (s.get(k)) EXPECT_TRUE(m.generator(k).x().none());
    }
  }
}

TEST(Syndrome, GeneratorsHaveZeroSyndrome) {
  for (const auto& m : {build_toric(2), oracle::mixed3(), oracle::torus2()})
    for (const auto& g : m.generators()) EXPECT_EQ(m.syndrome(g).weight(), 0u);
}

TEST(Syndrome, IsAHomomorphism) {
  const auto m = build_toric(2);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_pauli(8, rng), q = random_pauli(8, rng);
    EXPECT_EQ(m.syndrome(p * q), m.syndrome(p) ^ m.syndrome(q));
  }
  EXPECT_EQ(m.syndrome(PauliOperator::identity(8)).weight(), 0u);
}

TEST(Energy, SingleQubit) {
  const auto m = oracle::single_z();
  Syndrome b(1);
  EXPECT_EQ(m.energy(b), Rational(-1));
  b.bits.set(0);
  EXPECT_EQ(m.energy(b), Rational(1));
}

TEST(Energy, ToricGroundState) { EXPECT_EQ(build_toric(2).ground_energy(), Rational(-8)); }

TEST(Energy, MatchesDenseHamiltonianOnProjectors) {
  for (const auto& m : {oracle::chain3(), oracle::mixed3(), oracle::ising_pair()}) {
    const oracle::Mat h = oracle::hamiltonian(m);
    for (const auto& b : m.realized_syndromes()) {
      const oracle::Mat p = oracle::projector(m, b);
      ASSERT_GT(p.norm(), 0.5);
      EXPECT_LT((h * p - m.energy(b).to_double() * p).norm(), 1e-12);
    }
  }
}

TEST(Bohr, SingleQubitFlip) {
  const auto m = oracle::single_z();
  EXPECT_EQ(m.bohr_frequency(m.zero_syndrome(), PauliOperator::single(1, 0, LocalPauli::X)), Rational(-2));
  EXPECT_EQ(m.bohr_frequency(m.zero_syndrome(), PauliOperator::single(1, 0, LocalPauli::Z)), Rational(0));
}

TEST(Bohr, EqualsEnergyDifferenceExactly) {
  std::mt19937_64 rng(17);
  for (const auto& m : {oracle::mixed3(), build_toric(2), oracle::torus2()}) {
    for (int i = 0; i < 200; ++i) {
      const auto a = random_realized(m, rng);
      const auto p = random_pauli(m.n_qubits(), rng);
      const auto e = m.syndrome(p);
      const Rational w = m.bohr_frequency(a, p);
      EXPECT_EQ(w, m.energy(a) - m.energy(a ^ e));
      EXPECT_EQ(w, -m.bohr_frequency(a ^ e, p));
    }
  }
}

TEST(Bohr, CommutingPauliHasZeroFrequency) {
  const auto m = build_toric(2);
  for (const auto& a : m.realized_syndromes())
    for (const auto& g : m.generators()) EXPECT_TRUE(m.bohr_frequency(a, g).is_zero());
}

TEST(Bohr, UnrealizedSyndromeRejectedUnlessAllowed) {
  const auto m = build_toric(2);
  Syndrome odd(8);
  odd.bits.set(0);
  EXPECT_FALSE(m.is_realized(odd));
  const auto p = PauliOperator::single(8, 0, LocalPauli::X);
  EXPECT_THROW(m.bohr_frequency(odd, p), ValidationError);
  EXPECT_NO_THROW(m.bohr_frequency(odd, p, true));
}

TEST(Realized, ToricMatchesFullPauliEnumeration) {
  const auto m = build_toric(2);
  EXPECT_EQ(m.rank(), 6u);
  const auto syn = m.realized_syndromes();
  ASSERT_EQ(syn.size(), 64u);
  std::set<Syndrome> from_paulis;
  for (std::uint64_t x = 0; x < 256; ++x)
    for (std::uint64_t z = 0; z < 256; ++z) from_paulis.insert(m.syndrome(PauliOperator::from_words(8, x, z)));
  EXPECT_EQ(std::set<Syndrome>(syn.begin(), syn.end()), from_paulis);
  for (const auto& s : syn) {
    std::size_t vertex = 0, plaquette = 0;
    for (std::size_t k = 0; k < 8; ++k)
      if (s.get(k)) (m.generator(k).x().none() ? vertex : plaquette)++;
    EXPECT_EQ(vertex % 2, 0u);
    EXPECT_EQ(plaquette % 2, 0u);
  }
}

TEST(Realized, IndependentGeneratorsGiveAllBitstrings) {
  const auto m = build_ising(1, 5, false);
  EXPECT_EQ(m.rank(), 4u);
  std::set<Syndrome> s;
  for (const auto& b : m.realized_syndromes()) s.insert(b);
  EXPECT_EQ(s.size(), 16u);
}

TEST(Realized, ClosedUnderXorAndIndexed) {
  const auto m = oracle::torus2();
  const auto syn = m.realized_syndromes();
  EXPECT_TRUE(syn.front().bits.none());
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const auto& a = syn[rng() % syn.size()];
    const auto& b = syn[rng() % syn.size()];
    EXPECT_TRUE(m.is_realized(a ^ b));
    EXPECT_EQ(m.syndrome_index(a ^ b), m.syndrome_index(a) ^ m.syndrome_index(b));
  }
  for (std::size_t i = 0; i < syn.size(); ++i) EXPECT_EQ(m.syndrome_index(syn[i]), i);
}

TEST(Realized, CapExceededThrows) {
  EXPECT_THROW(build_ising(1, 6, false).realized_syndromes(3), ResourceError);
}

TEST(Model, RejectsNonCommutingAndNonPositive) {
  EXPECT_THROW(parse_model("qubits 2\nterm 1 XX\nterm 1 ZI\n"), ValidationError);
  EXPECT_THROW(StabilizerModel(1, {PauliOperator::from_string("Z")}, {Rational(0)}), ValidationError);
  EXPECT_THROW(StabilizerModel(1, {PauliOperator::from_string("Z")}, {Rational(-1, 2)}), ValidationError);
  EXPECT_THROW(StabilizerModel(2, {PauliOperator::from_string("II")}, {Rational(1)}), ValidationError);
}

TEST(Model, RejectsGroupContainingMinusIdentity) {
  EXPECT_THROW(parse_model("qubits 2\nterm 1 XX\nterm 1 YY\nterm 1 ZZ\n"), ValidationError);
  EXPECT_NO_THROW(parse_model("qubits 2\nterm 1 XX\nterm 1 ZZ\n"));
}

TEST(Rates, PresetValues) {
  EXPECT_DOUBLE_EQ(BathSpec::glauber(1.3).rate(Rational(0)), 0.5);
  const auto metro = BathSpec::metropolis(1.0);
  EXPECT_DOUBLE_EQ(metro.rate(Rational(-2)), std::exp(-2.0) * metro.rate(Rational(2)));
  EXPECT_DOUBLE_EQ(metro.rate(Rational(2)), 1.0);
}

TEST(Rates, KmsHoldsForPresets) {
  const auto m = build_toric(2);
  for (double beta : {0.0, 0.4, 2.0}) {
    for (const auto& bath : {BathSpec::glauber(beta), BathSpec::metropolis(beta)}) {
      EXPECT_NO_THROW(validate_bath(m, bath));
      for (const auto& w : realized_bohr_frequencies(m)) {
        const double lhs = bath.rate(-w), rhs = std::exp(-beta * w.to_double()) * bath.rate(w);
        EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
      }
    }
  }
}

TEST(Rates, SingleQubitHMin) {
  const auto m = oracle::single_z();
  const auto freqs = realized_bohr_frequencies(m);
  EXPECT_EQ(std::set<Rational>(freqs.begin(), freqs.end()), (std::set<Rational>{Rational(-2), Rational(0), Rational(2)}));
  EXPECT_NEAR(h_min(m, BathSpec::glauber(1.0)), 1.0 / (1.0 + std::exp(2.0)), 1e-15);
}

TEST(Rates, CustomTableChecked) {
  const auto m = oracle::single_z();
  const double beta = 0.7;
  BathSpec good = BathSpec::custom(beta, {{Rational(2), 1.0}, {Rational(0), 0.5}, {Rational(-2), std::exp(-2 * beta)}});
  EXPECT_NO_THROW(validate_bath(m, good));
  BathSpec bad = BathSpec::custom(beta, {{Rational(2), 1.0}, {Rational(0), 0.5}, {Rational(-2), 1.0}});
  EXPECT_THROW(validate_bath(m, bad), ValidationError);
  BathSpec missing = BathSpec::custom(beta, {{Rational(2), 1.0}, {Rational(0), 0.5}});
  EXPECT_THROW(h_min(m, missing), ValidationError);
  EXPECT_THROW(BathSpec::glauber(-1.0), ValidationError);
}

TEST(Rational, ParseAndArithmetic) {
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-1.5").str(), "-3/2");
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), ValidationError);
  EXPECT_THROW(Rational::parse("abc"), ValidationError);
}
