#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "stabgap/stabgap.hpp"

using namespace stabgap;

namespace {

std::set<std::pair<std::size_t, Axis>> slot_set(const SiteOrdering& o) {
  std::set<std::pair<std::size_t, Axis>> s;
  for (const auto& slot : o.slots()) s.insert({slot.site, slot.axis});
  return s;
}

void expect_covers_all_slots(const SiteOrdering& o, std::size_t n) {
  EXPECT_EQ(o.l_star(), 2 * n);
  EXPECT_EQ(slot_set(o).size(), 2 * n);
}

}  // namespace

TEST(Parse, MinimalDocument) {
  const auto m = parse_model("qubits 1\nterm 1 Z");
  EXPECT_EQ(m.n_qubits(), 1u);
  EXPECT_EQ(m.n_generators(), 1u);
  EXPECT_EQ(m.rank(), 1u);
}

TEST(Parse, CommentsMetadataAndRationals) {
  const auto doc = parse_model_document("# header\nname demo model\nlattice chain\nqubits 2\n\nterm 3/4 ZZ  # bond\nterm 0.5 XX\n");
  EXPECT_EQ(doc.name, "demo model");
  EXPECT_EQ(doc.lattice, "chain");
  EXPECT_EQ(doc.model.coupling(0), Rational(3, 4));
  EXPECT_EQ(doc.model.coupling(1), Rational(1, 2));
}

TEST(Parse, NonCommutingPairNamesBothTerms) {
  try {
    parse_model("qubits 3\nterm 1 ZZI\nterm 1 XXI\nterm 1 ZXI\n");
    FAIL() << "expected ValidationError";
  } catch (const ParseError&) {
    FAIL() << "commutation failures are validation errors, not parse errors";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("generators 1 and 3"), std::string::npos) << msg;
  }
}

TEST(Parse, MalformedPauliCharacterReportsLineAndColumn) {
  try {
    parse_model("qubits 3\nterm 1 ZQZ\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
}

TEST(Parse, StructuralErrors) {
  EXPECT_THROW(parse_model("term 1 Z\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 2\nterm 1 Z\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 1\nterm 0 Z\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 1\nterm -1 Z\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 1\nterm x Z\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 1\nqubits 1\nterm 1 Z\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 1\nfoo\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 0\n"), ParseError);
  EXPECT_THROW(parse_model("qubits 2\n"), ValidationError);
}

TEST(Serialize, ToricRoundTripIsIdentity) {
  const auto m = build_toric(2);
  const std::string text = serialize_model(m, "toric", "L=2");
  const auto doc = parse_model_document(text);
  EXPECT_EQ(doc.model, m);
  EXPECT_EQ(doc.name, "toric");
  EXPECT_EQ(serialize_document(doc), text);
}

TEST(Serialize, RationalCouplingsSurvive) {
  const auto m = parse_model("qubits 3\nterm 1/3 ZZI\nterm 2.125 IZZ\nterm 7 XXX\n");
  const auto back = parse_model(serialize_model(m));
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.coupling(1), Rational(17, 8));
  EXPECT_NE(serialize_model(m).find("term 17/8 IZZ"), std::string::npos);
}

TEST(Toric, SizesAndRank) {
  for (std::size_t L : {2u, 3u}) {
    const auto m = build_toric(L);
    EXPECT_EQ(m.n_qubits(), 2 * L * L);
    EXPECT_EQ(m.n_generators(), 2 * L * L);
    EXPECT_EQ(m.rank(), 2 * L * L - 2);
    for (const auto& c : m.couplings()) EXPECT_EQ(c, Rational(1));
    for (const auto& g : m.generators()) EXPECT_EQ(g.weight(), 4u);
  }
  EXPECT_THROW(build_toric(1), ValidationError);
}

TEST(Toric, ProductOfVertexGeneratorsIsIdentity) {
  const auto m = build_toric(3);
  PauliOperator vertex(m.n_qubits()), plaquette(m.n_qubits());
  for (const auto& g : m.generators()) (g.x().none() ? vertex : plaquette) *= g;
  EXPECT_TRUE(vertex.is_identity());
  EXPECT_TRUE(plaquette.is_identity());
}

TEST(Toric, EachLinkXAnticommutesWithTwoVertices) {
  const auto m = build_toric(3);
  for (std::size_t j = 0; j < m.n_qubits(); ++j) {
    std::size_t count = 0;
    for (const auto& g : m.generators())
      if (!commute(g, PauliOperator::single(m.n_qubits(), j, LocalPauli::X))) {
        EXPECT_TRUE(g.x().none());
        ++count;
      }
    EXPECT_EQ(count, 2u);
  }
}

TEST(Toric, DetectedFromGeneratorsOnly) {
  EXPECT_EQ(detect_toric(build_toric(3)), std::optional<std::size_t>(3));
  EXPECT_EQ(detect_toric(parse_model(serialize_model(build_toric(2)))), std::optional<std::size_t>(2));
  EXPECT_FALSE(detect_toric(oracle::torus2()).has_value());
}

TEST(Ising, Sizes) {
  const auto chain = build_ising(1, 3, false);
  EXPECT_EQ(chain.n_generators(), 2u);
  EXPECT_EQ(chain.rank(), 2u);
  const auto ring = build_ising(1, 4, true);
  EXPECT_EQ(ring.n_generators(), 4u);
  EXPECT_EQ(ring.rank(), 3u);
  const auto sq = build_ising(2, 3, true);
  EXPECT_EQ(sq.n_qubits(), 9u);
  EXPECT_EQ(sq.n_generators(), 18u);
  for (const auto& g : sq.generators()) {
    EXPECT_EQ(g.weight(), 2u);
    EXPECT_TRUE(g.x().none());
  }
  EXPECT_THROW(build_ising(3, 3, true), ValidationError);
  EXPECT_THROW(build_ising(1, 1, true), ValidationError);
}

TEST(Ising, PeriodicSquareNeighborhoods) {
  const auto m = build_ising(2, 4, true);
  const auto adj = adjacency(m);
  for (const auto& s : adj.sites) {
    EXPECT_EQ(s.neighbors.size(), 5u);
    EXPECT_EQ(s.support.size(), 4u);
  }
}

TEST(Ordering, BuiltinsCoverEverySlotOnce) {
  const auto toric = build_toric(2);
  for (const char* name : {"toric-zx", "toric-xz", "lex-zx", "lexicographic-zx", "site-major"})
    expect_covers_all_slots(builtin_ordering(name, toric), 8);
  expect_covers_all_slots(builtin_ordering("lex-zx", oracle::chain3()), 3);
  EXPECT_EQ(builtin_ordering("toric-zx", build_toric(3)).l_star(), 36u);
  EXPECT_THROW(builtin_ordering("toric-zx", oracle::chain3()), ValidationError);
  EXPECT_THROW(builtin_ordering("spiral", toric), ValidationError);
}

TEST(Ordering, ToricZxTraversal) {
  // Z pass: vertical links column by column, then horizontal links row by row.
  // X pass: horizontal links column by column, then vertical links row by row.
  const std::size_t L = 3;
  const ToricLayout lay{L};
  const auto o = toric_zx_ordering(L);
  std::vector<Slot> expect;
  for (std::size_t c = 0; c < L; ++c)
    for (std::size_t r = 0; r < L; ++r) expect.push_back({lay.vertical(r, c), Axis::Z});
  for (std::size_t r = 0; r < L; ++r)
    for (std::size_t c = 0; c < L; ++c) expect.push_back({lay.horizontal(r, c), Axis::Z});
  for (std::size_t c = 0; c < L; ++c)
    for (std::size_t r = 0; r < L; ++r) expect.push_back({lay.horizontal(r, c), Axis::X});
  for (std::size_t r = 0; r < L; ++r)
    for (std::size_t c = 0; c < L; ++c) expect.push_back({lay.vertical(r, c), Axis::X});
  EXPECT_EQ(o.slots(), expect);
}

TEST(Ordering, ParsePermutedFileAndRoundTrip) {
  const auto m = oracle::mixed3();
  std::vector<Slot> slots;
  for (std::size_t j = 0; j < 3; ++j) {
    slots.push_back({j, Axis::Z});
    slots.push_back({j, Axis::X});
  }
  std::mt19937_64 rng(23);
  std::shuffle(slots.begin(), slots.end(), rng);
  const SiteOrdering o(3, slots);
  const std::string text = serialize_ordering(o);
  const auto back = parse_ordering(text, m);
  EXPECT_EQ(back.slots(), slots);
}

TEST(Ordering, DuplicateOrMissingSlotsRejected) {
  const auto m = oracle::ising_pair();
  EXPECT_THROW(parse_ordering("slot 0 Z\nslot 0 X\nslot 1 Z\n", m), ValidationError);
  EXPECT_THROW(parse_ordering("slot 0 Z\nslot 0 X\nslot 1 Z\nslot 1 Z\n", m), ValidationError);
  EXPECT_THROW(parse_ordering("slot 0 Z\nslot 0 X\nslot 1 Z\nslot 2 X\n", m), ParseError);
  EXPECT_THROW(parse_ordering("slot 0 Y\n", m), ParseError);
  EXPECT_THROW(parse_ordering("site 0 Z\n", m), ParseError);
}

TEST(RateTable, ParsesAndRejects) {
  const auto t = parse_rate_table("# omega rate\n2 1.0\n-2 0.25\n0 0.5\n");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t.at(Rational(-2)), 0.25);
  EXPECT_THROW(parse_rate_table("2 1.0\n2 0.5\n"), ParseError);
  EXPECT_THROW(parse_rate_table("2\n"), ParseError);
  EXPECT_THROW(parse_rate_table("2 abc\n"), ParseError);
  EXPECT_THROW(parse_rate_table("2 -1\n"), ParseError);
}
