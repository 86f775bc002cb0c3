#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "antistoch/error.hpp"
#include "antistoch/graph.hpp"

using namespace antistoch;

namespace {

Graph from_edges(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.set_edge(u, v, true);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 1; u <= n; ++u)
    for (std::size_t v = u + 1; v <= n; ++v) g.set_edge(u, v, true);
  return g;
}

std::vector<std::size_t> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(EdgeSlot, NormalizesAndValidates) {
  const auto e = EdgeSlot::of(5, 2);
  EXPECT_EQ(e.u, 2u);
  EXPECT_EQ(e.v, 5u);
  EXPECT_THROW((void)EdgeSlot::of(3, 3), InputError);
  EXPECT_THROW((void)EdgeSlot::of(0, 3), InputError);
}

TEST(EdgeSlot, IndexIsLexicographicBijection) {
  for (std::size_t n : {2u, 3u, 7u, 50u}) {
    std::size_t expected = 1;
    for (std::size_t u = 1; u <= n; ++u) {
      for (std::size_t v = u + 1; v <= n; ++v) {
        const auto e = EdgeSlot::of(u, v);
        ASSERT_EQ(slot_index(n, e), expected);
        ASSERT_EQ(slot_at(n, expected), e);
        ++expected;
      }
    }
    EXPECT_EQ(expected - 1, pair_count(n));
  }
  EXPECT_THROW((void)slot_at(4, 0), InputError);
  EXPECT_THROW((void)slot_at(4, 7), InputError);
}

TEST(RandomGraph, SingleVertex) {
  const Graph g = random_graph(1, {123, 4});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(RandomGraph, FrozenGolden) {
  const Graph g = random_graph(5, {1, 0});
  EXPECT_EQ(serialize(g), "n=5\nfd80\n");
}

TEST(RandomGraph, Reproducible) {
  EXPECT_EQ(random_graph(300, {9, 17}), random_graph(300, {9, 17}));
  EXPECT_NE(random_graph(300, {9, 17}), random_graph(300, {9, 18}));
  EXPECT_NE(random_graph(300, {9, 17}), random_graph(300, {10, 17}));
}

TEST(RandomGraph, SymmetricIrreflexive) {
  const Graph g = random_graph(130, {5, 5});
  for (std::size_t u = 1; u <= 130; ++u) {
    EXPECT_FALSE(g.adjacent(u, u));
    for (std::size_t v = 1; v <= 130; ++v) ASSERT_EQ(g.adjacent(u, v), g.adjacent(v, u));
  }
  std::size_t total = 0;
  for (auto d : g.degrees()) total += d;
  EXPECT_EQ(total, 2 * g.edge_count());
}

TEST(RandomGraph, EdgeDensityIsHalf) {
  const std::size_t n = 200;
  double sum = 0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) sum += double(random_graph(n, {77, std::uint64_t(i)}).edge_count());
  const double density = sum / samples / double(pair_count(n));
  EXPECT_NEAR(density, 0.5, 0.01);
}

TEST(Flip, Examples) {
  const Graph empty(4);
  const Graph one = flip(empty, EdgeSlot::of(1, 2));
  EXPECT_EQ(one.edge_count(), 1u);
  EXPECT_TRUE(one.adjacent(1, 2));
  EXPECT_EQ(empty.edge_count(), 0u);

  const Graph k4 = flip(complete(4), EdgeSlot::of(1, 2));
  EXPECT_EQ(sorted(k4.degrees()), (std::vector<std::size_t>{2, 2, 3, 3}));
  EXPECT_THROW((void)flip(empty, EdgeSlot{1, 5}), InputError);
}

TEST(Flip, InvolutionRandomized) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng() % 90;
    const Graph g = random_graph(n, {3, std::uint64_t(rep)});
    const EdgeSlot e = slot_at(n, 1 + rng() % pair_count(n));
    const Graph h = flip(g, e);
    ASSERT_NE(h.adjacent(e.u, e.v), g.adjacent(e.u, e.v));
    ASSERT_EQ(flip(h, e), g);
  }
}

TEST(Induced, Examples) {
  const Graph c5 = from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
  const std::vector<std::size_t> none;
  EXPECT_EQ(induced(c5, none).order(), 0u);
  const std::vector<std::size_t> all{1, 2, 3, 4, 5};
  EXPECT_EQ(induced(c5, all), c5);
  const std::vector<std::size_t> three{2, 3, 4};
  EXPECT_EQ(induced(c5, three), from_edges(3, {{1, 2}, {2, 3}}));
  const std::vector<std::size_t> bad{1, 6};
  EXPECT_THROW((void)induced(c5, bad), InputError);
  const std::vector<std::size_t> dup{1, 1};
  EXPECT_THROW((void)induced(c5, dup), InputError);
}

TEST(Permute, Examples) {
  const Graph star = from_edges(4, {{1, 2}, {1, 3}, {1, 4}});
  const std::vector<std::size_t> id{1, 2, 3, 4};
  EXPECT_EQ(permute(star, id), star);
  const std::vector<std::size_t> swap12{2, 1, 3, 4};
  EXPECT_EQ(permute(star, swap12), from_edges(4, {{2, 1}, {2, 3}, {2, 4}}));
  const std::vector<std::size_t> bad{1, 1, 3, 4};
  EXPECT_THROW((void)permute(star, bad), InputError);
}

TEST(Permute, InverseAndInvariants) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng() % 80;
    const Graph g = random_graph(n, {11, std::uint64_t(rep)});
    const auto p = random_perm(n, rng);
    std::vector<std::size_t> inv(n);
    for (std::size_t u = 1; u <= n; ++u) inv[p[u - 1] - 1] = u;
    const Graph h = permute(g, p);
    for (std::size_t u = 1; u <= n; ++u)
      for (std::size_t v = u + 1; v <= n; ++v) ASSERT_EQ(h.adjacent(p[u - 1], p[v - 1]), g.adjacent(u, v));
    ASSERT_EQ(permute(h, inv), g);
    ASSERT_EQ(sorted(h.degrees()), sorted(g.degrees()));
    for (unsigned s = 0; s <= 4; ++s) {
      auto a = iterated_degree_signature(g, s);
      auto b = iterated_degree_signature(h, s);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      ASSERT_EQ(a, b) << "depth " << s;
    }
  }
}

TEST(EncodeWord, Examples) {
  const std::vector<std::size_t> id3{1, 2, 3};
  EXPECT_EQ(encode_word(Graph(3), id3).to_string(), "000");
  EXPECT_EQ(encode_word(complete(3), id3).to_string(), "111");

  const Graph p3 = from_edges(3, {{1, 2}, {2, 3}});
  const std::vector<std::size_t> rev{3, 2, 1};
  // labels: 1 <- vertex 3, 2 <- vertex 2, 3 <- vertex 1; slots (1,2),(1,3),(2,3)
  const Word w = encode_word(p3, rev);
  EXPECT_EQ(w.to_string(), "101");
  EXPECT_EQ(decode_word(3, w), p3);

  const Graph path = from_edges(3, {{1, 2}, {1, 3}});
  const Word w2 = encode_word(path, rev);
  EXPECT_EQ(w2.to_string(), "011");
  const Graph relabeled = decode_word(3, w2);
  EXPECT_TRUE(relabeled.adjacent(2, 3));
  EXPECT_TRUE(relabeled.adjacent(1, 3));
  EXPECT_FALSE(relabeled.adjacent(1, 2));

  EXPECT_THROW((void)decode_word(3, Word(2)), InputError);
  const std::vector<std::size_t> bad{1, 2};
  EXPECT_THROW((void)encode_word(p3, bad), InputError);
}

TEST(EncodeWord, RoundTripRandomized) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng() % 70;
    const Graph g = random_graph(n, {13, std::uint64_t(rep)});
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 1);
    ASSERT_EQ(decode_word(n, encode_word(g, id)), g);
    const auto order = random_perm(n, rng);
    const Word w = encode_word(g, order);
    const Graph h = decode_word(n, w);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) ASSERT_EQ(h.adjacent(i, j), g.adjacent(order[i - 1], order[j - 1]));
    ASSERT_EQ(encode_sequence(g, order), w);
  }
}

TEST(EncodeSequence, MatchesInducedSubgraph) {
  const Graph g = random_graph(60, {21, 0});
  const std::vector<std::size_t> seq{7, 3, 41, 12, 59};
  const Word w = encode_sequence(g, seq);
  ASSERT_EQ(w.length(), 10u);
  const Graph h = decode_word(5, w);
  for (std::size_t i = 1; i <= 5; ++i)
    for (std::size_t j = i + 1; j <= 5; ++j) EXPECT_EQ(h.adjacent(i, j), g.adjacent(seq[i - 1], seq[j - 1]));
  const std::vector<std::size_t> dup{7, 7};
  EXPECT_THROW((void)encode_sequence(g, dup), InputError);
}

TEST(Signature, DepthZeroAndOne) {
  const Graph g = random_graph(40, {8, 8});
  const auto s0 = iterated_degree_signature(g, 0);
  EXPECT_TRUE(std::all_of(s0.begin(), s0.end(), [&](auto x) { return x == s0[0]; }));
  const auto s1 = iterated_degree_signature(g, 1);
  const auto deg = g.degrees();
  for (std::size_t a = 0; a < 40; ++a)
    for (std::size_t b = 0; b < 40; ++b) EXPECT_EQ(s1[a] == s1[b], deg[a] == deg[b]);
  EXPECT_THROW((void)iterated_degree_signature(g, kMaxSignatureDepth + 1), InputError);
}

TEST(Format, Examples) {
  EXPECT_EQ(serialize(Graph(3)), "n=3\n00\n");
  EXPECT_EQ(serialize(complete(3)), "n=3\ne0\n");
  EXPECT_EQ(parse("n=3\nE0\n"), complete(3));
  EXPECT_EQ(parse("n=3\ne0"), complete(3));
  EXPECT_EQ(serialize(Graph(1)), "n=1\n\n");
  EXPECT_EQ(parse("n=1\n\n"), Graph(1));
}

TEST(Format, RejectsMalformed) {
  EXPECT_THROW((void)parse(""), FormatError);
  EXPECT_THROW((void)parse("m=3\n00\n"), FormatError);
  EXPECT_THROW((void)parse("n=x\n00\n"), FormatError);
  EXPECT_THROW((void)parse("n=3\n0000\n"), FormatError);
  EXPECT_THROW((void)parse("n=3\n0\n"), FormatError);
  EXPECT_THROW((void)parse("n=3\nzz\n"), FormatError);
  EXPECT_THROW((void)parse("n=3\ne1\n"), FormatError);
  EXPECT_THROW((void)parse("n=3\ne0\nextra\n"), FormatError);
}

TEST(Format, RoundTripRandomized) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 1 + (i * 37) % 150;
    const Graph g = random_graph(n, {99, i});
    ASSERT_EQ(parse(serialize(g)), g);
  }
}

TEST(VertexMask, CountsNeighborsInside) {
  const Graph g = from_edges(70, {{1, 2}, {1, 65}, {1, 70}, {1, 3}});
  VertexMask m(70);
  m.insert(2);
  m.insert(65);
  m.insert(69);
  EXPECT_TRUE(m.contains(65));
  EXPECT_FALSE(m.contains(3));
  EXPECT_EQ(m.count_in(g.row(1)), 2u);
}
