#include "rgi/enumerate.hpp"
#include "rgi/rational.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace rgi;
using namespace testsupport;

TEST(Trace, DiskCounts)
{
  auto G = disk_graph(3, 1);
  auto t = trace(G);
  EXPECT_EQ(t.v, 3);
  EXPECT_EQ(t.e, 3);
  EXPECT_EQ(t.b, 1);
  EXPECT_EQ(t.faces.size(), 1u);
  EXPECT_EQ(t.genus, 0);
  EXPECT_EQ(t.v_marked, 3);
  EXPECT_EQ(t.e_boundary, 3);
  EXPECT_EQ(t.e_internal, 0);
}

TEST(Trace, RejectsBrokenInput)
{
  auto G = disk_graph(2, 1);
  auto bad = G;
  bad.alpha[0] = 0;
  EXPECT_THROW(trace(bad), TraceError);
  bad = G;
  bad.sigma[0] = bad.sigma[1];
  EXPECT_THROW(trace(bad), TraceError);
  bad = G;
  bad.tag[1] = {FaceKind::Face, 2};
  EXPECT_THROW(trace(bad), TraceError);
  RibbonGraph empty;
  EXPECT_THROW(trace(empty), TraceError);
}

TEST(Classify, Examples)
{
  auto c = classify(disk_graph(1, 1));
  EXPECT_EQ(c.tag, Classification::Tag::Critical);
  EXPECT_EQ(c.g, 0);
  EXPECT_EQ(c.k, 1);
  EXPECT_EQ(c.l, 1);

  EXPECT_EQ(classify(ghost_graph()).tag, Classification::Tag::Ghost);
  EXPECT_EQ(classify(exceptional_graph(4)).tag, Classification::Tag::Exceptional);

  auto two_ghost = marked_circle(2, {FaceKind::Ghost, 0}, GraphKind::Ghost);
  EXPECT_EQ(classify(two_ghost).tag, Classification::Tag::Invalid);

  auto unlabeled_faces = disk_graph(2, 2);
  EXPECT_EQ(classify(unlabeled_faces).tag, Classification::Tag::Invalid); // label 2 with l = 1
}

TEST(Classify, UnstableAndBadDegree)
{
  // a boundary circle with no vertices cannot be built; a single marked disk with
  // an unmarked degree-2 vertex is rejected
  auto G = disk_graph(2, 1);
  for (auto &m : G.marked)
    m = 0;
  auto c = classify(G);
  EXPECT_EQ(c.tag, Classification::Tag::Invalid);
  EXPECT_EQ(c.reason, "vertex degree");
}

TEST(Automorphisms, SmallGraphsAgainstAllPermutations)
{
  Enumerator en;
  for (auto [g, k, l] : std::vector<std::tuple<int, int, int>>{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 0, 2}, {1, 0, 1},
                                                               {0, 1, 2}, {1, 1, 1}}) {
    for (auto &G : en.gen_components(g, k, l).items) {
      EXPECT_EQ(automorphism_order(G), aut_by_all_permutations(G));
      EXPECT_EQ(automorphism_order(G), aut_by_propagation(G.sigma, G.alpha, plain_colors(G)));
    }
  }
  EXPECT_EQ(automorphism_order(ghost_graph()), 3);
  EXPECT_EQ(automorphism_order(disk_graph(4, 1)), 4);
}

TEST(CanonicalCode, InvariantUnderRelabeling)
{
  Enumerator en;
  std::mt19937 rng(7);
  for (auto [g, k, l] : std::vector<std::tuple<int, int, int>>{{0, 0, 3}, {1, 0, 2}, {2, 0, 1}, {1, 2, 1}}) {
    auto cat = en.gen_components(g, k, l);
    for (std::size_t i = 0; i < cat.items.size(); ++i)
      for (int rep = 0; rep < 3; ++rep) {
        auto H = shuffled(cat.items[i], rng);
        EXPECT_EQ(canonical_code(H), cat.codes[i]);
        EXPECT_EQ(automorphism_order(H), aut_by_propagation(H.sigma, H.alpha, plain_colors(H)));
      }
    for (std::size_t i = 1; i < cat.codes.size(); ++i)
      EXPECT_LT(cat.codes[i - 1], cat.codes[i]);
  }
}

TEST(CanonicalCode, RelabelHelpers)
{
  auto G = disk_graph(3, 1);
  auto C = canonical_relabel(G);
  EXPECT_EQ(canonical_code(C), canonical_code(G));
  EXPECT_EQ(code_hex({1, 255}), "00000001000000ff");
}

TEST(MassFormula, GeneratorMatchesBruteForce)
{
  // sum of 1/|Aut| over unlabeled-face classes = (labeled structures) / n!
  Enumerator en;
  for (auto [g, k, l] : std::vector<std::tuple<int, int, int>>{
           {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 0, 2}, {1, 0, 1}, {0, 1, 2}, {1, 1, 1}, {0, 4, 1}}) {
    Rational mass = 0;
    for (auto &G : en.components_unlabeled(g, k, l).items)
      mass += Rational(1, automorphism_order(G));
    const int n = component_dart_count(g, k, l);
    Rational brute = Rational(brute_labeled_structures(g, k, l)) / Rational(factorial(n));
    EXPECT_EQ(mass, brute) << "(g,k,l)=(" << g << "," << k << "," << l << ")";
  }
}
