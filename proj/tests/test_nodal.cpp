#include "rgi/enumerate.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace rgi;
using namespace testsupport;

namespace {

// vertex ids of the marked circle are 0..k-1 in order
NodalGraph tau0_sigma0()
{
  return assemble({disk_graph(1, 1), exceptional_graph(1)}, {{{0, 0}, {1, 0}}});
}

NodalGraph sigma0_cubed()
{
  return assemble({ghost_graph(), exceptional_graph(1), exceptional_graph(1), exceptional_graph(1)},
                  {{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}, {{0, 2}, {3, 0}}});
}

NodalGraph self_node_disk() { return assemble({disk_graph(2, 1)}, {{{0, 0}, {0, 1}}}); }

int brute_nodal_aut(const NodalGraph &ng)
{
  auto A = augment(ng);
  std::vector<long long> colors(A.map.color.begin(), A.map.color.end());
  return aut_by_propagation(A.map.sigma, A.map.alpha, colors);
}

} // namespace

TEST(Assemble, Errors)
{
  auto disk = disk_graph(2, 1);
  auto exc = exceptional_graph(1);
  auto ghost = ghost_graph();
  auto expect_error = [](auto fn, const std::string &what) {
    try {
      fn();
      FAIL() << "expected " << what;
    } catch (const AssembleError &e) {
      EXPECT_EQ(std::string(e.what()), what);
    }
  };
  expect_error([&] { assemble({disk, exc}, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}}); }, "duplicate endpoint");
  expect_error([&] { assemble({disk, ghost}, {{{0, 0}, {1, 0}}}); }, "ghost-with-illegal");
  expect_error([&] { assemble({exc, disk}, {{{0, 0}, {1, 0}}}); }, "exceptional-with-legal");
  expect_error([&] { assemble({disk, exc}, {}); }, "disconnected");
  expect_error([&] { assemble({disk, exc}, {{{0, 5}, {1, 0}}}); }, "endpoint is not a marked vertex");
  expect_error([&] { assemble({disk, exc}, {{{2, 0}, {1, 0}}}); }, "endpoint component out of range");
}

TEST(Odd, Examples)
{
  EXPECT_TRUE(is_odd(tau0_sigma0(), OddMode::Extended));
  EXPECT_TRUE(is_odd(sigma0_cubed(), OddMode::Extended));
  // self-node disk: one legal side on the only boundary
  EXPECT_TRUE(is_odd(self_node_disk(), OddMode::Extended));
  EXPECT_TRUE(is_odd(self_node_disk(), OddMode::Critical));
  // a disk with two free points is even
  NodalGraph plain{{disk_graph(2, 1)}, {}};
  EXPECT_FALSE(is_odd(plain, OddMode::Critical));
  NodalGraph one{{disk_graph(1, 1)}, {}};
  EXPECT_TRUE(is_odd(one, OddMode::Critical));
}

TEST(Smooth, Profiles)
{
  auto p = smooth(tau0_sigma0());
  EXPECT_EQ(p.genus, 0);
  EXPECT_EQ(p.b, 1);
  EXPECT_EQ(p.exc, std::vector<int>{0});

  p = smooth(sigma0_cubed());
  EXPECT_EQ(p.genus, 0);
  EXPECT_EQ(p.b, 1);
  EXPECT_EQ(p.exc, (std::vector<int>{0, 0, 0}));

  p = smooth(self_node_disk());
  EXPECT_EQ(p.genus, 1);
  EXPECT_EQ(p.b, 2);
  EXPECT_EQ(p.kbar, (std::vector<int>{0, 0}));

  NodalGraph bare{{ghost_graph()}, {}};
  p = smooth(bare);
  EXPECT_EQ(p.genus, 0);
  EXPECT_EQ(p.kbar, std::vector<int>{3});
}

TEST(NodalAut, HandExamples)
{
  EXPECT_EQ(nodal_aut_order(tau0_sigma0()), 1);
  EXPECT_EQ(nodal_aut_order(sigma0_cubed()), 3);
  EXPECT_EQ(nodal_aut_order(self_node_disk()), 1);
  NodalGraph bare{{ghost_graph()}, {}};
  EXPECT_EQ(nodal_aut_order(bare), 3);
}

TEST(NodalAut, ExplicitSearchMatchesAugmentedMap)
{
  Enumerator en;
  int seen = 0;
  for (int g = 0; g <= 2; ++g)
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l) {
        if (g - 1 + l + k > 3)
          continue;
        for (auto &e : en.refined_unlabeled(g, k, l).items) {
          EXPECT_EQ(nodal_aut_order(e.graph), brute_nodal_aut(e.graph));
          ++seen;
        }
      }
  for (auto E : std::vector<std::vector<int>>{{0}, {0, 0}, {1}, {2}, {0, 0, 0}, {0, 1}})
    for (int l = 0; l <= 3; ++l)
      for (int g = 0; g <= 2; ++g) {
        if (g - 1 + l + static_cast<int>(E.size()) > 3)
          continue;
        for (auto &e : en.extended_unlabeled(g, l, E).items) {
          EXPECT_EQ(nodal_aut_order(e.graph), brute_nodal_aut(e.graph));
          ++seen;
        }
      }
  EXPECT_GT(seen, 50);
}

TEST(NodalCode, InvariantUnderComponentOrder)
{
  auto a = sigma0_cubed();
  NodalGraph b;
  b.components = {exceptional_graph(1), exceptional_graph(1), ghost_graph(), exceptional_graph(1)};
  b.nodes = {{{2, 0}, {0, 0}}, {{2, 2}, {1, 0}}, {{2, 1}, {3, 0}}};
  EXPECT_EQ(nodal_canonical_code(a), nodal_canonical_code(b));
  EXPECT_NE(nodal_canonical_code(a), nodal_canonical_code(tau0_sigma0()));
}
