#include <gtest/gtest.h>

#include "hdx/generators.hpp"
#include "hdx/spectral.hpp"

using namespace hdx;

TEST(Spectral, CompleteGraphs) {
  for (std::size_t m = 3; m <= 9; ++m) {
    auto c = second_eigenvalue(underlying_graph(*complete_complex(m, 1)));
    EXPECT_NEAR(c.lambda, 1.0 / static_cast<double>(m - 1), 1e-9);
    EXPECT_GE(c.upper_rational, Rational(1, static_cast<long>(m - 1)));
  }
}

TEST(Spectral, SingleEdgeIsBipartite) {
  auto c = second_eigenvalue(underlying_graph(*complete_complex(2, 1)));
  EXPECT_NEAR(c.lambda, 1.0, 1e-12);
  EXPECT_EQ(c.upper_rational, 1);
}

TEST(Spectral, SixCycle) {
  std::vector<Face> edges;
  for (Vertex i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6});
  auto c = second_eigenvalue(underlying_graph(*build_complex(edges, 1)));
  EXPECT_NEAR(c.lambda, 1.0, 1e-9);  // bipartite: -1 is an eigenvalue
  std::vector<Face> odd;
  for (Vertex i = 0; i < 5; ++i) odd.push_back({i, (i + 1) % 5});
  auto c5 = second_eigenvalue(underlying_graph(*build_complex(odd, 1)));
  EXPECT_NEAR(c5.lambda, std::cos(M_PI / 5), 1e-9);
}

TEST(Spectral, VertexLinkGraph) {
  auto X = complete_complex(5, 3);
  auto g = underlying_graph(X->link({0}));
  EXPECT_EQ(g.vertices.size(), 4u);
  EXPECT_EQ(g.edges.size(), 6u);
  for (auto& w : g.edge_weight) EXPECT_EQ(w, ratio(1, 6));
  auto e = underlying_graph(single_simplex(3)->link({0, 1}));
  EXPECT_EQ(e.edges.size(), 1u);
  EXPECT_THROW(underlying_graph(*single_simplex(0)), Error);
}

TEST(Spectral, VertexWeightIsHalfIncidentEdges) {
  for (auto X : {torus_complex(), complete_complex(6, 3), glued_simplices(3, 3)}) {
    auto g = underlying_graph(*X);
    std::vector<Rational> half(g.vertices.size(), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      half[g.edges[e].first] += g.edge_weight[e] / 2;
      half[g.edges[e].second] += g.edge_weight[e] / 2;
    }
    EXPECT_EQ(half, g.vertex_weight);
  }
}

TEST(Spectral, LocalLambda) {
  for (std::size_t n = 4; n <= 8; ++n) {
    auto r = local_spectral_lambda(*complete_complex(n, 2));
    EXPECT_NEAR(r.global.lambda, 1.0 / static_cast<double>(n - 2), 1e-9);
  }
  auto t = local_spectral_lambda(*single_simplex(3));
  EXPECT_NEAR(t.global.lambda, 1.0, 1e-9);
  EXPECT_EQ(t.global.upper_rational, 1);
  auto disjoint = build_complex({{0, 1, 2}, {3, 4, 5}}, 2);
  try {
    local_spectral_lambda(*disjoint);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DisconnectedGraph);
  }
}

TEST(Spectral, CheegerK4) {
  auto g = underlying_graph(*complete_complex(4, 1));
  auto c = cheeger_quantities(g, {0});
  EXPECT_EQ(c.cut, ratio(1, 2));
  EXPECT_EQ(c.internal, 0);
  EXPECT_TRUE(cheeger_holds(c, ratio(1, 3)));
  auto none = cheeger_quantities(g, {});
  EXPECT_EQ(none.cut, 0);
  EXPECT_EQ(none.internal, 0);
  auto all = cheeger_quantities(g, {0, 1, 2, 3});
  EXPECT_EQ(all.cut, 0);
  EXPECT_EQ(all.internal, 1);
  EXPECT_THROW(cheeger_quantities(g, {9}), Error);
}

TEST(Spectral, CheegerExhaustiveOnTorusLinks) {
  auto X = torus_complex();
  auto r = local_spectral_lambda(*X);
  for (const auto& l : r.links) {
    auto g = underlying_graph(X->link(l.face));
    const std::size_t n = g.vertices.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Vertex> A;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) A.push_back(g.vertices[i]);
      EXPECT_TRUE(cheeger_holds(cheeger_quantities(g, A), l.certificate.upper_rational));
    }
  }
}

TEST(Spectral, PowerIterationAgreesWithDense) {
  // A cycle with chords large enough to take the power-iteration path.
  std::vector<Face> edges;
  const Vertex n = 2100;
  for (Vertex i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n});
    edges.push_back({i, (i + 7) % n});
  }
  auto g = underlying_graph(*build_complex(edges, 1));
  auto c = second_eigenvalue(g);
  EXPECT_EQ(c.method, "power");
  EXPECT_LE(c.lambda, 1.0);
  EXPECT_GT(c.lambda, 0.9);
}
