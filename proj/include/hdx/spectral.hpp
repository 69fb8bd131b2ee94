#pragma once

// Underlying weighted graphs of complexes and links, the second eigenvalue
// of their random walk, and the Cheeger-type cut quantities.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/rational.hpp"

namespace hdx {

struct WeightedGraph {
  std::vector<Vertex> vertices;        // ascending original ids
  std::vector<Rational> vertex_weight;  // P_0
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // positions into `vertices`
  std::vector<Rational> edge_weight;    // P_1

  std::size_t position(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) fail(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " not in graph");
    return static_cast<std::size_t>(it - vertices.begin());
  }

  bool connected() const {
    const std::size_t n = vertices.size();
    if (n == 0) return false;
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          q.push(w);
        }
    }
    return count == n;
  }
};

/// 1-skeleton of X with the induced P_0 and P_1.
inline WeightedGraph underlying_graph(const SimplicialComplex& X) {
  if (X.dimension() < 1) fail(ErrorCode::DimensionTooLow, "underlying graph needs dimension >= 1");
  WeightedGraph g;
  for (FaceIndex i = 0; i < X.num_faces(0); ++i) {
    g.vertices.push_back(X.face(0, i)[0]);
    g.vertex_weight.push_back(X.face_weight(0, i));
  }
  for (FaceIndex e = 0; e < X.num_faces(1); ++e) {
    auto fac = X.facets(1, e);
    g.edges.emplace_back(fac[1], fac[0]);  // vertex index == position
    g.edge_weight.push_back(X.face_weight(1, e));
  }
  return g;
}

struct SpectralCertificate {
  double lambda = 1.0;  // estimate of max |nontrivial eigenvalue|
  double upper = 1.0;   // certified upper bound
  Rational upper_rational = 1;
  std::string method = "dense";
};

namespace detail {

inline Eigen::MatrixXd normalized_walk(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertices.size());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> d(g.vertices.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = to_double(g.vertex_weight[i]);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    const double w = to_double(g.edge_weight[e]) / 2.0 / std::sqrt(d[a] * d[b]);
    S(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += w;
    S(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) += w;
  }
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = std::sqrt(d[static_cast<std::size_t>(i)]);
  u.normalize();
  S -= u * u.transpose();
  return S;
}

inline SpectralCertificate finish(double lambda, double slack, std::string method) {
  SpectralCertificate c;
  c.lambda = lambda;
  c.upper = std::min(1.0, lambda + slack + 1e-12);
  c.upper_rational = c.upper >= 1.0 ? Rational(1) : rational_upper_bound(c.upper);
  if (c.upper_rational > 1) c.upper_rational = 1;
  c.method = std::move(method);
  return c;
}

}  // namespace detail

/// Max |nontrivial eigenvalue| of the walk u -> w with probability
/// P_1(uw) / (2 P_0(u)).  Dense symmetric solve up to 2000 vertices, power
/// iteration on the squared operator above.
inline SpectralCertificate second_eigenvalue(const WeightedGraph& g) {
  if (!g.connected()) fail(ErrorCode::DisconnectedGraph, "graph is disconnected (lambda = 1)");
  const auto n = static_cast<Eigen::Index>(g.vertices.size());
  if (n <= 2000) {
    const Eigen::MatrixXd S = detail::normalized_walk(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    const auto& theta = es.eigenvalues();
    const auto& V = es.eigenvectors();
    double lam = 0;
    for (Eigen::Index i = 0; i < n; ++i) lam = std::max(lam, std::abs(theta(i)));
    const double residual = (S * V - V * theta.asDiagonal()).norm();
    const double orth = (V.transpose() * V - Eigen::MatrixXd::Identity(n, n)).norm();
    return detail::finish(lam, residual + orth, "dense");
  }
  // Sparse walk; the trivial direction u = sqrt(P_0) is projected out.
  std::vector<double> d(g.vertices.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = to_double(g.vertex_weight[i]);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    const double w = to_double(g.edge_weight[e]) / 2.0 / std::sqrt(d[a] * d[b]);
    trip.emplace_back(static_cast<int>(a), static_cast<int>(b), w);
    trip.emplace_back(static_cast<int>(b), static_cast<int>(a), w);
  }
  Eigen::SparseMatrix<double> S(n, n);
  S.setFromTriplets(trip.begin(), trip.end());
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = std::sqrt(d[static_cast<std::size_t>(i)]);
  u.normalize();
  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = S * x;
    y -= u * u.dot(x);
    return y;
  };
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = std::cos(0.37 * static_cast<double>(i)) + 0.5;
  x -= u * u.dot(x);
  x.normalize();
  double mu = 0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd y = apply(apply(x));
    const double nrm = y.norm();
    if (nrm == 0) break;
    y /= nrm;
    const double diff = (y - x).norm();
    x = y;
    mu = nrm;
    if (diff < 1e-12) break;
  }
  // Power iteration only bounds lambda from below; the certified bound is
  // the trivial one.
  SpectralCertificate c;
  c.lambda = std::sqrt(mu);
  c.upper = 1.0;
  c.upper_rational = 1;
  c.method = "power";
  return c;
}

struct LinkSpectrum {
  Face face;
  SpectralCertificate certificate;
};

struct LocalSpectralReport {
  SpectralCertificate global;  // max over links
  Face worst;
  std::vector<LinkSpectrum> links;
};

/// Max over sigma in X(k), -1 <= k <= d-2, of the link graph eigenvalue.
inline LocalSpectralReport local_spectral_lambda(const SimplicialComplex& X) {
  if (X.dimension() < 1) fail(ErrorCode::DimensionTooLow, "local spectral expansion needs d >= 1");
  LocalSpectralReport r;
  r.global = detail::finish(0, 0, "dense");
  r.global.upper = 0;
  r.global.upper_rational = 0;
  bool first = true;
  for (int k = -1; k <= X.dimension() - 2; ++k)
    for (FaceIndex i = 0; i < X.num_faces(k); ++i) {
      const Face& sigma = X.face(k, i);
      SpectralCertificate c;
      try {
        c = second_eigenvalue(underlying_graph(X.link(sigma)));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DisconnectedGraph)
          fail(ErrorCode::DisconnectedGraph, "link of " + face_to_string(sigma) + " is disconnected");
        throw;
      }
      if (first || c.upper_rational > r.global.upper_rational) {
        r.global = c;
        r.worst = sigma;
        first = false;
      }
      r.links.push_back({sigma, c});
    }
  return r;
}

struct CutWeights {
  Rational cut;       // ||E(A, complement)||
  Rational internal;  // ||E(A)||
  Rational set;       // ||A|| = P_0(A)
};

inline CutWeights cheeger_quantities(const WeightedGraph& g, const std::vector<Vertex>& A) {
  std::vector<char> in(g.vertices.size(), 0);
  for (Vertex v : A) in[g.position(v)] = 1;
  CutWeights c{0, 0, 0};
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) c.set += g.vertex_weight[i];
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (in[a] && in[b])
      c.internal += g.edge_weight[e];
    else if (in[a] != in[b])
      c.cut += g.edge_weight[e];
  }
  return c;
}

/// Both Cheeger-type inequalities for one vertex set with lambda replaced by
/// a rational upper bound.
inline bool cheeger_holds(const CutWeights& c, const Rational& lambda) {
  const Rational comp = 1 - c.set;
  return c.cut >= 2 * (1 - lambda) * c.set * comp && c.internal <= (c.set + lambda) * c.set;
}

}  // namespace hdx
