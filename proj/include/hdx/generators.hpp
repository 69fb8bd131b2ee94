#pragma once

// Small complex families and seeded random cochains / face sets.

#include <algorithm>
#include <random>
#include <vector>

#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"

namespace hdx {

using Rng = std::mt19937_64;

/// All (d+1)-subsets of {0..n-1}.
inline ComplexPtr complete_complex(std::size_t n, int d) {
  if (d < 0 || static_cast<std::size_t>(d) + 1 > n) fail(ErrorCode::BadParams, "complete complex needs 0 <= d < n");
  std::vector<Face> tops;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + d + 1, true);
  do {
    Face f;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) f.push_back(static_cast<Vertex>(i));
    tops.push_back(std::move(f));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return build_complex(std::move(tops), d);
}

/// Seven-vertex torus: triangles {i,i+1,i+3} and {i,i+2,i+3} mod 7.
inline ComplexPtr torus_complex() {
  std::vector<Face> tops;
  for (Vertex i = 0; i < 7; ++i) {
    tops.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tops.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return build_complex(std::move(tops), 2);
}

/// Chain of m d-simplices {i, ..., i+d}; consecutive ones share a (d-1)-face.
inline ComplexPtr glued_simplices(std::size_t m, int d) {
  if (m == 0 || d < 0) fail(ErrorCode::BadParams, "glued simplices need m >= 1 and d >= 0");
  std::vector<Face> tops;
  for (Vertex i = 0; i < m; ++i) {
    Face f;
    for (int j = 0; j <= d; ++j) f.push_back(i + static_cast<Vertex>(j));
    tops.push_back(std::move(f));
  }
  return build_complex(std::move(tops), d);
}

inline ComplexPtr single_simplex(int d) { return glued_simplices(1, d); }

/// Cochain with each value nonzero with probability `density`, uniform among
/// the non-identity elements.
inline Cochain random_cochain(ComplexPtr X, int k, GroupPtr G, Rng& rng, double density = 0.5) {
  Cochain f(X, k, G);
  std::bernoulli_distribution on(density);
  const std::size_t n = G->order();
  if (n == 1) return f;
  std::uniform_int_distribution<Elem> pick(1, static_cast<Elem>(n - 1));
  for (auto& v : f.mutable_values())
    if (on(rng)) v = pick(rng);
  return f;
}

/// Cochain with a uniformly random value on every face.
inline Cochain uniform_cochain(ComplexPtr X, int k, GroupPtr G, Rng& rng) {
  Cochain f(X, k, G);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(G->order() - 1));
  for (auto& v : f.mutable_values()) v = pick(rng);
  return f;
}

/// Random subset of X(k) of the given size.
inline FaceSet random_face_set(const SimplicialComplex& X, int k, std::size_t size, Rng& rng) {
  std::vector<FaceIndex> all(X.num_faces(k));
  for (FaceIndex i = 0; i < all.size(); ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(size, all.size()));
  return FaceSet(k, std::move(all));
}

}  // namespace hdx
