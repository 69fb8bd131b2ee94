#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "hdx/delta1.hpp"
#include "hdx/generators.hpp"
#include "hdx/spectral.hpp"

using namespace hdx;

namespace {

// Independent oracles for uniform complete complexes: localized weights by
// counting cofaces, set logic on explicit vertex lists.

bool contains(const Face& big, const Face& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Face> faces_of(const SimplicialComplex& X, int k) {
  std::vector<Face> out;
  for (FaceIndex i = 0; i < X.num_faces(k); ++i) out.push_back(X.face(k, i));
  return out;
}

std::set<Face> as_faces(const SimplicialComplex& X, const FaceSet& A) {
  std::set<Face> out;
  for (FaceIndex i : A.members) out.insert(X.face(A.dim, i));
  return out;
}

// Fraction of the l+1-faces above sigma lying in `upper` (upper has dim l+1 here
// generalised to any dim above sigma).
Rational count_fraction(const SimplicialComplex& X, int dim, const std::set<Face>& upper, const Face& sigma) {
  long long hit = 0, all = 0;
  for (const auto& t : faces_of(X, dim))
    if (contains(t, sigma)) {
      ++all;
      hit += upper.count(t);
    }
  return ratio(hit, all);
}

// Fat sets per level for the abelian hierarchy, recomputed by counting.
std::map<int, std::set<Face>> oracle_fat(const SimplicialComplex& X, const std::set<Face>& A, int k,
                                         const Rational& eta) {
  std::map<int, std::set<Face>> fat;
  fat[k] = A;
  for (int i = k - 1; i >= -1; --i) {
    Rational thr = 1;
    for (int j = 0; j < (1 << (k - i - 1)); ++j) thr *= eta;
    for (const auto& s : faces_of(X, i))
      if (count_fraction(X, i + 1, fat[i + 1], s) > thr) fat[i].insert(s);
  }
  return fat;
}

Face meet(const Face& a, const Face& b) {
  Face m;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

std::set<Face> subfaces(const Face& t, int dim) {
  std::set<Face> out;
  const int n = static_cast<int>(t.size());
  for (int mask = 0; mask < (1 << n); ++mask)
    if (__builtin_popcount(static_cast<unsigned>(mask)) == dim + 1) {
      Face f;
      for (int j = 0; j < n; ++j)
        if (mask & (1 << j)) f.push_back(t[static_cast<std::size_t>(j)]);
      out.insert(f);
    }
  return out;
}

// Pair scan over all (k+1)-faces and all levels.
std::set<Face> oracle_upsilon_lemma(const SimplicialComplex& X, std::map<int, std::set<Face>>& fat, int k) {
  std::set<Face> out;
  for (const auto& t : faces_of(X, k + 1))
    for (int i = 0; i <= k; ++i) {
      std::vector<Face> f;
      for (const auto& s : subfaces(t, i))
        if (fat[i].count(s)) f.push_back(s);
      for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t b = 0; b < f.size(); ++b)
          if (a != b) {
            Face m = meet(f[a], f[b]);
            if (static_cast<int>(m.size()) == i && !fat[i - 1].count(m)) out.insert(t);
          }
    }
  return out;
}

// Members of A reachable from sigma by a chain of fat faces, found by DFS
// downward from each member.
std::set<Face> oracle_down(std::map<int, std::set<Face>>& fat, const std::set<Face>& A, const Face& sigma, int k) {
  const int i = static_cast<int>(sigma.size()) - 1;
  std::function<bool(const Face&, int)> reach = [&](const Face& cur, int dim) {
    if (dim == i + 1) return contains(cur, sigma);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      Face sub = cur;
      sub.erase(sub.begin() + static_cast<long>(j));
      if (contains(sub, sigma) && fat[dim - 1].count(sub) && reach(sub, dim - 1)) return true;
    }
    return false;
  };
  std::set<Face> out;
  for (const auto& t : A)
    if (reach(t, k)) out.insert(t);
  return out;
}

}  // namespace

TEST(Delta1, HandExamples) {
  auto K4 = complete_complex(4, 2);
  auto A = face_set(*K4, 1, {{0, 1}});
  auto d1 = delta1(*K4, A);
  EXPECT_EQ(as_faces(*K4, d1), (std::set<Face>{{0, 1, 2}, {0, 1, 3}}));
  EXPECT_EQ(K4->weight(d1), ratio(1, 2));
  EXPECT_EQ(as_faces(*K4, gamma_set(*K4, A)), (std::set<Face>{{0, 1, 2}, {0, 1, 3}}));

  auto star = face_set(*K4, 1, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_TRUE(delta1(*K4, star).empty());
  EXPECT_EQ(delta_i(*K4, star, 2).size(), 3u);
  EXPECT_EQ(as_faces(*K4, delta_i(*K4, star, 0)), (std::set<Face>{{1, 2, 3}}));
  EXPECT_TRUE(delta1(*K4, FaceSet(1, {})).empty());
  EXPECT_TRUE(delta_i(*K4, all_faces(*K4, 1), 0).empty());
}

TEST(Delta1, Errors) {
  auto K4 = complete_complex(4, 2);
  try {
    delta1(*K4, all_faces(*K4, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooHigh);
  }
  try {
    delta_i(*K4, all_faces(*K4, 1), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadIndex);
  }
  EXPECT_THROW(parse_upsilon_variant("nope"), Error);
  auto H = thin_hierarchy_abelian(*K4, FaceSet(1, {}), ratio(1, 2));
  try {
    f_down(*K4, H, 0, 99);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFace);
  }
}

TEST(Delta1, PartitionIdentities) {
  Rng rng(21);
  auto weighted = build_complex({{0, 1, 2}, {0, 2, 3}, {1, 2, 3}, {0, 1, 4}}, 2,
                                std::vector<Rational>{ratio(1, 2), ratio(1, 4), ratio(1, 8), ratio(1, 8)});
  for (auto X : {complete_complex(7, 3), torus_complex(), weighted})
    for (int k = 0; k < X->dimension(); ++k)
      for (int t = 0; t < 20; ++t) {
        auto A = random_face_set(*X, k, rng() % (X->num_faces(k) + 1), rng);
        EXPECT_TRUE(check_delta_partition(*X, A).verdict);
        // Gamma contains delta_1 and outweighs A.
        auto g = gamma_set(*X, A);
        for (FaceIndex s : delta1(*X, A).members) EXPECT_TRUE(g.contains(s));
        EXPECT_GE(X->weight(g), X->weight(A));
      }
}

TEST(Delta1, HierarchyHandExample) {
  auto K4 = complete_complex(4, 2);
  auto A = face_set(*K4, 1, {{0, 1}});
  auto H = thin_hierarchy_abelian(*K4, A, ratio(1, 2));
  EXPECT_TRUE(H.fat_set(0).empty());  // ||A_0|| = ||A_1|| = 1/3 <= 1/2
  EXPECT_EQ(H.thin_set(0).size(), 4u);
  EXPECT_TRUE(H.thin(-1, 0));
  EXPECT_TRUE(H.fat(1, K4->index_of({0, 1})));

  auto E = thin_hierarchy_abelian(*K4, FaceSet(1, {}), ratio(1, 3));
  for (int i = -1; i <= 1; ++i) EXPECT_EQ(E.thin_set(i), all_faces(*K4, i));
  EXPECT_TRUE(gamma_fat_set(*K4, E).empty());
  EXPECT_TRUE(upsilon_set(*K4, E, UpsilonVariant::Lemma36).empty());
  EXPECT_THROW(thin_hierarchy_abelian(*K4, A, ratio(1)), Error);
}

TEST(Delta1, HierarchyMatchesCountingOracle) {
  Rng rng(4);
  for (auto [n, d] : {std::pair<std::size_t, int>{7, 2}, {6, 3}}) {
    auto X = complete_complex(n, d);
    for (int k = 1; k < d; ++k)
      for (int t = 0; t < 15; ++t) {
        auto A = random_face_set(*X, k, 1 + rng() % 12, rng);
        const Rational eta = (t % 3 == 0) ? ratio(1, 2) : (t % 3 == 1 ? ratio(1, 4) : ratio(2, 3));
        auto H = thin_hierarchy_abelian(*X, A, eta);
        auto fat = oracle_fat(*X, as_faces(*X, A), k, eta);
        for (int i = -1; i <= k; ++i) EXPECT_EQ(as_faces(*X, H.fat_set(i)), fat[i]) << "level " << i;
        EXPECT_EQ(as_faces(*X, upsilon_set(*X, H, UpsilonVariant::Lemma36)), oracle_upsilon_lemma(*X, fat, k));
        for (int i = -1; i < k; ++i)
          for (FaceIndex s = 0; s < X->num_faces(i); ++s) {
            const Face& sigma = X->face(i, s);
            EXPECT_EQ(as_faces(*X, f_down(*X, H, i, s)), oracle_down(fat, as_faces(*X, A), sigma, k));
          }
      }
  }
}

TEST(Delta1, DownSetOfFatTopLevelFace) {
  Rng rng(8);
  auto X = complete_complex(6, 2);
  for (int t = 0; t < 10; ++t) {
    auto A = random_face_set(*X, 1, 6, rng);
    auto H = thin_hierarchy_abelian(*X, A, ratio(1, 6));
    for (FaceIndex v : H.fat_set(0).members) {
      std::set<Face> expect;
      for (const auto& f : as_faces(*X, A))
        if (contains(f, X->face(0, v))) expect.insert(f);
      EXPECT_EQ(as_faces(*X, f_down(*X, H, 0, v)), expect);
    }
  }
  auto H = thin_hierarchy_abelian(*X, FaceSet(1, {}), ratio(1, 2));
  EXPECT_TRUE(f_down(*X, H, Face{}).empty());
}

TEST(Delta1, Thm3AndSec4UpsilonMatchPairScan) {
  Rng rng(17);
  auto X = complete_complex(7, 2);
  for (int t = 0; t < 20; ++t) {
    auto A = random_face_set(*X, 1, 2 + rng() % 10, rng);
    auto Af = as_faces(*X, A);
    auto H = thin_hierarchy_nonabelian(*X, A, ratio(1, 27));
    std::set<Face> fat1 = as_faces(*X, H.fat_set(0));
    std::set<Face> fat_low = as_faces(*X, H.fat_set(-1));
    // The non-abelian level k-1 uses ||A_v||^3 > eta.
    for (const auto& v : faces_of(*X, 0)) {
      Rational w = count_fraction(*X, 1, Af, v);
      EXPECT_EQ(fat1.count(v) == 1, w * w * w > ratio(1, 27));
    }
    EXPECT_EQ(fat_low.empty(), count_fraction(*X, 1, Af, Face{}) <= ratio(1, 27));

    std::set<Face> thm3, sec4;
    for (const auto& tri : faces_of(*X, 2)) {
      std::vector<Face> in;
      for (const auto& e : subfaces(tri, 1))
        if (Af.count(e)) in.push_back(e);
      for (std::size_t a = 0; a < in.size(); ++a)
        for (std::size_t b = a + 1; b < in.size(); ++b)
          if (!fat1.count(meet(in[a], in[b]))) thm3.insert(tri);
    }
    for (const auto& e : Af)
      if (fat1.count(Face{e[0]}) && fat1.count(Face{e[1]}) && !fat_low.count(Face{})) sec4.insert(e);
    EXPECT_EQ(as_faces(*X, upsilon_set(*X, H, UpsilonVariant::Thm3)), thm3);
    EXPECT_EQ(as_faces(*X, upsilon_set(*X, H, UpsilonVariant::Sec4)), sec4);
  }
}

TEST(Delta1, ClassifyNonLocal) {
  auto X = complete_complex(10, 2);
  auto v0 = classify_non_local(*X, FaceSet(1, {}), ratio(1, 8), ratio(1, 10));
  EXPECT_TRUE(v0.flag);
  EXPECT_EQ(v0.measured, 0);

  auto star = face_set(*X, 1, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}, {0, 8}, {0, 9}});
  auto vs = classify_non_local(*X, star, ratio(1, 8), ratio(1, 10));
  EXPECT_FALSE(vs.flag);
  EXPECT_EQ(vs.measured, vs.weight / 2);

  // Singleton k-face: every localized weight is 1/(n-k).
  for (int k = 0; k <= 1; ++k) {
    auto A = FaceSet(k, {0});
    EXPECT_TRUE(classify_non_local(*X, A, ratio(1, static_cast<long long>(9 - k)), ratio(1, 100)).flag);
    EXPECT_FALSE(classify_non_local(*X, A, ratio(1, static_cast<long long>(11 - k)), ratio(1, 100)).flag);
  }
}

TEST(Delta1, ClassifyWeaklyNonLocal) {
  Rng rng(13);
  auto X = complete_complex(7, 3);
  auto e = classify_weakly_non_local(*X, FaceSet(2, {}), ratio(1, 8), ratio(1, 10), ratio(1, 2));
  EXPECT_TRUE(e.flag);

  std::vector<Face> around;
  for (Vertex v = 2; v < 7; ++v) around.push_back({0, 1, v});
  auto sat = classify_weakly_non_local(*X, face_set(*X, 2, around), ratio(1, 8), ratio(1, 10), ratio(1, 100));
  EXPECT_FALSE(sat.flag);
  EXPECT_EQ(sat.max_link, 1);
  ASSERT_TRUE(sat.witness.has_value());
  EXPECT_EQ(*sat.witness, (Face{0, 1}));

  for (int t = 0; t < 30; ++t) {
    auto A = random_face_set(*X, 2, 1 + rng() % 8, rng);
    const Rational eta = ratio(1, 5), eps = ratio(1, 3), alpha = ratio(1, 2);
    auto v = classify_weakly_non_local(*X, A, eta, eps, alpha);
    auto Af = as_faces(*X, A);
    Rational thin = 0, maxl = 0;
    for (const auto& s : faces_of(*X, 0))
      if (count_fraction(*X, 2, Af, s) <= eta) thin += ratio(1, 7);
    for (const auto& s : faces_of(*X, 1)) maxl = std::max(maxl, count_fraction(*X, 2, Af, s));
    const Rational weight = ratio(static_cast<long long>(Af.size()), 35);
    EXPECT_EQ(v.thin_weight, thin);
    EXPECT_EQ(v.max_link, maxl);
    EXPECT_EQ(v.flag, thin >= 1 - eps * weight && maxl <= 1 - alpha);
  }
}

TEST(Delta1, Theorem3ExhaustiveSmallSets) {
  auto X = complete_complex(6, 2);
  const Rational lambda = local_spectral_lambda(*X).global.upper_rational;
  const Rational eta = ratio(1, 3), eps = ratio(1, 10);
  const std::size_t m = X->num_faces(1);
  int checked = 0;
  auto run = [&](std::vector<FaceIndex> idx) {
    FaceSet A(1, std::move(idx));
    if (!classify_non_local(*X, A, eta, eps).flag) {
      EXPECT_THROW(check_delta1_theorem_abelian(*X, A, lambda, eta, eps), Error);
      return;
    }
    ++checked;
    EXPECT_TRUE(check_delta1_theorem_abelian(*X, A, lambda, eta, eps).verdict);
  };
  run({});
  for (FaceIndex a = 0; a < m; ++a) {
    run({a});
    for (FaceIndex b = a + 1; b < m; ++b) {
      run({a, b});
      for (FaceIndex c = b + 1; c < m; ++c) run({a, b, c});
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Delta1, Theorem3SingletonEdge) {
  auto X = complete_complex(8, 2);
  const Rational lambda = local_spectral_lambda(*X).global.upper_rational;
  auto r = check_delta1_theorem_abelian(*X, FaceSet(1, {0}), lambda, ratio(1, 6), ratio(1, 100));
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.lhs, "3/28");  // 6 of the 56 triangles contain the edge
}

TEST(Delta1, HierarchyBoundsOnRandomSets) {
  Rng rng(31);
  auto X = complete_complex(7, 2);
  const Rational lambda = local_spectral_lambda(*X).global.upper_rational;  // 1/5
  for (int t = 0; t < 40; ++t) {
    auto A = random_face_set(*X, 1, 1 + rng() % 14, rng);
    auto H = thin_hierarchy_abelian(*X, A, ratio(1, 2));
    for (int i = -1; i <= 0; ++i) EXPECT_TRUE(check_fat_face_bound(*X, H, i).verdict);
    EXPECT_TRUE(check_empty_face_thin(*X, H).verdict);
    EXPECT_TRUE(check_degenerate_faces_abelian(*X, H, lambda).verdict);
    auto N = thin_hierarchy_nonabelian(*X, A, ratio(1, 8));
    EXPECT_TRUE(check_degenerate_faces_nonabelian(*X, N, lambda).verdict);
  }
  auto H = thin_hierarchy_abelian(*X, FaceSet(1, {0}), ratio(1, 4));
  try {
    check_degenerate_faces_abelian(*X, H, lambda);  // 1/5 > 1/16
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParameterViolation);
  }
}

TEST(Delta1, EmptyFaceThinWhenWeightTiny) {
  auto X = complete_complex(9, 2);
  auto H = thin_hierarchy_abelian(*X, FaceSet(1, {0}), ratio(1, 2));  // ||f|| = 1/36 <= 1/8
  auto r = check_empty_face_thin(*X, H);
  EXPECT_TRUE(r.verdict);
  EXPECT_FALSE(r.note.has_value());
  EXPECT_TRUE(H.thin(-1, 0));
}

TEST(Delta1, DecompositionLowerBound) {
  Rng rng(41);
  auto X = complete_complex(7, 3);
  const Rational lambda = local_spectral_lambda(*X).global.upper_rational;
  for (int t = 0; t < 40; ++t) {
    auto A = random_face_set(*X, 2, 1 + rng() % 10, rng);
    Rational maxl = 0;
    for (const auto& [s, w] : localized_weights(*X, A, 1)) maxl = std::max(maxl, w);
    auto r = check_delta1_decomposition(*X, A, lambda, ratio(1, 64), 1 - maxl);
    EXPECT_TRUE(r.verdict) << r.lhs << " vs " << r.rhs;
  }
  EXPECT_THROW(check_delta1_decomposition(*X, FaceSet(2, {0}), lambda, ratio(1, 64), ratio(9, 10)), Error);
}

TEST(Delta1, NonAbelianPreconditionsAreEnforced) {
  auto X = complete_complex(8, 3);
  const Rational lambda = local_spectral_lambda(*X).global.upper_rational;
  const Rational alpha = ratio(1, 2), eps = alpha / 81;
  try {
    check_delta1_theorem_nonabelian(*X, FaceSet(2, {}), lambda, eps * eps * eps, eps, alpha);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParameterViolation);  // lambda = 1/5 > eps^2
  }
  // With lambda treated as a hypothetical tiny bound the empty set passes.
  auto r = check_delta1_theorem_nonabelian(*X, FaceSet(2, {}), eps * eps, eps * eps * eps, eps, alpha);
  EXPECT_TRUE(r.verdict);
}

TEST(Delta1, NonLocalCocyclesVanishRegime) {
  auto X = complete_complex(8, 2);
  const Rational lambda = local_spectral_lambda(*X).global.upper_rational;  // 1/6
  const Rational eta = ratio(1, 48), eps = ratio(1, 96);
  EXPECT_TRUE(check_non_local_cocycle_vanishes(*X, FaceSet(1, {}), lambda, eta, eps).verdict);
  EXPECT_THROW(check_non_local_cocycle_vanishes(*X, FaceSet(1, {}), ratio(1, 5), eta, eps), Error);
}
