#include <gtest/gtest.h>

#include "hdx/correction.hpp"
#include "hdx/generators.hpp"

using namespace hdx;

namespace {

bool all_pass(const CorrectionOutcome& o) {
  bool ok = true;
  for (const auto& c : o.checks) {
    EXPECT_TRUE(c.verdict) << c.claim << ": " << c.lhs << " vs " << c.rhs;
    ok = ok && c.verdict;
  }
  return ok;
}

// A 1-cochain supported on the edges at v.
Cochain star_cochain(ComplexPtr X, GroupPtr G, Vertex v, Rng& rng) {
  Cochain g(X, 1, G);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(G->order() - 1));
  for (FaceIndex e = 0; e < X->num_faces(1); ++e) {
    const Face& f = X->face(1, e);
    if (f[0] == v || f[1] == v) g.set(e, pick(rng));
  }
  return g;
}

}  // namespace

TEST(Correction, MinimalityBasics) {
  auto K4 = complete_complex(4, 2);
  auto F2 = FiniteGroup::cyclic(2);
  EXPECT_TRUE(is_minimal(Cochain::zero(K4, 1, F2)));
  EXPECT_TRUE(is_locally_minimal(Cochain::zero(K4, 1, F2)));
  // Single edge indicator: the four coboundaries at distance <= 1/6 are only 0.
  auto e = cochain_from(K4, 1, F2, {{{0, 1}, 1}});
  EXPECT_TRUE(is_minimal(e));
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    auto g = uniform_cochain(K4, 0, F2, rng);
    auto dg = coboundary(g);
    EXPECT_EQ(is_minimal(dg), dg.is_zero());
  }
}

TEST(Correction, MinimalityAgreesWithEnumeration) {
  Rng rng(12);
  auto X = complete_complex(5, 2);
  auto Z3 = FiniteGroup::cyclic(3);
  auto spaces = enumerate_spaces(*X, *Z3, 1);
  for (int t = 0; t < 100; ++t) {
    auto f = random_cochain(X, 1, Z3, rng, 0.25);
    Rational best = f.weight();
    for (const auto& b : spaces.coboundaries) best = std::min(best, distance(f, detail::from_values(X, 1, Z3, b)));
    EXPECT_EQ(is_minimal(f), best == f.weight());
  }
}

TEST(Correction, LocallyMinimalWitness) {
  auto X = complete_complex(6, 3);
  auto F2 = FiniteGroup::cyclic(2);
  auto h = coboundary(cochain_from(X, 1, F2, {{{0, 3}, 1}, {{1, 3}, 1}}));
  auto w = non_minimal_vertex(h);
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(is_minimal(localize(h, {*w})));
  for (Vertex v = 0; v < *w; ++v) EXPECT_TRUE(is_minimal(localize(h, {v})));
  EXPECT_FALSE(is_locally_minimal(h));
}

TEST(Correction, OneStepAbelianBounds) {
  Rng rng(7);
  for (auto name : {"Z2", "Z3"}) {
    auto G = parse_group_name(name);
    auto X = complete_complex(6, 3);
    for (int t = 0; t < 10; ++t) {
      auto f = random_cochain(X, 1, G, rng, 0.08);
      auto h = coboundary(f);
      if (is_locally_minimal(h)) {
        EXPECT_THROW(one_step_abelian(h), Error);
        continue;
      }
      auto st = one_step_abelian(h);
      EXPECT_LT(st.after, st.before);
      EXPECT_EQ(difference(h, coboundary(st.correction)).weight(), st.after);
      // ||g|| <= (k+1)||v|| with k+1 = dim h.
      const Rational vw = X->face_weight(Face{st.vertex});
      EXPECT_LE(st.correction.weight(), Rational(h.dim()) * vw);
      for (FaceIndex e : st.correction.support().members) {
        const Face& s = X->face(1, e);
        EXPECT_TRUE(s[0] == st.vertex || s[1] == st.vertex);
      }
    }
  }
}

TEST(Correction, OneStepRecoversPlantedCorrection) {
  // Two tetrahedra sharing {1,2,3}; plant delta of a cochain living at vertex 0.
  auto X = glued_simplices(2, 3);
  auto F2 = FiniteGroup::cyclic(2);
  auto g = cochain_from(X, 1, F2, {{{0, 1}, 1}, {{0, 2}, 1}});
  auto h = coboundary(g);
  auto st = one_step_abelian(h);
  EXPECT_EQ(st.vertex, 0u);
  EXPECT_TRUE(difference(h, coboundary(st.correction)).is_zero());
  // The link minimiser may differ from g by a link cocycle.
  EXPECT_EQ(coboundary(st.correction), h);
}

TEST(Correction, CorrectAbelianCocycleIsFixed) {
  auto X = complete_complex(6, 3);
  auto Z3 = FiniteGroup::cyclic(3);
  Rng rng(1);
  auto f = coboundary(uniform_cochain(X, 0, Z3, rng));
  auto out = correct_abelian(f);
  EXPECT_EQ(out.corrected, f);
  EXPECT_TRUE(out.trace.steps.empty());
  EXPECT_TRUE(all_pass(out));
}

TEST(Correction, CorrectAbelianPlantedNoise) {
  Rng rng(19);
  auto X = complete_complex(6, 3);
  auto F2 = FiniteGroup::cyclic(2);
  for (int t = 0; t < 5; ++t) {
    auto base = coboundary(uniform_cochain(X, 0, F2, rng));
    auto f = pointwise_op(base, coboundary(uniform_cochain(X, 0, F2, rng)));
    f = pointwise_op(f, star_cochain(X, F2, static_cast<Vertex>(t), rng));
    auto out = correct_abelian(f);
    EXPECT_TRUE(out.trace.final_weight <= out.trace.initial);
    EXPECT_TRUE(is_locally_minimal(coboundary(out.corrected)) || coboundary(out.corrected).is_zero());
    EXPECT_TRUE(all_pass(out));
  }
}

TEST(Correction, CorrectAbelianRandomNoiseZ3) {
  Rng rng(23);
  auto X = complete_complex(7, 3);
  auto Z3 = FiniteGroup::cyclic(3);
  std::size_t total_steps = 0;
  for (int t = 0; t < 3; ++t) {
    auto f = random_cochain(X, 1, Z3, rng, 0.05);
    auto out = correct_abelian(f, LocalityParams{ratio(1, 4), ratio(1, 2)});
    EXPECT_TRUE(all_pass(out));
    total_steps += out.trace.steps.size();
    for (std::size_t i = 0; i < out.trace.steps.size(); ++i) EXPECT_LT(out.trace.steps[i].after, out.trace.steps[i].before);
  }
  EXPECT_GT(total_steps, 0u);
}

TEST(Correction, OneStepNonAbelian) {
  Rng rng(29);
  auto X = complete_complex(6, 3);
  auto S3 = FiniteGroup::symmetric(3);
  auto base = coboundary(uniform_cochain(X, 0, S3, rng));
  EXPECT_THROW(one_step_nonabelian(base), Error);  // cocycle
  auto f = base;
  f.set(Face{0, 1}, S3->op(f.value(Face{0, 1}), 1));
  f.set(Face{0, 2}, S3->op(f.value(Face{0, 2}), 2));
  auto st = one_step_nonabelian(f);
  EXPECT_LT(st.after, st.before);
  EXPECT_LE(distance(f, st.updated), 2 * X->face_weight(Face{st.vertex}));
  for (FaceIndex e = 0; e < X->num_faces(1); ++e)
    if (st.updated.value(e) != f.value(e)) {
      const Face& s = X->face(1, e);
      EXPECT_TRUE(s[0] == st.vertex || s[1] == st.vertex);
    }
}

TEST(Correction, CorrectNonAbelianPlantedNoise) {
  Rng rng(31);
  auto X = glued_simplices(3, 3);
  for (auto name : {"S3", "D4"}) {
    auto G = parse_group_name(name);
    auto f = coboundary(uniform_cochain(X, 0, G, rng));
    f.set(Face{1, 2}, G->op(f.value(Face{1, 2}), 1));
    auto out = correct_nonabelian(f, LocalityParams{ratio(1, 8), ratio(1, 2)});
    EXPECT_TRUE(all_pass(out));
    EXPECT_LE(out.trace.final_weight, out.trace.initial);
    EXPECT_FALSE(non_minimal_vertex_of_coboundary(out.corrected).has_value());
    EXPECT_TRUE(check_edge_saturation(out.corrected).verdict);
  }
  auto G = parse_group_name("S3");
  EXPECT_THROW(correct_nonabelian(Cochain::zero(complete_complex(4, 2), 1, G)), Error);
  auto id = correct_nonabelian(Cochain::zero(X, 1, G));
  EXPECT_TRUE(id.trace.steps.empty());
}

TEST(Correction, CrossPathAgreementForAbelianGroup) {
  Rng rng(37);
  auto X = complete_complex(6, 3);
  auto Z3 = FiniteGroup::cyclic(3);
  for (int t = 0; t < 3; ++t) {
    auto f = random_cochain(X, 1, Z3, rng, 0.06);
    auto a = correct_abelian(f);
    auto n = correct_nonabelian(f);
    EXPECT_TRUE(all_pass(a));
    EXPECT_TRUE(all_pass(n));
    EXPECT_FALSE(non_minimal_vertex(coboundary(a.corrected)).has_value());
    EXPECT_FALSE(non_minimal_vertex(coboundary(n.corrected)).has_value());
  }
}

TEST(Correction, LocalizationVsRestrictionDiagnostic) {
  Rng rng(41);
  auto X = complete_complex(5, 3);
  auto S3 = FiniteGroup::symmetric(3);
  auto f = random_cochain(X, 1, S3, rng, 0.1);
  auto out = correct_nonabelian(f);
  // beta of the vertex links, measured.
  auto L = link(*X, {0});
  auto c = level_constants(L, S3, 1);
  ASSERT_TRUE(c.coboundary.has_value());
  for (Vertex v = 0; v < 5; ++v) EXPECT_TRUE(check_localization_vs_restriction(out.corrected, v, *c.coboundary).verdict);
}

TEST(Correction, ParameterSchedule) {
  auto s = parameter_schedule(2, 3, 1, ratio(1, 18), ExpansionPath::Abelian);
  EXPECT_EQ(s.eta, ratio(1, 2592));
  EXPECT_EQ(s.lambda, ratio(1, 2592) * ratio(1, 2592));
  auto a = parameter_schedule(3, 3, ratio(1, 2), ratio(1, 32), ExpansionPath::Abelian);
  EXPECT_EQ(a.eta, ratio(1, 4) * ratio(1, 32) / (8 * 576));
  EXPECT_EQ(a.lambda, pow(a.eta, 4));
  Rational prev = 1;
  for (long long m = 2; m < 50; m *= 2) {
    auto t = parameter_schedule(3, 3, ratio(1, 2), ratio(1, m), ExpansionPath::Abelian);
    EXPECT_LT(t.eta, prev);
    prev = t.eta;
  }
  auto n = parameter_schedule(3, 4, ratio(1, 2), ratio(1, 10), ExpansionPath::NonAbelian);
  EXPECT_EQ(n.eta, ratio(1, 1000));
  EXPECT_EQ(n.lambda, ratio(1, 4) * ratio(1, 1000000) * ratio(1, 10) / 64);
  EXPECT_THROW(parameter_schedule(3, 4, 0, ratio(1, 10), ExpansionPath::Abelian), Error);
}

TEST(Correction, CertificatesRefuseAtSmallScale) {
  auto F2 = FiniteGroup::cyclic(2);
  for (std::size_t n : {5, 6}) {
    try {
      cosystolic_certificate(complete_complex(n, 3), F2, ExpansionPath::Abelian);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PremiseFailed);
      EXPECT_NE(std::string(e.what()).find("spectral"), std::string::npos);
    }
  }
  auto disjoint = build_complex({{0, 1, 2, 3}, {0, 4, 5, 6}}, 3);
  try {
    cosystolic_certificate(disjoint, F2, ExpansionPath::Abelian);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PremiseFailed);
    EXPECT_NE(std::string(e.what()).find("spectral"), std::string::npos);
  }
  EXPECT_THROW(cosystolic_certificate(complete_complex(5, 2), parse_group_name("S3"), ExpansionPath::NonAbelian), Error);
}

TEST(Correction, CosystolicPairOracleCrossCheck) {
  auto X = single_simplex(3);
  auto F2 = FiniteGroup::cyclic(2);
  auto c = cosystolic_expansion_constants(X, F2);
  EXPECT_TRUE(verify_cosystolic_pair(X, F2, *c.cosystolic(), 1).verdict);
  EXPECT_FALSE(verify_cosystolic_pair(X, F2, *c.cosystolic() + 1, 1).verdict);
  auto T = torus_complex();
  EXPECT_FALSE(verify_cosystolic_pair(T, F2, ratio(1, 100), ratio(1, 2)).verdict);  // mu = 2/7
}

TEST(Correction, EquationsExpandReport) {
  Rng rng(43);
  auto X = complete_complex(5, 3);
  auto F2 = FiniteGroup::cyclic(2);
  auto f = random_cochain(X, 1, F2, rng, 0.2);
  auto r = check_equations_expand(f, ratio(1, 2));
  EXPECT_FALSE(r.lhs.empty());
}
