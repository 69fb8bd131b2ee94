#include <gtest/gtest.h>

#include <filesystem>

#include "hdx/generators.hpp"
#include "hdx/io.hpp"
#include "hdx/verify.hpp"

using namespace hdx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("hdx_io_" + name);
  fs::remove_all(p);
  return p;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::EmptyInput;
}

}  // namespace

TEST(Io, ComplexRoundTrip) {
  for (auto X : {complete_complex(6, 2), torus_complex(), glued_simplices(3, 3), weighted_sample_complex()}) {
    const std::string text = format_complex(*X);
    auto Y = parse_complex(text);
    EXPECT_EQ(*X, *Y);
    EXPECT_EQ(format_complex(*Y), text);
  }
  EXPECT_EQ(format_complex(*complete_complex(3, 2)), "dim 2\n0 1 2\n");
  auto W = parse_complex("# comment\ndim 1\n1 0 w 1/3\n1 2 w 2/3\n");
  EXPECT_FALSE(W->uniform());
  EXPECT_EQ(W->face_weight(Face{0, 1}), ratio(1, 3));
  EXPECT_EQ(format_complex(*W), "dim 1\n0 1 w 1/3\n1 2 w 2/3\n");
}

TEST(Io, ComplexParseErrors) {
  EXPECT_EQ(code_of([] { parse_complex(""); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_complex("dimension 2\n0 1 2\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_complex("dim 2\n0 1 x\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_complex("dim 1\n0 1 w 1/2\n1 2\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_complex("dim 2\n0 1\n"); }), ErrorCode::NonUniformCardinality);
  EXPECT_EQ(code_of([] { parse_complex("dim 1\n0 1\n1 0\n"); }), ErrorCode::DuplicateTopFace);
  EXPECT_EQ(code_of([] { parse_complex("dim 1\n0 1 w 1/2\n1 2 w 1/3\n"); }), ErrorCode::InvalidWeights);
}

TEST(Io, CochainRoundTrip) {
  Rng rng(3);
  auto X = complete_complex(6, 3);
  for (const char* g : {"Z2", "Z6", "S3", "Z2xZ3"}) {
    auto G = parse_group_name(g);
    auto f = random_cochain(X, 2, G, rng, 0.3);
    auto text = format_cochain(f);
    auto back = parse_cochain(text, X);
    EXPECT_EQ(back.group_spec, g);
    EXPECT_EQ(back.cochain, f);
  }
  auto e = parse_cochain("dim 1 group Z3\n1 0 2\n", X);
  EXPECT_EQ(e.cochain.value(Face{0, 1}), 2u);
  EXPECT_EQ(format_cochain(e.cochain), "dim 1 group Z3\n0 1 2\n");
}

TEST(Io, CochainParseErrors) {
  auto X = complete_complex(4, 2);
  EXPECT_EQ(code_of([&] { parse_cochain("dim 1 Z2\n", X); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_cochain("dim 1 group Z2\n0 1\n", X); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_cochain("dim 1 group Z2\n0 9 1\n", X); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_cochain("dim 1 group Z2\n0 1 2\n", X); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_cochain("dim 1 group Q8\n", X); }), ErrorCode::ParseError);
}

TEST(Io, GroupTable) {
  auto dir = scratch("table");
  fs::create_directories(dir);
  write_file(dir / "z3.txt", "3\n0 1 2\n1 2 0\n2 0 1\n");
  auto G = load_group("table:z3.txt", dir);
  EXPECT_EQ(G->order(), 3u);
  EXPECT_TRUE(G->is_abelian());
  EXPECT_EQ(G->op(2, 2), 1u);
  EXPECT_EQ(G->inv(1), 2u);
  write_file(dir / "bad.txt", "2\n0 1\n0 1\n");
  EXPECT_THROW(load_group("table:bad.txt", dir), Error);
  write_file(dir / "short.txt", "2\n0 1\n");
  EXPECT_EQ(code_of([&] { load_group("table:short.txt", dir); }), ErrorCode::ParseError);
}

TEST(Io, TraceLines) {
  CorrectionTrace t;
  t.steps.push_back({1, 4, ratio(1, 2), ratio(1, 5), ratio(1, 10)});
  t.steps.push_back({2, 0, ratio(1, 5), 0, ratio(1, 15)});
  EXPECT_EQ(format_trace(t),
            "{\"step\":1,\"vertex\":4,\"delta_weight_before\":\"1/2\",\"delta_weight_after\":\"1/5\",\"moved\":\"1/10\"}\n"
            "{\"step\":2,\"vertex\":0,\"delta_weight_before\":\"1/5\",\"delta_weight_after\":\"0\",\"moved\":\"1/15\"}\n");
  EXPECT_EQ(format_trace(CorrectionTrace{}), "");
}

TEST(Io, ReportJson) {
  auto r = make_report("x", ratio(1, 3), ratio(1, 2), false);
  r.params["eta"] = "1/8";
  r.witness = "{0,1}";
  auto j = to_json(r);
  EXPECT_EQ(j.dump(), "{\"claim\":\"x\",\"lhs\":\"1/3\",\"rhs\":\"1/2\",\"params\":{\"eta\":\"1/8\"},\"verdict\":\"fail\",\"witness\":\"{0,1}\"}");
}

TEST(Io, BundleRoundTripAndReplay) {
  Rng rng(9);
  auto dir = scratch("bundle");
  auto X = complete_complex(6, 3);
  auto G = parse_group_name("S3");
  auto f = random_cochain(X, 1, G, rng, 0.2);
  Bundle b{X, f, "S3", Json::object()};
  b.claim["claim"] = "correction-nonabelian";
  write_bundle(dir, b);
  auto back = read_bundle(dir);
  EXPECT_EQ(*back.complex, *X);
  ASSERT_TRUE(back.cochain.has_value());
  EXPECT_EQ(*back.cochain, f);
  for (const auto& r : replay_bundle(back)) EXPECT_TRUE(r.verdict) << r.claim;

  auto conj = scratch("conj");
  auto a = uniform_cochain(X, 0, G, rng);
  Bundle c{X, f, "S3", Json::object()};
  c.claim["claim"] = "conjugation-invariance";
  c.claim["params"] = {{"acting", a.values()}};
  write_bundle(conj, c);
  auto rs = replay_bundle(read_bundle(conj));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(rs[0].verdict);

  Bundle u{X, std::nullopt, "Z2", Json::object()};
  u.claim["claim"] = "no-such-claim";
  auto un = scratch("unknown");
  write_bundle(un, u);
  EXPECT_EQ(code_of([&] { replay_bundle(read_bundle(un)); }), ErrorCode::ParseError);
}
