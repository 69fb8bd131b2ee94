#pragma once

// Property suites: each claim is run over seeded random or exhaustive
// instances, tallied, and the first counterexample of a claim is written as
// a replayable bundle.

#include <bit>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdx/check.hpp"
#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"
#include "hdx/correction.hpp"
#include "hdx/delta1.hpp"
#include "hdx/error.hpp"
#include "hdx/generators.hpp"
#include "hdx/io.hpp"
#include "hdx/oracle.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

struct VerifyConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget = enumeration_budget();
  std::optional<std::filesystem::path> bundle_dir;
};

struct ClaimTally {
  std::string suite;
  std::string claim;
  std::string instance;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::uint64_t skipped = 0;
  std::optional<CheckReport> first_failure;
  std::optional<std::string> bundle;
  bool passed() const { return failed == 0; }
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string slug(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  return s;
}

inline Rational flag(bool b) { return Rational(b ? 1 : 0); }

}  // namespace detail

class Verifier {
 public:
  explicit Verifier(VerifyConfig cfg) : cfg_(std::move(cfg)) {}

  const VerifyConfig& config() const { return cfg_; }

  /// Generator private to one claim, so a claim's instances do not depend
  /// on which other suites ran first.
  Rng rng_for(const std::string& name) const {
    std::seed_seq s{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                    static_cast<std::uint32_t>(detail::fnv1a(name)), static_cast<std::uint32_t>(detail::fnv1a(name) >> 32)};
    return Rng(s);
  }

  std::size_t open(const std::string& suite, const std::string& claim, const std::string& instance) {
    tallies_.push_back({suite, claim, instance});
    return tallies_.size() - 1;
  }

  ClaimTally& tally(std::size_t id) { return tallies_[id]; }

  void record(std::size_t id, const CheckReport& r, const std::function<std::optional<Bundle>()>& bundle = {}) {
    auto& t = tallies_[id];
    ++t.checked;
    if (r.verdict) return;
    ++t.failed;
    if (t.first_failure) return;
    t.first_failure = r;
    if (cfg_.bundle_dir && bundle) {
      if (auto b = bundle()) {
        auto dir = *cfg_.bundle_dir / detail::slug(t.suite + "-" + t.claim + "-" + t.instance);
        b->claim["claim"] = b->claim.value("claim", t.claim);
        b->claim["lhs"] = r.lhs;
        b->claim["rhs"] = r.rhs;
        write_bundle(dir, *b);
        t.bundle = dir.string();
      }
    }
  }

  /// Runs `body`; an unexpected library error counts as a failure.
  void guarded(std::size_t id, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      CheckReport r;
      r.claim = tallies_[id].claim;
      r.verdict = false;
      r.witness = std::string(error_name(e.code())) + ": " + e.what();
      record(id, r);
    }
  }

  void skip(std::size_t id) { ++tallies_[id].skipped; }

  const std::vector<ClaimTally>& tallies() const { return tallies_; }

  bool all_passed() const {
    for (const auto& t : tallies_)
      if (!t.passed()) return false;
    return true;
  }

  Json report(const std::vector<std::string>& suites) const {
    Json j;
    j["seed"] = cfg_.seed;
    j["budget"] = cfg_.budget;
    j["suites"] = suites;
    j["claims"] = Json::array();
    std::uint64_t failed = 0;
    for (const auto& t : tallies_) {
      Json c;
      c["suite"] = t.suite;
      c["claim"] = t.claim;
      c["instance"] = t.instance;
      c["checked"] = t.checked;
      c["failed"] = t.failed;
      c["skipped"] = t.skipped;
      c["verdict"] = t.passed() ? "pass" : "fail";
      if (t.first_failure) c["counterexample"] = to_json(*t.first_failure);
      if (t.bundle) c["bundle"] = *t.bundle;
      j["claims"].push_back(std::move(c));
      failed += t.passed() ? 0 : 1;
    }
    j["summary"] = {{"claims", tallies_.size()}, {"failed", failed}, {"verdict", failed == 0 ? "pass" : "fail"}};
    return j;
  }

 private:
  VerifyConfig cfg_;
  std::vector<ClaimTally> tallies_;
};

// ---------------------------------------------------------------------------
// Instances

struct NamedComplex {
  std::string name;
  ComplexPtr complex;
};

/// Small weighted 2-complex on five vertices: two triangles of weight 1/4,
/// four of weight 1/8.
inline ComplexPtr weighted_sample_complex() {
  return build_complex({{0, 1, 2}, {0, 2, 3}, {0, 1, 3}, {1, 2, 3}, {0, 3, 4}, {2, 3, 4}}, 2,
                       std::vector<Rational>{ratio(1, 4), ratio(1, 4), ratio(1, 8), ratio(1, 8), ratio(1, 8), ratio(1, 8)});
}

inline std::vector<NamedComplex> bundled_instances() {
  return {{"complete-6-2", complete_complex(6, 2)},   {"complete-7-3", complete_complex(7, 3)},
          {"complete-8-3", complete_complex(8, 3)},   {"complete-14-2", complete_complex(14, 2)},
          {"torus-7", torus_complex()},               {"glued-3-2", glued_simplices(3, 2)},
          {"glued-2-3", glued_simplices(2, 3)},       {"weighted-5-2", weighted_sample_complex()}};
}

namespace detail {

inline Bundle cochain_bundle(const Cochain& f, const std::string& claim, Json params = Json::object()) {
  Bundle b{f.complex_ptr(), f, f.group().name(), Json::object()};
  b.claim["claim"] = claim;
  b.claim["params"] = std::move(params);
  return b;
}

inline Cochain indicator(ComplexPtr X, const FaceSet& A) { return cochain_on(std::move(X), FiniteGroup::cyclic(2), A); }

inline Rational lambda_upper(const SimplicialComplex& X) {
  try {
    return local_spectral_lambda(X).global.upper_rational;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DisconnectedGraph) return 1;
    throw;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-instance claims (also used for bundle replay)

inline CheckReport claim_delta_delta(const Cochain& f) {
  const Cochain dd = coboundary(coboundary(f));
  auto r = make_report(f.group().is_abelian() ? "delta-delta-zero" : "nonabelian-delta-delta-identity", dd.weight(),
                       Rational(0), dd.is_zero());
  if (!dd.is_zero()) r.witness = face_to_string(dd.complex().face(dd.dim(), dd.support().members.front()));
  r.params["group"] = f.group().name();
  r.params["k"] = std::to_string(f.dim());
  return r;
}

/// ||A|| = sum over l-faces tau of ||(A, tau)||, for every l < k.
inline CheckReport claim_decomposition(const SimplicialComplex& X, const FaceSet& A) {
  const Rational w = X.weight(A);
  for (int l = -1; l < A.dim; ++l) {
    Rational sum = 0;
    for (FaceIndex t = 0; t < X.num_faces(l); ++t) sum += mutual_weight(X, A, FaceSet(l, {t}));
    if (sum != w) {
      auto r = make_report("decomposition-identity", sum, w, false);
      r.witness = "l = " + std::to_string(l);
      return r;
    }
  }
  return make_report("decomposition-identity", w, w, true);
}

inline CheckReport claim_conjugation(const Cochain& f, const Cochain& g) {
  const Rational lhs = coboundary(act(f, g)).weight();
  const Rational rhs = coboundary(g).weight();
  auto r = make_report("conjugation-invariance", lhs, rhs, lhs == rhs);
  r.params["group"] = g.group().name();
  return r;
}

inline std::vector<CheckReport> claim_correction(const Cochain& f, bool nonabelian) {
  auto out = nonabelian ? correct_nonabelian(f) : correct_abelian(f);
  auto checks = out.checks;
  if (nonabelian) checks.push_back(check_edge_saturation(out.corrected));
  return checks;
}

// ---------------------------------------------------------------------------
// Claims over instance families

/// delta(delta f) = 0 for abelian groups and = identity for non-abelian
/// 0-cochains.
inline void verify_coboundary_identities(Verifier& V, const std::string& suite, int abelian_count,
                                         int nonabelian_count) {
  auto rng = V.rng_for("coboundary-identities");
  const std::vector<std::string> ab = {"Z2", "Z3", "Z6", "Z2xZ2"};
  const std::vector<std::string> nab = {"S3", "D4"};
  std::vector<NamedComplex> cx = {{"complete-4-2", complete_complex(4, 2)}, {"complete-6-3", complete_complex(6, 3)},
                                  {"complete-8-3", complete_complex(8, 3)}, {"complete-8-2", complete_complex(8, 2)},
                                  {"torus-7", torus_complex()},             {"glued-3-3", glued_simplices(3, 3)}};
  auto a = V.open(suite, "delta-delta-zero", "abelian groups");
  for (int t = 0; t < abelian_count; ++t) {
    const auto& c = cx[static_cast<std::size_t>(t) % cx.size()];
    auto G = parse_group_name(ab[static_cast<std::size_t>(t / static_cast<int>(cx.size())) % ab.size()]);
    const int d = c.complex->dimension();
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(d - 1));  // 0..d-2
    auto f = uniform_cochain(c.complex, k, G, rng);
    V.guarded(a, [&] {
      V.record(a, claim_delta_delta(f), [&] { return std::optional<Bundle>(detail::cochain_bundle(f, "delta-delta-zero")); });
    });
  }
  auto n = V.open(suite, "nonabelian-delta-delta-identity", "S3, D4 0-cochains");
  for (int t = 0; t < nonabelian_count; ++t) {
    const auto& c = cx[static_cast<std::size_t>(t) % cx.size()];
    auto G = parse_group_name(nab[static_cast<std::size_t>(t) % nab.size()]);
    auto f = uniform_cochain(c.complex, 0, G, rng);
    V.guarded(n, [&] {
      V.record(n, claim_delta_delta(f),
               [&] { return std::optional<Bundle>(detail::cochain_bundle(f, "nonabelian-delta-delta-identity")); });
    });
  }
}

inline void verify_decomposition_identity(Verifier& V, const std::string& suite, int count) {
  auto rng = V.rng_for("decomposition-identity");
  std::vector<NamedComplex> cx = {{"complete-7-3", complete_complex(7, 3)}, {"torus-7", torus_complex()},
                                  {"weighted-5-2", weighted_sample_complex()}, {"complete-8-3", complete_complex(8, 3)}};
  auto id = V.open(suite, "decomposition-identity", "random cochains, all l < k");
  for (int t = 0; t < count; ++t) {
    const auto& c = cx[static_cast<std::size_t>(t) % cx.size()];
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(c.complex->dimension() + 1));
    auto f = random_cochain(c.complex, k, FiniteGroup::cyclic(3), rng, 0.3);
    V.guarded(id, [&] {
      V.record(id, claim_decomposition(*c.complex, f.support()),
               [&] { return std::optional<Bundle>(detail::cochain_bundle(f, "decomposition-identity")); });
    });
  }
}

/// Both Cheeger inequalities over every vertex subset of every link graph
/// with at most `max_vertices` vertices.
inline void verify_cheeger_exhaustive(Verifier& V, const std::string& suite, const std::vector<NamedComplex>& instances,
                                      std::size_t max_vertices = 14) {
  for (const auto& inst : instances) {
    auto id = V.open(suite, "cheeger-inequalities", inst.name);
    V.guarded(id, [&] {
      const SimplicialComplex& X = *inst.complex;
      for (int k = -1; k <= X.dimension() - 2; ++k)
        for (FaceIndex i = 0; i < X.num_faces(k); ++i) {
          const Face& sigma = X.face(k, i);
          auto g = underlying_graph(X.link(sigma));
          const std::size_t n = g.vertices.size();
          if (n > max_vertices) {
            V.skip(id);
            continue;
          }
          Rational lam = 1;
          if (g.connected()) lam = second_eigenvalue(g).upper_rational;
          // Integer numerators over common denominators.
          Integer vden = 1, eden = 1;
          for (const auto& w : g.vertex_weight) vden = boost::multiprecision::lcm(vden, denominator(w));
          for (const auto& w : g.edge_weight) eden = boost::multiprecision::lcm(eden, denominator(w));
          std::vector<Integer> vn, en;
          for (const auto& w : g.vertex_weight) vn.push_back(numerator(w) * (vden / denominator(w)));
          for (const auto& w : g.edge_weight) en.push_back(numerator(w) * (eden / denominator(w)));
          bool ok = true;
          std::string witness;
          Rational worst_l, worst_r;
          for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
            Integer set = 0, cut = 0, internal = 0;
            for (std::size_t v = 0; v < n; ++v)
              if (mask >> v & 1) set += vn[v];
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
              const bool a = mask >> g.edges[e].first & 1, b = mask >> g.edges[e].second & 1;
              if (a && b)
                internal += en[e];
              else if (a != b)
                cut += en[e];
            }
            const CutWeights cw{Rational(cut, eden), Rational(internal, eden), Rational(set, vden)};
            if (!cheeger_holds(cw, lam)) {
              ok = false;
              witness = face_to_string(sigma) + " mask " + std::to_string(mask);
              worst_l = cw.cut;
              worst_r = 2 * (1 - lam) * cw.set * (1 - cw.set);
              break;
            }
          }
          auto r = make_report("cheeger-inequalities", worst_l, worst_r, ok);
          if (!ok) r.witness = witness;
          r.params["lambda_upper"] = lam.str();
          V.record(id, r, [&] {
            Bundle b{inst.complex, std::nullopt, "Z2", Json::object()};
            b.claim["claim"] = "cheeger-inequalities";
            return std::optional<Bundle>(b);
          });
        }
    });
  }
}

namespace detail {

inline void for_each_small_set(std::size_t n, std::size_t max_size, const std::function<void(const std::vector<FaceIndex>&)>& fn) {
  std::vector<FaceIndex> cur;
  std::function<void(FaceIndex)> rec = [&](FaceIndex start) {
    if (!cur.empty()) fn(cur);
    if (cur.size() == max_size) return;
    for (FaceIndex i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

/// Exhaustive sweep of small k-face sets on complete complexes: every
/// non-local set satisfies the delta_1 lower bound.
inline void verify_delta1_sweep(Verifier& V, const std::string& suite, const std::vector<std::size_t>& ns,
                                std::size_t max_set = 3) {
  const std::vector<std::pair<Rational, Rational>> params = {{ratio(1, 3), ratio(1, 10)}, {ratio(1, 8), ratio(1, 20)}};
  for (std::size_t n : ns)
    for (int k = 1; k <= 2; ++k) {
      auto X = complete_complex(n, k + 1);
      auto id = V.open(suite, "delta1-expansion-of-non-local-sets",
                       "complete-" + std::to_string(n) + "-" + std::to_string(k + 1) + ", sets of <= " +
                           std::to_string(max_set) + " " + std::to_string(k) + "-faces");
      V.guarded(id, [&] {
        const Rational lambda = detail::lambda_upper(*X);
        detail::for_each_small_set(X->num_faces(k), max_set, [&](const std::vector<FaceIndex>& s) {
          const FaceSet A(k, s);
          for (const auto& [eta, eps] : params) {
            if (!classify_non_local(*X, A, eta, eps).flag) {
              V.skip(id);
              continue;
            }
            V.record(id, check_delta1_theorem_abelian(*X, A, lambda, eta, eps), [&] {
              Json p = {{"lambda", lambda.str()}, {"eta", eta.str()}, {"eps", eps.str()}};
              return std::optional<Bundle>(
                  detail::cochain_bundle(detail::indicator(X, A), "delta1-expansion-of-non-local-sets", p));
            });
          }
        });
      });
    }
}

/// Star of a vertex in a complete 2-complex: delta_1 is empty and exactly
/// half of its weight meets thin vertices.
inline void verify_star_example(Verifier& V, const std::string& suite) {
  auto id = V.open(suite, "star-example", "complete 2-complexes, n = 6..12");
  V.guarded(id, [&] {
    for (std::size_t n = 6; n <= 12; ++n) {
      auto X = complete_complex(n, 2);
      std::vector<Face> star;
      for (Vertex u = 1; u < n; ++u) star.push_back({0, u});
      const FaceSet A = face_set(*X, 1, star);
      const Rational eta = ratio(1, static_cast<long long>(n - 2));  // 1/(n-1) <= eta < 1/2
      auto v = classify_non_local(*X, A, eta, ratio(1, 10));
      const bool ok = delta1(*X, A).empty() && v.measured * 2 == v.weight;
      auto r = make_report("star-example", v.measured, v.weight / 2, ok);
      r.params = params_of({{"n", Rational(static_cast<long long>(n))}, {"eta", eta}});
      V.record(id, r);
    }
  });
}

/// Fat-face bound, empty face thin, and both degenerate-face lemmas.
inline void verify_hierarchy_bounds(Verifier& V, const std::string& suite, int count) {
  auto rng = V.rng_for("hierarchy-bounds");
  struct Inst {
    std::string name;
    ComplexPtr X;
    int k;
    std::vector<Rational> etas;  // admissible for the abelian degenerate-face premise
  };
  std::vector<Inst> inst = {{"complete-12-2", complete_complex(12, 2), 1, {ratio(1, 3), ratio(1, 2), ratio(2, 3)}},
                            {"complete-7-3", complete_complex(7, 3), 2, {ratio(3, 4), ratio(4, 5), ratio(5, 6)}},
                            {"complete-9-2", complete_complex(9, 2), 0, {ratio(2, 5), ratio(1, 2), ratio(3, 4)}}};
  std::vector<Rational> lambdas;
  for (const auto& c : inst) lambdas.push_back(detail::lambda_upper(*c.X));
  auto fat = V.open(suite, "fat-face-bound", "random sets");
  auto thin = V.open(suite, "empty-face-thin", "random sets");
  auto dab = V.open(suite, "degenerate-faces-abelian", "random sets");
  auto dna = V.open(suite, "degenerate-faces-nonabelian", "random sets");
  std::vector<Rational> small = {ratio(1, 2), ratio(1, 3), ratio(1, 5), ratio(1, 8), ratio(1, 20), ratio(1, 100)};
  for (int t = 0; t < count; ++t) {
    const auto ci = static_cast<std::size_t>(t) % inst.size();
    const auto& c = inst[ci];
    const std::size_t m = 1 + rng() % std::min<std::size_t>(c.X->num_faces(c.k), 12);
    const FaceSet A = random_face_set(*c.X, c.k, m, rng);
    const Rational eta_any = small[rng() % small.size()];
    const Rational eta_ab = c.etas[rng() % c.etas.size()];
    auto bundle = [&](const std::string& claim, const Rational& eta) {
      return [&, claim, eta] {
        Json p = {{"eta", eta.str()}, {"lambda", lambdas[ci].str()}};
        return std::optional<Bundle>(detail::cochain_bundle(detail::indicator(c.X, A), claim, p));
      };
    };
    V.guarded(fat, [&] {
      auto H = thin_hierarchy_abelian(*c.X, A, eta_any);
      for (int i = -1; i < c.k; ++i) V.record(fat, check_fat_face_bound(*c.X, H, i), bundle("fat-face-bound", eta_any));
    });
    V.guarded(thin, [&] {
      // Tiny sets so that the premise ||f|| <= eta^(2^(k+1)-1) holds often.
      auto H = thin_hierarchy_abelian(*c.X, FaceSet(c.k, {A.members.front()}), eta_ab);
      auto r = check_empty_face_thin(*c.X, H);
      if (r.note) V.skip(thin);
      V.record(thin, r);
    });
    V.guarded(dab, [&] {
      auto H = thin_hierarchy_abelian(*c.X, A, eta_ab);
      V.record(dab, check_degenerate_faces_abelian(*c.X, H, lambdas[ci]), bundle("degenerate-faces-abelian", eta_ab));
    });
    if (c.k >= 1) {
      V.guarded(dna, [&] {
        auto H = thin_hierarchy_nonabelian(*c.X, A, eta_any);
        V.record(dna, check_degenerate_faces_nonabelian(*c.X, H, lambdas[ci]),
                 bundle("degenerate-faces-nonabelian", eta_any));
      });
    }
  }
}

/// Planted instances (cocycle plus noise on the edges at one vertex) through
/// both correction loops; every contract check must pass.
inline void verify_correction_contracts(Verifier& V, const std::string& suite, int count) {
  auto rng = V.rng_for("correction-contracts");
  struct Inst {
    std::string name;
    ComplexPtr X;
    std::string group;
    bool nonabelian;
  };
  std::vector<Inst> inst = {{"complete-6-3/Z2", complete_complex(6, 3), "Z2", false},
                            {"complete-6-3/Z3", complete_complex(6, 3), "Z3", false},
                            {"torus-7/Z2", torus_complex(), "Z2", false},
                            {"complete-7-2/Z3", complete_complex(7, 2), "Z3", false},
                            {"complete-6-3/S3", complete_complex(6, 3), "S3", true},
                            {"glued-3-3/D4", glued_simplices(3, 3), "D4", true},
                            {"complete-5-3/D4", complete_complex(5, 3), "D4", true},
                            {"complete-6-3/Z3 nonabelian path", complete_complex(6, 3), "Z3", true}};
  std::vector<std::size_t> ids;
  for (const auto& c : inst) ids.push_back(V.open(suite, "correction-contracts", c.name));
  for (int t = 0; t < count; ++t) {
    const auto ci = static_cast<std::size_t>(t) % inst.size();
    const auto& c = inst[ci];
    auto G = parse_group_name(c.group);
    const std::size_t nv = c.X->num_faces(0);
    // cocycle: a coboundary
    Cochain f = coboundary(uniform_cochain(c.X, 0, G, rng));
    const Vertex v = c.X->face(0, rng() % nv)[0];
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(G->order() - 1));
    std::bernoulli_distribution on(0.6);
    for (FaceIndex e = 0; e < c.X->num_faces(1); ++e) {
      const Face& s = c.X->face(1, e);
      if ((s[0] == v || s[1] == v) && on(rng)) f.set(e, G->op(f.value(e), pick(rng)));
    }
    V.guarded(ids[ci], [&] {
      for (const auto& r : claim_correction(f, c.nonabelian))
        V.record(ids[ci], r, [&] {
          return std::optional<Bundle>(
              detail::cochain_bundle(f, c.nonabelian ? "correction-nonabelian" : "correction-abelian"));
        });
    });
  }
}

/// Fast paths (is_minimal, is_cocycle, distance to B, coboundary constant)
/// against direct enumeration.
inline void verify_oracle_equivalence(Verifier& V, const std::string& suite, int count) {
  auto rng = V.rng_for("oracle-equivalence");
  struct Inst {
    std::string name;
    ComplexPtr X;
    std::string group;
    int k;
  };
  std::vector<Inst> inst = {{"triangle/Z2", single_simplex(2), "Z2", 1},   {"complete-4-2/Z3", complete_complex(4, 2), "Z3", 1},
                            {"complete-5-2/Z2", complete_complex(5, 2), "Z2", 1}, {"glued-2-3/Z2", glued_simplices(2, 3), "Z2", 2},
                            {"complete-4-2/S3", complete_complex(4, 2), "S3", 1}, {"complete-5-2/S3", complete_complex(5, 2), "S3", 0},
                            {"torus-7/Z2", torus_complex(), "Z2", 0},             {"complete-4-3/Z2", complete_complex(4, 3), "Z2", 2}};
  auto mini = V.open(suite, "oracle-is-minimal", "random cochains");
  auto cocy = V.open(suite, "oracle-is-cocycle", "random cochains");
  auto dist = V.open(suite, "oracle-distance", "random cochains");
  auto cons = V.open(suite, "oracle-coboundary-constant", "instances");
  std::vector<std::optional<CochainSpaces>> spaces(inst.size());
  for (int t = 0; t < count; ++t) {
    const auto ci = static_cast<std::size_t>(t) % inst.size();
    const auto& c = inst[ci];
    auto G = parse_group_name(c.group);
    V.guarded(dist, [&] {
      if (!spaces[ci]) spaces[ci] = enumerate_spaces(*c.X, *G, c.k, V.config().budget);
      const auto& S = *spaces[ci];
      auto f = random_cochain(c.X, c.k, G, rng, 0.3);
      Rational best = f.weight();
      for (const auto& b : S.coboundaries) best = std::min(best, distance(f, detail::from_values(c.X, c.k, G, b)));
      const bool in_z = std::binary_search(S.cocycles.begin(), S.cocycles.end(), f.values());
      auto near = distance_to_coboundaries(f, V.config().budget);
      auto bundle = [&](const char* claim) {
        return [&, claim] { return std::optional<Bundle>(detail::cochain_bundle(f, claim)); };
      };
      V.record(dist, make_report("oracle-distance", near.distance, best, near.distance == best), bundle("oracle-distance"));
      V.record(mini, make_report("oracle-is-minimal", detail::flag(is_minimal(f, V.config().budget)), detail::flag(best == f.weight()),
                                 is_minimal(f, V.config().budget) == (best == f.weight())),
               bundle("oracle-is-minimal"));
      V.record(cocy, make_report("oracle-is-cocycle", detail::flag(is_cocycle(f)), detail::flag(in_z), is_cocycle(f) == in_z),
               bundle("oracle-is-cocycle"));
    });
  }
  for (std::size_t ci = 0; ci < inst.size(); ++ci) {
    const auto& c = inst[ci];
    auto G = parse_group_name(c.group);
    if (!G->is_abelian() && c.k > 0) continue;
    V.guarded(cons, [&] {
      if (!spaces[ci]) spaces[ci] = enumerate_spaces(*c.X, *G, c.k, V.config().budget);
      const auto& S = *spaces[ci];
      std::optional<Rational> brute;
      std::vector<Elem> vals(c.X->num_faces(c.k), 0);
      do {
        if (std::binary_search(S.coboundaries.begin(), S.coboundaries.end(), vals)) continue;
        auto f = detail::from_values(c.X, c.k, G, vals);
        Rational dmin = f.weight();
        for (const auto& b : S.coboundaries) dmin = std::min(dmin, distance(f, detail::from_values(c.X, c.k, G, b)));
        const Rational ratio_f = coboundary(f).weight() / dmin;
        if (!brute || ratio_f < *brute) brute = ratio_f;
      } while (detail::next_values(vals, G->order()));
      auto fast = coboundary_expansion_constant(c.X, G, c.k, V.config().budget);
      const bool ok = fast.coboundary == brute;
      auto r = make_report("oracle-coboundary-constant", fast.coboundary.value_or(Rational(-1)), brute.value_or(Rational(-1)), ok);
      r.witness = c.name;
      V.record(cons, r);
    });
  }
}

/// Torus: Z^1 != B^1 and mu equals a separately enumerated minimum weight;
/// single simplices: Z^k = B^k for every k < d.
inline void verify_cosystolic_definitions(Verifier& V, const std::string& suite) {
  auto tor = V.open(suite, "torus-nontrivial-cocycle", "torus-7 over Z2");
  V.guarded(tor, [&] {
    auto X = torus_complex();
    auto F2 = FiniteGroup::cyclic(2);
    // Bitmask enumeration of Z^1 and B^1 independent of the oracle module.
    const std::size_t ne = X->num_faces(1), nt = X->num_faces(2), nv = X->num_faces(0);
    std::vector<std::uint32_t> tri_mask(nt, 0);
    for (FaceIndex t = 0; t < nt; ++t)
      for (FaceIndex e : X->facets(2, t)) tri_mask[t] |= 1u << e;
    std::vector<char> is_b(std::size_t{1} << ne, 0);
    for (std::uint32_t h = 0; h < (1u << nv); ++h) {
      std::uint32_t m = 0;
      for (FaceIndex e = 0; e < ne; ++e) {
        auto fac = X->facets(1, e);
        if (((h >> fac[0]) ^ (h >> fac[1])) & 1) m |= 1u << e;
      }
      is_b[m] = 1;
    }
    std::optional<std::int64_t> best;
    std::uint64_t z = 0, b = 0;
    for (std::uint32_t m = 0; m < (1u << ne); ++m) {
      bool cocycle = true;
      for (auto tm : tri_mask)
        if (std::popcount(m & tm) % 2) {
          cocycle = false;
          break;
        }
      if (!cocycle) continue;
      ++z;
      if (is_b[m]) {
        ++b;
        continue;
      }
      std::int64_t w = 0;
      for (FaceIndex e = 0; e < ne; ++e)
        if (m >> e & 1) w += X->weight_numerator(1, e);
      if (!best || w < *best) best = w;
    }
    const Rational mu_brute(Integer(best.value_or(-1)), Integer(X->weight_denominator(1)));
    auto oracle = level_constants(X, F2, 1, V.config().budget);
    auto spaces = enumerate_spaces(*X, *F2, 1, V.config().budget);
    const bool ok = best && spaces.cocycles.size() == z && spaces.coboundaries.size() == b && z > b &&
                    oracle.mu && *oracle.mu == mu_brute;
    auto r = make_report("torus-nontrivial-cocycle", oracle.mu.value_or(Rational(-1)), mu_brute, ok);
    r.params["Z1"] = std::to_string(z);
    r.params["B1"] = std::to_string(b);
    V.record(tor, r);
  });
  auto simp = V.open(suite, "simplex-trivial-cohomology", "single simplices d = 1..3, Z2 and Z3");
  V.guarded(simp, [&] {
    for (int d = 1; d <= 3; ++d)
      for (const char* g : {"Z2", "Z3"}) {
        auto X = single_simplex(d);
        auto G = parse_group_name(g);
        for (int k = 0; k < d; ++k) {
          auto S = enumerate_spaces(*X, *G, k, V.config().budget);
          auto r = make_report("simplex-trivial-cohomology", Rational(static_cast<long long>(S.cocycles.size())),
                               Rational(static_cast<long long>(S.coboundaries.size())), S.cocycles == S.coboundaries);
          r.params["d"] = std::to_string(d);
          r.params["k"] = std::to_string(k);
          V.record(simp, r);
        }
      }
  });
}

/// Certificates either certify a pair that the oracle confirms or refuse
/// with a premise failure.
inline void verify_certificates(Verifier& V, const std::string& suite) {
  auto id = V.open(suite, "certificate-honesty", "small complexes");
  struct Inst {
    std::string name;
    ComplexPtr X;
    std::string group;
    ExpansionPath path;
  };
  std::vector<Inst> inst = {{"complete-6-3/Z2", complete_complex(6, 3), "Z2", ExpansionPath::Abelian},
                            {"complete-5-3/Z3", complete_complex(5, 3), "Z3", ExpansionPath::Abelian},
                            {"complete-6-3/S3", complete_complex(6, 3), "S3", ExpansionPath::NonAbelian}};
  for (const auto& c : inst) {
    auto G = parse_group_name(c.group);
    CheckReport r;
    r.claim = "certificate-honesty";
    try {
      auto cert = cosystolic_certificate(c.X, G, c.path, V.config().budget);
      r = verify_cosystolic_pair(c.X, G, cert.epsilon, cert.mu, V.config().budget);
      r.claim = "certificate-honesty";
    } catch (const Error& e) {
      r.verdict = e.code() == ErrorCode::PremiseFailed;
      r.lhs = "refused";
      r.rhs = "refused";
      r.note = e.what();
    }
    r.witness = c.name;
    V.record(id, r);
  }
}

inline void verify_conjugation_invariance(Verifier& V, const std::string& suite, int count) {
  auto rng = V.rng_for("conjugation-invariance");
  std::vector<NamedComplex> cx = {{"complete-5-2", complete_complex(5, 2)}, {"complete-6-3", complete_complex(6, 3)},
                                  {"torus-7", torus_complex()}};
  auto id = V.open(suite, "conjugation-invariance", "S3 and D4");
  for (int t = 0; t < count; ++t) {
    const auto& c = cx[static_cast<std::size_t>(t) % cx.size()];
    auto G = parse_group_name(t % 2 ? "D4" : "S3");
    auto f = uniform_cochain(c.complex, 0, G, rng);
    auto g = random_cochain(c.complex, 1, G, rng, 0.5);
    V.guarded(id, [&] {
      V.record(id, claim_conjugation(f, g), [&] {
        Json p = {{"acting", f.values()}};
        return std::optional<Bundle>(detail::cochain_bundle(g, "conjugation-invariance", p));
      });
    });
  }
}

inline void verify_delta_partition(Verifier& V, const std::string& suite, int count) {
  auto rng = V.rng_for("delta-partition");
  std::vector<NamedComplex> cx = {{"complete-7-3", complete_complex(7, 3)}, {"weighted-5-2", weighted_sample_complex()},
                                  {"torus-7", torus_complex()}};
  auto id = V.open(suite, "delta-partition", "random sets");
  for (int t = 0; t < count; ++t) {
    const auto& c = cx[static_cast<std::size_t>(t) % cx.size()];
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(c.complex->dimension()));
    const FaceSet A = random_face_set(*c.complex, k, 1 + rng() % c.complex->num_faces(k), rng);
    V.guarded(id, [&] {
      V.record(id, check_delta_partition(*c.complex, A), [&] {
        return std::optional<Bundle>(detail::cochain_bundle(detail::indicator(c.complex, A), "delta-partition"));
      });
    });
  }
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"delta1", "hierarchy", "correction", "cosystolic", "nonabelian"};
  return names;
}

inline void run_suite(Verifier& V, const std::string& suite) {
  if (suite == "delta1") {
    verify_coboundary_identities(V, suite, 200, 100);
    verify_decomposition_identity(V, suite, 100);
    verify_delta_partition(V, suite, 100);
    verify_delta1_sweep(V, suite, {6}, 2);
    verify_star_example(V, suite);
  } else if (suite == "hierarchy") {
    verify_hierarchy_bounds(V, suite, 60);
    verify_cheeger_exhaustive(V, suite, {{"complete-6-2", complete_complex(6, 2)}, {"torus-7", torus_complex()}});
  } else if (suite == "correction") {
    verify_correction_contracts(V, suite, 24);
  } else if (suite == "cosystolic") {
    verify_cosystolic_definitions(V, suite);
    verify_oracle_equivalence(V, suite, 24);
    verify_certificates(V, suite);
  } else if (suite == "nonabelian") {
    verify_conjugation_invariance(V, suite, 100);
  } else {
    fail(ErrorCode::BadParams, "unknown suite '" + suite + "'");
  }
}

/// "all" expands to every suite; an empty selection runs nothing.
inline Json run_verify(const VerifyConfig& cfg, const std::vector<std::string>& selection, bool* passed = nullptr) {
  std::vector<std::string> suites;
  for (const auto& s : selection) {
    if (s == "all")
      suites.insert(suites.end(), suite_names().begin(), suite_names().end());
    else
      suites.push_back(s);
  }
  Verifier V(cfg);
  for (const auto& s : suites) run_suite(V, s);
  if (passed) *passed = V.all_passed();
  return V.report(suites);
}

// ---------------------------------------------------------------------------
// Bundle replay

inline Rational param_of(const Json& claim, const char* name) {
  if (!claim.contains("params") || !claim["params"].contains(name))
    fail(ErrorCode::ParseError, std::string("bundle lacks parameter '") + name + "'");
  return parse_rational(claim["params"][name].get<std::string>());
}

/// Re-runs the recorded claim on the bundle's instance.
inline std::vector<CheckReport> replay_bundle(const Bundle& b) {
  const std::string claim = b.claim.value("claim", std::string());
  auto need_cochain = [&]() -> const Cochain& {
    if (!b.cochain) fail(ErrorCode::ParseError, "bundle for '" + claim + "' needs cochain.txt");
    return *b.cochain;
  };
  if (claim == "delta-delta-zero" || claim == "nonabelian-delta-delta-identity") return {claim_delta_delta(need_cochain())};
  if (claim == "decomposition-identity") return {claim_decomposition(*b.complex, need_cochain().support())};
  if (claim == "delta-partition") return {check_delta_partition(*b.complex, need_cochain().support())};
  if (claim == "delta1-expansion-of-non-local-sets")
    return {check_delta1_theorem_abelian(*b.complex, need_cochain().support(), param_of(b.claim, "lambda"),
                                         param_of(b.claim, "eta"), param_of(b.claim, "eps"))};
  if (claim == "fat-face-bound") {
    const auto& f = need_cochain();
    auto H = thin_hierarchy_abelian(*b.complex, f.support(), param_of(b.claim, "eta"));
    std::vector<CheckReport> out;
    for (int i = -1; i < f.dim(); ++i) out.push_back(check_fat_face_bound(*b.complex, H, i));
    return out;
  }
  if (claim == "degenerate-faces-abelian")
    return {check_degenerate_faces_abelian(*b.complex, thin_hierarchy_abelian(*b.complex, need_cochain().support(), param_of(b.claim, "eta")),
                                           param_of(b.claim, "lambda"))};
  if (claim == "degenerate-faces-nonabelian")
    return {check_degenerate_faces_nonabelian(
        *b.complex, thin_hierarchy_nonabelian(*b.complex, need_cochain().support(), param_of(b.claim, "eta")),
        param_of(b.claim, "lambda"))};
  if (claim == "correction-abelian") return claim_correction(need_cochain(), false);
  if (claim == "correction-nonabelian") return claim_correction(need_cochain(), true);
  if (claim == "conjugation-invariance") {
    const auto& g = need_cochain();
    Cochain f(b.complex, 0, g.group_ptr());
    const auto vals = b.claim.at("params").at("acting").get<std::vector<Elem>>();
    if (vals.size() != f.size()) fail(ErrorCode::ParseError, "acting cochain has the wrong length");
    for (FaceIndex i = 0; i < vals.size(); ++i) f.set(i, vals[i]);
    return {claim_conjugation(f, g)};
  }
  if (claim == "oracle-distance" || claim == "oracle-is-minimal" || claim == "oracle-is-cocycle") {
    const auto& f = need_cochain();
    auto S = enumerate_spaces(*b.complex, f.group(), f.dim());
    Rational best = f.weight();
    for (const auto& v : S.coboundaries)
      best = std::min(best, distance(f, detail::from_values(b.complex, f.dim(), f.group_ptr(), v)));
    const bool in_z = std::binary_search(S.cocycles.begin(), S.cocycles.end(), f.values());
    const Rational fast = distance_to_coboundaries(f).distance;
    return {make_report("oracle-distance", fast, best, fast == best),
            make_report("oracle-is-minimal", detail::flag(is_minimal(f)), detail::flag(best == f.weight()), is_minimal(f) == (best == f.weight())),
            make_report("oracle-is-cocycle", detail::flag(is_cocycle(f)), detail::flag(in_z), is_cocycle(f) == in_z)};
  }
  if (claim == "cheeger-inequalities") {
    Verifier V(VerifyConfig{});
    verify_cheeger_exhaustive(V, "replay", {{"bundle", b.complex}}, 20);
    std::vector<CheckReport> out;
    const auto& t = V.tallies().front();
    CheckReport r = t.first_failure.value_or(make_report("cheeger-inequalities", 0, 0, true));
    out.push_back(r);
    return out;
  }
  fail(ErrorCode::ParseError, "bundle claim '" + claim + "' cannot be replayed");
}

}  // namespace hdx
