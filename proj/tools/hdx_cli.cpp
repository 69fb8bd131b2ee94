#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hdx/correction.hpp"
#include "hdx/delta1.hpp"
#include "hdx/generators.hpp"
#include "hdx/io.hpp"
#include "hdx/oracle.hpp"
#include "hdx/spectral.hpp"
#include "hdx/verify.hpp"

namespace fs = std::filesystem;
using namespace hdx;

namespace {

struct Common {
  std::string group = "Z2";
  std::string out;
  std::string format = "json";
  std::string eta, eps, alpha, beta;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
};

std::uint64_t budget_of(const Common& c) { return c.budget ? *c.budget : enumeration_budget(); }

Rational rational_flag(const std::string& text, const char* name, const Rational& fallback) {
  if (text.empty()) return fallback;
  Rational r = parse_rational(text);
  if (r <= 0 || r >= 1) fail(ErrorCode::BadParams, std::string("--") + name + " must lie in (0,1)");
  return r;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    write_file(c.out, text);
}

Json face_json(const Face& f) { return Json(f); }

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& kind, std::size_t n, int d, std::size_t m, const std::string& in, const Common& c) {
  ComplexPtr X;
  if (kind == "complete")
    X = complete_complex(n, d);
  else if (kind == "glued-simplices")
    X = glued_simplices(m, d);
  else if (kind == "torus")
    X = torus_complex();
  else if (kind == "file") {
    if (in.empty()) fail(ErrorCode::BadParams, "generate file needs --in");
    X = load_complex(in);
  } else {
    fail(ErrorCode::BadParams, "unknown kind '" + kind + "'");
  }
  emit(c, format_complex(*X));
  return 0;
}

int cmd_analyze(const std::string& path, const Common& c) {
  auto X = load_complex(path);
  auto G = load_group(c.group, fs::path(path).parent_path());
  const std::uint64_t budget = budget_of(c);
  Json j;
  j["complex"] = {{"dimension", X->dimension()}, {"vertices", X->num_faces(0)}, {"top_faces", X->num_faces(X->dimension())},
                  {"uniform", X->uniform()}, {"degree_bound", X->degree_bound()}};
  j["group"] = {{"spec", c.group}, {"order", G->order()}, {"abelian", G->is_abelian()}};
  try {
    auto s = local_spectral_lambda(*X);
    Json links = Json::array();
    for (const auto& l : s.links)
      links.push_back({{"face", face_json(l.face)}, {"lambda", l.certificate.lambda},
                       {"lambda_upper", l.certificate.upper_rational.str()}, {"method", l.certificate.method}});
    j["spectral"] = {{"lambda", s.global.lambda}, {"lambda_upper", s.global.upper_rational.str()},
                     {"worst_face", face_json(s.worst)}, {"links", links}};
  } catch (const Error& e) {
    j["spectral"] = {{"skipped", std::string(error_name(e.code())) + ": " + e.what()}};
  }
  try {
    auto b = measured_link_beta(*X, G, budget);
    j["link_beta"] = {{"beta", rational_or_sentinel(b.beta)}, {"worst_face", face_json(b.worst)}, {"worst_k", b.worst_k}};
  } catch (const Error& e) {
    j["link_beta"] = {{"skipped", std::string(error_name(e.code())) + ": " + e.what()}};
  }
  Json levels = Json::array();
  for (int k = 0; k < X->dimension(); ++k) {
    try {
      auto L = level_constants(X, G, k, budget);
      levels.push_back({{"k", k},
                        {"coboundary", rational_or_sentinel(L.coboundary)},
                        {"cosystolic", rational_or_sentinel(L.cosystolic)},
                        {"mu", rational_or_sentinel(L.mu)}});
    } catch (const Error& e) {
      levels.push_back({{"k", k}, {"skipped", std::string(error_name(e.code())) + ": " + e.what()}});
    }
  }
  j["expansion"] = levels;
  emit(c, j.dump(2) + "\n");
  return 0;
}

int cmd_delta1(const std::string& complex_path, const std::string& set_path, const Common& c) {
  auto X = load_complex(complex_path);
  auto pc = parse_cochain(read_file(set_path), X, nullptr, fs::path(set_path).parent_path());
  const FaceSet A = pc.cochain.support();
  const int k = A.dim;
  const Rational eta = rational_flag(c.eta, "eta", ratio(1, 8));
  const Rational eps = rational_flag(c.eps, "eps", ratio(1, 10));
  Json j;
  j["k"] = k;
  j["weight"] = X->weight(A).str();
  Json parts = Json::array();
  for (int i = 0; i <= k + 2; ++i) parts.push_back(X->weight(delta_i(*X, A, i)).str());
  j["delta_i_weights"] = parts;
  j["delta1_weight"] = X->weight(delta1(*X, A)).str();
  j["checks"] = Json::array();
  j["checks"].push_back(to_json(check_delta_partition(*X, A)));
  auto v = classify_non_local(*X, A, eta, eps);
  j["non_local"] = {{"flag", v.flag}, {"thin_mass", v.measured.str()}, {"eta", eta.str()}, {"eps", eps.str()}};
  auto H = thin_hierarchy_abelian(*X, A, eta);
  Json levels = Json::array();
  for (int i = -1; i < k; ++i) {
    levels.push_back({{"level", i}, {"fat_weight", X->weight(H.fat_set(i)).str()}});
    j["checks"].push_back(to_json(check_fat_face_bound(*X, H, i)));
  }
  j["hierarchy"] = levels;
  j["checks"].push_back(to_json(check_empty_face_thin(*X, H)));
  try {
    const Rational lambda = local_spectral_lambda(*X).global.upper_rational;
    j["lambda_upper"] = lambda.str();
    if (v.flag) j["checks"].push_back(to_json(check_delta1_theorem_abelian(*X, A, lambda, eta, eps)));
  } catch (const Error& e) {
    j["lambda_upper"] = std::string("skipped: ") + e.what();
  }
  if (!c.alpha.empty() && k >= 1) {
    const Rational alpha = rational_flag(c.alpha, "alpha", ratio(1, 2));
    auto w = classify_weakly_non_local(*X, A, eta, eps, alpha);
    j["weakly_non_local"] = {{"flag", w.flag}, {"thin_weight", w.thin_weight.str()}, {"max_link", w.max_link.str()}};
  }
  bool ok = true;
  for (const auto& r : j["checks"]) ok = ok && r["verdict"] == "pass";
  emit(c, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_correct(const std::string& complex_path, const std::string& cochain_path, const std::string& path_name_,
                const Common& c) {
  auto X = load_complex(complex_path);
  auto pc = parse_cochain(read_file(cochain_path), X, nullptr, fs::path(cochain_path).parent_path());
  std::optional<LocalityParams> loc;
  if (!c.eta.empty() && !c.eps.empty()) {
    LocalityParams p{rational_flag(c.eta, "eta", 0), rational_flag(c.eps, "eps", 0)};
    if (!c.alpha.empty()) p.alpha = rational_flag(c.alpha, "alpha", 0);
    if (!c.beta.empty()) p.beta = rational_flag(c.beta, "beta", 1);
    loc = p;
  }
  CorrectionOutcome out = path_name_ == "nonabelian" ? correct_nonabelian(pc.cochain, loc, budget_of(c))
                                                     : correct_abelian(pc.cochain, loc, budget_of(c));
  Json verdict;
  verdict["path"] = path_name_;
  verdict["steps"] = out.trace.steps.size();
  verdict["initial_delta_weight"] = out.trace.initial.str();
  verdict["final_delta_weight"] = out.trace.final_weight.str();
  verdict["distance"] = out.trace.distance.str();
  verdict["checks"] = Json::array();
  bool ok = true;
  for (const auto& r : out.checks) {
    verdict["checks"].push_back(to_json(r));
    ok = ok && r.verdict;
  }
  verdict["verdict"] = ok ? "pass" : "fail";
  if (c.out.empty()) {
    std::cout << format_trace(out.trace) << verdict.dump(2) << "\n";
  } else {
    fs::create_directories(c.out);
    write_file(fs::path(c.out) / "trace.jsonl", format_trace(out.trace));
    write_file(fs::path(c.out) / "corrected.txt", format_cochain(out.corrected, pc.group_spec));
    write_file(fs::path(c.out) / "verdict.json", verdict.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

int cmd_verify(const std::vector<std::string>& suites, const std::string& bundle, const std::string& bundle_dir,
               const Common& c) {
  if (!bundle.empty()) {
    auto b = read_bundle(bundle);
    Json j;
    j["bundle"] = bundle;
    j["claim"] = b.claim.value("claim", std::string());
    j["checks"] = Json::array();
    bool ok = true;
    for (const auto& r : replay_bundle(b)) {
      j["checks"].push_back(to_json(r));
      ok = ok && r.verdict;
    }
    j["verdict"] = ok ? "pass" : "fail";
    emit(c, j.dump(2) + "\n");
    return ok ? 0 : 1;
  }
  VerifyConfig cfg;
  cfg.seed = c.seed;
  cfg.budget = budget_of(c);
  if (!bundle_dir.empty()) cfg.bundle_dir = bundle_dir;
  bool ok = true;
  Json report = run_verify(cfg, suites, &ok);
  emit(c, report.dump(2) + "\n");
  return ok ? 0 : 1;
}

void add_common(CLI::App* app, Common& c, bool params) {
  app->add_option("--group", c.group, "group: Z<m>, S<m>, D<m>, products like Z2xZ3, or table:<file>");
  app->add_option("--out", c.out, "output path (stdout when omitted)");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}));
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--budget", c.budget, "enumeration budget in states (overrides HDX_BUDGET)");
  if (params) {
    app->add_option("--eta", c.eta, "eta, rational in (0,1)");
    app->add_option("--eps", c.eps, "epsilon, rational in (0,1)");
    app->add_option("--alpha", c.alpha, "alpha, rational in (0,1)");
    app->add_option("--beta", c.beta, "beta, rational in (0,1)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-dimensional expander cochain toolkit"};
  app.require_subcommand(1);
  Common c;

  std::string kind, in;
  std::size_t n = 0, m = 1;
  int d = 2;
  auto* gen = app.add_subcommand("generate", "write a complex file");
  gen->add_option("kind", kind, "complete | glued-simplices | torus | file")->required();
  gen->add_option("--n", n, "vertices (complete)");
  gen->add_option("--d", d, "dimension");
  gen->add_option("--m", m, "number of simplices (glued-simplices)");
  gen->add_option("--in", in, "input complex (file)");
  add_common(gen, c, false);

  std::string complex_path, cochain_path, path_kind = "abelian";
  auto* ana = app.add_subcommand("analyze", "spectral and expansion report");
  ana->add_option("complex", complex_path, "complex file")->required();
  add_common(ana, c, true);

  auto* del = app.add_subcommand("delta1", "delta_1 expansion, hierarchy and classification of a face set");
  del->add_option("complex", complex_path, "complex file")->required();
  del->add_option("set", cochain_path, "cochain file whose support is the face set")->required();
  add_common(del, c, true);

  auto* cor = app.add_subcommand("correct", "run the local correction loop");
  cor->add_option("complex", complex_path, "complex file")->required();
  cor->add_option("cochain", cochain_path, "cochain file")->required();
  cor->add_option("--path", path_kind, "abelian | nonabelian")->check(CLI::IsMember({"abelian", "nonabelian"}));
  add_common(cor, c, true);

  std::vector<std::string> suites;
  std::string bundle, bundle_dir;
  auto* ver = app.add_subcommand("verify", "run property suites or replay a counterexample bundle");
  ver->add_option("suites", suites, "all | delta1 | hierarchy | correction | cosystolic | nonabelian");
  ver->add_option("--bundle", bundle, "replay a counterexample bundle directory");
  ver->add_option("--bundle-dir", bundle_dir, "write counterexample bundles here");
  add_common(ver, c, true);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_generate(kind, n, d, m, in, c);
    if (*ana) return cmd_analyze(complex_path, c);
    if (*del) return cmd_delta1(complex_path, cochain_path, c);
    if (*cor) return cmd_correct(complex_path, cochain_path, path_kind, c);
    if (*ver) return cmd_verify(suites, bundle, bundle_dir, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
