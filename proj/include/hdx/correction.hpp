#pragma once

// Minimality tests, single correction steps, the iterative correction loop
// with its bound checks, parameter schedules and cosystolic certificates.

#include <optional>
#include <string>
#include <vector>

#include "hdx/check.hpp"
#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"
#include "hdx/delta1.hpp"
#include "hdx/error.hpp"
#include "hdx/oracle.hpp"
#include "hdx/rational.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

// ---------------------------------------------------------------------------
// Local minimality

/// f_v for a non-abelian 2-coboundary delta(f), read off f directly:
/// (u,w) -> f(vu) f(uw) f(wv).  The stored 2-cochain cannot be rotated
/// without f.
inline Cochain coboundary_link_cochain(const Cochain& f, Vertex v, ComplexPtr L) {
  if (f.dim() != 1) fail(ErrorCode::DimensionMismatch, "expected a 1-cochain");
  const FiniteGroup& G = f.group();
  Cochain out(L, 1, f.group_ptr());
  for (FaceIndex e = 0; e < L->num_faces(1); ++e) {
    const Face& uw = L->face(1, e);
    const Vertex u = uw[0], w = uw[1];
    out.mutable_values()[e] = G.op(G.op(f.eval({v, u}), f.eval({u, w})), f.eval({w, v}));
  }
  return out;
}

/// Smallest vertex whose localization is not minimal in its link.
inline std::optional<Vertex> non_minimal_vertex(const Cochain& h, std::uint64_t budget = enumeration_budget()) {
  if (h.dim() < 1) fail(ErrorCode::BadDimension, "local minimality needs dimension >= 1");
  const SimplicialComplex& X = h.complex();
  for (FaceIndex i = 0; i < X.num_faces(0); ++i) {
    const Vertex v = X.face(0, i)[0];
    if (!is_minimal(localize(h, {v}), budget)) return v;
  }
  return std::nullopt;
}

inline bool is_locally_minimal(const Cochain& h, std::uint64_t budget = enumeration_budget()) {
  return !non_minimal_vertex(h, budget).has_value();
}

/// Local minimality of delta(f) for a 1-cochain f over any group.
inline std::optional<Vertex> non_minimal_vertex_of_coboundary(const Cochain& f,
                                                              std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = f.complex();
  if (f.group().is_abelian()) return non_minimal_vertex(coboundary(f), budget);
  for (FaceIndex i = 0; i < X.num_faces(0); ++i) {
    const Vertex v = X.face(0, i)[0];
    if (!is_minimal(coboundary_link_cochain(f, v, link(X, {v})), budget)) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// One step

struct AbelianStep {
  Vertex vertex = 0;
  Cochain correction;  // supported on faces containing `vertex`
  Rational before, after;
};

namespace detail {

/// Lift of a link (k-1)-cochain g_v to a k-cochain g on X supported at v,
/// oriented so that (delta g)_v = delta(g_v).
inline Cochain lift_from_link(const Cochain& gv, Vertex v, ComplexPtr X, int k) {
  const FiniteGroup& G = gv.group();
  Cochain g(X, k, gv.group_ptr());
  const SimplicialComplex& L = gv.complex();
  for (FaceIndex t = 0; t < L.num_faces(k - 1); ++t) {
    const Face& rho = L.face(k - 1, t);
    std::vector<Vertex> ordered = {v};
    ordered.insert(ordered.end(), rho.begin(), rho.end());
    const int s = ordering_sign(ordered);
    Face sorted = ordered;
    std::sort(sorted.begin(), sorted.end());
    // g(v, rho) = -g_v(rho)
    g.set(sorted, G.neg_pow(gv.value(t), -s));
  }
  return g;
}

}  // namespace detail

/// Best single-vertex correction of an abelian (k+1)-cochain h: over all
/// vertices with a non-minimal link, the one with the largest weight drop
/// (smallest id on ties).  Within a link the correcting cochain is the
/// lexicographically first minimiser.
inline AbelianStep one_step_abelian(const Cochain& h, std::uint64_t budget = enumeration_budget()) {
  if (!h.group().is_abelian()) fail(ErrorCode::NonAbelianGroup, "abelian step on a non-abelian group");
  if (h.dim() < 1) fail(ErrorCode::BadDimension, "one step needs a cochain of dimension >= 1");
  const SimplicialComplex& X = h.complex();
  const int k = h.dim() - 1;
  const Rational before = h.weight();
  std::optional<AbelianStep> best;
  for (FaceIndex i = 0; i < X.num_faces(0); ++i) {
    const Vertex v = X.face(0, i)[0];
    auto L = link(X, {v});
    Cochain hv = localize(h, {v}, L);
    if (hv.is_zero()) continue;
    auto near = distance_to_coboundaries(hv, budget);
    if (near.distance >= hv.weight()) continue;
    Cochain g = detail::lift_from_link(*near.source, v, h.complex_ptr(), k);
    const Rational after = difference(h, coboundary(g)).weight();
    if (!best || before - after > best->before - best->after) best = AbelianStep{v, std::move(g), before, after};
  }
  if (!best) fail(ErrorCode::AlreadyLocallyMinimal, "every link localization is minimal");
  return *best;
}

struct NonAbelianStep {
  Vertex vertex = 0;
  Cochain updated;  // f', differing from f only on edges at `vertex`
  Rational before, after;
};

/// f'(vu) = h(u) f(vu) with h the lexicographically first minimiser in the
/// link of v; vertex chosen as in the abelian step.
inline NonAbelianStep one_step_nonabelian(const Cochain& f, std::uint64_t budget = enumeration_budget()) {
  if (f.dim() != 1) fail(ErrorCode::DimensionMismatch, "non-abelian step acts on 1-cochains");
  const SimplicialComplex& X = f.complex();
  const FiniteGroup& G = f.group();
  const Rational before = coboundary(f).weight();
  std::optional<NonAbelianStep> best;
  for (FaceIndex i = 0; i < X.num_faces(0); ++i) {
    const Vertex v = X.face(0, i)[0];
    auto L = link(X, {v});
    Cochain cv = coboundary_link_cochain(f, v, L);
    if (cv.is_zero()) continue;
    auto near = distance_to_coboundaries(cv, budget);  // cv closest to delta(x)
    if (near.distance >= cv.weight()) continue;
    const Cochain& x = *near.source;
    Cochain g = f;
    for (FaceIndex j = 0; j < L->num_faces(0); ++j) {
      const Vertex u = L->face(0, j)[0];
      // abelian kernels use delta x(u,w) = x(w) - x(u), the others x(u) x(w)^{-1}
      const Elem hu = G.is_abelian() ? x.value(j) : G.inv(x.value(j));
      const Elem vu = G.op(hu, f.eval({v, u}));
      if (v < u)
        g.set(Face{v, u}, vu);
      else
        g.set(Face{u, v}, G.inv(vu));
    }
    const Rational after = coboundary(g).weight();
    if (!best || before - after > best->before - best->after) best = NonAbelianStep{v, std::move(g), before, after};
  }
  if (!best) fail(ErrorCode::AlreadyLocallyMinimal, "delta(f) is locally minimal");
  return *best;
}

// ---------------------------------------------------------------------------
// Correction loop

struct CorrectionStep {
  std::size_t step = 0;
  Vertex vertex = 0;
  Rational before, after, moved;
};

struct CorrectionTrace {
  std::vector<CorrectionStep> steps;
  Rational initial;      // ||delta f||
  Rational final_weight; // ||delta f'||
  Rational total_moved;  // sum of step distances
  Rational distance;     // dist(f, f')
};

struct CorrectionOutcome {
  Cochain corrected;
  CorrectionTrace trace;
  std::vector<CheckReport> checks;
};

/// Optional (eta, eps) for the non-local post-check.
struct LocalityParams {
  Rational eta;
  Rational eps;
  Rational alpha = 0;  // non-abelian only; 0 means 1/|G|
  Rational beta = 1;   // non-abelian premise ||delta f|| <= beta eta / 2
};

namespace detail {

inline void add_bound_checks(CorrectionOutcome& out, const SimplicialComplex& X, const Rational& step_factor,
                             const Rational& move_factor, const std::string& step_claim, const std::string& move_claim) {
  const auto& tr = out.trace;
  const Rational r = Rational(static_cast<long long>(tr.steps.size()));
  auto steps = make_report(step_claim, r, step_factor * tr.initial, r <= step_factor * tr.initial);
  auto moved = make_report(move_claim, tr.distance, move_factor * tr.initial,
                           tr.distance <= tr.total_moved && tr.total_moved <= move_factor * tr.initial);
  if (!X.uniform()) {
    steps.note = "top weights are not uniform; the bound assumes they are";
    moved.note = steps.note;
  }
  bool strictly = true;
  for (const auto& s : tr.steps) strictly = strictly && s.after < s.before;
  auto mono = make_report("correction-strictly-decreases", tr.final_weight, tr.initial,
                          strictly && tr.final_weight <= tr.initial);
  out.checks.push_back(std::move(mono));
  out.checks.push_back(std::move(steps));
  out.checks.push_back(std::move(moved));
}

}  // namespace detail

/// Repeated abelian steps on delta(f) until it is locally minimal.
inline CorrectionOutcome correct_abelian(const Cochain& f, std::optional<LocalityParams> locality = std::nullopt,
                                         std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = f.complex();
  const int k = f.dim();
  const int d = X.dimension();
  if (!f.group().is_abelian()) fail(ErrorCode::NonAbelianGroup, "abelian correction on a non-abelian group");
  if (k < 0 || k > d - 1) fail(ErrorCode::BadDimension, "correction needs 0 <= k <= d-1");
  CorrectionOutcome out{f, {}, {}};
  Cochain h = coboundary(f);
  out.trace.initial = h.weight();
  out.trace.total_moved = 0;
  while (non_minimal_vertex(h, budget)) {
    auto st = one_step_abelian(h, budget);
    out.corrected = difference(out.corrected, st.correction);
    h = coboundary(out.corrected);
    out.trace.steps.push_back({out.trace.steps.size() + 1, st.vertex, st.before, h.weight(), st.correction.weight()});
    out.trace.total_moved += st.correction.weight();
    if (h.weight() >= st.before) break;  // reported by correction-strictly-decreases
  }
  out.trace.final_weight = h.weight();
  out.trace.distance = distance(f, out.corrected);
  const long long q = static_cast<long long>(X.degree_bound());
  detail::add_bound_checks(out, X, Rational(static_cast<long long>(X.num_faces(d))) * binomial(d + 1, k + 2),
                           Rational(q * binomial(d, k + 1)), "correction-step-count", "correction-distance");
  if (locality) {
    const FaceSet support = h.support();
    const Rational threshold = pow(locality->eta, (1LL << (k + 2)) - 1);
    auto v = classify_non_local(X, support, locality->eta, locality->eps);
    auto r = make_report("correction-output-non-local", v.measured, (1 - locality->eps) * v.weight,
                         out.trace.initial > threshold || v.flag);
    if (out.trace.initial > threshold) r.note = "premise ||delta f|| <= eta^(2^(k+2)-1) not met";
    r.params = params_of({{"eta", locality->eta}, {"eps", locality->eps}});
    out.checks.push_back(std::move(r));
  }
  return out;
}

/// Repeated non-abelian steps on a 1-cochain of a 3-dimensional complex.
inline CorrectionOutcome correct_nonabelian(const Cochain& f, std::optional<LocalityParams> locality = std::nullopt,
                                            std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = f.complex();
  if (X.dimension() != 3) fail(ErrorCode::WrongDimension, "non-abelian correction needs a 3-dimensional complex");
  if (f.dim() != 1) fail(ErrorCode::DimensionMismatch, "non-abelian correction acts on 1-cochains");
  CorrectionOutcome out{f, {}, {}};
  out.trace.initial = coboundary(f).weight();
  out.trace.total_moved = 0;
  while (non_minimal_vertex_of_coboundary(out.corrected, budget)) {
    auto st = one_step_nonabelian(out.corrected, budget);
    const Rational moved = distance(out.corrected, st.updated);
    out.corrected = std::move(st.updated);
    out.trace.steps.push_back({out.trace.steps.size() + 1, st.vertex, st.before, st.after, moved});
    out.trace.total_moved += moved;
    if (st.after >= st.before) break;
  }
  out.trace.final_weight = coboundary(out.corrected).weight();
  out.trace.distance = distance(f, out.corrected);
  const long long q = static_cast<long long>(X.degree_bound());
  detail::add_bound_checks(out, X, Rational(4 * static_cast<long long>(X.num_faces(3))), Rational(2 * q),
                           "correction-step-count", "correction-distance");
  if (locality) {
    const FaceSet support = coboundary(out.corrected).support();
    const Rational alpha = locality->alpha > 0 ? locality->alpha : ratio(1, static_cast<long long>(f.group().order()));
    auto v = classify_weakly_non_local(X, support, locality->eta, locality->eps, alpha);
    const Rational threshold = locality->beta * locality->eta / 2;
    auto r = make_report("correction-output-weakly-non-local", v.thin_weight, 1 - locality->eps * X.weight(support),
                         out.trace.initial > threshold || v.flag);
    if (out.trace.initial > threshold) r.note = "premise ||delta f|| <= beta eta / 2 not met";
    r.params = params_of({{"eta", locality->eta}, {"eps", locality->eps}, {"alpha", alpha}});
    out.checks.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics on locally minimal non-abelian coboundaries

/// Every edge e has ||(delta f)_e|| <= 1 - 1/|G| when delta f is locally minimal.
inline CheckReport check_edge_saturation(const Cochain& f) {
  const SimplicialComplex& X = f.complex();
  const FaceSet support = coboundary(f).support();
  const Rational cap = 1 - ratio(1, static_cast<long long>(f.group().order()));
  Rational worst = 0;
  std::optional<FaceIndex> arg;
  for (const auto& [e, w] : localized_weights(X, support, 1))
    if (w > worst) {
      worst = w;
      arg = e;
    }
  auto r = make_report("locally-minimal-edge-saturation", worst, cap, worst <= cap);
  if (worst > cap) r.witness = face_to_string(X.face(1, *arg));
  return r;
}

/// ||f_v|| <= ||f^v|| / beta for the localization and restriction of delta f at v.
inline CheckReport check_localization_vs_restriction(const Cochain& f, Vertex v, const Rational& beta) {
  const SimplicialComplex& X = f.complex();
  auto L = link(X, {v});
  const Rational local = coboundary_link_cochain(f, v, L).weight();
  Rational restricted = 0;
  if (L->dimension() >= 2) restricted = restrict_to_link(coboundary(f), v, L).weight();
  auto r = make_report("localization-vs-restriction", local, restricted / beta, local * beta <= restricted);
  r.params = params_of({{"beta", beta}, {"vertex", Rational(static_cast<long long>(v))}});
  return r;
}

// ---------------------------------------------------------------------------
// Parameter schedules and certificates

enum class ExpansionPath { Abelian, NonAbelian };

inline std::string path_name(ExpansionPath p) { return p == ExpansionPath::Abelian ? "abelian" : "nonabelian"; }

struct ParameterSchedule {
  int d = 0;
  long long q = 0;
  Rational beta, eps, eta, lambda;
  ExpansionPath path = ExpansionPath::Abelian;
  std::string note;
};

/// Abelian: eta = beta^{d-1} eps / (2^d ((d+1)!)^2), lambda = eta^{2^{d-1}}.
/// Non-abelian: eta = eps^3, lambda = beta^2 eta^2 eps / 64.
inline ParameterSchedule parameter_schedule(int d, long long q, const Rational& beta, const Rational& eps,
                                            ExpansionPath path) {
  if (d < 1) fail(ErrorCode::BadParams, "schedule needs d >= 1");
  if (q < 1) fail(ErrorCode::BadParams, "degree bound must be positive");
  if (beta <= 0 || beta > 1) fail(ErrorCode::BadParams, "beta must lie in (0,1]");
  if (eps <= 0 || eps >= 1) fail(ErrorCode::BadParams, "eps must lie in (0,1)");
  ParameterSchedule s;
  s.d = d;
  s.q = q;
  s.beta = beta;
  s.eps = eps;
  s.path = path;
  if (path == ExpansionPath::Abelian) {
    const Rational f = Rational(factorial(d + 1));
    s.eta = pow(beta, d - 1) * eps / (Rational(1LL << d) * f * f);
    s.lambda = pow(s.eta, 1LL << (d - 1));
  } else {
    s.eta = eps * eps * eps;
    s.lambda = beta * beta * s.eta * s.eta * eps / 64;
    s.note = "lambda constant 1/64 chosen by this implementation";
  }
  return s;
}

struct CosystolicCertificate {
  Rational epsilon, mu;
  ParameterSchedule schedule;
  Rational lambda_measured;  // rational upper bound
  Rational beta_measured;
  std::string worst_link;
};

namespace detail {

/// Rational upper bound on d^{d/2}.
inline Rational power_half_upper(int d) {
  if (d % 2 == 0) return pow(Rational(d), d / 2);
  Integer r;
  exact_root(Integer(d), 2, r);  // floor sqrt
  if (r * r != d) r += 1;
  return pow(Rational(d), (d - 1) / 2) * Rational(r);
}

}  // namespace detail

/// Measures lambda and the link coboundary constant, derives the schedule
/// and issues (eps, mu) only if the measured values meet it.
inline CosystolicCertificate cosystolic_certificate(ComplexPtr X, GroupPtr G, ExpansionPath path,
                                                    std::uint64_t budget = enumeration_budget()) {
  const int d = X->dimension();
  if (path == ExpansionPath::NonAbelian && d != 3) fail(ErrorCode::WrongDimension, "non-abelian certificate needs d = 3");
  if (d < 2) fail(ErrorCode::DimensionTooLow, "certificate needs d >= 2");
  CosystolicCertificate c;
  LocalSpectralReport spectral;
  try {
    spectral = local_spectral_lambda(*X);
  } catch (const Error& e) {
    fail(ErrorCode::PremiseFailed, std::string("spectral: ") + e.what());
  }
  c.lambda_measured = spectral.global.upper_rational;
  LinkExpansion links;
  try {
    links = measured_link_beta(*X, G, budget);
  } catch (const Error& e) {
    fail(ErrorCode::PremiseFailed, std::string("link expansion: ") + e.what());
  }
  if (links.beta && *links.beta == 0)
    fail(ErrorCode::PremiseFailed, "link expansion: link of " + face_to_string(links.worst) + " has beta = 0");
  const Rational beta = links.beta ? std::min(*links.beta, Rational(1)) : Rational(1);
  c.beta_measured = beta;
  c.worst_link = face_to_string(links.worst);
  const long long q = static_cast<long long>(X->degree_bound());
  const Rational eps = path == ExpansionPath::Abelian ? ratio(1, 2LL * (d + 1) * (d + 1))
                                                      : ratio(1, 81LL * static_cast<long long>(G->order()));
  c.schedule = parameter_schedule(d, q, beta, eps, path);
  if (c.lambda_measured > c.schedule.lambda)
    fail(ErrorCode::PremiseFailed, "spectral: lambda+ = " + c.lambda_measured.str() + " exceeds required " +
                                       c.schedule.lambda.str());
  if (path == ExpansionPath::Abelian) {
    const Rational e = pow(c.schedule.eta, (1LL << d) - 1);
    c.mu = e;
    c.epsilon = std::min(e, 1 / (Rational(q) * detail::power_half_upper(d)));
  } else {
    const Rational e = beta * c.schedule.eta / 2;
    c.mu = e;
    c.epsilon = std::min(e, ratio(1, 2 * q));
  }
  return c;
}

/// Oracle cross-check of a cosystolic pair: ||delta f|| >= eps dist(f, Z^k)
/// for every f in C^k and ||f|| >= mu on Z^k \ B^k, over 0 <= k < d.
inline CheckReport verify_cosystolic_pair(ComplexPtr X, GroupPtr G, const Rational& eps, const Rational& mu,
                                          std::uint64_t budget = enumeration_budget()) {
  auto c = cosystolic_expansion_constants(X, G, budget);
  const bool eps_ok = !c.cosystolic() || *c.cosystolic() >= eps;
  const bool mu_ok = !c.mu() || *c.mu() >= mu;
  auto r = make_report("cosystolic-pair", c.cosystolic() ? *c.cosystolic() : Rational(-1), eps, eps_ok && mu_ok);
  if (!c.cosystolic()) r.lhs = "inf";
  r.params = params_of({{"eps", eps}, {"mu", mu}});
  r.note = "measured mu = " + (c.mu() ? c.mu()->str() : std::string("inf"));
  return r;
}

/// ||delta f|| >= min{eta^{2^{k+2}-1}, 1/(q C(d,k+1))} dist(f, Z^k).
inline CheckReport check_equations_expand(const Cochain& f, const Rational& eta,
                                          std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = f.complex();
  const int k = f.dim();
  const long long q = static_cast<long long>(X.degree_bound());
  const Rational c = std::min(pow(eta, (1LL << (k + 2)) - 1), ratio(1, q * binomial(X.dimension(), k + 1)));
  const Rational lhs = coboundary(f).weight();
  const Rational rhs = c * distance_to_cocycles(f, budget).distance;
  auto r = make_report("equations-expand", lhs, rhs, lhs >= rhs);
  r.params = params_of({{"eta", eta}, {"q", Rational(q)}});
  return r;
}

}  // namespace hdx
