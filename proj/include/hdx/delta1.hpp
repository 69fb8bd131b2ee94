#pragma once

// delta_1 / delta_i sets, the fat/thin face hierarchy, the degenerate-face
// sets, non-local classification and the inequality checks built on them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdx/check.hpp"
#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/rational.hpp"

namespace hdx {

namespace detail {

inline void require_below_top(const SimplicialComplex& X, int k) {
  if (k >= X.dimension()) fail(ErrorCode::DimensionTooHigh, "no (k+1)-faces above dimension " + std::to_string(k));
  if (k < -1) fail(ErrorCode::BadDimension, "dimension below -1");
}

/// For every (k+1)-face, the number of its k-faces that lie in A.
inline std::vector<int> facet_counts(const SimplicialComplex& X, const FaceSet& A) {
  require_below_top(X, A.dim);
  std::vector<int> c(X.num_faces(A.dim + 1), 0);
  for (FaceIndex a : A.members)
    for (FaceIndex t : X.cofaces(A.dim, a)) ++c[t];
  return c;
}

inline std::vector<char> bitmap(const SimplicialComplex& X, const FaceSet& A) {
  std::vector<char> m(X.num_faces(A.dim), 0);
  for (FaceIndex a : A.members) m[a] = 1;
  return m;
}

inline FaceSet from_bitmap(int k, const std::vector<char>& m) {
  std::vector<FaceIndex> out;
  for (FaceIndex i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(i);
  return FaceSet(k, std::move(out));
}

inline std::string approx_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "~%.12g", x);
  return buf;
}

}  // namespace detail

/// (k+1)-faces containing exactly i members of A.
inline FaceSet delta_i(const SimplicialComplex& X, const FaceSet& A, int i) {
  if (i < 0 || i > A.dim + 2) fail(ErrorCode::BadIndex, "delta_i index " + std::to_string(i) + " outside 0..k+2");
  auto c = detail::facet_counts(X, A);
  std::vector<FaceIndex> out;
  for (FaceIndex t = 0; t < c.size(); ++t)
    if (c[t] == i) out.push_back(t);
  return FaceSet(A.dim + 1, std::move(out));
}

/// (k+1)-faces containing exactly one member of A.
inline FaceSet delta1(const SimplicialComplex& X, const FaceSet& A) { return delta_i(X, A, 1); }

/// (k+1)-faces containing at least one member of A.
inline FaceSet gamma_set(const SimplicialComplex& X, const FaceSet& A) {
  auto c = detail::facet_counts(X, A);
  std::vector<FaceIndex> out;
  for (FaceIndex t = 0; t < c.size(); ++t)
    if (c[t] > 0) out.push_back(t);
  return FaceSet(A.dim + 1, std::move(out));
}

enum class HierarchyPath { Abelian, NonAbelian };

/// Fat sets S̄_i of the thin/fat hierarchy of a k-face set A.  Level k is A
/// itself.  The abelian path fills levels -1..k-1; the non-abelian path fills
/// k-2 (threshold eta) and k-1 (threshold eta^{1/3}).
class ThinHierarchy {
 public:
  int k = 0;
  Rational eta;
  HierarchyPath path = HierarchyPath::Abelian;
  FaceSet A;

  bool has_level(int i) const { return computed(i); }
  bool fat(int i, FaceIndex s) const { return level(i)[s] != 0; }
  bool thin(int i, FaceIndex s) const { return level(i)[s] == 0; }
  FaceSet fat_set(int i) const { return detail::from_bitmap(i, level(i)); }
  FaceSet thin_set(int i) const {
    std::vector<FaceIndex> out;
    const auto& m = level(i);
    for (FaceIndex s = 0; s < m.size(); ++s)
      if (!m[s]) out.push_back(s);
    return FaceSet(i, std::move(out));
  }
  const std::vector<char>& level(int i) const {
    if (!computed(i)) fail(ErrorCode::BadDimension, "hierarchy level " + std::to_string(i) + " not computed");
    return fat_[static_cast<std::size_t>(i + 1)];
  }

  std::vector<std::vector<char>> fat_;  // index i+1
  std::vector<char> computed_;

 private:
  bool computed(int i) const {
    return i >= -1 && i <= k && computed_[static_cast<std::size_t>(i + 1)] != 0;
  }
};

namespace detail {

inline ThinHierarchy empty_hierarchy(const SimplicialComplex& X, const FaceSet& A, const Rational& eta,
                                     HierarchyPath path) {
  if (eta <= 0 || eta >= 1) fail(ErrorCode::BadParams, "eta must lie in (0,1)");
  if (A.dim > X.dimension() || A.dim < 0) fail(ErrorCode::BadDimension, "face set dimension outside complex");
  ThinHierarchy H;
  H.k = A.dim;
  H.eta = eta;
  H.path = path;
  H.A = A;
  H.fat_.assign(static_cast<std::size_t>(A.dim + 2), {});
  H.computed_.assign(static_cast<std::size_t>(A.dim + 2), 0);
  H.fat_[static_cast<std::size_t>(A.dim + 1)] = bitmap(X, A);
  H.computed_[static_cast<std::size_t>(A.dim + 1)] = 1;
  return H;
}

}  // namespace detail

/// Abelian hierarchy: S̄_{k-1} = {||A_s|| > eta}, then for i = k-2..-1
/// S̄_i = {||(S̄_{i+1})_s|| > eta^{2^{k-i-1}}}.
inline ThinHierarchy thin_hierarchy_abelian(const SimplicialComplex& X, const FaceSet& A, const Rational& eta) {
  ThinHierarchy H = detail::empty_hierarchy(X, A, eta, HierarchyPath::Abelian);
  const int k = A.dim;
  for (int i = k - 1; i >= -1; --i) {
    const Rational threshold = pow(eta, 1LL << (k - i - 1));
    FaceSet upper = detail::from_bitmap(i + 1, H.fat_[static_cast<std::size_t>(i + 2)]);
    std::vector<char> m(X.num_faces(i), 0);
    for (const auto& [s, w] : localized_weights(X, upper, i))
      if (w > threshold) m[s] = 1;
    H.fat_[static_cast<std::size_t>(i + 1)] = std::move(m);
    H.computed_[static_cast<std::size_t>(i + 1)] = 1;
  }
  return H;
}

/// Non-abelian levels: S̄_{k-1} = {||A_s|| > eta^{1/3}} (tested as x^3 > eta)
/// and S̄_{k-2} = {||A_s|| > eta}.
inline ThinHierarchy thin_hierarchy_nonabelian(const SimplicialComplex& X, const FaceSet& A, const Rational& eta) {
  if (A.dim < 1) fail(ErrorCode::DimensionTooLow, "non-abelian hierarchy needs k >= 1");
  ThinHierarchy H = detail::empty_hierarchy(X, A, eta, HierarchyPath::NonAbelian);
  const int k = A.dim;
  std::vector<char> top(X.num_faces(k - 1), 0);
  for (const auto& [s, w] : localized_weights(X, A, k - 1))
    if (!leq_power(w, eta, 1, 3)) top[s] = 1;
  H.fat_[static_cast<std::size_t>(k)] = std::move(top);
  H.computed_[static_cast<std::size_t>(k)] = 1;
  std::vector<char> low(X.num_faces(k - 2), 0);
  for (const auto& [s, w] : localized_weights(X, A, k - 2))
    if (w > eta) low[s] = 1;
  H.fat_[static_cast<std::size_t>(k - 1)] = std::move(low);
  H.computed_[static_cast<std::size_t>(k - 1)] = 1;
  return H;
}

/// Gamma(A, S̄_{k-1}): (k+1)-faces containing a member of A that itself
/// contains a fat (k-1)-face.
inline FaceSet gamma_fat_set(const SimplicialComplex& X, const ThinHierarchy& H) {
  const int k = H.k;
  detail::require_below_top(X, k);
  std::vector<char> out(X.num_faces(k + 1), 0);
  for (FaceIndex a : H.A.members) {
    bool touches = false;
    if (k >= 0)
      for (FaceIndex s : X.facets(k, a)) touches = touches || H.fat(k - 1, s);
    if (!touches) continue;
    for (FaceIndex t : X.cofaces(k, a)) out[t] = 1;
  }
  return detail::from_bitmap(k + 1, out);
}

enum class UpsilonVariant { Thm3, Lemma36, Sec4 };

inline UpsilonVariant parse_upsilon_variant(const std::string& s) {
  if (s == "thm3") return UpsilonVariant::Thm3;
  if (s == "lemma36") return UpsilonVariant::Lemma36;
  if (s == "sec4") return UpsilonVariant::Sec4;
  fail(ErrorCode::UnknownVariant, "unknown degenerate-face variant '" + s + "'");
}

namespace detail {

inline Face intersect(const Face& a, const Face& b) {
  Face out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// True if among `faces` (all of dimension i, fat at level i) two have an
/// intersection that is thin at level i-1.
inline bool has_thin_meeting(const SimplicialComplex& X, const ThinHierarchy& H, int i,
                             const std::vector<FaceIndex>& faces) {
  for (std::size_t a = 0; a < faces.size(); ++a)
    for (std::size_t b = a + 1; b < faces.size(); ++b) {
      Face m = intersect(X.face(i, faces[a]), X.face(i, faces[b]));
      if (static_cast<int>(m.size()) != i) continue;
      if (H.thin(i - 1, X.index_of(m))) return true;
    }
  return false;
}

}  // namespace detail

/// Degenerate faces.  Thm3: (k+1)-faces with two members of A meeting in a
/// thin (k-1)-face.  Lemma36: (k+1)-faces with two fat i-faces meeting in a
/// thin (i-1)-face for some 0 <= i <= k (fat at level k means "in A").
/// Sec4: members of A with two fat (k-1)-faces meeting in a thin (k-2)-face.
inline FaceSet upsilon_set(const SimplicialComplex& X, const ThinHierarchy& H, UpsilonVariant variant) {
  const int k = H.k;
  switch (variant) {
    case UpsilonVariant::Thm3: {
      detail::require_below_top(X, k);
      std::vector<FaceIndex> out;
      for (FaceIndex t = 0; t < X.num_faces(k + 1); ++t) {
        std::vector<FaceIndex> inA;
        for (FaceIndex s : X.facets(k + 1, t))
          if (H.fat(k, s)) inA.push_back(s);
        if (inA.size() >= 2 && detail::has_thin_meeting(X, H, k, inA)) out.push_back(t);
      }
      return FaceSet(k + 1, std::move(out));
    }
    case UpsilonVariant::Lemma36: {
      detail::require_below_top(X, k);
      if (H.path != HierarchyPath::Abelian) fail(ErrorCode::UnknownVariant, "lemma36 variant needs the abelian hierarchy");
      std::vector<FaceIndex> out;
      for (FaceIndex t = 0; t < X.num_faces(k + 1); ++t) {
        bool hit = false;
        for (int i = 0; i <= k && !hit; ++i) {
          std::vector<FaceIndex> fat;
          for_each_subface(X, k + 1, t, i, [&](FaceIndex s) {
            if (H.fat(i, s)) fat.push_back(s);
          });
          if (fat.size() >= 2) hit = detail::has_thin_meeting(X, H, i, fat);
        }
        if (hit) out.push_back(t);
      }
      return FaceSet(k + 1, std::move(out));
    }
    case UpsilonVariant::Sec4: {
      if (k < 1) fail(ErrorCode::DimensionTooLow, "sec4 variant needs k >= 1");
      std::vector<FaceIndex> out;
      for (FaceIndex a : H.A.members) {
        std::vector<FaceIndex> fat;
        for (FaceIndex s : X.facets(k, a))
          if (H.fat(k - 1, s)) fat.push_back(s);
        if (fat.size() >= 2 && detail::has_thin_meeting(X, H, k - 1, fat)) out.push_back(a);
      }
      return FaceSet(k, std::move(out));
    }
  }
  fail(ErrorCode::UnknownVariant, "unknown degenerate-face variant");
}

/// f↓sigma: members of A reachable from the i-face sigma through a chain of
/// fat faces of dimensions i+1..k-1.
inline FaceSet f_down(const SimplicialComplex& X, const ThinHierarchy& H, int i, FaceIndex sigma) {
  const int k = H.k;
  if (i >= k || i < -1) fail(ErrorCode::BadDimension, "f_down needs dim sigma < k");
  if (sigma >= X.num_faces(i)) fail(ErrorCode::UnknownFace, "face index out of range");
  std::vector<FaceIndex> cur = {sigma};
  for (int j = i + 1; j <= k; ++j) {
    std::vector<char> next(X.num_faces(j), 0);
    for (FaceIndex s : cur)
      for (FaceIndex c : X.cofaces(j - 1, s))
        if (H.fat(j, c)) next[c] = 1;
    cur.clear();
    for (FaceIndex c = 0; c < next.size(); ++c)
      if (next[c]) cur.push_back(c);
  }
  return FaceSet(k, std::move(cur));
}

inline FaceSet f_down(const SimplicialComplex& X, const ThinHierarchy& H, const Face& sigma) {
  return f_down(X, H, static_cast<int>(sigma.size()) - 1, X.index_of(sigma));
}

/// Sum over fat i-faces sigma of ||(f↓sigma, sigma)||.
inline Rational fat_contribution(const SimplicialComplex& X, const ThinHierarchy& H, int i) {
  Rational s = 0;
  for (FaceIndex sigma : H.fat_set(i).members) s += mutual_weight(X, f_down(X, H, i, sigma), FaceSet(i, {sigma}));
  return s;
}

// ---------------------------------------------------------------------------
// Classification

struct NonLocalVerdict {
  bool flag = true;
  Rational measured;  // ||(A, S_{k-1})||
  Rational weight;    // ||A||
  Rational eta, eps;
};

/// (eta, eps)-non-local: ||(A, S_{k-1})|| >= (1 - eps)||A||.
inline NonLocalVerdict classify_non_local(const SimplicialComplex& X, const FaceSet& A, const Rational& eta,
                                          const Rational& eps) {
  NonLocalVerdict v;
  v.eta = eta;
  v.eps = eps;
  v.weight = X.weight(A);
  if (A.dim < 0) fail(ErrorCode::DimensionTooLow, "non-locality needs k >= 0");
  std::vector<FaceIndex> fat;
  for (const auto& [s, w] : localized_weights(X, A, A.dim - 1))
    if (w > eta) fat.push_back(s);
  v.measured = v.weight - mutual_weight(X, A, FaceSet(A.dim - 1, std::move(fat)));
  v.flag = v.measured >= (1 - eps) * v.weight;
  return v;
}

struct WeaklyNonLocalVerdict {
  bool flag = true;
  bool spread_ok = true;      // ||S_{k-2}|| >= 1 - eps ||A||
  bool saturation_ok = true;  // max_tau ||A_tau|| <= 1 - alpha
  Rational thin_weight;       // ||S_{k-2}||
  Rational max_link;          // max_tau ||A_tau||
  std::optional<Face> witness;
  Rational eta, eps, alpha;
};

inline WeaklyNonLocalVerdict classify_weakly_non_local(const SimplicialComplex& X, const FaceSet& A,
                                                       const Rational& eta, const Rational& eps,
                                                       const Rational& alpha) {
  if (A.dim < 1) fail(ErrorCode::DimensionTooLow, "weak non-locality needs k >= 1");
  WeaklyNonLocalVerdict v;
  v.eta = eta;
  v.eps = eps;
  v.alpha = alpha;
  std::vector<FaceIndex> fat;
  for (const auto& [s, w] : localized_weights(X, A, A.dim - 2))
    if (w > eta) fat.push_back(s);
  v.thin_weight = 1 - X.weight(FaceSet(A.dim - 2, std::move(fat)));
  v.spread_ok = v.thin_weight >= 1 - eps * X.weight(A);
  v.max_link = 0;
  std::optional<FaceIndex> arg;
  for (const auto& [s, w] : localized_weights(X, A, A.dim - 1))
    if (!arg || w > v.max_link) {
      v.max_link = w;
      arg = s;
    }
  v.saturation_ok = v.max_link <= 1 - alpha;
  if (!v.saturation_ok) v.witness = X.face(A.dim - 1, *arg);
  v.flag = v.spread_ok && v.saturation_ok;
  return v;
}

// ---------------------------------------------------------------------------
// Checks.  Every lambda below is a rational upper bound on the true value,
// and each inequality is monotone in the direction that keeps this sound.

inline std::map<std::string, std::string> params_of(std::initializer_list<std::pair<const char*, Rational>> ps) {
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : ps) m.emplace(k, v.str());
  return m;
}

/// ||δ_1(A)|| >= (1 - C(k+2,k)(lambda + eta + 2 eps)) ||A|| for non-local A.
inline CheckReport check_delta1_theorem_abelian(const SimplicialComplex& X, const FaceSet& A, const Rational& lambda,
                                                const Rational& eta, const Rational& eps) {
  auto v = classify_non_local(X, A, eta, eps);
  if (!v.flag) fail(ErrorCode::NotNonLocal, "set is not (eta,eps)-non-local");
  const int k = A.dim;
  const Rational lhs = X.weight(delta1(X, A));
  const Rational rhs = (1 - binomial(k + 2, k) * (lambda + eta + 2 * eps)) * v.weight;
  auto r = make_report("delta1-expansion-of-non-local-sets", lhs, rhs, lhs >= rhs);
  r.params = params_of({{"k", Rational(k)}, {"lambda", lambda}, {"eta", eta}, {"eps", eps}});
  return r;
}

/// Lower bound on ||δ_1(A)|| from the decomposition over (k-1)-faces,
/// linear in t = eta^{1/3}; requires ||A_tau|| <= 1 - alpha for all tau.
inline CheckReport check_delta1_decomposition(const SimplicialComplex& X, const FaceSet& A, const Rational& lambda,
                                              const Rational& eta, const Rational& alpha) {
  const int k = A.dim;
  if (k < 1) fail(ErrorCode::DimensionTooLow, "decomposition check needs k >= 1");
  for (const auto& [s, w] : localized_weights(X, A, k - 1))
    if (w > 1 - alpha) fail(ErrorCode::ParameterViolation, "saturated (k-1)-face " + face_to_string(X.face(k - 1, s)));
  auto H = thin_hierarchy_nonabelian(X, A, eta);
  const Rational weight = X.weight(A);
  const Rational on_thin = weight - mutual_weight(X, A, H.fat_set(k - 1));
  const Rational lhs = X.weight(delta1(X, A));
  const Rational c = Rational((k + 1) * (k + 2));
  const Rational c0 = c * ((1 - lambda) * (1 - alpha) * on_thin - (ratio(k, k + 1) - (1 - lambda) * alpha) * weight);
  const Rational c1 = -c * (1 - lambda) * on_thin;  // rhs = c0 + c1 * t
  const std::vector<Rational> diff = {lhs - c0, -c1};
  const bool ok = sign_at_root(diff, eta, 3) >= 0;
  CheckReport r;
  r.claim = "delta1-decomposition";
  r.lhs = lhs.str();
  r.rhs = detail::approx_text(to_double(c0) + to_double(c1) * std::cbrt(to_double(eta)));
  r.verdict = ok;
  r.params = params_of({{"k", Rational(k)}, {"lambda", lambda}, {"eta", eta}, {"alpha", alpha}});
  return r;
}

/// Weakly-non-local sets: ||δ_1(A)|| >= alpha ||A|| under
/// eps <= alpha/(3d^3), lambda <= eps^2, eta <= eps^3.
inline CheckReport check_delta1_theorem_nonabelian(const SimplicialComplex& X, const FaceSet& A,
                                                   const Rational& lambda, const Rational& eta, const Rational& eps,
                                                   const Rational& alpha) {
  const long long d = X.dimension();
  if (eps > alpha / (3 * d * d * d)) fail(ErrorCode::ParameterViolation, "eps > alpha / (3 d^3)");
  if (lambda > eps * eps) fail(ErrorCode::ParameterViolation, "lambda > eps^2");
  if (eta > eps * eps * eps) fail(ErrorCode::ParameterViolation, "eta > eps^3");
  auto v = classify_weakly_non_local(X, A, eta, eps, alpha);
  if (!v.flag) fail(ErrorCode::NotWeaklyNonLocal, "set is not (eta,eps,alpha)-weakly-non-local");
  const Rational lhs = X.weight(delta1(X, A));
  const Rational rhs = alpha * X.weight(A);
  auto r = make_report("delta1-expansion-of-weakly-non-local-sets", lhs, rhs, lhs >= rhs);
  r.params = params_of({{"lambda", lambda}, {"eta", eta}, {"eps", eps}, {"alpha", alpha}});
  return r;
}

/// ||S̄_i|| * eta^{2^{k-i}-1} < ||f||  (0 = 0 accepted when f = 0).
inline CheckReport check_fat_face_bound(const SimplicialComplex& X, const ThinHierarchy& H, int i) {
  const Rational f = X.weight(H.A);
  const Rational lhs = X.weight(H.fat_set(i)) * pow(H.eta, (1LL << (H.k - i)) - 1);
  auto r = make_report("fat-face-bound", lhs, f, lhs < f || (lhs == 0 && f == 0));
  r.params = params_of({{"k", Rational(H.k)}, {"i", Rational(i)}, {"eta", H.eta}});
  return r;
}

/// If ||f|| <= eta^{2^{k+1}-1} then the empty face is thin.
inline CheckReport check_empty_face_thin(const SimplicialComplex& X, const ThinHierarchy& H) {
  const Rational f = X.weight(H.A);
  const Rational bound = pow(H.eta, (1LL << (H.k + 1)) - 1);
  const bool premise = f <= bound;
  const Rational thin = 1 - X.weight(H.fat_set(-1));
  auto r = make_report("empty-face-thin", thin, Rational(1), !premise || thin == 1);
  if (!premise) r.note = "premise ||f|| <= eta^(2^(k+1)-1) not met";
  r.params = params_of({{"k", Rational(H.k)}, {"eta", H.eta}, {"weight", f}});
  return r;
}

/// ||Upsilon|| <= eta C(k+2,2) 2^{k+2} ||f||, requires lambda <= eta^{2^{d-1}}.
inline CheckReport check_degenerate_faces_abelian(const SimplicialComplex& X, const ThinHierarchy& H,
                                                  const Rational& lambda) {
  const int d = X.dimension();
  if (lambda > pow(H.eta, 1LL << (d - 1))) fail(ErrorCode::ParameterViolation, "lambda > eta^(2^(d-1))");
  const int k = H.k;
  const Rational lhs = X.weight(upsilon_set(X, H, UpsilonVariant::Lemma36));
  const Rational rhs = H.eta * binomial(k + 2, 2) * (1LL << (k + 2)) * X.weight(H.A);
  auto r = make_report("degenerate-faces-abelian", lhs, rhs, lhs <= rhs);
  r.params = params_of({{"k", Rational(k)}, {"eta", H.eta}, {"lambda", lambda}});
  return r;
}

/// ||Upsilon|| <= C(k+1,2)(eta^{1/3} + lambda eta^{-1/3}) ||A||, checked as
/// C||A|| t^2 - ||Upsilon|| t + C lambda ||A|| >= 0 at t = eta^{1/3}.
inline CheckReport check_degenerate_faces_nonabelian(const SimplicialComplex& X, const ThinHierarchy& H,
                                                     const Rational& lambda) {
  if (H.path != HierarchyPath::NonAbelian) fail(ErrorCode::UnknownVariant, "sec4 check needs the non-abelian hierarchy");
  const int k = H.k;
  const Rational ups = X.weight(upsilon_set(X, H, UpsilonVariant::Sec4));
  const Rational a = X.weight(H.A);
  const Rational c = Rational(binomial(k + 1, 2));
  const std::vector<Rational> poly = {c * lambda * a, -ups, c * a};
  const bool ok = sign_at_root(poly, H.eta, 3) >= 0;
  CheckReport r;
  r.claim = "degenerate-faces-nonabelian";
  r.lhs = ups.str();
  const double t = std::cbrt(to_double(H.eta));
  r.rhs = detail::approx_text(to_double(c) * (t + to_double(lambda) / t) * to_double(a));
  r.verdict = ok;
  r.params = params_of({{"k", Rational(k)}, {"eta", H.eta}, {"lambda", lambda}});
  return r;
}

/// Fat faces carry little of f: sum over fat i-faces of ||(f↓s, s)|| is at
/// most (1/beta)((k+1-i)(i+1) * [same sum at level i-1] + ||Upsilon||).
/// Meaningful for locally minimal cocycles with beta-expanding links.
inline CheckReport check_fat_contribution(const SimplicialComplex& X, const ThinHierarchy& H, int i,
                                          const Rational& beta) {
  if (i < 0 || i >= H.k) fail(ErrorCode::BadDimension, "level must satisfy 0 <= i < k");
  if (beta <= 0) fail(ErrorCode::BadParams, "beta must be positive");
  const int k = H.k;
  const Rational lhs = fat_contribution(X, H, i);
  const Rational below = fat_contribution(X, H, i - 1);
  const Rational ups = X.weight(upsilon_set(X, H, UpsilonVariant::Lemma36));
  const Rational rhs = (Rational((k + 1 - i) * (i + 1)) * below + ups) / beta;
  auto r = make_report("fat-face-contribution", lhs, rhs, lhs <= rhs);
  r.params = params_of({{"k", Rational(k)}, {"i", Rational(i)}, {"eta", H.eta}, {"beta", beta}});
  return r;
}

/// Sum_i ||δ_i(A)|| = 1 and Sum_i i ||δ_i(A)|| = (k+2) ||A||.
inline CheckReport check_delta_partition(const SimplicialComplex& X, const FaceSet& A) {
  const int k = A.dim;
  Rational total = 0, moment = 0;
  for (int i = 0; i <= k + 2; ++i) {
    const Rational w = X.weight(delta_i(X, A, i));
    total += w;
    moment += i * w;
  }
  const Rational expect = (k + 2) * X.weight(A);
  auto r = make_report("delta-partition", moment, expect, total == 1 && moment == expect);
  if (total != 1) r.witness = "sum of delta_i weights is " + total.str();
  return r;
}

/// Non-local cocycles vanish when lambda + eta + 2 eps <= 2/(d+1)^2.
/// `support` is the support of a cocycle.
inline CheckReport check_non_local_cocycle_vanishes(const SimplicialComplex& X, const FaceSet& support,
                                                    const Rational& lambda, const Rational& eta, const Rational& eps) {
  const long long d = X.dimension();
  if (lambda + eta + 2 * eps > Rational(2, (d + 1) * (d + 1)))
    fail(ErrorCode::ParameterViolation, "lambda + eta + 2 eps > 2/(d+1)^2");
  auto v = classify_non_local(X, support, eta, eps);
  const Rational w = X.weight(support);
  auto r = make_report("non-local-cocycles-vanish", w, Rational(0), !v.flag || w == 0);
  r.params = params_of({{"lambda", lambda}, {"eta", eta}, {"eps", eps}});
  if (!v.flag) r.note = "cocycle is not non-local";
  return r;
}

/// Weakly-non-local sets with empty δ_1 are empty (same parameter regime
/// as the non-abelian theorem).
inline CheckReport check_weakly_non_local_vanishes(const SimplicialComplex& X, const FaceSet& A,
                                                   const Rational& lambda, const Rational& eta, const Rational& eps,
                                                   const Rational& alpha) {
  const long long d = X.dimension();
  if (eps > alpha / (3 * d * d * d) || lambda > eps * eps || eta > eps * eps * eps)
    fail(ErrorCode::ParameterViolation, "parameters outside eps <= alpha/3d^3, lambda <= eps^2, eta <= eps^3");
  auto v = classify_weakly_non_local(X, A, eta, eps, alpha);
  const bool empty_delta = delta1(X, A).empty();
  const Rational w = X.weight(A);
  auto r = make_report("weakly-non-local-vanishes", w, Rational(0), !(v.flag && empty_delta) || w == 0);
  r.params = params_of({{"lambda", lambda}, {"eta", eta}, {"eps", eps}, {"alpha", alpha}});
  return r;
}

}  // namespace hdx
