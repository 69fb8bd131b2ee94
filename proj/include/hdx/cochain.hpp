#pragma once

// Group-valued antisymmetric cochains on a complex.  Values are stored for
// the canonical (ascending) ordering of every k-face; index 0 of the group
// is the zero / identity.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/group.hpp"
#include "hdx/rational.hpp"

namespace hdx {

/// Sign of the permutation that sorts `ordered`; 0 if a vertex repeats.
inline int ordering_sign(const std::vector<Vertex>& ordered) {
  int inversions = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i)
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      if (ordered[i] == ordered[j]) return 0;
      if (ordered[i] > ordered[j]) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

class Cochain {
 public:
  Cochain(ComplexPtr X, int k, GroupPtr G) : X_(std::move(X)), k_(k), G_(std::move(G)) {
    if (k_ < -1 || k_ > X_->dimension())
      fail(ErrorCode::BadDimension, "cochain dimension " + std::to_string(k_) + " outside complex");
    values_.assign(X_->num_faces(k_), FiniteGroup::identity());
  }

  static Cochain zero(ComplexPtr X, int k, GroupPtr G) { return Cochain(std::move(X), k, std::move(G)); }

  const ComplexPtr& complex_ptr() const { return X_; }
  const SimplicialComplex& complex() const { return *X_; }
  const GroupPtr& group_ptr() const { return G_; }
  const FiniteGroup& group() const { return *G_; }
  int dim() const { return k_; }
  std::size_t size() const { return values_.size(); }

  Elem value(FaceIndex i) const { return values_.at(i); }
  void set(FaceIndex i, Elem e) {
    if (!G_->contains(e)) fail(ErrorCode::GroupMismatch, "element " + std::to_string(e) + " not in " + G_->name());
    values_.at(i) = e;
  }
  Elem value(const Face& canonical) const { return values_[X_->index_of(canonical)]; }
  void set(const Face& canonical, Elem e) { set(X_->index_of(canonical), e); }
  const std::vector<Elem>& values() const { return values_; }
  std::vector<Elem>& mutable_values() { return values_; }

  /// Value on an arbitrary ordering of a face.  Abelian groups use the sign
  /// of the permutation.  Non-abelian 1-cochains invert on reversal; for
  /// non-abelian 2-cochains only the canonical (a,b,c) and the reversed
  /// cycle (a,c,b) are defined, the latter giving the inverse.
  Elem eval(const std::vector<Vertex>& ordered) const {
    if (static_cast<int>(ordered.size()) != k_ + 1) fail(ErrorCode::DimensionMismatch, "ordered face of wrong size");
    Face sorted = ordered;
    std::sort(sorted.begin(), sorted.end());
    const int s = ordering_sign(ordered);
    if (s == 0) fail(ErrorCode::UnknownFace, "repeated vertex");
    auto idx = X_->find(sorted);
    if (!idx) fail(ErrorCode::UnknownFace, face_to_string(sorted) + " is not a face");
    const Elem v = values_[*idx];
    if (G_->is_abelian() || k_ <= 1) return G_->neg_pow(v, s);
    if (k_ == 2) {
      if (ordered == sorted) return v;
      if (ordered[0] == sorted[0] && ordered[1] == sorted[2]) return G_->inv(v);
    }
    fail(ErrorCode::NonAbelianOrientation, "ordering not defined for a non-abelian " + std::to_string(k_) + "-cochain");
  }

  /// Face indices of X(k) where the value is not the identity.
  FaceSet support() const {
    std::vector<FaceIndex> m;
    for (FaceIndex i = 0; i < values_.size(); ++i)
      if (values_[i] != FiniteGroup::identity()) m.push_back(i);
    return FaceSet(k_, std::move(m));
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](Elem e) { return e == FiniteGroup::identity(); });
  }

  /// ||f|| = P_k(supp f).
  Rational weight() const {
    std::int64_t s = 0;
    for (FaceIndex i = 0; i < values_.size(); ++i)
      if (values_[i] != FiniteGroup::identity()) s += X_->weight_numerator(k_, i);
    return Rational(Integer(s), Integer(X_->weight_denominator(k_)));
  }
  std::int64_t weight_numerator() const {
    std::int64_t s = 0;
    for (FaceIndex i = 0; i < values_.size(); ++i)
      if (values_[i] != FiniteGroup::identity()) s += X_->weight_numerator(k_, i);
    return s;
  }

  bool compatible(const Cochain& o) const {
    return k_ == o.k_ && (X_ == o.X_ || *X_ == *o.X_) && G_->same_as(*o.G_);
  }

  bool operator==(const Cochain& o) const { return compatible(o) && values_ == o.values_; }

 private:
  ComplexPtr X_;
  int k_;
  GroupPtr G_;
  std::vector<Elem> values_;
};

inline void require_compatible(const Cochain& a, const Cochain& b) {
  if (!a.compatible(b)) fail(ErrorCode::Mismatch, "cochains differ in complex, dimension or group");
}

/// Abelian coboundary: delta f(v_0..v_{k+1}) = sum_j (-1)^j f(.. v_j omitted ..).
/// For k = -1 this is the augmentation, delta c (v) = c.
inline Cochain coboundary_abelian(const Cochain& f) {
  const FiniteGroup& G = f.group();
  const SimplicialComplex& X = f.complex();
  if (!G.is_abelian()) fail(ErrorCode::NonAbelianGroup, G.name() + " is not abelian");
  const int k = f.dim();
  if (k >= X.dimension()) fail(ErrorCode::TopDimension, "no coboundary out of the top dimension");
  Cochain out(f.complex_ptr(), k + 1, f.group_ptr());
  auto& vals = out.mutable_values();
  for (FaceIndex i = 0; i < X.num_faces(k + 1); ++i) {
    auto fac = X.facets(k + 1, i);
    Elem acc = FiniteGroup::identity();
    for (std::size_t j = 0; j < fac.size(); ++j) {
#ifdef HDX_MUTATE_COBOUNDARY_SIGN
      const int s = 1;
#else
      const int s = (j % 2) ? -1 : 1;
#endif
      acc = G.op(acc, G.neg_pow(f.value(fac[j]), s));
    }
    vals[i] = acc;
  }
  return out;
}

/// delta f(u,v) = f(u) f(v)^{-1} on canonical u < v.
inline Cochain coboundary_nonabelian_0(const Cochain& f) {
  if (f.dim() != 0) fail(ErrorCode::DimensionMismatch, "expected a 0-cochain");
  const SimplicialComplex& X = f.complex();
  const FiniteGroup& G = f.group();
  if (X.dimension() < 1) fail(ErrorCode::TopDimension, "complex has no edges");
  Cochain out(f.complex_ptr(), 1, f.group_ptr());
  for (FaceIndex e = 0; e < X.num_faces(1); ++e) {
    auto fac = X.facets(1, e);  // fac[0] omits u, so it is v
    out.mutable_values()[e] = G.op(f.value(fac[1]), G.inv(f.value(fac[0])));
  }
  return out;
}

/// delta g(u,v,w) = g(u,v) g(v,w) g(w,u) on canonical u < v < w.
inline Cochain coboundary_nonabelian_1(const Cochain& g) {
  if (g.dim() != 1) fail(ErrorCode::DimensionMismatch, "expected a 1-cochain");
  const SimplicialComplex& X = g.complex();
  const FiniteGroup& G = g.group();
  if (X.dimension() < 2) fail(ErrorCode::TopDimension, "complex has no triangles");
  Cochain out(g.complex_ptr(), 2, g.group_ptr());
  for (FaceIndex t = 0; t < X.num_faces(2); ++t) {
    auto fac = X.facets(2, t);  // {v,w}, {u,w}, {u,v}
    const Elem uv = g.value(fac[2]);
    const Elem vw = g.value(fac[0]);
    const Elem wu = G.inv(g.value(fac[1]));
    out.mutable_values()[t] = G.op(G.op(uv, vw), wu);
  }
  return out;
}

/// Coboundary appropriate to the group: the abelian formula in every
/// dimension for abelian groups, the multiplicative one in dimensions -1, 0, 1
/// otherwise.
inline Cochain coboundary(const Cochain& f) {
  if (f.group().is_abelian()) return coboundary_abelian(f);
  if (f.dim() >= f.complex().dimension()) fail(ErrorCode::TopDimension, "no coboundary out of the top dimension");
  switch (f.dim()) {
    case -1: {
      Cochain out(f.complex_ptr(), 0, f.group_ptr());
      for (auto& v : out.mutable_values()) v = f.value(0);
      return out;
    }
    case 0: return coboundary_nonabelian_0(f);
    case 1: return coboundary_nonabelian_1(f);
    default: fail(ErrorCode::UndefinedCoboundary, "non-abelian coboundary only in dimensions 0 and 1");
  }
}

inline bool is_cocycle(const Cochain& f) {
  if (!f.group().is_abelian() && f.dim() >= 2)
    fail(ErrorCode::UndefinedCoboundary, "non-abelian coboundary only in dimensions 0 and 1");
  if (f.dim() == f.complex().dimension()) return true;
  return coboundary(f).is_zero();
}

/// Pointwise product a*b (sum for abelian groups).
inline Cochain pointwise_op(const Cochain& a, const Cochain& b) {
  require_compatible(a, b);
  Cochain out = a;
  auto& v = out.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.group().op(a.value(static_cast<FaceIndex>(i)), b.value(static_cast<FaceIndex>(i)));
  return out;
}

/// Pointwise inverse (negation for abelian groups).
inline Cochain pointwise_inv(const Cochain& a) {
  Cochain out = a;
  for (auto& x : out.mutable_values()) x = a.group().inv(x);
  return out;
}

/// a - b for abelian groups, a * b^{-1} otherwise.
inline Cochain difference(const Cochain& a, const Cochain& b) { return pointwise_op(a, pointwise_inv(b)); }

/// dist(f,g): weight of the faces where the values differ, which equals
/// ||f - g|| and ||g f^{-1}||.
inline Rational distance(const Cochain& f, const Cochain& g) {
  require_compatible(f, g);
  const SimplicialComplex& X = f.complex();
  std::int64_t s = 0;
  for (FaceIndex i = 0; i < f.size(); ++i)
    if (f.value(i) != g.value(i)) s += X.weight_numerator(f.dim(), i);
  return Rational(Integer(s), Integer(X.weight_denominator(f.dim())));
}

/// Action of C^0 on C^1: (f.g)(u,v) = f(u) g(u,v) f(v)^{-1}.
inline Cochain act(const Cochain& f, const Cochain& g) {
  if (f.dim() != 0 || g.dim() != 1) fail(ErrorCode::Mismatch, "action needs a 0-cochain and a 1-cochain");
  if (!(f.complex_ptr() == g.complex_ptr() || f.complex() == g.complex()) || !f.group().same_as(g.group()))
    fail(ErrorCode::Mismatch, "action operands live on different complexes or groups");
  const FiniteGroup& G = g.group();
  const SimplicialComplex& X = g.complex();
  Cochain out = g;
  for (FaceIndex e = 0; e < X.num_faces(1); ++e) {
    auto fac = X.facets(1, e);
    out.mutable_values()[e] = G.op(G.op(f.value(fac[1]), g.value(e)), G.inv(f.value(fac[0])));
  }
  return out;
}

/// Localization f_sigma on the link L = X_sigma: f_sigma(tau) = f(sigma tau),
/// both parts in ascending order.
inline Cochain localize(const Cochain& f, const Face& sigma, ComplexPtr L) {
  const SimplicialComplex& X = f.complex();
  X.index_of(sigma);
  const int l = static_cast<int>(sigma.size()) - 1;
  if (l >= f.dim()) fail(ErrorCode::DimensionMismatch, "localization needs dim sigma < dim f");
  const int m = f.dim() - l - 1;
  Cochain out(L, m, f.group_ptr());
  std::vector<Vertex> ordered(static_cast<std::size_t>(f.dim() + 1));
  for (FaceIndex t = 0; t < L->num_faces(m); ++t) {
    const Face& tau = L->face(m, t);
    std::copy(sigma.begin(), sigma.end(), ordered.begin());
    std::copy(tau.begin(), tau.end(), ordered.begin() + static_cast<std::ptrdiff_t>(sigma.size()));
    out.mutable_values()[t] = f.eval(ordered);
  }
  return out;
}

inline Cochain localize(const Cochain& f, const Face& sigma) {
  return localize(f, sigma, link(f.complex(), sigma));
}

/// Restriction f^v: the same-dimension cochain on the faces of the link of v.
inline Cochain restrict_to_link(const Cochain& f, Vertex v, ComplexPtr L) {
  const SimplicialComplex& X = f.complex();
  if (!X.find(Face{v})) fail(ErrorCode::UnknownFace, "vertex " + std::to_string(v) + " not in complex");
  if (f.dim() > L->dimension()) fail(ErrorCode::DimensionMismatch, "link has no faces of that dimension");
  Cochain out(L, f.dim(), f.group_ptr());
  for (FaceIndex t = 0; t < L->num_faces(f.dim()); ++t) out.mutable_values()[t] = f.value(L->face(f.dim(), t));
  return out;
}

inline Cochain restrict_to_link(const Cochain& f, Vertex v) {
  return restrict_to_link(f, v, link(f.complex(), Face{v}));
}

/// Cochain with the given values on the listed canonical faces.
inline Cochain cochain_from(ComplexPtr X, int k, GroupPtr G, const std::vector<std::pair<Face, Elem>>& entries) {
  Cochain f(std::move(X), k, std::move(G));
  for (const auto& [face, e] : entries) {
    Face s = face;
    std::sort(s.begin(), s.end());
    f.set(s, e);
  }
  return f;
}

/// Indicator-like cochain: value e on every face of A.
inline Cochain cochain_on(ComplexPtr X, GroupPtr G, const FaceSet& A, Elem e = 1) {
  Cochain f(std::move(X), A.dim, std::move(G));
  for (FaceIndex i : A.members) f.set(i, e);
  return f;
}

}  // namespace hdx
