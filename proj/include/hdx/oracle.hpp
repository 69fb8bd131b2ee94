#pragma once

// Brute-force ground truth on small instances: cochain spaces, exact
// distances to B^k and Z^k, and exact coboundary / cosystolic constants.
// Everything enumerates value vectors in lexicographic order (face 0 most
// significant) so witnesses are deterministic.

#include <array>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/group.hpp"
#include "hdx/rational.hpp"

namespace hdx {

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// State budget: HDX_BUDGET if set to a positive integer, else 2^24.
inline std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("HDX_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

/// order^n, refusing before any allocation when it exceeds the budget.
inline std::uint64_t space_count(std::size_t order, std::size_t n, std::uint64_t budget, const std::string& what) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (order != 0 && c > budget / order)
      fail(ErrorCode::TooLargeToEnumerate,
           what + ": " + std::to_string(order) + "^" + std::to_string(n) + " exceeds budget " + std::to_string(budget));
    c *= order;
  }
  if (c > budget) fail(ErrorCode::TooLargeToEnumerate, what + " exceeds budget " + std::to_string(budget));
  return c;
}

namespace detail {

/// Lexicographic successor of a value vector; false after the last one.
inline bool next_values(std::vector<Elem>& v, std::size_t order) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < order) return true;
    v[i] = 0;
  }
  return false;
}

inline std::uint64_t encode(const std::vector<Elem>& v, std::size_t order) {
  std::uint64_t x = 0;
  for (Elem e : v) x = x * order + e;
  return x;
}

inline void decode(std::uint64_t x, std::size_t order, std::vector<Elem>& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    v[i] = static_cast<Elem>(x % order);
    x /= order;
  }
}

/// Coboundary C^k -> C^{k+1} on raw value vectors, written out separately
/// from the Cochain path.
class DeltaKernel {
 public:
  DeltaKernel(const SimplicialComplex& X, const FiniteGroup& G, int k) : G_(&G), k_(k) {
    if (k >= X.dimension()) fail(ErrorCode::TopDimension, "no coboundary out of the top dimension");
    abelian_ = G.is_abelian() || k == -1;
    if (!abelian_ && k > 1) fail(ErrorCode::UndefinedCoboundary, "non-abelian coboundary only in dimensions 0 and 1");
    const std::size_t m = X.num_faces(k + 1);
    rows_.resize(m);
    for (FaceIndex t = 0; t < m; ++t) {
      const Face& face = X.face(k + 1, t);
      // Facet omitting position j, looked up by vertex list.
      for (std::size_t j = 0; j < face.size(); ++j) {
        Face sub;
        for (std::size_t a = 0; a < face.size(); ++a)
          if (a != j) sub.push_back(face[a]);
        rows_[t].push_back(X.index_of(sub));
      }
    }
  }

  std::size_t out_size() const { return rows_.size(); }

  void apply(const std::vector<Elem>& in, std::vector<Elem>& out) const {
    out.resize(rows_.size());
    const FiniteGroup& G = *G_;
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const auto& r = rows_[t];
      if (abelian_) {
        Elem acc = 0;
        for (std::size_t j = 0; j < r.size(); ++j) acc = G.op(acc, j % 2 ? G.inv(in[r[j]]) : in[r[j]]);
        out[t] = acc;
      } else if (k_ == 0) {
        // edge (u,v): r[0] omits u so it is v.
        out[t] = G.op(in[r[1]], G.inv(in[r[0]]));
      } else {
        // triangle (u,v,w): r = {vw, uw, uv}
        out[t] = G.op(G.op(in[r[2]], in[r[0]]), G.inv(in[r[1]]));
      }
    }
  }

  bool is_identity(const std::vector<Elem>& in, std::vector<Elem>& scratch) const {
    apply(in, scratch);
    for (Elem e : scratch)
      if (e != 0) return false;
    return true;
  }

 private:
  const FiniteGroup* G_;
  int k_;
  bool abelian_ = true;
  std::vector<std::vector<FaceIndex>> rows_;
};

/// Integer weight numerator of a raw value vector in dimension k.
inline std::int64_t weight_num(const SimplicialComplex& X, int k, const std::vector<Elem>& v) {
  std::int64_t s = 0;
  for (FaceIndex i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += X.weight_numerator(k, i);
  return s;
}

inline Rational as_weight(const SimplicialComplex& X, int k, std::int64_t num) {
  return Rational(Integer(num), Integer(X.weight_denominator(k)));
}

inline Cochain from_values(ComplexPtr X, int k, GroupPtr G, const std::vector<Elem>& v) {
  Cochain c(std::move(X), k, std::move(G));
  c.mutable_values() = v;
  return c;
}

/// Moves f around its B^k-orbit: f - delta(h) for abelian groups, f c^{-1}
/// for non-abelian k = 0, and h.f for non-abelian k = 1.
class OrbitMover {
 public:
  OrbitMover(const SimplicialComplex& X, const FiniteGroup& G, int k) : X_(&X), G_(&G), k_(k), delta_(X, G, k - 1) {
    if (!G.is_abelian() && k == 1)
      for (FaceIndex e = 0; e < X.num_faces(1); ++e) {
        auto fac = X.facets(1, e);
        ends_.push_back({fac[1], fac[0]});
      }
  }

  void apply(const std::vector<Elem>& f, const std::vector<Elem>& h, std::vector<Elem>& out) const {
    const FiniteGroup& G = *G_;
    out.resize(f.size());
    if (!G.is_abelian() && k_ == 1) {
      for (std::size_t e = 0; e < f.size(); ++e)
        out[e] = G.op(G.op(h[ends_[e][0]], f[e]), G.inv(h[ends_[e][1]]));
      return;
    }
    delta_.apply(h, scratch_);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = G.op(f[i], G.inv(scratch_[i]));
  }

  std::size_t source_size() const { return X_->num_faces(k_ - 1); }

 private:
  const SimplicialComplex* X_;
  const FiniteGroup* G_;
  int k_;
  DeltaKernel delta_;
  std::vector<std::array<FaceIndex, 2>> ends_;
  mutable std::vector<Elem> scratch_;
};

}  // namespace detail

/// Nearest element of a space, with the (k-1)-cochain producing it when the
/// space is B^k.
struct Nearest {
  Rational distance;
  Cochain witness;
  std::optional<Cochain> source;
};

/// dist(f, B^k) = min over h in C^{k-1} of dist(f, delta h).  Ties go to the
/// lexicographically first h.
inline Nearest distance_to_coboundaries(const Cochain& f, std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = f.complex();
  const FiniteGroup& G = f.group();
  const int k = f.dim();
  if (k < 0) fail(ErrorCode::BadDimension, "B^k needs k >= 0");
  detail::DeltaKernel delta(X, G, k - 1);
  const std::size_t n = X.num_faces(k - 1);
  space_count(G.order(), n, budget, "C^" + std::to_string(k - 1));
  std::vector<Elem> h(n, 0), b, best_h = h;
  std::int64_t best = -1;
  do {
    delta.apply(h, b);
    std::int64_t s = 0;
    for (FaceIndex i = 0; i < b.size(); ++i)
      if (b[i] != f.value(i)) s += X.weight_numerator(k, i);
    if (best < 0 || s < best) {
      best = s;
      best_h = h;
      if (s == 0) break;
    }
  } while (detail::next_values(h, G.order()));
  delta.apply(best_h, b);
  Nearest r{detail::as_weight(X, k, best), detail::from_values(f.complex_ptr(), k, f.group_ptr(), b),
            detail::from_values(f.complex_ptr(), k - 1, f.group_ptr(), best_h)};
  return r;
}

/// f is minimal when ||f|| = dist(f, B^k).
inline bool is_minimal(const Cochain& f, std::uint64_t budget = enumeration_budget()) {
  if (f.is_zero()) return true;
  return distance_to_coboundaries(f, budget).distance == f.weight();
}

/// The three spaces for one dimension, each as value vectors.
struct CochainSpaces {
  int k = 0;
  std::uint64_t cochains = 0;                // |C^k|
  std::vector<std::vector<Elem>> cocycles;    // Z^k, lexicographic
  std::vector<std::vector<Elem>> coboundaries;  // B^k, lexicographic, distinct
};

inline CochainSpaces enumerate_spaces(const SimplicialComplex& X, const FiniteGroup& G, int k,
                                      std::uint64_t budget = enumeration_budget()) {
  if (k < 0 || k > X.dimension()) fail(ErrorCode::BadDimension, "dimension outside complex");
  CochainSpaces s;
  s.k = k;
  const std::size_t n = X.num_faces(k);
  s.cochains = space_count(G.order(), n, budget, "C^" + std::to_string(k));
  std::vector<Elem> f(n, 0), scratch;
  const bool top = k == X.dimension();
  std::optional<detail::DeltaKernel> up;
  if (!top) up.emplace(X, G, k);
  do {
    if (top || up->is_identity(f, scratch)) s.cocycles.push_back(f);
  } while (detail::next_values(f, G.order()));

  detail::DeltaKernel down(X, G, k - 1);
  const std::size_t m = X.num_faces(k - 1);
  space_count(G.order(), m, budget, "C^" + std::to_string(k - 1));
  std::vector<Elem> h(m, 0), b;
  std::vector<std::vector<Elem>> all;
  do {
    down.apply(h, b);
    all.push_back(b);
  } while (detail::next_values(h, G.order()));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  s.coboundaries = std::move(all);
  return s;
}

/// dist(f, Z^k) by scanning every cocycle.
inline Nearest distance_to_cocycles(const Cochain& f, std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = f.complex();
  auto spaces = enumerate_spaces(X, f.group(), f.dim(), budget);
  std::int64_t best = -1;
  const std::vector<Elem>* arg = nullptr;
  for (const auto& z : spaces.cocycles) {
    std::int64_t s = 0;
    for (FaceIndex i = 0; i < z.size(); ++i)
      if (z[i] != f.value(i)) s += X.weight_numerator(f.dim(), i);
    if (best < 0 || s < best) {
      best = s;
      arg = &z;
    }
  }
  return Nearest{detail::as_weight(X, f.dim(), best), detail::from_values(f.complex_ptr(), f.dim(), f.group_ptr(), *arg),
                 std::nullopt};
}

/// Constants for one dimension; nullopt stands for +infinity (nothing to
/// minimise over).
struct LevelConstants {
  int k = 0;
  std::optional<Rational> coboundary;  // min ||delta f|| / dist(f, B^k), f not in B^k
  std::optional<Cochain> coboundary_witness;
  std::optional<Rational> cosystolic;  // min ||delta f|| / dist(f, Z^k), f not in Z^k
  std::optional<Cochain> cosystolic_witness;
  std::optional<Rational> mu;          // min ||f||, f in Z^k \ B^k
  std::optional<Cochain> mu_witness;
};

struct ExpansionConstants {
  std::vector<LevelConstants> levels;

  std::optional<Rational> coboundary() const { return min_of(&LevelConstants::coboundary); }
  std::optional<Rational> cosystolic() const { return min_of(&LevelConstants::cosystolic); }
  std::optional<Rational> mu() const { return min_of(&LevelConstants::mu); }

 private:
  std::optional<Rational> min_of(std::optional<Rational> LevelConstants::*field) const {
    std::optional<Rational> r;
    for (const auto& l : levels)
      if (l.*field && (!r || *(l.*field) < *r)) r = l.*field;
    return r;
  }
};

namespace detail {

inline void take_min(std::optional<Rational>& slot, std::optional<Cochain>& wit, const Rational& v,
                     const std::function<Cochain()>& make) {
  if (!slot || v < *slot) {
    slot = v;
    wit = make();
  }
}

}  // namespace detail

/// Exact constants in dimension k (0 <= k < d).  B^k-orbits are labelled
/// once each, so the work is |C^k| times the orbit generator count.
inline LevelConstants level_constants(ComplexPtr Xp, GroupPtr Gp, int k, std::uint64_t budget = enumeration_budget()) {
  const SimplicialComplex& X = *Xp;
  const FiniteGroup& G = *Gp;
  if (k < 0 || k >= X.dimension()) fail(ErrorCode::BadDimension, "constants need 0 <= k < d");
  if (!G.is_abelian() && k > 1) fail(ErrorCode::UndefinedCoboundary, "non-abelian coboundary only in dimensions 0 and 1");
  const std::size_t order = G.order();
  const std::size_t n = X.num_faces(k);
  const std::uint64_t total = space_count(order, n, budget, "C^" + std::to_string(k));
  const std::size_t m = X.num_faces(k - 1);
  space_count(order, m, budget, "C^" + std::to_string(k - 1));

  LevelConstants out;
  out.k = k;
  detail::DeltaKernel up(X, G, k);
  detail::OrbitMover mover(X, G, k);
  auto make = [&](const std::vector<Elem>& v) { return detail::from_values(Xp, k, Gp, v); };

  // Orbit labelling under B^k.
  std::vector<std::uint32_t> orbit(total, UINT32_MAX);
  std::vector<std::int64_t> orbit_min;
  std::vector<std::uint64_t> orbit_arg;
  std::vector<Elem> f(n), g, h, dv;
  for (std::uint64_t x = 0; x < total; ++x) {
    if (orbit[x] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(orbit_min.size());
    detail::decode(x, order, f);
    std::int64_t best = detail::weight_num(X, k, f);
    std::uint64_t arg = x;
    orbit[x] = id;
    h.assign(m, 0);
    do {
      mover.apply(f, h, g);
      const std::uint64_t y = detail::encode(g, order);
      if (orbit[y] == id) continue;
      orbit[y] = id;
      const std::int64_t w = detail::weight_num(X, k, g);
      if (w < best || (w == best && y < arg)) {
        best = w;
        arg = y;
      }
    } while (detail::next_values(h, order));
    orbit_min.push_back(best);
    orbit_arg.push_back(arg);
  }

  // Per orbit: ||delta f|| (orbit invariant), coboundary ratio and mu.
  for (std::uint32_t id = 0; id < orbit_min.size(); ++id) {
    if (orbit_min[id] == 0) continue;  // the orbit of 0 is B^k
    detail::decode(orbit_arg[id], order, f);
    up.apply(f, dv);
    const std::int64_t dw = detail::weight_num(X, k + 1, dv);
    const Rational ratio_v = detail::as_weight(X, k + 1, dw) / detail::as_weight(X, k, orbit_min[id]);
    detail::take_min(out.coboundary, out.coboundary_witness, ratio_v, [&] { return make(f); });
    if (dw == 0) detail::take_min(out.mu, out.mu_witness, detail::as_weight(X, k, orbit_min[id]), [&] { return make(f); });
  }

  // Cosystolic ratio: for abelian groups the Z^k-coset of f is fixed by delta f.
  if (G.is_abelian()) {
    std::map<std::vector<Elem>, std::pair<std::int64_t, std::uint64_t>> coset;  // delta f -> (min ||f||, arg)
    for (std::uint64_t x = 0; x < total; ++x) {
      detail::decode(x, order, f);
      up.apply(f, dv);
      const std::int64_t w = detail::weight_num(X, k, f);
      auto [it, fresh] = coset.emplace(dv, std::make_pair(w, x));
      if (!fresh && w < it->second.first) it->second = {w, x};
    }
    for (const auto& [key, best] : coset) {
      const std::int64_t dw = detail::weight_num(X, k + 1, key);
      if (dw == 0) continue;
      detail::decode(best.second, order, f);
      detail::take_min(out.cosystolic, out.cosystolic_witness,
                       detail::as_weight(X, k + 1, dw) / detail::as_weight(X, k, best.first), [&] { return make(f); });
    }
  } else {
    std::vector<std::vector<Elem>> cocycles;
    for (std::uint64_t x = 0; x < total; ++x) {
      detail::decode(x, order, f);
      if (up.is_identity(f, dv)) cocycles.push_back(f);
    }
    if (cocycles.size() > 0 && total > (std::uint64_t{1} << 40) / cocycles.size())
      fail(ErrorCode::TooLargeToEnumerate, "non-abelian cocycle distance scan too large");
    for (std::uint64_t x = 0; x < total; ++x) {
      detail::decode(x, order, f);
      up.apply(f, dv);
      const std::int64_t dw = detail::weight_num(X, k + 1, dv);
      if (dw == 0) continue;
      std::int64_t best = -1;
      for (const auto& z : cocycles) {
        std::int64_t s = 0;
        for (FaceIndex i = 0; i < n; ++i)
          if (z[i] != f[i]) s += X.weight_numerator(k, i);
        if (best < 0 || s < best) best = s;
      }
      detail::take_min(out.cosystolic, out.cosystolic_witness,
                       detail::as_weight(X, k + 1, dw) / detail::as_weight(X, k, best), [&] { return make(f); });
    }
  }
  return out;
}

/// Coboundary expansion constant in dimension k; nullopt when B^k = C^k.
inline LevelConstants coboundary_expansion_constant(ComplexPtr X, GroupPtr G, int k,
                                                    std::uint64_t budget = enumeration_budget()) {
  return level_constants(std::move(X), std::move(G), k, budget);
}

/// Constants for every 0 <= k < d (k <= 1 for non-abelian groups).
inline ExpansionConstants cosystolic_expansion_constants(ComplexPtr X, GroupPtr G,
                                                         std::uint64_t budget = enumeration_budget()) {
  ExpansionConstants c;
  int top = X->dimension() - 1;
  if (!G->is_abelian()) top = std::min(top, 1);
  for (int k = 0; k <= top; ++k) c.levels.push_back(level_constants(X, G, k, budget));
  return c;
}

/// Minimum coboundary constant over the links of faces of dimension
/// 0..d-2, each link taken in dimensions 0..dim(link)-1.  nullopt = +infinity.
struct LinkExpansion {
  std::optional<Rational> beta;
  Face worst;
  int worst_k = 0;
};

inline LinkExpansion measured_link_beta(const SimplicialComplex& X, GroupPtr G,
                                        std::uint64_t budget = enumeration_budget()) {
  LinkExpansion r;
  for (int i = 0; i <= X.dimension() - 2; ++i)
    for (FaceIndex s = 0; s < X.num_faces(i); ++s) {
      const Face& sigma = X.face(i, s);
      auto L = link(X, sigma);
      int top = L->dimension() - 1;
      if (!G->is_abelian()) top = std::min(top, 1);
      for (int k = 0; k <= top; ++k) {
        auto c = level_constants(L, G, k, budget);
        if (c.coboundary && (!r.beta || *c.coboundary < *r.beta)) {
          r.beta = c.coboundary;
          r.worst = sigma;
          r.worst_k = k;
        }
      }
    }
  return r;
}

}  // namespace hdx
