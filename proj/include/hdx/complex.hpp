#pragma once

// Pure simplicial complexes with the induced face distributions P_k,
// links, skeletons and mutual weights of face sets.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdx/error.hpp"
#include "hdx/rational.hpp"

namespace hdx {

using Vertex = std::uint32_t;
using Face = std::vector<Vertex>;  // ascending vertex ids; {} is the empty face
using FaceIndex = std::uint32_t;

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL ^ f.size();
    for (Vertex v : f) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline std::string face_to_string(const Face& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f[i]);
  }
  return s + "}";
}

/// A set of k-faces, stored as sorted unique face indices into X(k).
struct FaceSet {
  int dim = 0;
  std::vector<FaceIndex> members;

  FaceSet() = default;
  FaceSet(int k, std::vector<FaceIndex> m) : dim(k), members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  bool contains(FaceIndex i) const { return std::binary_search(members.begin(), members.end(), i); }
  bool operator==(const FaceSet&) const = default;
};

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

class SimplicialComplex {
 public:
  /// Downward closure of the listed top faces.  `top_weights`, when given,
  /// is the distribution P_d over the listed faces (positive, summing to 1);
  /// otherwise P_d is uniform.
  static SimplicialComplex build(std::vector<Face> top_faces, int d,
                                 std::optional<std::vector<Rational>> top_weights = std::nullopt) {
    if (top_faces.empty()) fail(ErrorCode::EmptyInput, "no top faces");
    if (d < -1) fail(ErrorCode::BadDimension, "dimension below -1");
    if (top_weights && top_weights->size() != top_faces.size())
      fail(ErrorCode::InvalidWeights, "one weight per top face required");

    std::vector<std::pair<Face, Rational>> tops;
    tops.reserve(top_faces.size());
    for (std::size_t i = 0; i < top_faces.size(); ++i) {
      Face f = std::move(top_faces[i]);
      std::sort(f.begin(), f.end());
      bool distinct = std::adjacent_find(f.begin(), f.end()) == f.end();
      if (!distinct || static_cast<int>(f.size()) != d + 1)
        fail(ErrorCode::NonUniformCardinality,
             "top face " + face_to_string(f) + " does not have " + std::to_string(d + 1) + " distinct vertices");
      Rational w = top_weights ? (*top_weights)[i] : Rational(0);
      if (top_weights && w <= 0) fail(ErrorCode::InvalidWeights, "non-positive top weight");
      tops.emplace_back(std::move(f), w);
    }
    std::sort(tops.begin(), tops.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < tops.size(); ++i)
      if (tops[i].first == tops[i - 1].first)
        fail(ErrorCode::DuplicateTopFace, "duplicate top face " + face_to_string(tops[i].first));

    SimplicialComplex X;
    X.d_ = d;
    X.uniform_ = !top_weights.has_value();
    std::vector<std::set<Face>> layers(static_cast<std::size_t>(d + 2));
    for (const auto& [f, w] : tops) {
      const std::size_t n = f.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Face sub;
        for (std::size_t j = 0; j < n; ++j)
          if (mask & (std::uint64_t{1} << j)) sub.push_back(f[j]);
        layers[sub.size()].insert(std::move(sub));
      }
    }
    X.faces_.resize(layers.size());
    X.index_.resize(layers.size());
    for (std::size_t L = 0; L < layers.size(); ++L) {
      X.faces_[L].assign(layers[L].begin(), layers[L].end());
      X.index_[L].reserve(X.faces_[L].size() * 2);
      for (FaceIndex i = 0; i < X.faces_[L].size(); ++i) X.index_[L].emplace(X.faces_[L][i], i);
    }

    // Top distribution as integers over a common denominator.
    const std::size_t ntop = X.faces_.back().size();
    X.top_numerators_.assign(ntop, 1);
    X.top_denominator_ = static_cast<std::int64_t>(ntop);
    if (top_weights) {
      Integer lcm = 1;
      Rational total = 0;
      for (const auto& [f, w] : tops) {
        lcm = boost::multiprecision::lcm(lcm, denominator(w));
        total += w;
      }
      if (total != 1) fail(ErrorCode::InvalidWeights, "top weights sum to " + total.str() + ", not 1");
      if (lcm > Integer(std::int64_t{1} << 40))
        fail(ErrorCode::InvalidWeights, "common denominator of top weights too large");
      X.top_denominator_ = lcm.convert_to<std::int64_t>();
      for (std::size_t i = 0; i < tops.size(); ++i) {
        Integer num = numerator(tops[i].second) * (lcm / denominator(tops[i].second));
        X.top_numerators_[i] = num.convert_to<std::int64_t>();
      }
    }
    X.finish();
    return X;
  }

  int dimension() const { return d_; }
  bool uniform() const { return uniform_; }

  std::size_t num_faces(int k) const {
    if (k < -1 || k > d_) return 0;
    return faces_[static_cast<std::size_t>(k + 1)].size();
  }
  std::span<const Face> faces(int k) const {
    if (k < -1 || k > d_) return {};
    return faces_[static_cast<std::size_t>(k + 1)];
  }
  const Face& face(int k, FaceIndex i) const { return faces_.at(static_cast<std::size_t>(k + 1)).at(i); }

  std::optional<FaceIndex> find(const Face& f) const {
    int k = static_cast<int>(f.size()) - 1;
    if (k > d_) return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(k + 1)];
    auto it = idx.find(f);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }
  FaceIndex index_of(const Face& f) const {
    auto i = find(f);
    if (!i) fail(ErrorCode::UnknownFace, face_to_string(f) + " is not a face");
    return *i;
  }
  bool contains(const Face& f) const { return find(f).has_value(); }

  /// (k-1)-faces of a k-face; entry j omits the vertex at position j.
  std::span<const FaceIndex> facets(int k, FaceIndex i) const {
    const auto& v = facets_[static_cast<std::size_t>(k + 1)];
    const std::size_t w = static_cast<std::size_t>(k + 1);
    return std::span<const FaceIndex>(v.data() + i * w, w);
  }
  /// (k+1)-faces containing a k-face.
  std::span<const FaceIndex> cofaces(int k, FaceIndex i) const {
    const auto& off = coface_offsets_[static_cast<std::size_t>(k + 1)];
    const auto& v = cofaces_[static_cast<std::size_t>(k + 1)];
    return std::span<const FaceIndex>(v.data() + off[i], off[i + 1] - off[i]);
  }

  /// P_k(sigma) = numerator / denominator(k), exact.
  std::int64_t weight_numerator(int k, FaceIndex i) const {
    return numerators_[static_cast<std::size_t>(k + 1)][i];
  }
  std::int64_t weight_denominator(int k) const { return denominators_[static_cast<std::size_t>(k + 1)]; }
  Rational face_weight(int k, FaceIndex i) const {
    return Rational(Integer(weight_numerator(k, i)), Integer(weight_denominator(k)));
  }
  Rational face_weight(const Face& f) const {
    return face_weight(static_cast<int>(f.size()) - 1, index_of(f));
  }
  Rational top_weight(FaceIndex i) const {
    return Rational(Integer(top_numerators_[i]), Integer(top_denominator_));
  }

  /// Weight ||A|| of a set of faces.
  Rational weight(const FaceSet& A) const {
    std::int64_t s = 0;
    for (FaceIndex i : A.members) s += weight_numerator(A.dim, i);
    return Rational(Integer(s), Integer(weight_denominator(A.dim)));
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (const auto& f : faces(0)) out.push_back(f[0]);
    return out;
  }

  /// Number of top faces containing each vertex, maximised: q.
  std::size_t degree_bound() const {
    std::size_t q = 0;
    for (FaceIndex v = 0; v < num_faces(0); ++v) q = std::max(q, top_count(0, v));
    return q;
  }
  /// Number of top faces containing the k-face i.
  std::size_t top_count(int k, FaceIndex i) const { return top_counts_[static_cast<std::size_t>(k + 1)][i]; }

  /// Link X_sigma with the conditioned top distribution.
  SimplicialComplex link(const Face& sigma) const {
    index_of(sigma);
    std::vector<Face> tops;
    std::vector<Rational> weights;
    Rational total = 0;
    for (FaceIndex t = 0; t < num_faces(d_); ++t) {
      const Face& tau = faces_.back()[t];
      if (!std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end())) continue;
      Face rest;
      std::set_difference(tau.begin(), tau.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
      tops.push_back(std::move(rest));
      weights.push_back(top_weight(t));
      total += weights.back();
    }
    const int ld = d_ - static_cast<int>(sigma.size());
    if (uniform_) return build(std::move(tops), ld);
    for (auto& w : weights) w /= total;
    return build(std::move(tops), ld, std::move(weights));
  }

  /// Faces up to dimension j with a uniform distribution on X(j).
  SimplicialComplex skeleton(int j) const {
    if (j < 0 || j > d_) fail(ErrorCode::BadDimension, "skeleton dimension " + std::to_string(j));
    if (j == d_) return *this;
    std::vector<Face> tops(faces(j).begin(), faces(j).end());
    return build(std::move(tops), j);
  }

  /// Listed top faces in canonical order together with their weights.
  std::vector<std::pair<Face, Rational>> top_faces() const {
    std::vector<std::pair<Face, Rational>> out;
    for (FaceIndex t = 0; t < num_faces(d_); ++t) out.emplace_back(faces_.back()[t], top_weight(t));
    return out;
  }

  bool operator==(const SimplicialComplex& o) const {
    return d_ == o.d_ && faces_ == o.faces_ && top_numerators_ == o.top_numerators_ &&
           top_denominator_ == o.top_denominator_;
  }

 private:
  SimplicialComplex() = default;

  void finish() {
    const std::size_t L = faces_.size();
    facets_.assign(L, {});
    cofaces_.assign(L, {});
    coface_offsets_.assign(L, {});
    for (std::size_t lay = 1; lay < L; ++lay) {
      auto& fv = facets_[lay];
      fv.reserve(faces_[lay].size() * lay);
      for (const Face& f : faces_[lay]) {
        for (std::size_t j = 0; j < f.size(); ++j) {
          Face g;
          g.reserve(f.size() - 1);
          for (std::size_t t = 0; t < f.size(); ++t)
            if (t != j) g.push_back(f[t]);
          fv.push_back(index_[lay - 1].at(g));
        }
      }
    }
    for (std::size_t lay = 0; lay + 1 < L; ++lay) {
      std::vector<std::vector<FaceIndex>> up(faces_[lay].size());
      const std::size_t w = lay + 1;
      for (FaceIndex c = 0; c < faces_[lay + 1].size(); ++c)
        for (std::size_t j = 0; j < w; ++j) up[facets_[lay + 1][c * w + j]].push_back(c);
      auto& off = coface_offsets_[lay];
      off.assign(faces_[lay].size() + 1, 0);
      for (std::size_t i = 0; i < up.size(); ++i) off[i + 1] = off[i] + static_cast<FaceIndex>(up[i].size());
      auto& cv = cofaces_[lay];
      for (auto& u : up) cv.insert(cv.end(), u.begin(), u.end());
    }
    if (L > 0) coface_offsets_[L - 1].assign(faces_[L - 1].size() + 1, 0);

    // P_k(sigma) = sum over top tau >= sigma of P_d(tau) / C(d+1, k+1).
    numerators_.assign(L, {});
    denominators_.assign(L, 1);
    top_counts_.assign(L, {});
    for (std::size_t lay = 0; lay < L; ++lay) {
      numerators_[lay].assign(faces_[lay].size(), 0);
      top_counts_[lay].assign(faces_[lay].size(), 0);
      denominators_[lay] = top_denominator_ * binomial(d_ + 1, static_cast<long long>(lay));
    }
    for (FaceIndex t = 0; t < faces_.back().size(); ++t) {
      const Face& tau = faces_.back()[t];
      const std::size_t n = tau.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Face sub;
        for (std::size_t j = 0; j < n; ++j)
          if (mask & (std::uint64_t{1} << j)) sub.push_back(tau[j]);
        FaceIndex si = index_[sub.size()].at(sub);
        numerators_[sub.size()][si] += top_numerators_[t];
        top_counts_[sub.size()][si] += 1;
      }
    }
  }

  int d_ = 0;
  bool uniform_ = true;
  std::vector<std::vector<Face>> faces_;  // layer k+1 holds X(k)
  std::vector<std::unordered_map<Face, FaceIndex, FaceHash>> index_;
  std::vector<std::vector<FaceIndex>> facets_;
  std::vector<std::vector<FaceIndex>> cofaces_;
  std::vector<std::vector<FaceIndex>> coface_offsets_;
  std::vector<std::int64_t> top_numerators_;
  std::int64_t top_denominator_ = 1;
  std::vector<std::vector<std::int64_t>> numerators_;
  std::vector<std::int64_t> denominators_;
  std::vector<std::vector<std::size_t>> top_counts_;
};

inline ComplexPtr build_complex(std::vector<Face> top_faces, int d,
                                std::optional<std::vector<Rational>> top_weights = std::nullopt) {
  return std::make_shared<const SimplicialComplex>(
      SimplicialComplex::build(std::move(top_faces), d, std::move(top_weights)));
}

inline ComplexPtr link(const SimplicialComplex& X, const Face& sigma) {
  return std::make_shared<const SimplicialComplex>(X.link(sigma));
}

inline ComplexPtr skeleton(const SimplicialComplex& X, int j) {
  return std::make_shared<const SimplicialComplex>(X.skeleton(j));
}

inline Rational face_weight(const SimplicialComplex& X, const Face& sigma) { return X.face_weight(sigma); }

inline std::size_t degree_bound(const SimplicialComplex& X) { return X.degree_bound(); }

/// Calls fn(index) for every l-face contained in the k-face i of X.
template <class Fn>
void for_each_subface(const SimplicialComplex& X, int k, FaceIndex i, int l, Fn&& fn) {
  const Face& f = X.face(k, i);
  const int n = k + 1;
  const int m = l + 1;
  if (m < 0 || m > n) return;
  std::vector<int> pos(static_cast<std::size_t>(m));
  std::iota(pos.begin(), pos.end(), 0);
  Face sub(static_cast<std::size_t>(m));
  while (true) {
    for (int j = 0; j < m; ++j) sub[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])];
    fn(X.index_of(sub));
    int j = m - 1;
    while (j >= 0 && pos[static_cast<std::size_t>(j)] == n - m + j) --j;
    if (j < 0) break;
    ++pos[static_cast<std::size_t>(j)];
    for (int t = j + 1; t < m; ++t) pos[static_cast<std::size_t>(t)] = pos[static_cast<std::size_t>(t - 1)] + 1;
  }
}

/// ||(A,B)|| = Pr[sigma_k in A and sigma_l in B], sigma_l a uniform l-subface.
inline Rational mutual_weight(const SimplicialComplex& X, const FaceSet& A, const FaceSet& B) {
  if (B.dim >= A.dim) fail(ErrorCode::DimensionMismatch, "mutual weight needs dim B < dim A");
  std::vector<char> inB(X.num_faces(B.dim), 0);
  for (FaceIndex b : B.members) inB[b] = 1;
  Integer acc = 0;
  for (FaceIndex a : A.members) {
    std::int64_t hits = 0;
    for_each_subface(X, A.dim, a, B.dim, [&](FaceIndex s) { hits += inB[s]; });
    acc += Integer(X.weight_numerator(A.dim, a)) * hits;
  }
  Integer den = Integer(X.weight_denominator(A.dim)) * binomial(A.dim + 1, B.dim + 1);
  return Rational(acc, den);
}

/// Weights ||A_sigma|| in the links of the l-faces sigma touched by A; faces
/// not listed have localized weight 0.  Uses ||A_sigma|| = ||(A,{sigma})|| / P_l(sigma).
inline std::map<FaceIndex, Rational> localized_weights(const SimplicialComplex& X, const FaceSet& A, int l) {
  if (l >= A.dim) fail(ErrorCode::DimensionMismatch, "localization needs l < dim A");
  std::map<FaceIndex, std::int64_t> acc;
  for (FaceIndex a : A.members)
    for_each_subface(X, A.dim, a, l, [&](FaceIndex s) { acc[s] += X.weight_numerator(A.dim, a); });
  std::map<FaceIndex, Rational> out;
  const Integer scale = Integer(X.weight_denominator(A.dim)) * binomial(A.dim + 1, l + 1);
  for (const auto& [s, num] : acc) {
    Rational mutual(Integer(num), scale);
    out.emplace(s, mutual / X.face_weight(l, s));
  }
  return out;
}

/// ||A_sigma|| for one face sigma of dimension l.
inline Rational localized_weight(const SimplicialComplex& X, const FaceSet& A, int l, FaceIndex sigma) {
  if (l >= A.dim) fail(ErrorCode::DimensionMismatch, "localization needs l < dim A");
  const Face& s = X.face(l, sigma);
  std::int64_t num = 0;
  for (FaceIndex a : A.members) {
    const Face& f = X.face(A.dim, a);
    if (std::includes(f.begin(), f.end(), s.begin(), s.end())) num += X.weight_numerator(A.dim, a);
  }
  Rational mutual(Integer(num), Integer(X.weight_denominator(A.dim)) * binomial(A.dim + 1, l + 1));
  return mutual / X.face_weight(l, sigma);
}

/// A_sigma as a face set of the link complex L = X_sigma.
inline FaceSet localize_set(const SimplicialComplex& X, const FaceSet& A, const Face& sigma,
                            const SimplicialComplex& L) {
  const int l = static_cast<int>(sigma.size()) - 1;
  std::vector<FaceIndex> out;
  for (FaceIndex a : A.members) {
    const Face& f = X.face(A.dim, a);
    if (!std::includes(f.begin(), f.end(), sigma.begin(), sigma.end())) continue;
    Face rest;
    std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
    out.push_back(L.index_of(rest));
  }
  return FaceSet(A.dim - l - 1, std::move(out));
}

/// All faces of dimension k as a set.
inline FaceSet all_faces(const SimplicialComplex& X, int k) {
  std::vector<FaceIndex> m(X.num_faces(k));
  std::iota(m.begin(), m.end(), 0);
  return FaceSet(k, std::move(m));
}

inline FaceSet complement(const SimplicialComplex& X, const FaceSet& A) {
  std::vector<FaceIndex> out;
  for (FaceIndex i = 0; i < X.num_faces(A.dim); ++i)
    if (!A.contains(i)) out.push_back(i);
  return FaceSet(A.dim, std::move(out));
}

inline FaceSet face_set(const SimplicialComplex& X, int k, const std::vector<Face>& faces) {
  std::vector<FaceIndex> m;
  for (const auto& f : faces) {
    if (static_cast<int>(f.size()) != k + 1) fail(ErrorCode::DimensionMismatch, "face of wrong dimension");
    Face g = f;
    std::sort(g.begin(), g.end());
    m.push_back(X.index_of(g));
  }
  return FaceSet(k, std::move(m));
}

}  // namespace hdx
