#pragma once

// Finite groups with elements canonicalised to indices 0..n-1, index 0 being
// the identity.  Small groups are table-backed; large cyclic groups use
// arithmetic.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "hdx/error.hpp"

namespace hdx {

using Elem = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  static constexpr std::size_t kMaxTable = 512;

  /// Builds a group from its Cayley table (row-major, n*n), checking the axioms.
  static GroupPtr from_table(std::string name, std::size_t n, std::vector<Elem> table,
                             std::vector<std::string> labels = {}) {
    if (n == 0) fail(ErrorCode::BadParams, "empty group");
    if (n > kMaxTable) fail(ErrorCode::BadParams, "table groups are limited to 512 elements");
    if (table.size() != n * n) fail(ErrorCode::BadParams, "Cayley table must have n*n entries");
    auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    G->name_ = std::move(name);
    G->n_ = n;
    G->table_ = std::move(table);
    G->labels_ = std::move(labels);
    G->validate();
    return G;
  }

  static GroupPtr cyclic(std::size_t m) {
    if (m == 0) fail(ErrorCode::BadParams, "Z0 is not a finite group");
    if (m > kMaxTable) {
      auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
      G->name_ = "Z" + std::to_string(m);
      G->n_ = m;
      G->cyclic_ = true;
      G->abelian_ = true;
      return G;
    }
    std::vector<Elem> t(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) t[a * m + b] = static_cast<Elem>((a + b) % m);
    auto G = from_table("Z" + std::to_string(m), m, std::move(t));
    std::const_pointer_cast<FiniteGroup>(G)->cyclic_ = true;
    return G;
  }

  /// Direct product; element (a,b) has index a*|B| + b.
  static GroupPtr product(const GroupPtr& A, const GroupPtr& B) {
    const std::size_t na = A->order(), nb = B->order();
    const std::size_t n = na * nb;
    if (n > kMaxTable) fail(ErrorCode::BadParams, "product group too large for a table");
    std::vector<Elem> t(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a1 = 0; a1 < na; ++a1)
      for (std::size_t b1 = 0; b1 < nb; ++b1) {
        const std::size_t x = a1 * nb + b1;
        labels[x] = "(" + A->label(static_cast<Elem>(a1)) + "," + B->label(static_cast<Elem>(b1)) + ")";
        for (std::size_t a2 = 0; a2 < na; ++a2)
          for (std::size_t b2 = 0; b2 < nb; ++b2)
            t[x * n + a2 * nb + b2] =
                static_cast<Elem>(A->op(static_cast<Elem>(a1), static_cast<Elem>(a2)) * nb +
                                  B->op(static_cast<Elem>(b1), static_cast<Elem>(b2)));
      }
    return from_table(A->name() + "x" + B->name(), n, std::move(t), std::move(labels));
  }

  /// Symmetric group on m points, permutations in lexicographic order.
  /// The product a*b is the composition a o b (b is applied first).
  static GroupPtr symmetric(std::size_t m) {
    if (m == 0 || m > 5) fail(ErrorCode::BadParams, "S_m supported for 1 <= m <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return from_permutations("S" + std::to_string(m), perms);
  }

  /// Dihedral group of order 2m, realised inside S_m.
  static GroupPtr dihedral(std::size_t m) {
    if (m < 3 || m > 64) fail(ErrorCode::BadParams, "D_m supported for 3 <= m <= 64");
    std::vector<std::vector<int>> perms;
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<int> rot(m), ref(m);
      for (std::size_t i = 0; i < m; ++i) {
        rot[i] = static_cast<int>((i + r) % m);
        ref[i] = static_cast<int>((m + r - i) % m);
      }
      perms.push_back(rot);
      perms.push_back(ref);
    }
    std::sort(perms.begin(), perms.end());
    return from_permutations("D" + std::to_string(m), perms);
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return n_; }
  bool is_abelian() const { return abelian_; }
  bool is_cyclic() const { return cyclic_; }
  bool trivial() const { return n_ == 1; }

  static constexpr Elem identity() { return 0; }

  Elem op(Elem a, Elem b) const {
    if (table_.empty()) return static_cast<Elem>((std::uint64_t{a} + b) % n_);
    return table_[static_cast<std::size_t>(a) * n_ + b];
  }
  Elem inv(Elem a) const {
    if (table_.empty()) return static_cast<Elem>(a == 0 ? 0 : n_ - a);
    return inverse_[a];
  }
  /// a when s = +1, a^{-1} when s = -1.
  Elem neg_pow(Elem a, int s) const { return s >= 0 ? a : inv(a); }

  bool contains(Elem a) const { return a < n_; }

  std::string label(Elem a) const {
    if (!labels_.empty()) return labels_[a];
    return std::to_string(a);
  }

  bool same_as(const FiniteGroup& o) const {
    return this == &o || (n_ == o.n_ && name_ == o.name_ && table_ == o.table_);
  }

  /// Cayley table for groups with n <= 512.
  const std::vector<Elem>& table() const { return table_; }

 private:
  FiniteGroup() = default;

  static GroupPtr from_permutations(std::string name, const std::vector<std::vector<int>>& perms) {
    std::map<std::vector<int>, Elem> idx;
    for (Elem i = 0; i < perms.size(); ++i) idx.emplace(perms[i], i);
    const std::size_t n = perms.size();
    const std::size_t m = perms[0].size();
    std::vector<Elem> t(n * n);
    std::vector<int> c(m);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < m; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
        auto it = idx.find(c);
        if (it == idx.end()) fail(ErrorCode::BadParams, "permutation set not closed");
        t[a * n + b] = it->second;
      }
    std::vector<std::string> labels;
    for (const auto& p : perms) labels.push_back(cycle_notation(p));
    return from_table(std::move(name), n, std::move(t), std::move(labels));
  }

  static std::string cycle_notation(const std::vector<int>& p) {
    std::string s;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i] || p[i] == static_cast<int>(i)) continue;
      s += "(";
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = 1;
        if (!first) s += " ";
        s += std::to_string(j + 1);
        first = false;
        j = static_cast<std::size_t>(p[j]);
      }
      s += ")";
    }
    return s.empty() ? "e" : s;
  }

  void validate() {
    const std::size_t n = n_;
    for (Elem x : table_)
      if (x >= n) fail(ErrorCode::BadParams, "table entry out of range");
    for (std::size_t a = 0; a < n; ++a)
      if (table_[a] != a || table_[a * n] != a)
        fail(ErrorCode::BadParams, "index 0 must be the identity");
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t found = n;
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a * n + b] == 0) {
          found = b;
          break;
        }
      if (found == n || table_[found * n + a] != 0) fail(ErrorCode::BadParams, "element without inverse");
      inverse_[a] = static_cast<Elem>(found);
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t ab = table_[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
            fail(ErrorCode::BadParams, "operation is not associative");
      }
    abelian_ = true;
    for (std::size_t a = 0; a < n && abelian_; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (table_[a * n + b] != table_[b * n + a]) {
          abelian_ = false;
          break;
        }
  }

  std::string name_;
  std::size_t n_ = 0;
  bool abelian_ = true;
  bool cyclic_ = false;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> labels_;
};

inline Elem g_op(const FiniteGroup& G, Elem a, Elem b) {
  if (!G.contains(a) || !G.contains(b)) fail(ErrorCode::GroupMismatch, "element not in " + G.name());
  return G.op(a, b);
}
inline Elem g_inv(const FiniteGroup& G, Elem a) {
  if (!G.contains(a)) fail(ErrorCode::GroupMismatch, "element not in " + G.name());
  return G.inv(a);
}
inline Elem g_id(const FiniteGroup&) { return FiniteGroup::identity(); }

/// Parses Z<m>, S<m>, D<m> and products joined by 'x' (e.g. Z2xZ3).
inline GroupPtr parse_group_name(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i)
    if (i == spec.size() || spec[i] == 'x') {
      parts.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  GroupPtr result;
  for (const auto& p : parts) {
    if (p.size() < 2) fail(ErrorCode::ParseError, "bad group spec '" + spec + "'");
    std::size_t m = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(p[i]))) fail(ErrorCode::ParseError, "bad group spec '" + spec + "'");
      m = m * 10 + static_cast<std::size_t>(p[i] - '0');
      if (m > 1000000) fail(ErrorCode::ParseError, "group too large in '" + spec + "'");
    }
    GroupPtr g;
    switch (p[0]) {
      case 'Z': g = FiniteGroup::cyclic(m); break;
      case 'S': g = FiniteGroup::symmetric(m); break;
      case 'D': g = FiniteGroup::dihedral(m); break;
      default: fail(ErrorCode::ParseError, "unknown group family in '" + spec + "'");
    }
    result = result ? FiniteGroup::product(result, g) : g;
  }
  return result;
}

}  // namespace hdx
