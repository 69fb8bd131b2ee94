#pragma once

// Text formats for complexes, cochains and group tables, JSON encodings of
// reports and traces, and counterexample bundles.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hdx/check.hpp"
#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"
#include "hdx/correction.hpp"
#include "hdx/error.hpp"
#include "hdx/group.hpp"
#include "hdx/rational.hpp"

namespace hdx {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// Non-empty lines with '#' comments removed, paired with 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> content_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::size_t no = 0;
  for (std::string line; std::getline(in, line);) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto t = tokens(line);
    if (!t.empty()) out.emplace_back(no, std::move(t));
  }
  return out;
}

inline long long parse_int(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
  }
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write " + p.string());
  out << text;
}

// ---------------------------------------------------------------------------
// Complexes: "dim d", then one top face per line, optional "w p/q".

inline std::string format_complex(const SimplicialComplex& X) {
  std::ostringstream out;
  const int d = X.dimension();
  out << "dim " << d << "\n";
  for (FaceIndex i = 0; i < X.num_faces(d); ++i) {
    const Face& f = X.face(d, i);
    for (std::size_t j = 0; j < f.size(); ++j) out << (j ? " " : "") << f[j];
    if (!X.uniform()) out << " w " << X.face_weight(d, i).str();
    out << "\n";
  }
  return out.str();
}

inline ComplexPtr parse_complex(const std::string& text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) fail(ErrorCode::ParseError, "empty complex file");
  const auto& [hno, head] = lines.front();
  if (head.size() != 2 || head[0] != "dim") fail(ErrorCode::ParseError, "line " + std::to_string(hno) + ": expected 'dim d'");
  const int d = static_cast<int>(detail::parse_int(head[1], hno, "dimension"));
  std::vector<Face> tops;
  std::vector<Rational> weights;
  bool weighted = false, unweighted = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, t] = lines[i];
    std::size_t n = t.size();
    if (n >= 2 && t[n - 2] == "w") {
      try {
        weights.push_back(parse_rational(t[n - 1]));
      } catch (const Error&) {
        fail(ErrorCode::ParseError, "line " + std::to_string(no) + ": bad weight '" + t[n - 1] + "'");
      }
      weighted = true;
      n -= 2;
    } else {
      unweighted = true;
    }
    Face f;
    for (std::size_t j = 0; j < n; ++j) f.push_back(static_cast<Vertex>(detail::parse_int(t[j], no, "vertex")));
    tops.push_back(std::move(f));
  }
  if (weighted && unweighted) fail(ErrorCode::ParseError, "either every top face carries a weight or none does");
  if (weighted) return build_complex(std::move(tops), d, std::move(weights));
  return build_complex(std::move(tops), d);
}

inline ComplexPtr load_complex(const std::filesystem::path& p) { return parse_complex(read_file(p)); }

// ---------------------------------------------------------------------------
// Groups: names (Z6, S3, D4, Z2xZ3) or "table:<file>" where the file holds
// the order n followed by the n*n Cayley table, row-major, 0 = identity.

inline GroupPtr parse_group_table(const std::string& name, const std::string& text) {
  auto lines = detail::content_lines(text);
  std::vector<std::string> all;
  std::size_t first = lines.empty() ? 0 : lines.front().first;
  for (auto& [no, t] : lines) all.insert(all.end(), t.begin(), t.end());
  if (all.empty()) fail(ErrorCode::ParseError, "empty group table");
  const auto n = static_cast<std::size_t>(detail::parse_int(all[0], first, "group order"));
  if (all.size() != 1 + n * n) fail(ErrorCode::ParseError, "group table needs " + std::to_string(n * n) + " entries");
  std::vector<Elem> table;
  for (std::size_t i = 1; i < all.size(); ++i) table.push_back(static_cast<Elem>(detail::parse_int(all[i], first, "entry")));
  return FiniteGroup::from_table(name, n, std::move(table));
}

inline GroupPtr load_group(const std::string& spec, const std::filesystem::path& base = {}) {
  if (spec.rfind("table:", 0) == 0) {
    std::filesystem::path p = spec.substr(6);
    if (p.is_relative() && !base.empty()) p = base / p;
    return parse_group_table(spec, read_file(p));
  }
  return parse_group_name(spec);
}

// ---------------------------------------------------------------------------
// Cochains: "dim k group <spec>", then "v0 .. vk <element>" per supported face.

inline std::string format_cochain(const Cochain& f, const std::string& group_spec) {
  std::ostringstream out;
  out << "dim " << f.dim() << " group " << group_spec << "\n";
  const SimplicialComplex& X = f.complex();
  for (FaceIndex i : f.support().members) {
    const Face& s = X.face(f.dim(), i);
    for (Vertex v : s) out << v << " ";
    out << f.value(i) << "\n";
  }
  return out.str();
}

inline std::string format_cochain(const Cochain& f) { return format_cochain(f, f.group().name()); }

struct ParsedCochain {
  std::string group_spec;
  Cochain cochain;
};

/// The group is taken from the header unless one is supplied.
inline ParsedCochain parse_cochain(const std::string& text, ComplexPtr X, GroupPtr G = nullptr,
                                   const std::filesystem::path& base = {}) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) fail(ErrorCode::ParseError, "empty cochain file");
  const auto& [hno, head] = lines.front();
  if (head.size() != 4 || head[0] != "dim" || head[2] != "group")
    fail(ErrorCode::ParseError, "line " + std::to_string(hno) + ": expected 'dim k group <spec>'");
  const int k = static_cast<int>(detail::parse_int(head[1], hno, "dimension"));
  if (!G) G = load_group(head[3], base);
  Cochain f(std::move(X), k, G);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, t] = lines[i];
    if (static_cast<int>(t.size()) != k + 2)
      fail(ErrorCode::ParseError, "line " + std::to_string(no) + ": expected " + std::to_string(k + 1) + " vertices and a value");
    Face s;
    for (int j = 0; j <= k; ++j) s.push_back(static_cast<Vertex>(detail::parse_int(t[static_cast<std::size_t>(j)], no, "vertex")));
    std::sort(s.begin(), s.end());
    auto idx = f.complex().find(s);
    if (!idx) fail(ErrorCode::ParseError, "line " + std::to_string(no) + ": " + face_to_string(s) + " is not a face");
    const auto e = static_cast<Elem>(detail::parse_int(t.back(), no, "element"));
    if (!G->contains(e)) fail(ErrorCode::ParseError, "line " + std::to_string(no) + ": element out of range");
    f.set(*idx, e);
  }
  return {head[3], std::move(f)};
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const CheckReport& r) {
  Json j;
  j["claim"] = r.claim;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["params"] = Json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["verdict"] = r.verdict ? "pass" : "fail";
  if (r.witness) j["witness"] = *r.witness;
  if (r.note) j["note"] = *r.note;
  return j;
}

inline Json to_json(const CorrectionStep& s) {
  Json j;
  j["step"] = s.step;
  j["vertex"] = s.vertex;
  j["delta_weight_before"] = s.before.str();
  j["delta_weight_after"] = s.after.str();
  j["moved"] = s.moved.str();
  return j;
}

/// One JSON object per line.
inline std::string format_trace(const CorrectionTrace& t) {
  std::string out;
  for (const auto& s : t.steps) out += to_json(s).dump() + "\n";
  return out;
}


inline Json rational_or_sentinel(const std::optional<Rational>& r) { return r ? Json(r->str()) : Json("inf"); }

// ---------------------------------------------------------------------------
// Bundles: <dir>/complex.txt, optional <dir>/cochain.txt, <dir>/claim.json.

struct Bundle {
  ComplexPtr complex;
  std::optional<Cochain> cochain;
  std::string group_spec;
  Json claim;
};

inline void write_bundle(const std::filesystem::path& dir, const Bundle& b) {
  std::filesystem::create_directories(dir);
  write_file(dir / "complex.txt", format_complex(*b.complex));
  if (b.cochain) write_file(dir / "cochain.txt", format_cochain(*b.cochain, b.group_spec));
  Json c = b.claim;
  c["group"] = b.group_spec;
  write_file(dir / "claim.json", c.dump(2) + "\n");
}

inline Bundle read_bundle(const std::filesystem::path& dir) {
  Bundle b;
  b.complex = load_complex(dir / "complex.txt");
  try {
    b.claim = Json::parse(read_file(dir / "claim.json"));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("claim.json: ") + e.what());
  }
  b.group_spec = b.claim.value("group", std::string("Z2"));
  if (std::filesystem::exists(dir / "cochain.txt")) {
    auto pc = parse_cochain(read_file(dir / "cochain.txt"), b.complex, load_group(b.group_spec, dir));
    b.cochain = std::move(pc.cochain);
  }
  return b;
}

}  // namespace hdx
