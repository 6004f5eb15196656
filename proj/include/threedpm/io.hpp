#pragma once

// Line-based text documents for instances, matchings and the source problems
// of the reductions, the embedded figure fixtures, and seeded generators.
//
// Instance document:            Matching document:
//   3dpm-instance v1              3dpm-matching v1
//   # comment                     a1 b1 c1
//   class A                       a2 b2 c2
//   a1: b1 b2
//   class B
//   b1: c1
//   ...
//
// Canonical output uses LF line endings and one space between tokens.
// Parsers accept any run of spaces or tabs and a trailing CR.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "threedpm/errors.hpp"
#include "threedpm/model.hpp"
#include "threedpm/reduce.hpp"

namespace threedpm {

inline constexpr std::string_view kInstanceHeader = "3dpm-instance v1";
inline constexpr std::string_view kMatchingHeader = "3dpm-matching v1";
inline constexpr std::string_view k3dmHeader = "3dm-cyclic v1";
inline constexpr std::string_view kOstiesHeader = "osties v1";

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Tokenized non-blank lines with `comment` lines dropped.
inline std::vector<Line> content_lines(std::string_view text, char comment = '#') {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    auto tokens = split_ws(raw);
    if (!tokens.empty() && tokens.front()[0] != comment) out.push_back({number, std::move(tokens)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline void expect_header(const std::vector<Line>& lines, std::string_view header) {
  if (lines.empty()) throw ParseError(1, "empty document, expected header '" + std::string(header) + "'");
  std::string joined;
  for (const auto& t : lines.front().tokens) joined += (joined.empty() ? "" : " ") + t;
  if (joined != header) {
    throw ParseError(lines.front().number, "expected header '" + std::string(header) + "', got '" + joined + "'");
  }
}

/// One `name: p1 p2 ...` line. The name token may carry the colon or be
/// followed by a lone `:`.
struct ListLine {
  std::size_t number;
  std::string name;
  std::vector<std::string> items;
};

inline ListLine parse_list_line(const Line& line) {
  ListLine out{line.number, {}, {}};
  std::size_t next_token = 1;
  std::string head = line.tokens[0];
  if (head.size() > 1 && head.back() == ':') {
    out.name = head.substr(0, head.size() - 1);
  } else if (line.tokens.size() >= 2 && line.tokens[1] == ":") {
    out.name = head;
    next_token = 2;
  } else {
    throw ParseError(line.number, "expected 'name: ...', got '" + head + "'");
  }
  if (out.name.find(':') != std::string::npos) throw ParseError(line.number, "agent name contains ':'");
  for (std::size_t k = next_token; k < line.tokens.size(); ++k) {
    if (line.tokens[k].find(':') != std::string::npos) {
      throw ParseError(line.number, "unexpected ':' in '" + line.tokens[k] + "'");
    }
    out.items.push_back(line.tokens[k]);
  }
  return out;
}

/// Sections introduced by `<keyword> <label>` lines, each holding list lines.
inline std::map<std::string, std::vector<ListLine>> parse_sections(const std::vector<Line>& lines,
                                                                   std::string_view keyword,
                                                                   const std::vector<std::string>& labels) {
  std::map<std::string, std::vector<ListLine>> sections;
  std::set<std::string> seen;
  std::optional<std::string> current;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens[0] == keyword) {
      if (line.tokens.size() != 2 || std::find(labels.begin(), labels.end(), line.tokens[1]) == labels.end()) {
        throw ParseError(line.number, "malformed section header");
      }
      if (!seen.insert(line.tokens[1]).second) {
        throw ParseError(line.number, "section '" + line.tokens[1] + "' appears twice");
      }
      current = line.tokens[1];
      sections[*current];
      continue;
    }
    if (!current) throw ParseError(line.number, "agent line before any '" + std::string(keyword) + "' header");
    sections[*current].push_back(parse_list_line(line));
  }
  return sections;
}

inline void append_list(std::string& out, const std::string& name, const std::vector<std::string>& items) {
  out += name + ":";
  for (const auto& s : items) out += " " + s;
  out += "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instances and matchings
// ---------------------------------------------------------------------------

inline Instance parse_instance(std::string_view text) {
  const auto lines = detail::content_lines(text);
  detail::expect_header(lines, kInstanceHeader);
  auto sections = detail::parse_sections(lines, "class", {"A", "B", "C"});

  // Resolve names here so every error carries the offending line.
  std::map<std::string, std::pair<AgentClass, std::size_t>> where;
  for (AgentClass cls : kClasses) {
    for (const auto& l : sections[std::string(1, label(cls))]) {
      if (!where.emplace(l.name, std::pair{cls, l.number}).second) {
        throw ParseError(l.number, "duplicate agent '" + l.name + "'");
      }
    }
  }
  InstanceBuilder builder;
  for (AgentClass cls : kClasses) {
    for (const auto& l : sections[std::string(1, label(cls))]) {
      std::set<std::string> listed;
      for (const auto& p : l.items) {
        auto it = where.find(p);
        if (it == where.end()) throw ParseError(l.number, "unknown agent '" + p + "'");
        if (it->second.first != next(cls)) {
          throw ParseError(l.number, "agent '" + l.name + "' in class " + label(cls) + " lists '" + p +
                                         "' from class " + label(it->second.first) + ", expected class " +
                                         label(next(cls)));
        }
        if (!listed.insert(p).second) throw ParseError(l.number, "agent '" + p + "' listed twice");
      }
      builder.add(cls, l.name, l.items);
    }
  }
  return builder.build();
}

inline std::string serialize_instance(const Instance& inst) {
  std::string out(kInstanceHeader);
  out += "\n";
  for (AgentClass cls : kClasses) {
    out += std::string("class ") + label(cls) + "\n";
    for (AgentId x : inst.members(cls)) {
      std::vector<std::string> items;
      for (AgentId y : inst.prefs(x)) items.push_back(inst.name(y));
      detail::append_list(out, inst.name(x), items);
    }
  }
  return out;
}

inline Matching parse_matching(const Instance& inst, std::string_view text) {
  const auto lines = detail::content_lines(text);
  detail::expect_header(lines, kMatchingHeader);
  std::vector<Triple> triples;
  std::vector<bool> used(inst.agent_count(), false);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'a b c'");
    Triple t;
    for (AgentClass cls : kClasses) {
      const auto& tok = line.tokens[index_of(cls)];
      auto id = inst.find(tok);
      if (!id) throw ParseError(line.number, "unknown agent '" + tok + "'");
      if (inst.class_of(*id) != cls) {
        throw ParseError(line.number, "agent '" + tok + "' is not in class " + std::string(1, label(cls)));
      }
      if (used[*id]) throw ParseError(line.number, "agent reused: '" + tok + "'");
      used[*id] = true;
      (cls == AgentClass::A ? t.a : cls == AgentClass::B ? t.b : t.c) = *id;
    }
    if (!inst.acceptable(t)) {
      throw ParseError(line.number, "triple (" + line.tokens[0] + ", " + line.tokens[1] + ", " + line.tokens[2] +
                                        ") violates acceptability");
    }
    triples.push_back(t);
  }
  return Matching(inst, std::move(triples));
}

inline std::string serialize_matching(const Instance& inst, const Matching& m) {
  require_same_instance(inst, m);
  std::string out(kMatchingHeader);
  out += "\n";
  for (const Triple& t : m.triples()) {
    out += inst.name(t.a) + " " + inst.name(t.b) + " " + inst.name(t.c) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Source problems
// ---------------------------------------------------------------------------

/// DIMACS CNF. Variables are named x1..xN; `c` lines are comments.
inline SatInstance parse_sat(std::string_view text) {
  const auto lines = detail::content_lines(text, 'c');
  if (lines.empty() || lines[0].tokens[0] != "p") throw ParseError(1, "expected 'p cnf <vars> <clauses>'");
  const auto& p = lines[0];
  auto to_int = [](const std::string& s, std::size_t line) -> long long {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line, "expected an integer, got '" + s + "'");
    }
  };
  if (p.tokens.size() != 4 || p.tokens[1] != "cnf") throw ParseError(p.number, "expected 'p cnf <vars> <clauses>'");
  const long long nv = to_int(p.tokens[2], p.number);
  const long long nc = to_int(p.tokens[3], p.number);
  if (nv < 0 || nc < 0) throw ParseError(p.number, "negative count");
  SatInstance phi;
  for (long long i = 1; i <= nv; ++i) phi.variables.push_back("x" + std::to_string(i));
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    for (const auto& tok : lines[k].tokens) {
      const long long v = to_int(tok, lines[k].number);
      if (pending.empty()) pending_line = lines[k].number;
      if (v == 0) {
        if (pending.size() != 3) throw ParseError(pending_line, "clause must have exactly three literals");
        phi.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (v > nv || v < -nv) throw ParseError(lines[k].number, "literal " + tok + " out of range");
      pending.push_back({static_cast<std::size_t>((v < 0 ? -v : v) - 1), v > 0});
    }
  }
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (static_cast<long long>(phi.clauses.size()) != nc) {
    throw ParseError(p.number, "header announces " + std::to_string(nc) + " clauses, found " +
                                   std::to_string(phi.clauses.size()));
  }
  return phi;
}

inline std::string serialize_sat(const SatInstance& phi) {
  std::string out = "p cnf " + std::to_string(phi.variables.size()) + " " + std::to_string(phi.clauses.size()) + "\n";
  for (const auto& cl : phi.clauses) {
    for (const Literal& l : cl) out += (l.positive ? "" : "-") + std::to_string(l.var + 1) + " ";
    out += "0\n";
  }
  return out;
}

inline std::string serialize_assignment(const SatInstance& phi, const Assignment& sigma) {
  std::string out;
  for (std::size_t i = 0; i < phi.variables.size(); ++i) {
    out += phi.variables[i] + "=" + (sigma[i] ? "true" : "false") + "\n";
  }
  return out;
}

/// `3dm-cyclic v1` followed by `class A/B/C` sections of `name: neighbours`,
/// neighbours drawn from the cyclically next class.
inline Cyclic3DM parse_3dm(std::string_view text) {
  const auto lines = detail::content_lines(text);
  detail::expect_header(lines, k3dmHeader);
  auto sections = detail::parse_sections(lines, "class", {"A", "B", "C"});
  Cyclic3DM j;
  std::map<std::string, std::pair<AgentClass, std::size_t>> where;
  for (AgentClass cls : kClasses) {
    for (const auto& l : sections[std::string(1, label(cls))]) {
      if (!where.emplace(l.name, std::pair{cls, j.names[index_of(cls)].size()}).second) {
        throw ParseError(l.number, "duplicate agent '" + l.name + "'");
      }
      j.names[index_of(cls)].push_back(l.name);
    }
  }
  for (AgentClass cls : kClasses) {
    for (const auto& l : sections[std::string(1, label(cls))]) {
      std::vector<std::size_t> acc;
      for (const auto& p : l.items) {
        auto it = where.find(p);
        if (it == where.end()) throw ParseError(l.number, "unknown agent '" + p + "'");
        if (it->second.first != next(cls)) {
          throw ParseError(l.number, "'" + p + "' is not in class " + std::string(1, label(next(cls))));
        }
        if (std::find(acc.begin(), acc.end(), it->second.second) != acc.end()) {
          throw ParseError(l.number, "agent '" + p + "' listed twice");
        }
        acc.push_back(it->second.second);
      }
      j.accepts[index_of(cls)].push_back(std::move(acc));
    }
  }
  if (j.names[1].size() != j.n() || j.names[2].size() != j.n()) {
    throw ParseError(lines.back().number, "3D matching classes must have equal sizes");
  }
  return j;
}

inline std::string serialize_3dm(const Cyclic3DM& j) {
  std::string out(k3dmHeader);
  out += "\n";
  for (AgentClass cls : kClasses) {
    const auto k = index_of(cls);
    out += std::string("class ") + label(cls) + "\n";
    for (std::size_t i = 0; i < j.names[k].size(); ++i) {
      std::vector<std::string> items;
      for (std::size_t y : j.accepts[k][i]) items.push_back(j.names[index_of(next(cls))][y]);
      detail::append_list(out, j.names[k][i], items);
    }
  }
  return out;
}

inline std::string serialize_3dm_solution(const Cyclic3DM& j, const std::vector<Triple3DM>& sol) {
  std::string out;
  for (const auto& t : sol) out += j.names[0][t[0]] + " " + j.names[1][t[1]] + " " + j.names[2][t[2]] + "\n";
  return out;
}

/// `osties v1`, then `side U` lines `u: w...` (strict, best first) and
/// `side W` lines `w: u...` (strict) or `w: tie: u...` (one tie).
inline OneSidedTiesInstance parse_osties(std::string_view text) {
  const auto lines = detail::content_lines(text);
  detail::expect_header(lines, kOstiesHeader);
  // `tie:` would trip the list-line parser, so strip it first.
  std::vector<detail::Line> cleaned = lines;
  std::map<std::size_t, bool> tie_on_line;
  for (auto& l : cleaned) {
    auto it = std::find(l.tokens.begin(), l.tokens.end(), "tie:");
    if (it != l.tokens.end()) {
      if (it - l.tokens.begin() != 1) throw ParseError(l.number, "'tie:' must directly follow the agent name");
      l.tokens.erase(it);
      tie_on_line[l.number] = true;
    }
  }
  auto sections = detail::parse_sections(cleaned, "side", {"U", "W"});
  OneSidedTiesInstance g;
  std::map<std::string, std::size_t> u_at, w_at;
  for (const auto& l : sections["U"]) {
    if (tie_on_line.count(l.number)) throw ParseError(l.number, "ties are only allowed on side W");
    if (!u_at.emplace(l.name, g.u_names.size()).second) throw ParseError(l.number, "duplicate agent '" + l.name + "'");
    g.u_names.push_back(l.name);
  }
  for (const auto& l : sections["W"]) {
    if (u_at.count(l.name) || !w_at.emplace(l.name, g.w_names.size()).second) {
      throw ParseError(l.number, "duplicate agent '" + l.name + "'");
    }
    g.w_names.push_back(l.name);
    g.w_tie.push_back(tie_on_line.count(l.number) > 0);
  }
  auto resolve = [](const detail::ListLine& l, const std::map<std::string, std::size_t>& at) {
    std::vector<std::size_t> out;
    for (const auto& p : l.items) {
      auto it = at.find(p);
      if (it == at.end()) throw ParseError(l.number, "unknown or wrong-side agent '" + p + "'");
      if (std::find(out.begin(), out.end(), it->second) != out.end()) {
        throw ParseError(l.number, "agent '" + p + "' listed twice");
      }
      out.push_back(it->second);
    }
    return out;
  };
  for (const auto& l : sections["U"]) g.u_prefs.push_back(resolve(l, w_at));
  for (const auto& l : sections["W"]) g.w_prefs.push_back(resolve(l, u_at));
  try {
    validate_osties(g);
  } catch (const PreconditionError& e) {
    throw ParseError(lines.back().number, e.what());
  }
  return g;
}

inline std::string serialize_osties(const OneSidedTiesInstance& g) {
  std::string out(kOstiesHeader);
  out += "\nside U\n";
  for (std::size_t u = 0; u < g.u_names.size(); ++u) {
    std::vector<std::string> items;
    for (std::size_t w : g.u_prefs[u]) items.push_back(g.w_names[w]);
    detail::append_list(out, g.u_names[u], items);
  }
  out += "side W\n";
  for (std::size_t w = 0; w < g.w_names.size(); ++w) {
    std::vector<std::string> items;
    if (g.w_tie[w]) items.push_back("tie:");
    for (std::size_t u : g.w_prefs[w]) items.push_back(g.u_names[u]);
    detail::append_list(out, g.w_names[w], items);
  }
  return out;
}

inline std::string serialize_osties_matching(const OneSidedTiesInstance& g, const OSMatching& m) {
  std::string out;
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (m[u]) out += g.u_names[u] + " " + g.w_names[*m[u]] + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::string_view kFig1 =
    "3dpm-instance v1\n"
    "class A\n"
    "a1: b1 b2 b3\n"
    "a2: b3 b2 b1\n"
    "a3: b1 b3 b2\n"
    "class B\n"
    "b1: c2 c1 c3\n"
    "b2: c3 c2 c1\n"
    "b3: c3 c2 c1\n"
    "class C\n"
    "c1: a2 a1 a3\n"
    "c2: a2 a1 a3\n"
    "c3: a1 a3 a2\n";

inline constexpr std::string_view kFig2 =
    "3dpm-instance v1\n"
    "class A\n"
    "a1: b2 b1 b3\n"
    "a2: b2 b3 b1\n"
    "a3: b3 b2 b1\n"
    "class B\n"
    "b1: c1 c2 c3\n"
    "b2: c3 c2 c1\n"
    "b3: c3 c2 c1\n"
    "class C\n"
    "c1: a1 a2 a3\n"
    "c2: a2 a1 a3\n"
    "c3: a1 a3 a2\n";

inline constexpr std::string_view kDiagonal =
    "3dpm-matching v1\n"
    "a1 b1 c1\n"
    "a2 b2 c2\n"
    "a3 b3 c3\n";

inline constexpr std::string_view kFig1Mprime =
    "3dpm-matching v1\n"
    "a1 b2 c3\n"
    "a2 b3 c1\n"
    "a3 b1 c2\n";

}  // namespace detail

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"fig1", "fig2", "fig1_M", "fig1_Mprime", "fig2_M"};
  return names;
}

/// Document text of a named fixture.
inline std::string fixture_text(std::string_view name) {
  if (name == "fig1") return std::string(detail::kFig1);
  if (name == "fig2") return std::string(detail::kFig2);
  if (name == "fig1_M" || name == "fig2_M") return std::string(detail::kDiagonal);
  if (name == "fig1_Mprime") return std::string(detail::kFig1Mprime);
  throw Error("unknown fixture '" + std::string(name) + "'");
}

/// Instance a fixture belongs to: fig1 for fig1*, fig2 for fig2*.
inline Instance fixture_instance(std::string_view name) {
  if (name.starts_with("fig1")) return parse_instance(detail::kFig1);
  if (name.starts_with("fig2")) return parse_instance(detail::kFig2);
  throw Error("unknown fixture '" + std::string(name) + "'");
}

inline Matching fixture_matching(std::string_view name) {
  if (name == "fig1" || name == "fig2") throw Error("fixture '" + std::string(name) + "' is an instance");
  return parse_matching(fixture_instance(name), fixture_text(name));
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Deterministic generator: std::mt19937_64 seeded with the 64-bit seed.
/// Bounded integers use rejection sampling on the raw 64-bit output and
/// permutations use Fisher–Yates, so output does not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class GenKind : std::uint8_t { Random, MasterList };

inline std::optional<GenKind> parse_gen_kind(std::string_view s) {
  if (s == "random") return GenKind::Random;
  if (s == "k-masterlist") return GenKind::MasterList;
  return std::nullopt;
}

struct GenerateOptions {
  GenKind kind = GenKind::Random;
  std::size_t n = 3;
  int k = 0;
  bool complete = true;
  std::uint64_t seed = 0;
};

/// Agents a1..an, b1..bn, c1..cn.
///
/// random (k must be 0): each list is an independent uniform permutation of
/// the next class.
///
/// k-masterlist: classes A, then B, then C (the first k) draw one master order
/// each and copy it to every member. The other classes get independent
/// permutations, redrawn until they do not share a master list, so exactly k
/// classes pass detect_master_list. With n = 1 every class trivially has a
/// master list, so k < 3 is rejected.
///
/// Incomplete lists keep each entry independently with probability 1/2.
inline Instance generate(const GenerateOptions& o) {
  if (o.n == 0) throw PreconditionError("generate: n must be at least 1");
  if (o.k < 0 || o.k > 3) throw PreconditionError("generate: k must be in 0..3");
  if (o.kind == GenKind::Random && o.k != 0) throw PreconditionError("generate: kind random needs k = 0");
  if (o.kind == GenKind::MasterList && o.n == 1 && o.k < 3) {
    throw PreconditionError("generate: with n = 1 every class has a master list, so k must be 3");
  }
  Rng rng(o.seed);
  std::array<std::vector<std::string>, 3> names;
  for (AgentClass cls : kClasses) {
    for (std::size_t i = 1; i <= o.n; ++i) {
      names[index_of(cls)].push_back(std::string(1, static_cast<char>(label(cls) - 'A' + 'a')) + std::to_string(i));
    }
  }
  auto permutation = [&](AgentClass target) {
    auto v = names[index_of(target)];
    rng.shuffle(v);
    return v;
  };
  auto thin = [&](std::vector<std::string> list) {
    if (o.complete) return list;
    std::vector<std::string> kept;
    for (auto& s : list) {
      if (rng.coin()) kept.push_back(std::move(s));
    }
    return kept;
  };
  std::array<std::vector<std::vector<std::string>>, 3> prefs;
  for (AgentClass cls : kClasses) {
    const auto k = index_of(cls);
    const bool ml = o.kind == GenKind::MasterList && static_cast<int>(k) < o.k;
    if (ml) {
      const auto master = permutation(next(cls));
      for (std::size_t i = 0; i < o.n; ++i) prefs[k].push_back(thin(master));
      continue;
    }
    for (int attempt = 0;; ++attempt) {
      prefs[k].clear();
      for (std::size_t i = 0; i < o.n; ++i) prefs[k].push_back(thin(permutation(next(cls))));
      if (o.kind == GenKind::Random) break;
      InstanceBuilder probe;
      for (AgentClass c2 : kClasses) {
        for (const auto& s : names[index_of(c2)]) probe.add(c2, s);
      }
      for (std::size_t i = 0; i < o.n; ++i) probe.set_prefs(names[k][i], prefs[k][i]);
      if (!detect_master_list(probe.build(), cls)) break;
      if (attempt == 10000) {
        // Force a conflict: the first two members rank the first two targets oppositely.
        const auto& t = names[index_of(next(cls))];
        prefs[k][0] = {t[0], t[1]};
        prefs[k][1] = {t[1], t[0]};
        break;
      }
    }
  }
  InstanceBuilder builder;
  for (AgentClass cls : kClasses) {
    for (std::size_t i = 0; i < o.n; ++i) builder.add(cls, names[index_of(cls)][i], prefs[index_of(cls)][i]);
  }
  return builder.build();
}

/// Random Cyclic3DM: every cyclic acceptability holds independently with
/// probability 1/2. Agents are named a1.., b1.., c1...
inline Cyclic3DM generate_3dm(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Cyclic3DM j;
  for (AgentClass cls : kClasses) {
    for (std::size_t i = 1; i <= n; ++i) {
      j.names[index_of(cls)].push_back(std::string(1, static_cast<char>(label(cls) - 'A' + 'a')) + std::to_string(i));
    }
    j.accepts[index_of(cls)].resize(n);
  }
  for (AgentClass cls : kClasses) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t y = 0; y < n; ++y) {
        if (rng.coin()) j.accepts[index_of(cls)][i].push_back(y);
      }
    }
  }
  return j;
}

/// Random one-sided-ties instance on u1.., w1..: each edge present with
/// probability 1/2, random strict orders, each w tied with probability 1/2.
inline OneSidedTiesInstance generate_osties(std::size_t nu, std::size_t nw, std::uint64_t seed) {
  Rng rng(seed);
  OneSidedTiesInstance g;
  for (std::size_t i = 1; i <= nu; ++i) g.u_names.push_back("u" + std::to_string(i));
  for (std::size_t i = 1; i <= nw; ++i) g.w_names.push_back("w" + std::to_string(i));
  std::vector<std::vector<bool>> edge(nu, std::vector<bool>(nw));
  for (auto& row : edge) {
    for (std::size_t w = 0; w < nw; ++w) row[w] = rng.coin();
  }
  g.u_prefs.resize(nu);
  g.w_prefs.resize(nw);
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t w = 0; w < nw; ++w) {
      if (edge[u][w]) g.u_prefs[u].push_back(w);
    }
    rng.shuffle(g.u_prefs[u]);
  }
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t u = 0; u < nu; ++u) {
      if (edge[u][w]) g.w_prefs[w].push_back(u);
    }
    rng.shuffle(g.w_prefs[w]);
    g.w_tie.push_back(rng.coin());
  }
  return g;
}

}  // namespace threedpm
