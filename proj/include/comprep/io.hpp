#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "comprep/cnf.hpp"
#include "comprep/core.hpp"
#include "comprep/mfl.hpp"
#include "comprep/reduce.hpp"

namespace comprep {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

// Non-comment lines with their 1-based line numbers; '#' starts a comment.
inline std::vector<std::pair<int, std::string>> payload_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string word;
    if (probe >> word) out.push_back({number, line});
  }
  return out;
}

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

inline std::optional<int> parse_int(const std::string& word) {
  size_t pos = 0;
  try {
    int value = std::stoi(word, &pos);
    if (pos != word.size()) return std::nullopt;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline bool printable_token(const std::string& token) {
  if (token.empty()) return false;
  for (char c : token)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '#') return false;
  return true;
}

}  // namespace detail

// Line-oriented instance format:
//   compat <n>
//   domain <j> <token>...
//   incompat <j>:<token> <k>:<token>
// Slots are 1-based and every incompat line must have j < k.
inline Instance parse_instance(const std::string& text) {
  auto lines = detail::payload_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'compat <n>' header");
  auto header = detail::split_words(lines[0].second);
  if (header.size() != 2 || header[0] != "compat") throw ParseError(lines[0].first, "expected 'compat <n>' header");
  auto n = detail::parse_int(header[1]);
  if (!n || *n < 1) throw ParseError(lines[0].first, "slot count must be a positive integer");

  Instance inst;
  inst.domains.resize(*n);
  std::vector<char> declared(*n, 0);
  struct PendingPair {
    int line;
    int j, k;
    std::string tok_j, tok_k;
  };
  std::vector<PendingPair> pending;

  for (size_t i = 1; i < lines.size(); ++i) {
    auto [number, line] = lines[i];
    auto words = detail::split_words(line);
    if (words[0] == "domain") {
      if (words.size() < 2) throw ParseError(number, "expected 'domain <j> <token>...'");
      auto j = detail::parse_int(words[1]);
      if (!j || *j < 1 || *j > *n) throw ParseError(number, "slot index out of range");
      if (declared[*j - 1]) throw ParseError(number, "duplicate domain declaration for slot " + words[1]);
      declared[*j - 1] = 1;
      for (size_t w = 2; w < words.size(); ++w) {
        if (!detail::printable_token(words[w])) throw ParseError(number, "bad token '" + words[w] + "'");
        if (std::find(inst.domains[*j - 1].begin(), inst.domains[*j - 1].end(), words[w]) !=
            inst.domains[*j - 1].end())
          throw ParseError(number, "duplicate token '" + words[w] + "' in slot " + words[1]);
        inst.domains[*j - 1].push_back(words[w]);
      }
    } else if (words[0] == "incompat") {
      if (words.size() != 3) throw ParseError(number, "expected 'incompat <j>:<token> <k>:<token>'");
      auto parse_ref = [&](const std::string& word) -> std::pair<int, std::string> {
        auto colon = word.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == word.size())
          throw ParseError(number, "expected '<slot>:<token>', got '" + word + "'");
        auto slot = detail::parse_int(word.substr(0, colon));
        if (!slot || *slot < 1 || *slot > *n) throw ParseError(number, "slot index out of range in '" + word + "'");
        return {*slot, word.substr(colon + 1)};
      };
      auto [j, tok_j] = parse_ref(words[1]);
      auto [k, tok_k] = parse_ref(words[2]);
      if (j >= k) throw ParseError(number, "pair not ordered j<k");
      pending.push_back({number, j, k, tok_j, tok_k});
    } else {
      throw ParseError(number, "unknown directive '" + words[0] + "'");
    }
  }
  for (int j = 0; j < *n; ++j)
    if (!declared[j]) throw ParseError(lines[0].first, "slot " + std::to_string(j + 1) + " has no domain line");

  for (const auto& p : pending) {
    auto find = [&](int slot, const std::string& tok) {
      const auto& dom = inst.domains[slot - 1];
      auto it = std::find(dom.begin(), dom.end(), tok);
      if (it == dom.end())
        throw ParseError(p.line, "unknown token '" + tok + "' in slot " + std::to_string(slot));
      return static_cast<int>(it - dom.begin());
    };
    IncompatPair pair{{p.j - 1, find(p.j, p.tok_j)}, {p.k - 1, find(p.k, p.tok_k)}};
    if (std::find(inst.incompat.begin(), inst.incompat.end(), pair) != inst.incompat.end())
      throw ParseError(p.line, "duplicate incompat pair");
    inst.incompat.push_back(pair);
  }
  std::sort(inst.incompat.begin(), inst.incompat.end());
  return inst;
}

// Canonical rendering: header, domains in slot order, incompat pairs
// sorted. parse_instance(render_instance(inst)) == inst for instances with
// sorted pairs and printable, per-slot-unique tokens.
inline std::string render_instance(const Instance& inst) {
  std::ostringstream out;
  out << "compat " << inst.slot_count() << "\n";
  for (int j = 0; j < inst.slot_count(); ++j) {
    out << "domain " << j + 1;
    for (const std::string& tok : inst.domains[j]) {
      if (!detail::printable_token(tok))
        throw std::invalid_argument("render_instance: token '" + tok + "' is not representable");
      out << ' ' << tok;
    }
    out << "\n";
  }
  std::vector<IncompatPair> pairs = inst.incompat;
  std::sort(pairs.begin(), pairs.end());
  for (const IncompatPair& p : pairs) {
    out << "incompat " << p.lo.slot + 1 << ':' << inst.domains[p.lo.slot][p.lo.elem] << ' '
        << p.hi.slot + 1 << ':' << inst.domains[p.hi.slot][p.hi.elem] << "\n";
  }
  return out.str();
}

// One "<x> <y>" integer pair per non-comment line.
inline MflInstance parse_points(const std::string& text) {
  MflInstance inst;
  for (auto [number, line] : detail::payload_lines(text)) {
    auto words = detail::split_words(line);
    if (words.size() != 2) throw ParseError(number, "expected '<x> <y>'");
    auto x = detail::parse_int(words[0]);
    auto y = detail::parse_int(words[1]);
    if (!x || !y) throw ParseError(number, "expected integers");
    GridPoint p{*x, *y};
    if (point_index(inst, p) >= 0) throw ParseError(number, "duplicate point");
    inst.points.push_back(p);
  }
  return inst;
}

inline std::string render_points(const MflInstance& inst) {
  std::ostringstream out;
  for (GridPoint p : inst.points) out << p.x << ' ' << p.y << "\n";
  return out.str();
}

// Planar 3SAT format:
//   p3sat <n>
//   clause U|D <lit> <lit> <lit>
// with signed 1-based variable literals; U places the clause above the
// variables, D below. Nesting is validated here.
inline Planar3Sat parse_p3sat(const std::string& text) {
  auto lines = detail::payload_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'p3sat <n>' header");
  auto header = detail::split_words(lines[0].second);
  if (header.size() != 2 || header[0] != "p3sat") throw ParseError(lines[0].first, "expected 'p3sat <n>' header");
  auto n = detail::parse_int(header[1]);
  if (!n || *n < 1) throw ParseError(lines[0].first, "variable count must be a positive integer");
  Planar3Sat f;
  f.var_count = *n;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto [number, line] = lines[i];
    auto words = detail::split_words(line);
    if (words.size() != 5 || words[0] != "clause" || (words[1] != "U" && words[1] != "D"))
      throw ParseError(number, "expected 'clause U|D <lit> <lit> <lit>'");
    Planar3SatClause clause;
    clause.side = words[1] == "U" ? ClauseSide::above : ClauseSide::below;
    for (int leg = 0; leg < 3; ++leg) {
      auto lit = detail::parse_int(words[2 + leg]);
      if (!lit || *lit == 0 || std::abs(*lit) > *n) throw ParseError(number, "bad literal '" + words[2 + leg] + "'");
      clause.legs[leg] = {std::abs(*lit) - 1, *lit < 0};
    }
    f.clauses.push_back(clause);
  }
  if (!planar3sat_valid(f)) throw ParseError(lines[0].first, "clauses are not properly nested");
  return f;
}

// Standard DIMACS with the variable table as leading comments. Output is
// bit-exact for a fixed formula.
inline std::string emit_dimacs(const Cnf& f) {
  std::ostringstream out;
  for (size_t v = 0; v < f.var_table.size(); ++v)
    out << "c (" << f.var_table[v].first + 1 << ',' << f.var_table[v].second + 1 << ") -> " << v + 1
        << "\n";
  out << "p cnf " << f.var_count << ' ' << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

inline Cnf parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf f;
  bool header = false;
  int number = 0;
  int declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream words(line);
    if (!header) {
      std::string p, kind;
      if (!(words >> p >> kind >> f.var_count >> declared_clauses) || p != "p" || kind != "cnf")
        throw ParseError(number, "expected 'p cnf <vars> <clauses>' header");
      header = true;
      continue;
    }
    int lit;
    while (words >> lit) {
      if (lit == 0) {
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > f.var_count) throw ParseError(number, "literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (!header) throw ParseError(number == 0 ? 1 : number, "missing DIMACS header");
  if (!current.empty()) throw ParseError(number, "clause not zero-terminated");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    throw ParseError(number, "clause count does not match header");
  return f;
}

// Decoder file: one 'var <i> <point-index> <x> <y> positive|negative' line
// per variable, meaning that orientation of the reference cluster denotes
// true.
inline std::string render_decoder(const VarDecoder& dec) {
  std::ostringstream out;
  out << "decoder " << dec.vars.size() << "\n";
  for (size_t v = 0; v < dec.vars.size(); ++v) {
    const auto& e = dec.vars[v];
    out << "var " << v + 1 << ' ' << e.point_index << ' ' << e.point.x << ' ' << e.point.y << ' '
        << (e.true_orientation == Orientation::positive ? "positive" : "negative") << "\n";
  }
  return out.str();
}

inline VarDecoder parse_decoder(const std::string& text) {
  auto lines = detail::payload_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'decoder <n>' header");
  auto header = detail::split_words(lines[0].second);
  if (header.size() != 2 || header[0] != "decoder") throw ParseError(lines[0].first, "expected 'decoder <n>' header");
  auto n = detail::parse_int(header[1]);
  if (!n || *n < 0) throw ParseError(lines[0].first, "bad variable count");
  VarDecoder dec;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto [number, line] = lines[i];
    auto words = detail::split_words(line);
    if (words.size() != 6 || words[0] != "var") throw ParseError(number, "expected 'var <i> <index> <x> <y> <orientation>'");
    auto idx = detail::parse_int(words[2]);
    auto x = detail::parse_int(words[3]);
    auto y = detail::parse_int(words[4]);
    if (!idx || !x || !y) throw ParseError(number, "expected integers");
    Orientation o;
    if (words[5] == "positive") o = Orientation::positive;
    else if (words[5] == "negative") o = Orientation::negative;
    else throw ParseError(number, "bad orientation '" + words[5] + "'");
    dec.vars.push_back({*idx, {*x, *y}, o});
  }
  if (dec.vars.size() != static_cast<size_t>(*n)) throw ParseError(lines[0].first, "variable count mismatch");
  return dec;
}

// Diagram rendering: heavy dots for points, an arrow from each point to its
// label center, and the 2x2 label square outline. 10 px per unit, y axis
// flipped for screen orientation.
inline std::string emit_svg(const MflInstance& inst, const MflSolution* sol = nullptr) {
  if (sol) {
    if (!check_mfl_solution(inst, *sol)) throw std::invalid_argument("emit_svg: solution is invalid");
    for (size_t j = 0; j < sol->centers.size(); ++j)
      for (size_t k = j + 1; k < sol->centers.size(); ++k)
        if (chebyshev(sol->centers[j], sol->centers[k]) < 2)
          throw std::logic_error("emit_svg: label squares overlap");
  }
  int min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  bool first = true;
  auto expand = [&](GridPoint p) {
    if (first) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      first = false;
      return;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (GridPoint p : inst.points) expand(p);
  if (sol)
    for (GridPoint c : sol->centers) expand(c);
  const int scale = 10, margin = 2;
  auto sx = [&](double x) { return (x - min_x + margin) * scale; };
  auto sy = [&](double y) { return (max_y + margin - y) * scale; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sx(max_x + margin) << "\" height=\""
      << sy(min_y - margin) << "\" viewBox=\"0 0 " << sx(max_x + margin) << ' ' << sy(min_y - margin)
      << "\">\n";
  if (sol) {
    for (size_t j = 0; j < sol->centers.size(); ++j) {
      GridPoint c = sol->centers[j];
      out << "  <rect class=\"label\" x=\"" << sx(c.x - 1) << "\" y=\"" << sy(c.y + 1)
          << "\" width=\"" << 2 * scale << "\" height=\"" << 2 * scale
          << "\" fill=\"none\" stroke=\"#888\"/>\n";
    }
    for (size_t j = 0; j < sol->centers.size(); ++j) {
      GridPoint p = inst.points[j], c = sol->centers[j];
      double dx = (c.x - p.x) * 0.25, dy = (c.y - p.y) * 0.25;
      out << "  <line class=\"arrow\" x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.y) << "\" x2=\""
          << sx(c.x) << "\" y2=\"" << sy(c.y) << "\" stroke=\"black\"/>\n";
      // arrow head: two barbs back from the tip
      out << "  <line class=\"arrowhead\" x1=\"" << sx(c.x) << "\" y1=\"" << sy(c.y) << "\" x2=\""
          << sx(c.x - dx + dy) << "\" y2=\"" << sy(c.y - dy - dx) << "\" stroke=\"black\"/>\n";
      out << "  <line class=\"arrowhead\" x1=\"" << sx(c.x) << "\" y1=\"" << sy(c.y) << "\" x2=\""
          << sx(c.x - dx - dy) << "\" y2=\"" << sy(c.y - dy + dx) << "\" stroke=\"black\"/>\n";
    }
  }
  for (GridPoint p : inst.points)
    out << "  <circle class=\"dot\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"1.5\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace comprep
