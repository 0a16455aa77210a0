#include "pisr/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "pisr/errors.hpp"
#include "pisr/io.hpp"

namespace pisr {

namespace {

std::string num(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

constexpr int kLpNameLimit = 255;
constexpr int kMpsNameLimit = 8;

// Deterministic shortening for names beyond a format's limit: a prefix of the
// original plus six hex digits of its FNV-1a hash.
std::map<std::string, std::string> shorten_names(const MilpModel& model, int limit) {
  std::map<std::string, std::string> mapping;
  std::map<std::string, std::string> taken;  // short -> original
  auto add = [&](const std::string& name) {
    std::string out = name;
    if (static_cast<int>(name.size()) > limit) {
      const std::string hex = fnv1a_hex(name).substr(0, 6);
      out = name.substr(0, static_cast<std::size_t>(limit - 6)) + hex;
    }
    auto [it, inserted] = taken.emplace(out, name);
    if (!inserted && it->second != name)
      throw FormatError(FormatError::Kind::NameTooLong,
                        "name shortening collision between '" + it->second + "' and '" + name +
                            "' (both map to '" + out + "')");
    mapping[name] = out;
  };
  add("obj");
  for (const Variable& v : model.variables) add(v.name);
  for (const Constraint& r : model.constraints) add(r.name);
  return mapping;
}

std::vector<int> vars_by_name(const MilpModel& model) {
  std::vector<int> order(model.variables.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return model.variables[a].name < model.variables[b].name;
  });
  return order;
}

std::string metadata_comment(const MilpModel& model, char lead) {
  std::string hash = model.instance_hash.empty() ? "none" : model.instance_hash;
  return std::string(1, lead) + " pisr formulation=" + to_string(model.tag) +
         " instance=" + hash + "\n";
}

void append_expression(std::string& out, const MilpModel& model,
                       const std::vector<LinearTerm>& terms,
                       const std::map<std::string, std::string>& names) {
  bool first = true;
  for (const LinearTerm& t : terms) {
    const double coef = t.coef;
    const std::string& name = names.at(model.variables[t.var].name);
    if (first) {
      if (coef == 1.0)
        out += name;
      else if (coef == -1.0)
        out += "- " + name;
      else
        out += num(coef) + " " + name;
      first = false;
    } else {
      if (coef == 1.0)
        out += " + " + name;
      else if (coef == -1.0)
        out += " - " + name;
      else if (coef < 0.0)
        out += " - " + num(-coef) + " " + name;
      else
        out += " + " + num(coef) + " " + name;
    }
  }
  if (first) out += "0 " + names.at(model.variables.empty() ? "obj" : model.variables[0].name);
}

std::string write_lp(const MilpModel& model) {
  const auto names = shorten_names(model, kLpNameLimit);
  std::string out = metadata_comment(model, '\\');
  out += "Minimize\n ";
  out += names.at("obj") + ": ";
  append_expression(out, model, model.objective, names);
  out += "\nSubject To\n";
  for (const Constraint& r : model.constraints) {
    out += " " + names.at(r.name) + ": ";
    append_expression(out, model, r.terms, names);
    switch (r.rel) {
      case Relation::LessEq: out += " <= "; break;
      case Relation::Equal: out += " = "; break;
      case Relation::GreaterEq: out += " >= "; break;
    }
    out += num(r.rhs) + "\n";
  }
  out += "Bounds\n";
  for (int idx : vars_by_name(model)) {
    const Variable& v = model.variables[idx];
    if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) continue;
    const std::string& name = names.at(v.name);
    const bool lo_inf = std::isinf(v.lower) && v.lower < 0.0;
    const bool up_inf = std::isinf(v.upper) && v.upper > 0.0;
    if (lo_inf && up_inf)
      out += " " + name + " free\n";
    else if (v.lower == v.upper)
      out += " " + name + " = " + num(v.lower) + "\n";
    else if (lo_inf)
      out += " " + name + " <= " + num(v.upper) + "\n";
    else if (up_inf)
      out += " " + name + " >= " + num(v.lower) + "\n";
    else
      out += " " + num(v.lower) + " <= " + name + " <= " + num(v.upper) + "\n";
  }
  bool any_binary = false;
  for (const Variable& v : model.variables)
    if (v.kind == VarKind::Binary) any_binary = true;
  if (any_binary) {
    out += "Binaries\n";
    std::string line;
    for (int idx : vars_by_name(model)) {
      const Variable& v = model.variables[idx];
      if (v.kind != VarKind::Binary) continue;
      if (line.size() + names.at(v.name).size() + 1 > 78) {
        out += " " + line + "\n";
        line.clear();
      }
      line += (line.empty() ? "" : " ") + names.at(v.name);
    }
    if (!line.empty()) out += " " + line + "\n";
  }
  out += "End\n";
  return out;
}

std::string write_mps(const MilpModel& model) {
  const auto names = shorten_names(model, kMpsNameLimit);
  std::string out = metadata_comment(model, '*');
  out += "NAME pisr\n";
  out += "ROWS\n";
  out += " N " + names.at("obj") + "\n";
  for (const Constraint& r : model.constraints) {
    char rel = 'L';
    if (r.rel == Relation::Equal) rel = 'E';
    if (r.rel == Relation::GreaterEq) rel = 'G';
    out += std::string(" ") + rel + " " + names.at(r.name) + "\n";
  }

  // Column-major terms: objective first, then constraints in model order.
  std::vector<std::vector<std::pair<std::string, double>>> cols(model.variables.size());
  for (const LinearTerm& t : model.objective) cols[t.var].push_back({names.at("obj"), t.coef});
  for (const Constraint& r : model.constraints)
    for (const LinearTerm& t : r.terms) cols[t.var].push_back({names.at(r.name), t.coef});

  out += "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int idx : vars_by_name(model)) {
    const Variable& v = model.variables[idx];
    const bool want_int = v.kind == VarKind::Binary;
    if (want_int != in_int) {
      out += "    MARKER" + std::to_string(marker++) + " 'MARKER' " +
             (want_int ? "'INTORG'" : "'INTEND'") + "\n";
      in_int = want_int;
    }
    for (const auto& [row, coef] : cols[idx])
      out += "    " + names.at(v.name) + " " + row + " " + num(coef) + "\n";
  }
  if (in_int) out += "    MARKER" + std::to_string(marker++) + " 'MARKER' 'INTEND'\n";

  out += "RHS\n";
  for (const Constraint& r : model.constraints)
    if (r.rhs != 0.0) out += "    RHS " + names.at(r.name) + " " + num(r.rhs) + "\n";

  out += "BOUNDS\n";
  for (int idx : vars_by_name(model)) {
    const Variable& v = model.variables[idx];
    const std::string& name = names.at(v.name);
    const bool lo_inf = std::isinf(v.lower) && v.lower < 0.0;
    const bool up_inf = std::isinf(v.upper) && v.upper > 0.0;
    if (lo_inf && up_inf) {
      out += " FR BND " + name + "\n";
    } else if (v.lower == v.upper) {
      out += " FX BND " + name + " " + num(v.lower) + "\n";
    } else {
      if (lo_inf)
        out += " MI BND " + name + "\n";
      else
        out += " LO BND " + name + " " + num(v.lower) + "\n";
      if (!up_inf) out += " UP BND " + name + " " + num(v.upper) + "\n";
    }
  }
  out += "ENDATA\n";
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

struct ParseState {
  MilpModel model;
  std::map<std::string, int> var_index;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& message, int column = 0) const {
    throw FormatError(FormatError::Kind::SyntaxError,
                      "line " + std::to_string(line_no) + ": " + message, line_no, column);
  }

  int var(const std::string& name) {
    auto it = var_index.find(name);
    if (it != var_index.end()) return it->second;
    model.variables.push_back({name, 0.0, kInfinity, VarKind::Continuous});
    const int idx = static_cast<int>(model.variables.size()) - 1;
    var_index.emplace(name, idx);
    return idx;
  }
};

bool parse_number(const std::string& tok, double& out) {
  if (tok == "inf" || tok == "+inf" || tok == "infinity" || tok == "+infinity") {
    out = kInfinity;
    return true;
  }
  if (tok == "-inf" || tok == "-infinity") {
    out = -kInfinity;
    return true;
  }
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + tok.size() && end != begin;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) toks.push_back(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else if (ch == ':' || ch == '+') {
      flush();
      toks.push_back(std::string(1, ch));
    } else if (ch == '-') {
      // '-' may start a negative number or stand alone as an operator
      if (!cur.empty()) flush();
      toks.push_back("-");
    } else if (ch == '<' || ch == '>' || ch == '=') {
      flush();
      std::string rel(1, ch);
      if (i + 1 < line.size() && (line[i + 1] == '=' || line[i + 1] == '<' || line[i + 1] == '>')) {
        rel += line[i + 1];
        ++i;
      }
      toks.push_back(rel);
    } else {
      cur += ch;
    }
  }
  flush();
  return toks;
}

bool is_relation(const std::string& tok) {
  return tok == "<=" || tok == ">=" || tok == "=" || tok == "=<" || tok == "=>" || tok == "<" ||
         tok == ">";
}

Relation to_relation(const std::string& tok) {
  if (tok == "<=" || tok == "=<" || tok == "<") return Relation::LessEq;
  if (tok == ">=" || tok == "=>" || tok == ">") return Relation::GreaterEq;
  return Relation::Equal;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void read_metadata(const std::string& line, MilpModel& model) {
  std::istringstream in(line);
  std::string word;
  while (in >> word) {
    if (word.rfind("formulation=", 0) == 0) {
      const std::string tag = word.substr(12);
      if (tag == "F1") model.tag = Formulation::F1;
      if (tag == "F2") model.tag = Formulation::F2;
      if (tag == "F3") model.tag = Formulation::F3;
    } else if (word.rfind("instance=", 0) == 0) {
      const std::string hash = word.substr(9);
      model.instance_hash = hash == "none" ? "" : hash;
    }
  }
}

// Parses "[coef] name [+|- [coef] name ...]" into terms.
// `toks` is consumed from `pos` until a relation token or the end.
std::vector<LinearTerm> parse_terms(ParseState& st, const std::vector<std::string>& toks,
                                    std::size_t& pos) {
  std::vector<LinearTerm> terms;
  double sign = 1.0;
  bool have_sign = false;
  while (pos < toks.size() && !is_relation(toks[pos])) {
    const std::string& tok = toks[pos];
    if (tok == "+") {
      if (have_sign) st.fail("dangling sign");
      sign = 1.0;
      have_sign = true;
      ++pos;
      continue;
    }
    if (tok == "-") {
      if (have_sign && sign < 0) st.fail("dangling sign");
      sign = have_sign ? -sign : -1.0;
      have_sign = true;
      ++pos;
      continue;
    }
    double coef = 1.0;
    double maybe = 0.0;
    if (parse_number(tok, maybe)) {
      coef = maybe;
      ++pos;
      if (pos >= toks.size() || is_relation(toks[pos])) {
        // trailing constant; only "0" (an empty expression placeholder) is allowed
        if (maybe != 0.0) st.fail("constant term in expression");
        if (pos < toks.size() && !is_relation(toks[pos])) st.fail("constant term in expression");
        have_sign = false;
        sign = 1.0;
        continue;
      }
    }
    const std::string& name = toks[pos];
    if (name == "+" || name == "-" || is_relation(name)) st.fail("expected variable name");
    double ignored;
    if (parse_number(name, ignored)) st.fail("two consecutive numbers");
    terms.push_back({st.var(name), sign * coef});
    ++pos;
    sign = 1.0;
    have_sign = false;
  }
  if (have_sign) st.fail("expression ends with a sign");
  return terms;
}

MilpModel parse_lp(const std::string& text) {
  ParseState st;
  enum class Section { None, Objective, Constraints, Bounds, Binaries, End };
  Section section = Section::None;

  std::istringstream in(text);
  std::string raw;
  bool metadata_seen = false;
  while (std::getline(in, raw)) {
    ++st.line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (!metadata_seen && raw.rfind("\\ pisr ", 0) == 0) {
      read_metadata(raw, st.model);
      metadata_seen = true;
      continue;
    }
    const std::size_t comment = raw.find('\\');
    if (comment != std::string::npos) raw = raw.substr(0, comment);
    std::string low = lower(raw);
    // trim
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
    };
    trim(low);
    if (low.empty()) continue;

    if (low == "minimize" || low == "min" || low == "minimise") {
      section = Section::Objective;
      continue;
    }
    if (low == "maximize" || low == "max" || low == "maximise")
      throw FormatError(FormatError::Kind::UnsupportedFeature,
                        "line " + std::to_string(st.line_no) + ": maximization not supported",
                        st.line_no);
    if (low == "subject to" || low == "st" || low == "s.t." || low == "such that") {
      section = Section::Constraints;
      continue;
    }
    if (low == "bounds") {
      section = Section::Bounds;
      continue;
    }
    if (low == "binaries" || low == "binary" || low == "bin") {
      section = Section::Binaries;
      continue;
    }
    if (low == "generals" || low == "general" || low == "gen" || low == "integers" ||
        low == "semi-continuous")
      throw FormatError(FormatError::Kind::UnsupportedFeature,
                        "line " + std::to_string(st.line_no) + ": general integers not supported",
                        st.line_no);
    if (low == "end") {
      section = Section::End;
      continue;
    }

    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    switch (section) {
      case Section::Objective: {
        std::size_t pos = 0;
        if (toks.size() >= 2 && toks[1] == ":") pos = 2;  // objective label
        st.model.objective = parse_terms(st, toks, pos);
        if (pos != toks.size()) st.fail("unexpected tokens after objective");
        break;
      }
      case Section::Constraints: {
        std::size_t pos = 0;
        std::string name;
        if (toks.size() >= 2 && toks[1] == ":") {
          name = toks[0];
          pos = 2;
        } else {
          name = "c" + std::to_string(st.model.constraints.size() + 1);
        }
        std::vector<LinearTerm> terms = parse_terms(st, toks, pos);
        if (pos >= toks.size()) st.fail("missing relation");
        if (!is_relation(toks[pos])) st.fail("malformed relation token '" + toks[pos] + "'");
        const Relation rel = to_relation(toks[pos]);
        ++pos;
        if (pos >= toks.size()) st.fail("missing right-hand side");
        std::string rhs_tok = toks[pos];
        if (rhs_tok == "-" && pos + 1 < toks.size()) {
          rhs_tok += toks[pos + 1];
          ++pos;
        }
        double rhs = 0.0;
        if (!parse_number(rhs_tok, rhs)) st.fail("right-hand side is not a number");
        ++pos;
        if (pos != toks.size()) st.fail("unexpected tokens after right-hand side");
        st.model.constraints.push_back({name, std::move(terms), rel, rhs});
        break;
      }
      case Section::Bounds: {
        // forms: "name free" | "name = v" | "name <= v" | "name >= v" |
        //        "lo <= name <= up"
        if (toks.size() == 2 && lower(toks[1]) == "free") {
          Variable& v = st.model.variables[st.var(toks[0])];
          v.lower = -kInfinity;
          v.upper = kInfinity;
          break;
        }
        auto signed_number = [&](std::size_t& p, double& out) {
          double s = 1.0;
          if (p < toks.size() && toks[p] == "-") {
            s = -1.0;
            ++p;
          }
          if (p >= toks.size() || !parse_number(toks[p], out)) return false;
          out *= s;
          ++p;
          return true;
        };
        std::size_t pos = 0;
        double first = 0.0;
        if (signed_number(pos, first)) {
          // lo <= name <= up
          if (pos >= toks.size() || to_relation(toks[pos]) != Relation::LessEq)
            st.fail("expected <= in bound line");
          ++pos;
          if (pos >= toks.size()) st.fail("expected variable name in bound line");
          Variable& v = st.model.variables[st.var(toks[pos])];
          ++pos;
          v.lower = first;
          if (pos < toks.size()) {
            if (to_relation(toks[pos]) != Relation::LessEq) st.fail("expected <= in bound line");
            ++pos;
            double up = 0.0;
            if (!signed_number(pos, up)) st.fail("expected upper bound value");
            v.upper = up;
          }
        } else {
          Variable& v = st.model.variables[st.var(toks[0])];
          pos = 1;
          if (pos >= toks.size() || !is_relation(toks[pos])) st.fail("malformed bound line");
          const Relation rel = to_relation(toks[pos]);
          ++pos;
          double value = 0.0;
          if (!signed_number(pos, value)) st.fail("expected bound value");
          if (rel == Relation::LessEq)
            v.upper = value;
          else if (rel == Relation::GreaterEq)
            v.lower = value;
          else {
            v.lower = value;
            v.upper = value;
          }
        }
        break;
      }
      case Section::Binaries: {
        for (const std::string& tok : toks) {
          Variable& v = st.model.variables[st.var(tok)];
          v.kind = VarKind::Binary;
          if (v.lower < 0.0) v.lower = 0.0;
          if (v.upper > 1.0) v.upper = 1.0;
        }
        break;
      }
      case Section::None:
        st.fail("content before a section header");
      case Section::End:
        st.fail("content after End");
    }
  }
  return std::move(st.model);
}

MilpModel parse_mps(const std::string& text) {
  ParseState st;
  enum class Section { None, Rows, Columns, Rhs, Bounds, Ranges, Done };
  Section section = Section::None;

  std::string objective_row;
  std::map<std::string, int> row_index;  // name -> constraint index
  bool in_int = false;
  bool metadata_seen = false;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++st.line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (!metadata_seen && raw.rfind("* pisr ", 0) == 0) {
      read_metadata(raw, st.model);
      metadata_seen = true;
      continue;
    }
    if (!raw.empty() && raw[0] == '*') continue;
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;

    const std::string head = lower(toks[0]);
    const bool header = !std::isspace(static_cast<unsigned char>(raw[0]));
    if (header) {
      if (head == "name") continue;
      if (head == "rows") { section = Section::Rows; continue; }
      if (head == "columns") { section = Section::Columns; continue; }
      if (head == "rhs") { section = Section::Rhs; continue; }
      if (head == "bounds") { section = Section::Bounds; continue; }
      if (head == "ranges")
        throw FormatError(FormatError::Kind::UnsupportedFeature,
                          "line " + std::to_string(st.line_no) + ": RANGES not supported",
                          st.line_no);
      if (head == "objsense" || head == "objsense:") { section = Section::None; continue; }
      if (head == "endata") { section = Section::Done; continue; }
      st.fail("unknown section '" + toks[0] + "'");
    }

    switch (section) {
      case Section::Rows: {
        if (toks.size() != 2) st.fail("ROWS line needs a type and a name");
        const std::string type = lower(toks[0]);
        if (type == "n") {
          if (!objective_row.empty()) st.fail("duplicate objective row");
          objective_row = toks[1];
        } else {
          Relation rel;
          if (type == "l") rel = Relation::LessEq;
          else if (type == "g") rel = Relation::GreaterEq;
          else if (type == "e") rel = Relation::Equal;
          else { st.fail("unknown row type '" + toks[0] + "'"); }
          row_index[toks[1]] = static_cast<int>(st.model.constraints.size());
          st.model.constraints.push_back({toks[1], {}, rel, 0.0});
        }
        break;
      }
      case Section::Columns: {
        if (toks.size() >= 3 && toks[1] == "'MARKER'") {
          if (toks[2] == "'INTORG'") in_int = true;
          else if (toks[2] == "'INTEND'") in_int = false;
          else st.fail("unknown marker");
          break;
        }
        if (toks.size() != 3 && toks.size() != 5) st.fail("COLUMNS line needs 1 or 2 pairs");
        const int var = st.var(toks[0]);
        if (in_int) st.model.variables[var].kind = VarKind::Binary;
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          double coef = 0.0;
          if (!parse_number(toks[k + 1], coef)) st.fail("bad coefficient '" + toks[k + 1] + "'");
          if (toks[k] == objective_row) {
            st.model.objective.push_back({var, coef});
          } else {
            auto it = row_index.find(toks[k]);
            if (it == row_index.end()) st.fail("unknown row '" + toks[k] + "'");
            st.model.constraints[it->second].terms.push_back({var, coef});
          }
        }
        break;
      }
      case Section::Rhs: {
        if (toks.size() != 3 && toks.size() != 5) st.fail("RHS line needs 1 or 2 pairs");
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          if (toks[k] == objective_row) continue;  // objective constant ignored
          auto it = row_index.find(toks[k]);
          if (it == row_index.end()) st.fail("unknown row '" + toks[k] + "'");
          double rhs = 0.0;
          if (!parse_number(toks[k + 1], rhs)) st.fail("bad RHS value");
          st.model.constraints[it->second].rhs = rhs;
        }
        break;
      }
      case Section::Bounds: {
        if (toks.size() < 3) st.fail("BOUNDS line too short");
        const std::string type = lower(toks[0]);
        Variable& v = st.model.variables[st.var(toks[2])];
        double value = 0.0;
        const bool has_value = toks.size() >= 4 && parse_number(toks[3], value);
        if (type == "lo") { if (!has_value) st.fail("LO needs a value"); v.lower = value; }
        else if (type == "up") { if (!has_value) st.fail("UP needs a value"); v.upper = value; }
        else if (type == "fx") { if (!has_value) st.fail("FX needs a value"); v.lower = v.upper = value; }
        else if (type == "fr") { v.lower = -kInfinity; v.upper = kInfinity; }
        else if (type == "mi") { v.lower = -kInfinity; }
        else if (type == "pl") { v.upper = kInfinity; }
        else if (type == "bv") { v.kind = VarKind::Binary; v.lower = 0.0; v.upper = 1.0; }
        else st.fail("unknown bound type '" + toks[0] + "'");
        break;
      }
      case Section::None:
      case Section::Ranges:
      case Section::Done:
        st.fail("content outside sections");
    }
  }
  if (objective_row.empty())
    throw FormatError(FormatError::Kind::SyntaxError, "no objective row (N) declared");
  // Integer-marked columns default to binary bounds when none are given.
  for (Variable& v : st.model.variables)
    if (v.kind == VarKind::Binary && std::isinf(v.upper)) v.upper = 1.0;
  return std::move(st.model);
}

}  // namespace

std::string write_model(const MilpModel& model, ModelFormat format) {
  return format == ModelFormat::Lp ? write_lp(model) : write_mps(model);
}

MilpModel parse_model(const std::string& text, ModelFormat format) {
  MilpModel model = format == ModelFormat::Lp ? parse_lp(text) : parse_mps(text);
  // Rebuild the index maps from variable names where the naming convention
  // survived (full-length names only).
  VarIndexMaps& maps = model.maps;
  int max_node = -1;
  auto parse_edge = [&](const std::string& name, const char* prefix, int& i, int& j) {
    const std::size_t plen = std::strlen(prefix);
    if (name.rfind(prefix, 0) != 0) return false;
    const std::size_t mid = name.find('_', plen);
    if (mid == std::string::npos) return false;
    try {
      i = std::stoi(name.substr(plen, mid - plen));
      j = std::stoi(name.substr(mid + 1));
    } catch (...) {
      return false;
    }
    return true;
  };
  for (const Variable& v : model.variables) {
    int i, j;
    if (parse_edge(v.name, "x_", i, j) || parse_edge(v.name, "y_", i, j) ||
        parse_edge(v.name, "w_", i, j))
      max_node = std::max(max_node, std::max(i, j));
    else if (v.name.size() > 2 && (v.name[0] == 'u' || v.name[0] == 'v') && v.name[1] == '_')
      max_node = std::max(max_node, std::atoi(v.name.c_str() + 2));
  }
  if (max_node >= 1) {
    const int nn = max_node + 1;
    maps.n_nodes = nn;
    maps.x.assign(nn * nn, -1);
    maps.y.assign(nn * nn, -1);
    maps.w.assign(nn * nn, -1);
    maps.u.assign(nn, -1);
    maps.v.assign(nn, -1);
    bool any_y = false, any_uv = false;
    for (int idx = 0; idx < model.n_vars(); ++idx) {
      const std::string& name = model.variables[idx].name;
      int i, j;
      if (parse_edge(name, "x_", i, j)) maps.x[i * nn + j] = idx;
      else if (parse_edge(name, "y_", i, j)) { maps.y[i * nn + j] = idx; any_y = true; }
      else if (parse_edge(name, "w_", i, j)) { maps.w[i * nn + j] = idx; any_y = true; }
      else if (name.rfind("u_", 0) == 0) { maps.u[std::atoi(name.c_str() + 2)] = idx; any_uv = true; }
      else if (name.rfind("v_", 0) == 0) { maps.v[std::atoi(name.c_str() + 2)] = idx; any_uv = true; }
      else if (name == "z") maps.z = idx;
    }
    if (!any_y) { maps.y.clear(); maps.w.clear(); }
    if (!any_uv) { maps.u.clear(); maps.v.clear(); }
  }
  return model;
}

}  // namespace pisr
