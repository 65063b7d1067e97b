// Copyright 2026 The mrbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrbounds/simplex.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "mrbounds/errors.hpp"

namespace mrbounds {

void StandardFormLP::check() const {
  if (a.size() != num_rows * num_vars || b.size() != num_rows || c.size() != num_vars ||
      free.size() != num_vars) {
    throw DomainError("LP dimensions are inconsistent");
  }
  if (!var_names.empty() && var_names.size() != num_vars) throw DomainError("var_names size");
  if (!row_names.empty() && row_names.size() != num_rows) throw DomainError("row_names size");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite) ||
      !std::all_of(c.begin(), c.end(), finite)) {
    throw DomainError("LP has non-finite entries");
  }
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kDegenerateRunBeforeBland = 50;

class Tableau {
 public:
  Tableau(const StandardFormLP& lp, const SimplexOptions& opts) : lp_(lp), opts_(opts) {
    m_ = lp.num_rows;
    n_ = lp.num_vars;
    // At most one artificial per row; which rows need one is only known after
    // the free columns have been eliminated.
    cols_ = n_ + 2 * m_;
    t_.assign(m_ * cols_, 0.0);
    rhs_ = lp.b;
    basis_.assign(m_, kNone);
    row_free_.assign(m_, false);
    banned_.assign(cols_, false);
    is_basic_.assign(cols_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j < n_; ++j) at(r, j) = lp.at(r, j);
      at(r, n_ + r) = 1.0;
      set_basic(r, n_ + r);
    }
  }

  LpSolution run() {
    LpSolution sol;
    eliminate_free();
    if (!phase_one(sol)) return sol;
    phase_two(sol);
    return sol;
  }

 private:
  double& at(std::size_t r, std::size_t j) { return t_[r * cols_ + j]; }
  double at(std::size_t r, std::size_t j) const { return t_[r * cols_ + j]; }
  bool is_artificial(std::size_t j) const { return j >= n_ + m_; }
  bool is_free_col(std::size_t j) const { return j < n_ && lp_.free[j]; }

  void set_basic(std::size_t r, std::size_t j) {
    if (basis_[r] != kNone) is_basic_[basis_[r]] = false;
    basis_[r] = j;
    is_basic_[j] = true;
  }

  void pivot(std::size_t r, std::size_t q) {
    const double piv = at(r, q);
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(r, j) != 0.0) {
        at(r, j) /= piv;
        nz_.push_back(j);
      }
    }
    rhs_[r] /= piv;
    at(r, q) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      double* row = &t_[i * cols_];
      const double* prow = &t_[r * cols_];
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[q] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double dq = d_[q];
    if (dq != 0.0) {
      for (std::size_t j : nz_) d_[j] -= dq * at(r, j);
      d_[q] = 0.0;
      obj_ += dq * rhs_[r];
    }
    set_basic(r, q);
  }

  void eliminate_free() {
    d_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!lp_.free[j]) continue;
      std::size_t best = kNone;
      double best_abs = opts_.pivot_tol;
      for (std::size_t r = 0; r < m_; ++r) {
        if (row_free_[r]) continue;
        const double v = std::abs(at(r, j));
        if (v > best_abs) {
          best_abs = v;
          best = r;
        }
      }
      if (best == kNone) continue;
      pivot(best, j);
      row_free_[best] = true;
    }
  }

  // Returns false (with status set) if the problem is infeasible.
  bool phase_one(LpSolution& sol) {
    std::size_t next_art = n_ + m_;
    std::vector<std::size_t> art_rows;
    for (std::size_t r = 0; r < m_; ++r) {
      if (row_free_[r] || rhs_[r] >= 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) at(r, j) = -at(r, j);
      rhs_[r] = -rhs_[r];
      at(r, next_art) = 1.0;
      set_basic(r, next_art);
      art_rows.push_back(r);
      ++next_art;
    }
    if (art_rows.empty()) return true;

    // Minimize the sum of artificials.
    std::fill(d_.begin(), d_.end(), 0.0);
    obj_ = 0.0;
    for (std::size_t r : art_rows) {
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_artificial(j)) d_[j] -= at(r, j);
      obj_ += rhs_[r];
    }
    iterate(sol, /*phase_two=*/false);
    double scale = 1.0;
    for (double v : lp_.b) scale = std::max(scale, std::abs(v));
    if (obj_ > opts_.feasibility_tol * scale) {
      sol.status = LpStatus::infeasible;
      return false;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::size_t q = kNone;
      double best = opts_.pivot_tol;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (is_basic_[j]) continue;
        if (std::abs(at(r, j)) > best) {
          best = std::abs(at(r, j));
          q = j;
        }
      }
      if (q != kNone) pivot(r, q);
    }
    for (std::size_t j = n_ + m_; j < cols_; ++j) banned_[j] = true;
    return true;
  }

  void phase_two(LpSolution& sol) {
    const double sign = lp_.sense == Sense::maximize ? -1.0 : 1.0;
    auto cost = [&](std::size_t j) { return j < n_ ? sign * lp_.c[j] : 0.0; };
    for (std::size_t j = 0; j < cols_; ++j) d_[j] = cost(j);
    obj_ = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost(basis_[r]);
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * at(r, j);
      obj_ += cb * rhs_[r];
    }
    for (std::size_t r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
    if (!iterate(sol, /*phase_two=*/true)) return;

    sol.status = LpStatus::optimal;
    sol.x.assign(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) sol.x[basis_[r]] = rhs_[r];
    double z = 0.0;
    for (std::size_t j = 0; j < n_; ++j) z += lp_.c[j] * sol.x[j];
    sol.objective = z;
  }

  // Runs pivots until optimal. Returns false if unbounded (phase two only).
  bool iterate(LpSolution& sol, bool phase_two) {
    std::size_t degenerate_run = 0;
    while (true) {
      if (sol.iterations >= opts_.max_iterations) {
        throw InvariantError("simplex iteration limit reached");
      }
      const bool use_bland =
          opts_.rule == PivotRule::bland || degenerate_run >= kDegenerateRunBeforeBland;
      std::size_t q = kNone;
      double best = -opts_.optimality_tol;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_basic_[j] || banned_[j]) continue;
        if (is_free_col(j)) {
          // A nonbasic free column is zero on every constrained row.
          if (phase_two && std::abs(d_[j]) > opts_.optimality_tol) {
            sol.status = LpStatus::unbounded;
            return false;
          }
          continue;
        }
        if (d_[j] < best) {
          q = j;
          if (use_bland) break;
          best = d_[j];
        }
      }
      if (q == kNone) return true;

      // Harris ratio test: find the largest step that keeps every row within
      // the feasibility tolerance, then take the largest pivot among the rows
      // that block at or before it.
      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (row_free_[i]) continue;
        const double v = at(i, q);
        if (v <= opts_.pivot_tol) continue;
        theta = std::min(theta, (std::max(rhs_[i], 0.0) + opts_.feasibility_tol) / v);
      }
      std::size_t r = kNone;
      double ratio = 0.0, best_piv = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (row_free_[i]) continue;
        const double v = at(i, q);
        if (v <= opts_.pivot_tol) continue;
        const double rt = std::max(rhs_[i], 0.0) / v;
        if (rt > theta) continue;
        if (v > best_piv || (v == best_piv && basis_[i] < basis_[r])) {
          best_piv = v;
          ratio = rt;
          r = i;
        }
      }
      if (r == kNone) {
        if (phase_two) {
          sol.status = LpStatus::unbounded;
          return false;
        }
        throw InvariantError("phase one is unbounded");
      }
      degenerate_run = ratio == 0.0 ? degenerate_run + 1 : 0;
      pivot(r, q);
      ++sol.iterations;
    }
  }

  const StandardFormLP& lp_;
  SimplexOptions opts_;
  std::size_t m_ = 0, n_ = 0, cols_ = 0;
  std::vector<double> t_, rhs_, d_;
  double obj_ = 0.0;
  std::vector<std::size_t> basis_, nz_;
  std::vector<bool> row_free_, banned_, is_basic_;
};

}  // namespace

LpSolution solve(const StandardFormLP& lp, const SimplexOptions& opts) {
  lp.check();
  Tableau tab(lp, opts);
  return tab.run();
}

SolutionAudit verify_solution(const StandardFormLP& lp, const std::vector<double>& x) {
  if (x.size() != lp.num_vars) throw DomainError("point dimension does not match the LP");
  SolutionAudit audit;
  for (std::size_t r = 0; r < lp.num_rows; ++r) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.at(r, j) * x[j];
    audit.max_violation = std::max(audit.max_violation, lhs - lp.b[r]);
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (!lp.free[j]) audit.max_violation = std::max(audit.max_violation, -x[j]);
    audit.objective += lp.c[j] * x[j];
  }
  return audit;
}

// ---------------------------------------------------------------------------
// LP text format.

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.17g", v);
  return buf;
}

std::string var_name(const StandardFormLP& lp, std::size_t j) {
  return lp.var_names.empty() ? "x" + std::to_string(j) : lp.var_names[j];
}

std::string row_name(const StandardFormLP& lp, std::size_t r) {
  return lp.row_names.empty() ? "r" + std::to_string(r) : lp.row_names[r];
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

bool parse_number(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  const std::string t = lower(tok);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (t == "-inf" || t == "-infinity") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

struct LinearStatement {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  std::string comparator;
  double rhs = 0.0;
};

// Parses "[name:] {[sign] [coef] var} [cmp rhs]" from a token list.
LinearStatement parse_statement(const std::vector<std::string>& toks, bool expect_cmp) {
  LinearStatement st;
  std::size_t i = 0;
  if (!toks.empty() && toks[0].back() == ':') {
    st.name = toks[0].substr(0, toks[0].size() - 1);
    i = 1;
  }
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  for (; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>") {
      if (!expect_cmp || i + 2 != toks.size()) throw ConfigError("malformed LP row: " + st.name);
      st.comparator = t == "=<" ? "<=" : (t == "=>" ? ">=" : t);
      if (!parse_number(toks[i + 1], st.rhs)) throw ConfigError("bad right-hand side in " + st.name);
      return st;
    }
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    double v;
    if (parse_number(t, v)) {
      coef = v;
      have_coef = true;
      continue;
    }
    st.terms.emplace_back(t, sign * (have_coef ? coef : 1.0));
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  if (expect_cmp) throw ConfigError("LP row without comparator: " + st.name);
  if (have_coef && coef != 0.0) throw ConfigError("objective constants are not supported");
  return st;
}

}  // namespace

std::string write_lp_file(const StandardFormLP& lp) {
  lp.check();
  std::ostringstream os;
  os << "\\ written by mrbounds\n";
  os << (lp.sense == Sense::minimize ? "Minimize\n" : "Maximize\n");
  os << " obj:";
  for (std::size_t j = 0; j < lp.num_vars; ++j) os << ' ' << num(lp.c[j]) << ' ' << var_name(lp, j);
  os << "\nSubject To\n";
  for (std::size_t r = 0; r < lp.num_rows; ++r) {
    os << ' ' << row_name(lp, r) << ':';
    bool any = false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      const double v = lp.at(r, j);
      if (v == 0.0) continue;
      os << ' ' << num(v) << ' ' << var_name(lp, j);
      any = true;
    }
    if (!any) os << " +0 " << var_name(lp, 0);
    os << " <= " << num(lp.b[r]) << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    os << ' ' << var_name(lp, j) << (lp.free[j] ? " free\n" : " >= 0\n");
  os << "End\n";
  return os.str();
}

StandardFormLP read_lp_file(std::string_view text) {
  enum class Section { none, objective, constraints, bounds, done };
  Section section = Section::none;
  Sense sense = Sense::minimize;
  std::vector<std::string> obj_tokens;
  std::vector<std::vector<std::string>> row_tokens;
  std::vector<std::string> pending;
  std::vector<std::vector<std::string>> bound_lines;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto bs = line.find('\\'); bs != std::string::npos) line.erase(bs);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const std::string head = lower(toks[0]);
    if (head == "minimize" || head == "minimise" || head == "min") {
      section = Section::objective;
      sense = Sense::minimize;
      continue;
    }
    if (head == "maximize" || head == "maximise" || head == "max") {
      section = Section::objective;
      sense = Sense::maximize;
      continue;
    }
    if ((head == "subject" && toks.size() > 1 && lower(toks[1]) == "to") || head == "st" ||
        head == "s.t.") {
      section = Section::constraints;
      continue;
    }
    if (head == "bounds") {
      section = Section::bounds;
      continue;
    }
    if (head == "end") {
      section = Section::done;
      continue;
    }
    switch (section) {
      case Section::objective:
        obj_tokens.insert(obj_tokens.end(), toks.begin(), toks.end());
        break;
      case Section::constraints:
        for (const auto& t : toks) {
          pending.push_back(t);
          const std::size_t n = pending.size();
          if (n >= 2) {
            const std::string& cmp = pending[n - 2];
            double v;
            if ((cmp == "<=" || cmp == ">=" || cmp == "=" || cmp == "=<" || cmp == "=>") &&
                parse_number(pending[n - 1], v)) {
              row_tokens.push_back(pending);
              pending.clear();
            }
          }
        }
        break;
      case Section::bounds:
        bound_lines.push_back(toks);
        break;
      default:
        throw ConfigError("LP text outside any section: " + line);
    }
  }
  if (!pending.empty()) throw ConfigError("unterminated LP row");

  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  auto var = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    index.emplace(name, names.size());
    names.push_back(name);
    return names.size() - 1;
  };

  const LinearStatement obj = parse_statement(obj_tokens, false);
  for (const auto& [name, v] : obj.terms) var(name);
  std::vector<LinearStatement> rows;
  for (const auto& toks : row_tokens) {
    rows.push_back(parse_statement(toks, true));
    for (const auto& [name, v] : rows.back().terms) var(name);
  }
  std::vector<bool> is_free;
  std::vector<std::pair<std::size_t, bool>> bounds;
  for (const auto& toks : bound_lines) {
    if (toks.size() == 2 && lower(toks[1]) == "free") {
      bounds.emplace_back(var(toks[0]), true);
      continue;
    }
    double v;
    if (toks.size() == 3 && toks[1] == ">=" && parse_number(toks[2], v)) {
      if (v == 0.0) bounds.emplace_back(var(toks[0]), false);
      else if (std::isinf(v) && v < 0) bounds.emplace_back(var(toks[0]), true);
      else throw ConfigError("only zero or -inf lower bounds are supported: " + toks[0]);
      continue;
    }
    if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=" && parse_number(toks[0], v) &&
        std::isinf(v) && v < 0) {
      double hi;
      if (parse_number(toks[4], hi) && std::isinf(hi) && hi > 0) {
        bounds.emplace_back(var(toks[2]), true);
        continue;
      }
    }
    throw ConfigError("unsupported bound line for " + toks[0]);
  }

  std::size_t n_rows = 0;
  for (const auto& r : rows) n_rows += r.comparator == "=" ? 2 : 1;
  StandardFormLP lp(n_rows, names.size());
  lp.sense = sense;
  lp.var_names = names;
  lp.row_names.resize(n_rows);
  for (const auto& [name, v] : obj.terms) lp.c[index.at(name)] += v;
  std::size_t r = 0;
  for (const auto& row : rows) {
    const double flip = row.comparator == ">=" ? -1.0 : 1.0;
    for (const auto& [name, v] : row.terms) lp.at(r, index.at(name)) += flip * v;
    lp.b[r] = flip * row.rhs;
    lp.row_names[r] = row.name.empty() ? "r" + std::to_string(r) : row.name;
    ++r;
    if (row.comparator == "=") {
      for (const auto& [name, v] : row.terms) lp.at(r, index.at(name)) -= v;
      lp.b[r] = -row.rhs;
      lp.row_names[r] = lp.row_names[r - 1] + "_ge";
      ++r;
    }
  }
  for (const auto& [j, f] : bounds) lp.free[j] = f;
  lp.check();
  return lp;
}

}  // namespace mrbounds
