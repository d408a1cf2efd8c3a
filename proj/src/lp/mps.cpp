#include "bellport/lp/mps.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <unordered_set>
#include <vector>

namespace bellport::lp {

namespace {

std::string number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

// Field start columns (1-based): 2, 5, 15, 25.
std::string line(std::string_view f1, std::string_view f2, std::string_view f3 = {}, std::string_view f4 = {}) {
  std::string out(" ");
  out += f1;
  out.resize(4, ' ');
  out += f2;
  if (f3.empty() && f4.empty()) {
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + '\n';
  }
  out.resize(14, ' ');
  out += f3;
  if (!f4.empty()) {
    out.resize(24, ' ');
    out += f4;
  }
  return out + '\n';
}

std::string padded_index(char prefix, Index i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%07lld", prefix, static_cast<long long>(i));
  return buf;
}

}  // namespace

std::string mps_field_name(std::string_view name) {
  if (name.size() <= 8) return std::string(name);
  std::uint32_t hash = 2166136261u;
  for (unsigned char c : name) {
    hash ^= c;
    hash *= 16777619u;
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06x", hash & 0xFFFFFFu);
  return std::string(name.substr(0, 2)) + buf;
}

std::string export_mps(const LinearProgramd& lp, std::string_view name) {
  const Index n = lp.num_vars();
  const Index m = lp.num_constraints();

  std::vector<std::string> col_names(static_cast<std::size_t>(n));
  std::vector<std::string> row_names(static_cast<std::size_t>(m));
  std::unordered_set<std::string> used{"OBJ"};
  auto unique = [&used](std::string candidate, char prefix, Index i) {
    if (candidate.empty() || used.count(candidate)) candidate = padded_index(prefix, i);
    used.insert(candidate);
    return candidate;
  };
  for (Index j = 0; j < n; ++j) {
    col_names[static_cast<std::size_t>(j)] = unique(mps_field_name(lp.variable_name(j)), 'C', j);
  }
  used = {"OBJ"};
  for (Index r = 0; r < m; ++r) {
    row_names[static_cast<std::size_t>(r)] = unique(mps_field_name(lp.constraint(r).name), 'R', r);
  }

  // column-wise view of the constraint matrix
  std::vector<std::vector<std::pair<Index, double>>> columns(static_cast<std::size_t>(n));
  for (Index r = 0; r < m; ++r) {
    for (const auto& t : lp.constraint(r).terms) {
      if (t.coefficient != 0.0) columns[static_cast<std::size_t>(t.column)].emplace_back(r, t.coefficient);
    }
  }

  std::string out;
  out += "* objective sense: MAXIMIZE, written as MIN of the negated objective\n";
  out += "* optimum of the original program = -(optimum of this file)\n";
  out += "NAME          " + mps_field_name(name) + "\n";
  out += "ROWS\n";
  out += line("N", "OBJ");
  for (Index r = 0; r < m; ++r) out += line("E", row_names[static_cast<std::size_t>(r)]);
  out += "COLUMNS\n";
  for (Index j = 0; j < n; ++j) {
    const std::string& cname = col_names[static_cast<std::size_t>(j)];
    const double c = lp.objective()[static_cast<std::size_t>(j)];
    const auto& entries = columns[static_cast<std::size_t>(j)];
    if (c != 0.0 || entries.empty()) out += line("", cname, "OBJ", number(c == 0.0 ? 0.0 : -c));
    for (const auto& [r, v] : entries) out += line("", cname, row_names[static_cast<std::size_t>(r)], number(v));
  }
  out += "RHS\n";
  for (Index r = 0; r < m; ++r) {
    const double rhs = lp.constraint(r).rhs;
    if (rhs != 0.0) out += line("", "RHS", row_names[static_cast<std::size_t>(r)], number(rhs));
  }
  bool bounds_header = false;
  auto bound = [&](std::string_view kind, const std::string& cname, std::string_view value) {
    if (!bounds_header) {
      out += "BOUNDS\n";
      bounds_header = true;
    }
    out += line(kind, "BND", cname, value);
  };
  for (Index j = 0; j < n; ++j) {
    const auto& b = lp.bounds(j);
    const std::string& cname = col_names[static_cast<std::size_t>(j)];
    if (!b.lower && !b.upper) {
      bound("FR", cname, {});
      continue;
    }
    if (!b.lower) bound("MI", cname, {});
    if (b.lower && b.upper && *b.lower == *b.upper) {
      bound("FX", cname, number(*b.lower));
      continue;
    }
    if (b.lower && *b.lower != 0.0) bound("LO", cname, number(*b.lower));
    if (b.upper) bound("UP", cname, number(*b.upper));
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace bellport::lp
