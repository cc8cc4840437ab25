#pragma once

// Text formats.
//
// System file:
//   [walk]      n = .., q = .., order = ascending|descending,
//               kind = classical|quantum, then n lines "theta phi lambda"
//   [system]    gamma = ..
//   [b]         N lines, one value each
//   [weights]   optional, N lines of N values (v for B = P o v)
// '#' starts a comment. Floats are written with 17 significant digits.
//
// Matrix dump: first line "N n", then N rows of N values.

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/linear_system.hpp"
#include "qwalk/walk_matrices.hpp"

namespace qwalk {

/// Shortest-safe round-trip formatting: 17 significant digits, '.' decimal
/// separator regardless of locale.
inline std::string format_double(double x, int precision = 17) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a number, got '" + std::string(tok) + "'");
  return v;
}

inline unsigned long parse_unsigned(std::string_view tok, std::size_t line) {
  unsigned long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline void write_system(std::ostream& os, const LinearSystem& sys) {
  const WalkSpec* spec = sys.spec();
  if (!spec) throw std::invalid_argument("write_system: only walk-spec systems have a file form");
  os << "# qwalk linear system: A = 1 - gamma P\n";
  os << "[walk]\n";
  os << "n = " << spec->n << "\n";
  os << "q = " << spec->q << "\n";
  os << "order = " << to_string(spec->order) << "\n";
  os << "kind = " << to_string(spec->kind) << "\n";
  for (const auto& c : spec->coins)
    os << format_double(c.theta) << ' ' << format_double(c.phi) << ' ' << format_double(c.lambda) << '\n';
  os << "[system]\n";
  os << "gamma = " << format_double(sys.gamma) << "\n";
  os << "[b]\n";
  for (double x : sys.b) os << format_double(x) << '\n';
  if (sys.weights) {
    os << "[weights]\n";
    const auto& v = *sys.weights;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index c = 0; c < v.cols(); ++c) os << (c ? " " : "") << format_double(v(r, c));
      os << '\n';
    }
  }
}

inline LinearSystem read_system(std::istream& is) {
  enum class Section { none, walk, system, rhs, weights } section = Section::none;
  std::map<std::string, std::pair<std::string, std::size_t>> walk_keys, system_keys;
  std::vector<CoinParams> coins;
  std::vector<double> b;
  std::vector<std::vector<double>> weight_rows;
  bool saw_weights = false;
  std::size_t coin_line = 0, weights_line = 0;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s == "[walk]") section = Section::walk;
      else if (s == "[system]") section = Section::system;
      else if (s == "[b]") section = Section::rhs;
      else if (s == "[weights]") section = Section::weights, saw_weights = true, weights_line = line;
      else throw ParseError(line, "unknown section " + std::string(s));
      continue;
    }
    const auto eq = s.find('=');
    switch (section) {
      case Section::none: throw ParseError(line, "content before the first section");
      case Section::walk:
      case Section::system: {
        if (eq == std::string_view::npos) {
          if (section == Section::system) throw ParseError(line, "expected 'key = value'");
          const auto toks = detail::split_ws(s);
          if (toks.size() != 3) throw ParseError(line, "coin line needs 'theta phi lambda'");
          coins.push_back({detail::parse_double(toks[0], line), detail::parse_double(toks[1], line), detail::parse_double(toks[2], line)});
          if (!coin_line) coin_line = line;
          break;
        }
        const std::string key(detail::trim(s.substr(0, eq)));
        const std::string val(detail::trim(s.substr(eq + 1)));
        auto& keys = section == Section::walk ? walk_keys : system_keys;
        if (!keys.emplace(key, std::pair{val, line}).second) throw ParseError(line, "duplicate key '" + key + "'");
        break;
      }
      case Section::rhs: {
        const auto toks = detail::split_ws(s);
        if (toks.size() != 1) throw ParseError(line, "[b] expects one value per line");
        b.push_back(detail::parse_double(toks[0], line));
        break;
      }
      case Section::weights: {
        std::vector<double> row;
        for (auto tok : detail::split_ws(s)) row.push_back(detail::parse_double(tok, line));
        weight_rows.push_back(std::move(row));
        break;
      }
    }
  }

  auto require = [&](auto& keys, const std::string& key) -> const std::pair<std::string, std::size_t>& {
    auto it = keys.find(key);
    if (it == keys.end()) throw ParseError(0, "missing key '" + key + "'");
    return it->second;
  };
  WalkSpec spec;
  {
    const auto& [v, l] = require(walk_keys, "n");
    spec.n = static_cast<unsigned>(detail::parse_unsigned(v, l));
    if (spec.n == 0 || spec.n > kMaxNodeBits) throw ParseError(l, "n out of range");
  }
  if (walk_keys.count("q")) {
    const auto& [v, l] = walk_keys.at("q");
    spec.q = static_cast<unsigned>(detail::parse_unsigned(v, l));
    if (spec.q == 0) throw ParseError(l, "q must be >= 1");
  }
  if (walk_keys.count("order")) {
    const auto& [v, l] = walk_keys.at("order");
    try {
      spec.order = parse_bit_order(v);
    } catch (const std::invalid_argument& e) {
      throw ParseError(l, e.what());
    }
  }
  {
    const auto& [v, l] = require(walk_keys, "kind");
    try {
      spec.kind = parse_walk_kind(v);
    } catch (const std::invalid_argument& e) {
      throw ParseError(l, e.what());
    }
  }
  if (coins.size() != spec.n)
    throw ParseError(coin_line, "expected " + std::to_string(spec.n) + " coin lines, got " + std::to_string(coins.size()));
  spec.coins = std::move(coins);
  const auto& [gamma_text, gamma_line] = require(system_keys, "gamma");
  const double gamma = detail::parse_double(gamma_text, gamma_line);
  const std::size_t dim = std::size_t{1} << spec.n;
  if (b.size() != dim) throw ParseError(0, "[b] has " + std::to_string(b.size()) + " values, expected " + std::to_string(dim));

  std::optional<Eigen::MatrixXd> weights;
  if (saw_weights) {
    if (weight_rows.size() != dim) throw ParseError(weights_line, "[weights] needs " + std::to_string(dim) + " rows");
    Eigen::MatrixXd v(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (weight_rows[r].size() != dim) throw ParseError(weights_line + 1 + r, "weights row has wrong length");
      for (std::size_t c = 0; c < dim; ++c) v(r, c) = weight_rows[r][c];
    }
    weights = std::move(v);
  }
  try {
    return build_system(std::move(spec), gamma, std::move(b), std::move(weights));
  } catch (const SpectralRadiusError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ParseError(0, e.what());
  }
}

inline LinearSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
  return read_system(in);
}

inline void save_system(const std::string& path, const LinearSystem& sys) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_system(out, sys);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void write_matrix_dump(std::ostream& os, const TransitionMatrix& p) {
  const node_index dim = p.dim();
  os << dim << ' ' << p.n << '\n';
  std::string row;
  for (node_index r = 0; r < dim; ++r) {
    row.clear();
    for (node_index c = 0; c < dim; ++c) {
      if (c) row += ' ';
      row += format_double(p.entries(r, c));
    }
    row += '\n';
    os << row;
  }
}

inline TransitionMatrix read_matrix_dump(std::istream& is) {
  std::string raw;
  std::size_t line = 1;
  if (!std::getline(is, raw)) throw ParseError(line, "empty matrix dump");
  const auto head = detail::split_ws(detail::trim(raw));
  if (head.size() != 2) throw ParseError(line, "expected 'N n'");
  const auto dim = detail::parse_unsigned(head[0], line);
  const auto n = detail::parse_unsigned(head[1], line);
  if (n > kMaxDenseBits || dim != (1ul << n)) throw ParseError(line, "N must equal 2^n with n <= " + std::to_string(kMaxDenseBits));
  TransitionMatrix p{static_cast<unsigned>(n), Eigen::MatrixXd(dim, dim)};
  for (std::size_t r = 0; r < dim; ++r) {
    ++line;
    if (!std::getline(is, raw)) throw ParseError(line, "missing matrix row");
    const auto toks = detail::split_ws(detail::trim(raw));
    if (toks.size() != dim) throw ParseError(line, "row has " + std::to_string(toks.size()) + " values, expected " + std::to_string(dim));
    for (std::size_t c = 0; c < dim; ++c) p.entries(r, c) = detail::parse_double(toks[c], line);
  }
  return p;
}

}  // namespace qwalk
