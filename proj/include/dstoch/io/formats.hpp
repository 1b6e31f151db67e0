#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/rational.hpp"
#include "dstoch/transformation_matrix.hpp"

// TMX (transformation matrix) and GMX (grid measure) text formats.
//
//   tmx 1                      gmx 1
//   d <d>                      d <d>
//   m <m_1> ... <m_d>          r <r_1> ... <r_d>
//   <i_1> ... <i_d> <p>/<q>    <c_1> ... <c_d> <p>/<q>
//
// TMX indices are 1-based, GMX cells 0-based. One line per positive entry, in
// lexicographic key order, masses in lowest terms. Readers reject duplicate or
// unordered keys, non-positive masses and a total mass other than one. Blank
// lines and lines starting with '#' are ignored.

namespace dstoch {

inline constexpr int kTmxVersion = 1;
inline constexpr int kGmxVersion = 1;

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank, non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream ss(line);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_no_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_no_); }

  std::int64_t integer(const std::string& tok) const {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  Rational rational(const std::string& tok) const {
    try {
      return Rational::parse(tok);
    } catch (const std::exception& e) {
      fail(std::string("bad rational: ") + e.what());
    }
  }

  void expect_header(const char* magic, int version) {
    std::vector<std::string> t;
    if (!next(t)) fail(std::string("empty input, expected '") + magic + " " + std::to_string(version) + "'");
    if (t.size() != 2 || t[0] != magic) fail(std::string("expected header '") + magic + " <version>'");
    if (integer(t[1]) != version) fail("unsupported " + std::string(magic) + " version " + t[1]);
  }

  int dimension() {
    std::vector<std::string> t;
    if (!next(t) || t.size() != 2 || t[0] != "d") fail("expected 'd <int>'");
    const auto d = integer(t[1]);
    if (d < 1 || d > 64) fail("dimension out of range");
    return static_cast<int>(d);
  }

  std::vector<std::int64_t> shape(const char* key, int d) {
    std::vector<std::string> t;
    if (!next(t) || t[0] != key || static_cast<int>(t.size()) != d + 1) {
      fail(std::string("expected '") + key + "' followed by " + std::to_string(d) + " integers");
    }
    std::vector<std::int64_t> out;
    for (std::size_t k = 1; k < t.size(); ++k) out.push_back(integer(t[k]));
    return out;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

template <typename Key, typename ToKey, typename Check>
std::map<Key, Rational> read_entries(LineReader& r, int d, ToKey to_key, Check check) {
  std::map<Key, Rational> out;
  std::vector<std::string> t;
  Rational total;
  const Key* last = nullptr;
  while (r.next(t)) {
    if (static_cast<int>(t.size()) != d + 1) r.fail("expected " + std::to_string(d) + " indices and a mass");
    Key key;
    for (int j = 0; j < d; ++j) key.push_back(to_key(r.integer(t[static_cast<std::size_t>(j)])));
    check(key);
    const Rational mass = r.rational(t.back());
    if (!mass.is_positive()) r.fail("mass must be positive");
    if (out.contains(key)) r.fail("duplicate key");
    if (last != nullptr && !(*last < key)) r.fail("keys are not in lexicographic order");
    total += mass;
    last = &out.emplace(std::move(key), mass).first->first;
  }
  if (total != Rational{1}) throw ParseError("total mass " + total.str() + " != 1", r.line());
  return out;
}

}  // namespace detail

inline void write_tmx(std::ostream& os, const TransformationMatrix& t) {
  os << "tmx " << kTmxVersion << "\n" << "d " << t.d() << "\n" << "m";
  for (int mj : t.dims().extents()) os << " " << mj;
  os << "\n";
  for (const auto& [key, mass] : t.entries()) {
    for (int v : key) os << v << " ";
    os << mass.str() << "\n";
  }
}

inline TransformationMatrix read_tmx(std::istream& in) {
  detail::LineReader r(in);
  r.expect_header("tmx", kTmxVersion);
  const int d = r.dimension();
  const auto m64 = r.shape("m", d);
  std::vector<int> m;
  for (auto v : m64) {
    if (v < 2 || v > 1'000'000) r.fail("every m_j must be in [2, 1e6]");
    m.push_back(static_cast<int>(v));
  }
  if (d < 2) r.fail("dimension must be >= 2");
  const Dims dims(m);
  auto entries = detail::read_entries<MultiIndex>(
      r, d, [](std::int64_t v) { return static_cast<int>(v); },
      [&](const MultiIndex& i) {
        if (!dims.contains(i)) r.fail("index " + format_index(i) + " out of range");
      });
  return {dims, entries};
}

inline void write_gmx(std::ostream& os, const GridMeasure& mu) {
  os << "gmx " << kGmxVersion << "\n" << "d " << mu.d() << "\n" << "r";
  for (auto rj : mu.resolution()) os << " " << rj;
  os << "\n";
  for (const auto& [cell, mass] : mu.masses()) {
    for (auto c : cell) os << c << " ";
    os << mass.str() << "\n";
  }
}

inline GridMeasure read_gmx(std::istream& in) {
  detail::LineReader r(in);
  r.expect_header("gmx", kGmxVersion);
  const int d = r.dimension();
  const auto res = r.shape("r", d);
  for (auto v : res) {
    if (v < 1) r.fail("resolution components must be >= 1");
  }
  auto masses = detail::read_entries<Cell>(
      r, d, [](std::int64_t v) { return v; },
      [&](const Cell& c) {
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (c[j] < 0 || c[j] >= res[j]) r.fail("cell (" + format_cell(c) + ") outside resolution");
        }
      });
  return {res, masses};
}

template <typename T, typename Writer>
std::string to_text(const T& value, Writer write) {
  std::ostringstream os;
  write(os, value);
  return os.str();
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

inline TransformationMatrix read_tmx_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_tmx(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

inline GridMeasure read_gmx_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_gmx(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

}  // namespace dstoch
