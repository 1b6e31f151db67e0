#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "dstoch/constructions.hpp"
#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/io/formats.hpp"
#include "dstoch/permutation.hpp"
#include "dstoch/transformation_matrix.hpp"

// Named constructions accepted wherever a matrix or measure is expected:
//
//   sierpinski:d=3,N=2     rotation:N=3,cycle=231   example-5-1
//   modsum:d=3,k=8         dense:d=3,N=3,k=2        uniform:d=3,N=2
//
// Anything else is treated as a path; .gmx files load as grid measures, all
// other files as TMX. `cycle` is one-line notation, digits run together
// ("231") or separated by '-' ("10-1-2-...").

namespace dstoch {

using Source = std::variant<TransformationMatrix, GridMeasure>;

struct PresetSpec {
  std::string name;
  std::map<std::string, std::string> args;
};

inline PresetSpec parse_preset(const std::string& text) {
  PresetSpec p;
  const auto colon = text.find(':');
  p.name = text.substr(0, colon);
  if (colon == std::string::npos) return p;
  std::string rest = text.substr(colon + 1);
  std::size_t at = 0;
  while (at <= rest.size()) {
    const auto comma = rest.find(',', at);
    const std::string kv = rest.substr(at, comma == std::string::npos ? std::string::npos : comma - at);
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("preset '" + text + "': expected key=value, got '" + kv + "'", 0);
    if (!p.args.emplace(kv.substr(0, eq), kv.substr(eq + 1)).second) {
      throw ParseError("preset '" + text + "': repeated key '" + kv.substr(0, eq) + "'", 0);
    }
    if (comma == std::string::npos) break;
    at = comma + 1;
  }
  return p;
}

inline Permutation parse_cycle(const std::string& s) {
  Permutation p;
  try {
    if (s.find('-') != std::string::npos) {
      std::size_t at = 0;
      while (true) {
        const auto dash = s.find('-', at);
        p.push_back(std::stoi(s.substr(at, dash == std::string::npos ? std::string::npos : dash - at)));
        if (dash == std::string::npos) break;
        at = dash + 1;
      }
    } else {
      for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument(s);
        p.push_back(c - '0');
      }
    }
  } catch (const std::exception&) {
    throw ParseError("bad permutation '" + s + "'", 0);
  }
  if (p.empty()) throw ParseError("empty permutation", 0);
  return p;
}

inline bool is_preset_name(const std::string& name) {
  return name == "sierpinski" || name == "rotation" || name == "example-5-1" || name == "modsum" ||
         name == "dense" || name == "uniform";
}

inline Source load_source(const std::string& text) {
  const PresetSpec p = parse_preset(text);
  if (!is_preset_name(p.name)) {
    if (text.size() >= 4 && text.compare(text.size() - 4, 4, ".gmx") == 0) return read_gmx_file(text);
    return read_tmx_file(text);
  }
  std::map<std::string, std::string> args = p.args;
  const auto take = [&](const std::string& key) -> std::string {
    const auto it = args.find(key);
    if (it == args.end()) throw ParseError("preset '" + text + "': missing '" + key + "'", 0);
    std::string v = it->second;
    args.erase(it);
    return v;
  };
  const auto take_int = [&](const std::string& key) -> std::int64_t {
    const std::string v = take(key);
    std::size_t pos = 0;
    std::int64_t out = 0;
    try {
      out = std::stoll(v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw ParseError("preset '" + text + "': '" + key + "' is not an integer", 0);
    return out;
  };

  Source out = [&]() -> Source {
    if (p.name == "sierpinski") {
      const auto d = take_int("d");
      return sierpinski_tau(static_cast<int>(d), static_cast<int>(take_int("N")));
    }
    if (p.name == "uniform") {
      const auto d = take_int("d");
      return uniform_tau(static_cast<int>(d), static_cast<int>(take_int("N")));
    }
    if (p.name == "rotation") {
      const auto n = take_int("N");
      const Permutation eps = parse_cycle(take("cycle"));
      if (static_cast<std::int64_t>(eps.size()) != n) {
        throw ParseError("preset '" + text + "': cycle has length " + std::to_string(eps.size()) + ", N = " +
                             std::to_string(n), 0);
      }
      return rotation_tau(eps);
    }
    if (p.name == "example-5-1") return rotation_mixture_tau();
    if (p.name == "modsum") {
      const auto d = take_int("d");
      return modsum_grid_measure(static_cast<int>(d), take_int("k"));
    }
    const auto d = take_int("d");
    const auto n = take_int("N");
    return dense_dimension_tau(static_cast<int>(d), static_cast<int>(n), static_cast<int>(take_int("k"))).sigma;
  }();
  if (!args.empty()) throw ParseError("preset '" + text + "': unknown key '" + args.begin()->first + "'", 0);
  return out;
}

inline TransformationMatrix load_matrix(const std::string& text) {
  Source s = load_source(text);
  if (auto* t = std::get_if<TransformationMatrix>(&s)) return std::move(*t);
  throw StructuralError("'" + text + "' is a grid measure, a transformation matrix is needed");
}

/// Grid measures load as-is; a matrix stands for its one-step image of
/// Lebesgue measure, the checkerboard measure with masses tau(i).
inline GridMeasure load_measure(const std::string& text) {
  Source s = load_source(text);
  if (auto* m = std::get_if<GridMeasure>(&s)) return std::move(*m);
  const auto& t = std::get<TransformationMatrix>(s);
  const auto n = uniform_class_side(t);
  if (!n) throw UnsupportedConfiguration("'" + text + "' is not in the uniform class; cannot form a grid measure");
  GridMeasure::Masses masses;
  for (const auto& [key, mass] : t.entries()) {
    Cell c;
    for (int v : key) c.push_back(v - 1);
    masses.emplace(std::move(c), mass);
  }
  return {std::vector<std::int64_t>(static_cast<std::size_t>(t.d()), *n), masses};
}

}  // namespace dstoch
