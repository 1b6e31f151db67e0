#pragma once

#include <array>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dstoch/analysis/transport.hpp"
#include "dstoch/cell_set.hpp"
#include "dstoch/chaos_game.hpp"
#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/ifsp.hpp"
#include "dstoch/io/formats.hpp"

namespace dstoch {

/// %.17g, enough to round-trip any double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

// ---- cell sets -------------------------------------------------------------

/// "cells 1", "d <d>", "depth <n>", "count <k>", then one rectangle per line:
/// lo_1 .. lo_d hi_1 .. hi_d as exact rationals.
inline void write_cellset_rects(std::ostream& os, const CellSet& c) {
  os << "cells 1\n" << "d " << c.d << "\n" << "depth " << c.depth << "\n" << "count " << c.size() << "\n";
  for (const Rect& r : c.rects) {
    for (const auto& v : r.lo) os << v.str() << " ";
    for (std::size_t j = 0; j < r.hi.size(); ++j) os << r.hi[j].str() << (j + 1 < r.hi.size() ? " " : "\n");
  }
}

/// CSV: lo1..lod,hi1..hid with %.17g floats.
inline void write_cellset_csv(std::ostream& os, const CellSet& c) {
  for (int j = 1; j <= c.d; ++j) os << "lo" << j << ",";
  for (int j = 1; j <= c.d; ++j) os << "hi" << j << (j < c.d ? "," : "\n");
  for (const Rect& r : c.rects) {
    for (const auto& v : r.lo) os << format_double(v.to_double()) << ",";
    for (std::size_t j = 0; j < r.hi.size(); ++j) {
      os << format_double(r.hi[j].to_double()) << (j + 1 < r.hi.size() ? "," : "\n");
    }
  }
}

/*
 * ASCII PLY with one axis-aligned cube (8 vertices, 6 quads) per cell. With
 * `weld`, coincident corners of neighbouring cells share a vertex; keys are
 * the exact rational coordinates so welding never merges distinct points.
 */
inline void write_cellset_ply(std::ostream& os, const CellSet& c, bool weld = false) {
  if (c.d != 3) throw UnsupportedConfiguration("PLY export needs d = 3, got d = " + std::to_string(c.d));
  using Key = std::array<Rational, 3>;
  std::vector<Key> vertices;
  std::map<Key, std::size_t> index;
  std::vector<std::array<std::size_t, 4>> faces;
  faces.reserve(c.size() * 6);

  const auto vertex = [&](const Key& k) {
    if (weld) {
      const auto [it, fresh] = index.emplace(k, vertices.size());
      if (fresh) vertices.push_back(k);
      return it->second;
    }
    vertices.push_back(k);
    return vertices.size() - 1;
  };
  // corner b = bit0:x, bit1:y, bit2:z
  static constexpr std::array<std::array<int, 4>, 6> kQuads{{
      {0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}}};
  for (const Rect& r : c.rects) {
    std::array<std::size_t, 8> v{};
    for (int b = 0; b < 8; ++b) {
      v[static_cast<std::size_t>(b)] =
          vertex({(b & 1) ? r.hi[0] : r.lo[0], (b & 2) ? r.hi[1] : r.lo[1], (b & 4) ? r.hi[2] : r.lo[2]});
    }
    for (const auto& q : kQuads) {
      faces.push_back({v[static_cast<std::size_t>(q[0])], v[static_cast<std::size_t>(q[1])],
                       v[static_cast<std::size_t>(q[2])], v[static_cast<std::size_t>(q[3])]});
    }
  }

  os << "ply\nformat ascii 1.0\n"
     << "comment depth " << c.depth << "\n"
     << "element vertex " << vertices.size() << "\n"
     << "property double x\nproperty double y\nproperty double z\n"
     << "element face " << faces.size() << "\n"
     << "property list uchar int vertex_indices\n"
     << "end_header\n";
  for (const Key& k : vertices) {
    os << format_double(k[0].to_double()) << " " << format_double(k[1].to_double()) << " "
       << format_double(k[2].to_double()) << "\n";
  }
  for (const auto& f : faces) os << "4 " << f[0] << " " << f[1] << " " << f[2] << " " << f[3] << "\n";
}

// ---- sample clouds ---------------------------------------------------------

inline void write_samples_csv(std::ostream& os, const SampleCloud& s) {
  os << "# seed=" << s.seed << " algo=" << s.algorithm << " burn_in=" << s.burn_in << " thin=" << s.thin << "\n";
  for (int j = 1; j <= s.d; ++j) os << "x" << j << (j < s.d ? "," : "\n");
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto p = s.point(k);
    for (std::size_t j = 0; j < p.size(); ++j) os << format_double(p[j]) << (j + 1 < p.size() ? "," : "\n");
  }
}

/// Reads the CSV written by write_samples_csv. Metadata comment lines are
/// optional; the header row fixes d.
inline SampleCloud read_samples_csv(std::istream& in) {
  SampleCloud s;
  s.algorithm = "unknown";
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      for (std::string kv; ss >> kv;) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
          if (key == "seed") s.seed = std::stoull(val);
          else if (key == "algo") s.algorithm = val;
          else if (key == "burn_in") s.burn_in = std::stoi(val);
          else if (key == "thin") s.thin = std::stoi(val);
        } catch (const std::exception&) {
          throw ParseError("bad metadata value '" + kv + "'", line_no);
        }
      }
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (!header) {
      s.d = static_cast<int>(fields.size());
      if (s.d < 1) throw ParseError("empty header row", line_no);
      header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != s.d) {
      throw ParseError("expected " + std::to_string(s.d) + " columns, got " + std::to_string(fields.size()), line_no);
    }
    for (const auto& f : fields) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != f.size()) throw ParseError("bad number '" + f + "'", line_no);
      s.coords.push_back(v);
    }
  }
  if (!header) throw ParseError("missing header row", line_no);
  return s;
}

// ---- transport plans, IFSPs ------------------------------------------------

/// "c1,..,cd c1,..,cd flow" per arc, flow as %.17g.
inline void write_transport_plan(std::ostream& os, const TransportPlan& p) {
  for (const auto& e : p.entries) {
    os << format_cell(e.source) << " " << format_cell(e.target) << " " << format_double(e.flow.to_double())
       << "\n";
  }
}

/// One map per line: index, probability, then offset and scale per axis.
inline void write_ifsp(std::ostream& os, const Ifsp& s) {
  os << "ifsp d=" << s.d << " maps=" << s.maps.size() << "\n";
  for (const auto& m : s.maps) {
    os << format_index(m.index) << " p=" << m.probability.str();
    for (std::size_t j = 0; j < m.map.offset.size(); ++j) {
      os << " x" << j + 1 << "->" << m.map.offset[j].str() << "+" << m.map.scale[j].str() << "*x" << j + 1;
    }
    os << "\n";
  }
}

}  // namespace dstoch
