#include "lifs/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "lifs/errors.hpp"
#include "lifs/space.hpp"
#include "lifs/symspace.hpp"

namespace lifs {
namespace io {

namespace {

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) {
    fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  }
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    fail(ErrorCode::IoFailure, "write to " + path + " failed");
  }
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string word_text(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(w[i]);
  }
  return s;
}

}  // namespace

void write_pgm_strip(const std::string& path, const GridSet& cells, int rows) {
  if (cells.dim() != 1) {
    fail(ErrorCode::ShapeMismatch, "strip rendering takes a 1D set");
  }
  if (rows < 1) {
    fail(ErrorCode::BadConfig, "strip height must be positive");
  }
  const std::uint32_t side = cells.side();
  std::vector<unsigned char> row(side, 255);
  cells.for_each_cell(
      [&](std::uint32_t ix, std::uint32_t) { row[ix] = 0; });
  std::ofstream out = open_out(path, true);
  out << "P5\n" << side << " " << rows << "\n255\n";
  for (int r = 0; r < rows; ++r) {
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
  finish(out, path);
}

void write_ppm(const std::string& path, const GridSet& cells) {
  if (cells.dim() != 2) {
    fail(ErrorCode::ShapeMismatch, "image rendering takes a 2D set");
  }
  const std::uint32_t side = cells.side();
  std::vector<unsigned char> pixels(static_cast<std::size_t>(side) * side * 3,
                                    255);
  cells.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    const std::size_t r = side - 1 - iy;  // top row = largest y
    const std::size_t at = 3 * (r * side + ix);
    pixels[at] = pixels[at + 1] = pixels[at + 2] = 0;
  });
  std::ofstream out = open_out(path, true);
  out << "P6\n" << side << " " << side << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  finish(out, path);
}

void write_attractor_report(const std::string& path,
                            const AttractorReport& rep) {
  std::ofstream out = open_out(path, false);
  out << "iterations: " << rep.iterations << "\n";
  out << "converged: " << (rep.converged ? "yes" : "no") << "\n";
  out << "nested: " << (rep.nested ? "yes" : "no") << "\n";
  out << "final_step: " << number(rep.final_step) << "\n";
  if (std::holds_alternative<GridSet>(rep.cover)) {
    const GridSet& g = std::get<GridSet>(rep.cover);
    out << "cells: " << g.cell_count() << "\n";
    out << "cell_size: " << number(g.cell_size()) << "\n";
  } else {
    out << "cylinders: " << std::get<sym::SymbolicSet>(rep.cover).cylinder_count()
        << "\n";
  }
  finish(out, path);
}

void write_language_csv(const std::string& path, const LanguageSample& words) {
  std::ofstream out = open_out(path, false);
  out << "length,word\n";
  for (int n = 1; n <= words.max_length(); ++n) {
    for (const Word& w : words.words_of_length(n)) {
      out << n << "," << word_text(w) << "\n";
    }
  }
  finish(out, path);
}

void write_follower_csv(const std::string& path, const LanguageSample& words,
                        int max_m) {
  std::ofstream out = open_out(path, false);
  out << "m,follower_sets\n";
  for (int m = 1; m <= max_m; ++m) {
    out << m << "," << follower_set_count(words, m) << "\n";
  }
  finish(out, path);
}

void write_orbit_csv(const std::string& path, const LocalIFS& R,
                     const PseudoOrbit& po) {
  std::ofstream out = open_out(path, false);
  out << "k,symbol,point,step_error\n";
  for (std::size_t k = 0; k < po.points.size(); ++k) {
    out << k << "," << po.a[k] << "," << format_point(po.points[k]) << ",";
    if (k + 1 < po.points.size()) {
      const SpacePoint image = lifs::apply(R.maps[static_cast<std::size_t>(po.a[k])],
                                           po.points[k]);
      out << number(distance(image, po.points[k + 1]));
    }
    out << "\n";
  }
  finish(out, path);
}

void write_gap_csv(const std::string& path, const GapCurve& curve) {
  std::ofstream out = open_out(path, false);
  out << "delta,gap\n";
  for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
    out << number(curve.deltas[i]) << "," << number(curve.values[i]) << "\n";
  }
  finish(out, path);
}

void write_sweep_csv(const std::string& path, const SweepReport& rep) {
  std::ofstream out = open_out(path, false);
  out << "parameter,cells";
  for (std::size_t j = 0; j < rep.params.size(); ++j) {
    out << ",d" << j;
  }
  out << "\n";
  for (std::size_t i = 0; i < rep.params.size(); ++i) {
    std::uint64_t cells = 0;
    if (std::holds_alternative<GridSet>(rep.reports[i].cover)) {
      cells = std::get<GridSet>(rep.reports[i].cover).cell_count();
    } else {
      cells = std::get<sym::SymbolicSet>(rep.reports[i].cover).cylinder_count();
    }
    out << number(rep.params[i]) << "," << cells;
    for (std::size_t j = 0; j < rep.params.size(); ++j) {
      out << "," << number(rep.pairwise[i][j]);
    }
    out << "\n";
  }
  finish(out, path);
}

std::string format_point(const SpacePoint& p) {
  if (std::holds_alternative<Point>(p)) {
    const Point& q = std::get<Point>(p);
    std::string s = number(q[0]);
    for (int i = 1; i < q.dim; ++i) {
      s += " " + number(q[i]);
    }
    return s;
  }
  const sym::SymbolicPoint& q = std::get<sym::SymbolicPoint>(p);
  if (q.digits.empty()) return "0...";
  std::string s;
  for (int d : q.digits) s += std::to_string(d);
  s += "...";
  return s;
}

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& j, const char* what) {
  if (j.is_number()) {
    return {j.get<double>()};
  }
  if (!j.is_array()) {
    fail(ErrorCode::BadConfig, std::string(what) + " must be an array");
  }
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) {
      fail(ErrorCode::BadConfig, std::string(what) + " must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Point point_from(const std::vector<double>& v, int dim, const char* what) {
  if (static_cast<int>(v.size()) != dim) {
    fail(ErrorCode::BadConfig,
         std::string(what) + " has the wrong number of coordinates");
  }
  Point p = Point::make(v[0], v.size() > 1 ? v[1] : 0.0);
  p.dim = dim;
  return p;
}

AffineMap map_from(const json& j, int dim) {
  AffineMap m = AffineMap::identity(dim);
  if (j.contains("scale")) {
    const double s = j.at("scale").get<double>();
    const std::vector<double> t =
        j.contains("translate") ? number_list(j.at("translate"), "translate")
                                : std::vector<double>(static_cast<std::size_t>(dim), 0.0);
    const Point b = point_from(t, dim, "translate");
    for (int i = 0; i < dim; ++i) {
      m.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = s;
      m.b[static_cast<std::size_t>(i)] = b[i];
    }
    return m;
  }
  if (!j.contains("a") || !j.contains("b")) {
    fail(ErrorCode::BadConfig, "map needs either scale or a/b entries");
  }
  const json& a = j.at("a");
  if (!a.is_array() || static_cast<int>(a.size()) != dim) {
    fail(ErrorCode::BadConfig, "linear part must be a dim x dim matrix");
  }
  for (int i = 0; i < dim; ++i) {
    const std::vector<double> row = number_list(a[static_cast<std::size_t>(i)],
                                                "matrix row");
    if (static_cast<int>(row.size()) != dim) {
      fail(ErrorCode::BadConfig, "linear part must be a dim x dim matrix");
    }
    for (int c = 0; c < dim; ++c) {
      m.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c)];
    }
  }
  const Point b = point_from(number_list(j.at("b"), "b"), dim, "b");
  for (int i = 0; i < dim; ++i) {
    m.b[static_cast<std::size_t>(i)] = b[i];
  }
  return m;
}

GridSet domain_from(const json& j, int dim, int level) {
  if (j.is_string() && j.get<std::string>() == "full") {
    return GridSet::full_set(dim, level);
  }
  if (j.is_object() && j.contains("box")) {
    const json& box = j.at("box");
    const Point lo = point_from(number_list(box.at("lo"), "box lo"), dim, "box lo");
    const Point hi = point_from(number_list(box.at("hi"), "box hi"), dim, "box hi");
    return cover_box(dim, level, lo, hi);
  }
  if (j.is_object() && j.contains("halfplane")) {
    const json& hp = j.at("halfplane");
    const Point n =
        point_from(number_list(hp.at("normal"), "normal"), dim, "normal");
    return cover_halfplane(level, n, hp.at("offset").get<double>());
  }
  if (j.is_object() && j.contains("polygon")) {
    if (dim != 2) {
      fail(ErrorCode::BadConfig, "polygon domains are two-dimensional");
    }
    std::vector<Point> verts;
    for (const auto& v : j.at("polygon")) {
      verts.push_back(point_from(number_list(v, "vertex"), 2, "vertex"));
    }
    return cover_convex_polygon(level, verts);
  }
  fail(ErrorCode::BadConfig, "unknown domain description");
}

}  // namespace

LocalIFS load_system_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::IoFailure, "cannot read " + path);
  }
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    fail(ErrorCode::BadConfig, std::string("system file: ") + e.what());
  }
  try {
    const int level = root.at("level").get<int>();
    const int dim = root.value("dim", 2);
    if (dim < 1 || dim > 2) {
      fail(ErrorCode::BadConfig, "dim must be 1 or 2");
    }
    const json& jmaps = root.at("maps");
    const json& jdoms = root.at("domains");
    if (!jmaps.is_array() || !jdoms.is_array() ||
        jmaps.size() != jdoms.size()) {
      fail(ErrorCode::BadConfig, "maps and domains must be equal-length arrays");
    }
    std::vector<SpaceMap> maps;
    std::vector<SpaceSet> domains;
    for (std::size_t i = 0; i < jmaps.size(); ++i) {
      const AffineMap m = map_from(jmaps[i], dim);
      if (jmaps[i].is_object() && jmaps[i].contains("lambda")) {
        maps.push_back(make_contraction(m, jmaps[i].at("lambda").get<double>()));
      } else {
        maps.push_back(make_contraction(m));
      }
      domains.push_back(domain_from(jdoms[i], dim, level));
    }
    return make_local_ifs(std::move(maps), std::move(domains));
  } catch (const json::exception& e) {
    fail(ErrorCode::BadConfig, std::string("system file: ") + e.what());
  }
}

}  // namespace io
}  // namespace lifs
