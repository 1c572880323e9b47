#include "lifs/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>

#include "lifs/builtins.hpp"
#include "lifs/errors.hpp"
#include "lifs/space.hpp"

namespace lifs {

namespace {

constexpr double kCubeTol = 1e-12;

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool grid_backend(const LocalIFS& R) {
  return !R.domains.empty() &&
         std::holds_alternative<GridSet>(R.domains.front());
}

const GridSet& grid_domain(const LocalIFS& R, std::size_t j) {
  return std::get<GridSet>(R.domains[j]);
}

const AffineContraction& affine_piece(const LocalIFS& R, std::size_t j) {
  return std::get<AffineContraction>(R.maps[j]);
}

// Bounding box of the occupied region, as closed corner points.
std::pair<Point, Point> region_box(const GridSet& a) {
  const auto b = a.index_bounds();
  const double h = a.cell_size();
  Point lo = Point::make(b[0] * h, a.dim() == 2 ? b[2] * h : 0.0);
  Point hi = Point::make((b[1] + 1) * h, a.dim() == 2 ? (b[3] + 1) * h : 0.0);
  lo.dim = a.dim();
  hi.dim = a.dim();
  return {lo, hi};
}

// Whether f maps the box [lo, hi] inside the unit cube.
bool image_in_cube(const AffineMap& f, const Point& lo, const Point& hi,
                   int dim) {
  double mn[2] = {1.0, 1.0};
  double mx[2] = {0.0, 0.0};
  for (int cx = 0; cx < 2; ++cx) {
    for (int cy = 0; cy < (dim == 2 ? 2 : 1); ++cy) {
      Point corner = Point::make(cx ? hi[0] : lo[0], cy ? hi[1] : lo[1]);
      corner.dim = dim;
      const Point q = f(corner);
      for (int i = 0; i < dim; ++i) {
        mn[i] = std::min(mn[i], q[i]);
        mx[i] = std::max(mx[i], q[i]);
      }
    }
  }
  for (int i = 0; i < dim; ++i) {
    if (mn[i] < -kCubeTol || mx[i] > 1.0 + kCubeTol) return false;
  }
  return true;
}

}  // namespace

PerturbationSpec random_perturbation(const LocalIFS& R, double radius,
                                     std::uint64_t seed) {
  if (!grid_backend(R)) {
    fail(ErrorCode::BackendMismatch, "perturbations act on grid systems");
  }
  if (radius < 0.0) {
    fail(ErrorCode::BadConfig, "perturbation radius must be nonnegative");
  }
  PerturbationSpec spec;
  spec.seed = seed;
  if (radius == 0.0) return spec;

  const int n = R.piece_count();
  const int dim = grid_domain(R, 0).dim();
  std::mt19937_64 rng(seed);
  const double bound = radius / 2.0;
  for (int j = 0; j < n; ++j) {
    // Per-axis image range of the map over the whole cube; offsets are
    // drawn inside the slab that keeps that range in the cube, so maps
    // whose images touch the boundary are only pushed inward.
    const AffineMap& f = affine_piece(R, static_cast<std::size_t>(j)).map;
    std::array<double, 2> off{0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      double mn = f.b[static_cast<std::size_t>(i)];
      double mx = mn;
      for (int c = 0; c < dim; ++c) {
        const double a = f.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        mn += std::min(0.0, a);
        mx += std::max(0.0, a);
      }
      const double lo = std::max(-bound / std::sqrt(double(dim)), -mn);
      const double hi = std::min(bound / std::sqrt(double(dim)), 1.0 - mx);
      const double u = unit_draw(rng);
      off[static_cast<std::size_t>(i)] = lo >= hi ? 0.0 : lo + u * (hi - lo);
    }
    spec.map_offsets.push_back(off);
  }
  for (int j = 0; j < n; ++j) {
    DomainChange change;
    const double pick = unit_draw(rng);
    const double amount = unit_draw(rng) * bound;
    if (pick < 1.0 / 3.0) {
      change.action = DomainAction::None;
    } else if (pick < 2.0 / 3.0) {
      change.action = DomainAction::Inflate;
      change.amount = amount;
    } else {
      change.action = DomainAction::Deflate;
      change.amount = amount;
    }
    spec.domain_changes.push_back(change);
  }
  return spec;
}

LocalIFS perturb(const LocalIFS& R, const PerturbationSpec& spec) {
  if (!grid_backend(R)) {
    fail(ErrorCode::BackendMismatch, "perturbations act on grid systems");
  }
  const std::size_t n = R.maps.size();
  if (!spec.map_offsets.empty() && spec.map_offsets.size() != n) {
    fail(ErrorCode::BadConfig, "one translation offset per map expected");
  }
  if (!spec.domain_changes.empty() && spec.domain_changes.size() != n) {
    fail(ErrorCode::BadConfig, "one domain change per piece expected");
  }
  const int dim = grid_domain(R, 0).dim();

  std::vector<SpaceSet> domains;
  domains.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    GridSet x = grid_domain(R, j);
    if (!spec.domain_changes.empty()) {
      const DomainChange& change = spec.domain_changes[j];
      switch (change.action) {
        case DomainAction::None:
          break;
        case DomainAction::Inflate:
          if (change.amount < 0.0) {
            fail(ErrorCode::BadConfig, "inflation radius must be nonnegative");
          }
          x = dilate(x, change.amount);
          break;
        case DomainAction::Deflate:
          if (change.amount < 0.0) {
            fail(ErrorCode::BadConfig, "deflation radius must be nonnegative");
          }
          x = erode(x, change.amount);
          break;
        case DomainAction::BoundaryShift: {
          if (change.axis < 0 || change.axis >= dim) {
            fail(ErrorCode::BadConfig, "shift axis outside the dimension");
          }
          AffineMap slide = AffineMap::identity(dim);
          slide.b[static_cast<std::size_t>(change.axis)] = change.amount;
          x = set_image(x, slide);
          break;
        }
      }
    }
    if (x.empty()) {
      fail(ErrorCode::EmptyDomain, "domain change emptied a piece");
    }
    domains.push_back(std::move(x));
  }

  std::vector<SpaceMap> maps;
  maps.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    AffineContraction f = affine_piece(R, j);
    if (!spec.map_offsets.empty()) {
      for (int i = 0; i < dim; ++i) {
        f.map.b[static_cast<std::size_t>(i)] +=
            spec.map_offsets[j][static_cast<std::size_t>(i)];
      }
    }
    const auto box = region_box(std::get<GridSet>(domains[j]));
    if (!image_in_cube(f.map, box.first, box.second, dim)) {
      fail(ErrorCode::OutOfSpace, "translated map leaves the unit cube");
    }
    maps.push_back(f);
  }
  return make_local_ifs(std::move(maps), std::move(domains));
}

namespace {

// Checked common frame of two grid systems.
void check_comparable(const LocalIFS& R, const LocalIFS& S) {
  if (R.piece_count() != S.piece_count()) {
    fail(ErrorCode::ShapeMismatch, "systems have different piece counts");
  }
  if (!grid_backend(R) || !grid_backend(S)) {
    fail(ErrorCode::BackendMismatch, "system distance compares grid systems");
  }
  const GridSet& x0 = grid_domain(R, 0);
  const GridSet& y0 = grid_domain(S, 0);
  if (x0.dim() != y0.dim() || x0.level() != y0.level()) {
    fail(ErrorCode::LevelMismatch, "systems live on different grids");
  }
}

double domain_term(const LocalIFS& R, const LocalIFS& S) {
  double worst = 0.0;
  for (int j = 0; j < R.piece_count(); ++j) {
    worst = std::max(worst, hausdorff_distance(R.domains[static_cast<std::size_t>(j)],
                                               S.domains[static_cast<std::size_t>(j)]));
  }
  return worst;
}

double map_gap_on_cells(const GridSet& cells, const AffineMap& f,
                        const AffineMap& g) {
  double worst = 0.0;
  cells.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    const Point c = cells.cell_center(ix, iy);
    worst = std::max(worst, distance(f(c), g(c)));
  });
  return worst;
}

}  // namespace

double d_distance_upper(const LocalIFS& R, const LocalIFS& S) {
  check_comparable(R, S);
  const int dim = grid_domain(R, 0).dim();
  const double sentinel = 3.0 * std::sqrt(double(dim));

  double map_term = 0.0;
  for (std::size_t j = 0; j < R.maps.size(); ++j) {
    const GridSet& x = grid_domain(R, j);
    const GridSet& y = grid_domain(S, j);
    double value = sentinel;
    if (x == y) {
      const AffineContraction& f = affine_piece(R, j);
      const AffineContraction& g = affine_piece(S, j);
      const double cell_radius = x.cell_diagonal() / 2.0;
      value = map_gap_on_cells(x, f.map, g.map) +
              (f.lambda + g.lambda) * cell_radius;
    }
    map_term = std::max(map_term, value);
  }
  return domain_term(R, S) + map_term;
}

double d_distance_upper(const LocalIFS& R, const LocalIFS& S,
                        const std::vector<AffineMap>& pairings) {
  check_comparable(R, S);
  if (pairings.size() != R.maps.size()) {
    fail(ErrorCode::BadConfig, "one pairing per piece expected");
  }

  double map_term = 0.0;
  for (std::size_t j = 0; j < R.maps.size(); ++j) {
    const AffineMap& z = pairings[j];
    if (!z.invertible()) {
      fail(ErrorCode::BadConfig, "pairing map is not invertible");
    }
    const AffineMap zi = z.inverse();
    const AffineContraction& f = affine_piece(R, j);
    const AffineContraction& g = affine_piece(S, j);
    const GridSet& x = grid_domain(R, j);
    const GridSet& y = grid_domain(S, j);
    const double cell_radius = x.cell_diagonal() / 2.0;

    double move_fwd = 0.0;
    double gap_fwd = 0.0;
    x.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
      const Point c = x.cell_center(ix, iy);
      move_fwd = std::max(move_fwd, distance(z(c), c));
      gap_fwd = std::max(gap_fwd, distance(f.map(c), g.map(z(c))));
    });
    const double fwd = move_fwd + gap_fwd +
                       cell_radius * (1.0 + z.operator_norm()) +
                       cell_radius * (f.lambda + g.lambda * z.operator_norm());

    double move_bwd = 0.0;
    double gap_bwd = 0.0;
    y.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
      const Point c = y.cell_center(ix, iy);
      move_bwd = std::max(move_bwd, distance(zi(c), c));
      gap_bwd = std::max(gap_bwd, distance(g.map(c), f.map(zi(c))));
    });
    const double bwd = move_bwd + gap_bwd +
                       cell_radius * (1.0 + zi.operator_norm()) +
                       cell_radius * (g.lambda + f.lambda * zi.operator_norm());

    map_term = std::max(map_term, std::max(fwd, bwd));
  }
  return domain_term(R, S) + map_term;
}

namespace {

WordDiff language_diff(const LanguageSample& a, const LanguageSample& b,
                       int depth) {
  for (int len = 1; len <= depth; ++len) {
    const auto& wa = a.words_of_length(len);
    const auto& wb = b.words_of_length(len);
    std::set<Word> sa(wa.begin(), wa.end());
    std::set<Word> sb(wb.begin(), wb.end());
    std::set<Word> all(sa);
    all.insert(sb.begin(), sb.end());
    for (const Word& w : all) {
      const bool ina = sa.count(w) > 0;
      const bool inb = sb.count(w) > 0;
      if (ina != inb) {
        WordDiff diff;
        diff.equal = false;
        diff.word = w;
        diff.in_second_only = inb;
        return diff;
      }
    }
  }
  return WordDiff{};
}

}  // namespace

WordDiff compare_code_words(const LocalIFS& R, const LocalIFS& S, int depth) {
  if (depth < 1) {
    fail(ErrorCode::BadConfig, "comparison depth must be at least 1");
  }
  return language_diff(code_words(R, depth), code_words(S, depth), depth);
}

ProbeReport combinatorial_probe(const LocalIFS& R, double radius, int samples,
                                int depth, std::uint64_t seed) {
  if (samples < 1) {
    fail(ErrorCode::BadConfig, "at least one sample required");
  }
  if (depth < 1) {
    fail(ErrorCode::BadConfig, "probe depth must be at least 1");
  }
  if (radius < 0.0) {
    fail(ErrorCode::BadConfig, "probe radius must be nonnegative");
  }

  ProbeReport report;
  report.depth = depth;
  report.radius = radius;
  report.stable = true;

  const LanguageSample base = code_words(R, depth);
  for (int s = 0; s < samples; ++s) {
    LocalIFS nearby = R;
    bool built = false;
    for (std::uint64_t attempt = 0; attempt < 8 && !built; ++attempt) {
      const std::uint64_t draw =
          seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(s) + 1) +
          attempt;
      try {
        nearby = perturb(R, random_perturbation(R, radius, draw));
        built = true;
      } catch (const Error&) {
        // a deflation emptied a thin piece or a translation left the
        // cube; redraw
      }
    }
    if (!built) {
      fail(ErrorCode::BadConfig, "radius leaves no room to perturb");
    }
    ++report.samples_run;
    const WordDiff diff = language_diff(base, code_words(nearby, depth), depth);
    if (!diff.equal) {
      report.stable = false;
      report.differing_sample = s;
      report.differing_word = diff.word;
      report.word_appeared = diff.in_second_only;
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Graph-directed embedding.
// ---------------------------------------------------------------------------

std::array<double, 2> embed_band(int vertex_count, int vertex) {
  if (vertex_count < 1 || vertex < 0 || vertex >= vertex_count) {
    fail(ErrorCode::BadConfig, "vertex outside the graph");
  }
  const double slot = 1.0 / vertex_count;
  const double margin = slot / 6.0;
  return {vertex * slot + margin, (vertex + 1) * slot - margin};
}

double embed_gap(int vertex_count) {
  if (vertex_count < 1) {
    fail(ErrorCode::BadConfig, "vertex count must be positive");
  }
  return 1.0 / (3.0 * vertex_count);
}

double embed_margin(int vertex_count) { return embed_gap(vertex_count) / 2.0; }

namespace {

// Outer row range of a band at the grid level.
std::pair<std::uint32_t, std::uint32_t> band_rows(int level, int vertex_count,
                                                  int vertex) {
  const auto band = embed_band(vertex_count, vertex);
  const GridSet strip = cover_box(2, level, Point::make(0.0, band[0]),
                                  Point::make(1.0, band[1]));
  const auto b = strip.index_bounds();
  return {b[2], b[3]};
}

}  // namespace

LocalIFS graph_directed_embed(const FiberGraph& g) {
  if (g.vertex_count < 1 ||
      g.fiber_domains.size() != static_cast<std::size_t>(g.vertex_count)) {
    fail(ErrorCode::BadConfig, "one fiber domain per vertex expected");
  }
  if (g.edges.empty()) {
    fail(ErrorCode::BadConfig, "graph has no edges");
  }
  const int level = g.fiber_domains.front().level();
  for (const GridSet& fiber : g.fiber_domains) {
    if (fiber.dim() != 1) {
      fail(ErrorCode::BadConfig, "fiber domains must be one-dimensional");
    }
    if (fiber.level() != level) {
      fail(ErrorCode::LevelMismatch, "fiber domains share one level");
    }
    if (fiber.empty()) {
      fail(ErrorCode::EmptyDomain, "empty fiber domain");
    }
  }
  const double h = g.fiber_domains.front().cell_size();
  if (embed_gap(g.vertex_count) < 4.0 * h) {
    fail(ErrorCode::PackingOverflow,
         "vertex bands thinner than four grid cells");
  }

  std::vector<SpaceMap> maps;
  std::vector<SpaceSet> domains;
  for (const FiberGraph::Edge& e : g.edges) {
    if (e.image_vertex < 0 || e.image_vertex >= g.vertex_count ||
        e.domain_vertex < 0 || e.domain_vertex >= g.vertex_count) {
      fail(ErrorCode::BadConfig, "edge endpoint outside the graph");
    }
    const GridSet& source = g.fiber_domains[static_cast<std::size_t>(e.domain_vertex)];
    const GridSet& target = g.fiber_domains[static_cast<std::size_t>(e.image_vertex)];
    const GridSet image = set_image(source, e.fiber_map.map);
    if (!is_subset(image, dilate(target, 0.0))) {
      fail(ErrorCode::BadConfig,
           "edge map must send its domain fiber into its image fiber");
    }

    const double center_src =
        (e.domain_vertex + 0.5) / static_cast<double>(g.vertex_count);
    const double center_dst =
        (e.image_vertex + 0.5) / static_cast<double>(g.vertex_count);
    AffineMap m = AffineMap::identity(2);
    m.a[0][0] = e.fiber_map.map.a[0][0];
    m.a[1][1] = 0.25;
    m.b[0] = e.fiber_map.map.b[0];
    m.b[1] = center_dst - 0.25 * center_src;
    maps.push_back(make_contraction(m, std::max(e.fiber_map.lambda, 0.25)));

    const auto rows = band_rows(level, g.vertex_count, e.domain_vertex);
    GridSet piece = GridSet::empty_set(2, level);
    source.for_each_cell([&](std::uint32_t ix, std::uint32_t) {
      for (std::uint32_t iy = rows.first; iy <= rows.second; ++iy) {
        piece.set(ix, iy);
      }
    });
    domains.push_back(std::move(piece));
  }
  return make_local_ifs(std::move(maps), std::move(domains));
}

GridSet fiber_slice(const GridSet& set2d, int vertex_count, int vertex) {
  if (set2d.dim() != 2) {
    fail(ErrorCode::ShapeMismatch, "fiber slices cut two-dimensional sets");
  }
  const auto rows = band_rows(set2d.level(), vertex_count, vertex);
  GridSet out = GridSet::empty_set(1, set2d.level());
  set2d.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    if (iy >= rows.first && iy <= rows.second) out.set(ix);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Pseudo-orbit transfer.
// ---------------------------------------------------------------------------

TransferResult transfer_pseudo_orbit(const LocalIFS& R, const PseudoOrbit& po,
                                     double delta_factor) {
  if (delta_factor < 1.0) {
    fail(ErrorCode::BadConfig, "step budget factor must be at least 1");
  }
  if (po.a.size() != po.points.size()) {
    fail(ErrorCode::BadWord, "one symbol per point expected");
  }
  TransferResult out;
  std::vector<SpacePoint> snapped;
  snapped.reserve(po.points.size());
  for (std::size_t k = 0; k < po.points.size(); ++k) {
    const int symbol = po.a[k];
    if (symbol < 0 || symbol >= R.piece_count()) {
      fail(ErrorCode::BadWord, "symbol out of range");
    }
    const SpaceSet& piece = R.domains[static_cast<std::size_t>(symbol)];
    const SpacePoint& p = po.points[k];
    if (contains_point(piece, p)) {
      snapped.push_back(p);
      continue;
    }
    const auto near = centers_by_distance(piece, p, 1);
    out.max_moved = std::max(out.max_moved, distance(p, near.front()));
    snapped.push_back(near.front());
  }
  out.orbit = assemble_pseudo_orbit(R, po.a, std::move(snapped),
                                    delta_factor * po.delta);
  return out;
}

// ---------------------------------------------------------------------------
// Parameter sweeps.
// ---------------------------------------------------------------------------

SweepReport family_sweep(const SweepConfig& cfg) {
  if (cfg.params.empty()) {
    fail(ErrorCode::BadConfig, "parameter grid is empty");
  }
  for (std::size_t i = 1; i < cfg.params.size(); ++i) {
    if (!(cfg.params[i] > cfg.params[i - 1])) {
      fail(ErrorCode::BadConfig, "parameter grid must strictly increase");
    }
  }
  if (cfg.max_iter < 1) {
    fail(ErrorCode::BadConfig, "at least one iteration required");
  }
  if (cfg.jump_threshold < 0.0 || cfg.tol < 0.0) {
    fail(ErrorCode::BadConfig, "thresholds must be nonnegative");
  }

  SweepReport report;
  report.params = cfg.params;
  report.jump_threshold = cfg.jump_threshold;

  std::vector<GridSet> covers;
  for (const double p : cfg.params) {
    LocalIFS system = [&] {
      switch (cfg.family) {
        case Family::Superfractal:
          return superfractal(p, cfg.level);
        case Family::Nonsemicont:
          return nonsemicont(p, cfg.level);
        case Family::Beta1d:
        default:
          return beta_local_ifs(make_beta_system(p), cfg.level);
      }
    }();
    report.reports.push_back(attractor(system, cfg.max_iter, cfg.tol));
    covers.push_back(std::get<GridSet>(report.reports.back().cover));
  }

  const std::size_t n = covers.size();
  report.pairwise.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // A parameter is at distance zero from itself; the grid slack
      // convention applies only to distinct covers.
      report.pairwise[i][j] =
          i == j ? 0.0 : hausdorff_distance(covers[i], covers[j]);
    }
  }

  const double diag = covers.front().cell_diagonal();
  report.usc_slack = cfg.usc_slack < 0.0 ? 4.0 * diag : cfg.usc_slack;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const GridSet& lower = covers[k];
    const GridSet& upper = covers[k + 1];
    report.usc_ok.push_back(
        is_subset(lower, dilate(upper, report.usc_slack)) ? 1 : 0);

    double gain = 0.0;
    Point witness = Point::make(0.0, 0.0);
    upper.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
      const Point c = upper.cell_center(ix, iy);
      const double d = point_to_set_distance(c, lower);
      if (d > gain) {
        gain = d;
        witness = c;
      }
    });
    report.jump_size.push_back(gain);
    report.jump_witness.push_back(witness);
    report.lsc_jump.push_back(gain >= cfg.jump_threshold ? 1 : 0);
  }
  return report;
}

}  // namespace lifs
