#include "lifs/ifs.hpp"

#include <algorithm>
#include <utility>

namespace lifs {

namespace {

SpaceSet empty_like(const SpaceSet& a) {
  if (const auto* g = std::get_if<GridSet>(&a))
    return GridSet::empty_set(g->dim(), g->level());
  return sym::SymbolicSet::empty_set(std::get<sym::SymbolicSet>(a).window());
}

SpaceSet full_like(const SpaceSet& a) {
  if (const auto* g = std::get_if<GridSet>(&a))
    return GridSet::full_set(g->dim(), g->level());
  return sym::SymbolicSet::full_set(std::get<sym::SymbolicSet>(a).window());
}

void check_symbol(const LocalIFS& R, int s) {
  if (s < 0 || s >= R.piece_count())
    fail(ErrorCode::BadWord, "symbol outside the system's piece range");
}

// The grid image operator clips to the unit cube, so a piece whose true
// image leaks outside would silently lose region; reject such systems.
// The image of the occupied bounding box is the hull of its corner
// images, which bounds the piece image from outside.  The domain cover
// itself overshoots the true domain by up to one cell per side, and that
// slop shrinks by the piece's rate, so images may overhang the cube by
// rate * cell_size without any true content being clipped.
void check_image_in_cube(const GridSet& domain, const AffineMap& f,
                         double rate) {
  const auto b = domain.index_bounds();  // {xmin, xmax, ymin, ymax}
  const double h = domain.cell_size();
  const double eps = rate * h + 1e-9;
  const double x0 = b[0] * h, x1 = (b[1] + 1.0) * h;
  std::vector<Point> corners;
  if (domain.dim() == 1) {
    corners.push_back(Point::make(x0));
    corners.push_back(Point::make(x1));
  } else {
    const double y0 = b[2] * h, y1 = (b[3] + 1.0) * h;
    corners.push_back(Point::make(x0, y0));
    corners.push_back(Point::make(x0, y1));
    corners.push_back(Point::make(x1, y0));
    corners.push_back(Point::make(x1, y1));
  }
  for (const Point& c : corners) {
    const Point q = f(c);
    for (int i = 0; i < domain.dim(); ++i)
      if (q[i] < -eps || q[i] > 1.0 + eps)
        fail(ErrorCode::DomainViolation,
             "piece image leaves the unit cube at grid resolution");
  }
}

}  // namespace

SpaceSet LocalIFS::ambient() const { return full_like(domains.front()); }

LocalIFS make_local_ifs(std::vector<SpaceMap> maps,
                        std::vector<SpaceSet> domains) {
  if (maps.size() != domains.size())
    fail(ErrorCode::BadConfig, "piece maps and domains must pair up");
  if (maps.size() < 2)
    fail(ErrorCode::BadConfig, "a system needs at least two pieces");

  LocalIFS R;
  R.symbolic = std::holds_alternative<sym::SymbolicSet>(domains.front());
  for (std::size_t j = 0; j < maps.size(); ++j) {
    if (std::holds_alternative<sym::SymbolicSet>(domains[j]) != R.symbolic ||
        std::holds_alternative<sym::SymbolicMap>(maps[j]) != R.symbolic)
      fail(ErrorCode::BackendMismatch, "pieces use different space backends");
    if (set_empty(domains[j]))
      fail(ErrorCode::EmptyDomain, "piece domain is empty");
    R.lambda = std::max(R.lambda, map_rate(maps[j]));
    if (const auto* g = std::get_if<GridSet>(&domains[j])) {
      const auto* g0 = std::get_if<GridSet>(&domains.front());
      if (g->dim() != g0->dim() || g->level() != g0->level())
        fail(ErrorCode::LevelMismatch, "piece domains at different resolutions");
      const auto& c = std::get<AffineContraction>(maps[j]);
      check_image_in_cube(*g, c.map, c.lambda);
    } else {
      const auto& s = std::get<sym::SymbolicSet>(domains[j]);
      if (s.window() != std::get<sym::SymbolicSet>(domains.front()).window())
        fail(ErrorCode::LevelMismatch, "piece domains at different windows");
    }
  }
  if (R.lambda >= 1.0)
    fail(ErrorCode::BadRate, "system is not a contraction");
  R.maps = std::move(maps);
  R.domains = std::move(domains);
  return R;
}

SpaceSet hutchinson_step(const LocalIFS& R, const SpaceSet& B) {
  SpaceSet out = empty_like(R.domains.front());
  for (int j = 0; j < R.piece_count(); ++j)
    out = unite(out, set_image(intersect(B, R.domains[j]), R.maps[j]));
  return out;
}

AttractorReport attractor(const LocalIFS& R, int max_iter, double tol) {
  if (max_iter < 1) fail(ErrorCode::BadConfig, "need at least one iteration");
  AttractorReport report{R.ambient(), 0, 0.0, true, false};
  for (int k = 0; k < max_iter; ++k) {
    const SpaceSet next = hutchinson_step(R, report.cover);
    ++report.iterations;
    report.nested = report.nested && is_subset(next, report.cover);
    if (next == report.cover) {
      report.final_step = 0.0;
      report.converged = true;
      return report;
    }
    if (set_empty(next)) {
      // The chain died; the empty set is invariant, so it is the limit.
      report.cover = next;
      report.final_step = 0.0;
      report.converged = true;
      return report;
    }
    report.final_step = hausdorff_distance(next, report.cover);
    report.cover = next;
    if (report.final_step <= tol) {
      report.converged = true;
      return report;
    }
  }
  return report;
}

SpaceSet compose_image(const LocalIFS& R, const Word& w) {
  if (w.empty()) fail(ErrorCode::BadWord, "composition word is empty");
  for (int s : w) check_symbol(R, s);
  SpaceSet v = set_image(R.domains[static_cast<std::size_t>(w.front())],
                         R.maps[static_cast<std::size_t>(w.front())]);
  for (std::size_t k = 1; k < w.size(); ++k) {
    const auto j = static_cast<std::size_t>(w[k]);
    v = set_image(intersect(v, R.domains[j]), R.maps[j]);
  }
  return v;
}

bool admissible(const LocalIFS& R, const Word& w) {
  return !set_empty(compose_image(R, w));
}

LanguageSample code_words(const LocalIFS& R, int max_length) {
  if (max_length < 1) fail(ErrorCode::BadConfig, "need depth at least one");
  std::vector<Word> all;
  std::vector<std::pair<Word, SpaceSet>> frontier;
  for (int j = 0; j < R.piece_count(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    SpaceSet v = set_image(R.domains[ju], R.maps[ju]);
    if (set_empty(v)) continue;
    all.push_back(Word{j});
    frontier.emplace_back(Word{j}, std::move(v));
  }
  for (int len = 2; len <= max_length; ++len) {
    std::vector<std::pair<Word, SpaceSet>> next;
    for (const auto& [w, v] : frontier) {
      for (int s = 0; s < R.piece_count(); ++s) {
        const auto su = static_cast<std::size_t>(s);
        SpaceSet ext = set_image(intersect(v, R.domains[su]), R.maps[su]);
        if (set_empty(ext)) continue;
        Word wext = w;
        wext.push_back(s);
        all.push_back(wext);
        next.emplace_back(std::move(wext), std::move(ext));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return LanguageSample(R.piece_count(), std::move(all));
}

TransitionMatrix transition_matrix(const LocalIFS& R) {
  const int n = R.piece_count();
  TransitionMatrix m(static_cast<std::size_t>(n),
                     std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const SpaceSet img = set_image(R.domains[ju], R.maps[ju]);
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      m[iu][ju] = set_empty(intersect(img, R.domains[iu])) ? 0 : 1;
    }
  }
  return m;
}

MarkovReport markov_condition(const LocalIFS& R, double zeta, int word_depth) {
  if (zeta <= resolution(R.domains.front()))
    fail(ErrorCode::BadConfig, "margin must exceed the grid resolution");
  const int n = R.piece_count();
  MarkovReport report;
  report.matrix.assign(static_cast<std::size_t>(n),
                       std::vector<int>(static_cast<std::size_t>(n), 0));
  report.classes.assign(
      static_cast<std::size_t>(n),
      std::vector<MarkovClass>(static_cast<std::size_t>(n),
                               MarkovClass::Violation));
  report.passes = true;
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const SpaceSet img = set_image(R.domains[ju], R.maps[ju]);
    const SpaceSet fat = dilate(img, zeta);
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      if (contains_with_margin(R.domains[iu], img, zeta)) {
        report.classes[iu][ju] = MarkovClass::Inside;
        report.matrix[iu][ju] = 1;
      } else if (set_empty(intersect(fat, R.domains[iu]))) {
        report.classes[iu][ju] = MarkovClass::Disjoint;
      } else {
        report.classes[iu][ju] = MarkovClass::Violation;
        report.violations.emplace_back(i, j);
        report.passes = false;
      }
    }
  }
  if (report.passes && word_depth >= 1) {
    report.words_checked = true;
    report.word_depth = word_depth;
    report.words_match = true;
    const LanguageSample sample = code_words(R, word_depth);
    for (int len = 1; len <= word_depth && report.words_match; ++len) {
      std::vector<Word> walks = walk_words(report.matrix, len);
      std::vector<Word> found = sample.words_of_length(len);
      std::sort(walks.begin(), walks.end());
      std::sort(found.begin(), found.end());
      report.words_match = walks == found;
    }
  }
  return report;
}

SpaceSet orbit_domain(const LocalIFS& R, const Word& a) {
  if (a.empty()) fail(ErrorCode::BadWord, "orbit word is empty");
  for (int s : a) check_symbol(R, s);
  SpaceSet t = R.domains[static_cast<std::size_t>(a.back())];
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    const auto j = static_cast<std::size_t>(a[k]);
    t = set_preimage(t, R.maps[j], R.domains[j]);
  }
  return t;
}

SpaceSet infinite_core(const LocalIFS& R, const SpaceSet& attractor_cover,
                       int depth) {
  if (depth < 1) fail(ErrorCode::BadConfig, "need depth at least one");
  SpaceSet survivors = empty_like(R.domains.front());
  for (const SpaceSet& d : R.domains) survivors = unite(survivors, d);
  for (int k = 2; k <= depth; ++k) {
    SpaceSet next = empty_like(R.domains.front());
    for (int j = 0; j < R.piece_count(); ++j) {
      const auto ju = static_cast<std::size_t>(j);
      next = unite(next,
                   set_preimage(survivors, R.maps[ju], R.domains[ju]));
    }
    survivors = std::move(next);
  }
  return intersect(attractor_cover, survivors);
}

OverlapReport osc_probe(const LocalIFS& R, const SpaceSet& attractor_cover) {
  const int n = R.piece_count();
  std::vector<SpaceSet> pieces;
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    pieces.push_back(set_image(intersect(attractor_cover, R.domains[ju]),
                               R.maps[ju]));
  }
  OverlapReport report;
  report.disjoint_at_resolution = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t cells = cover_size(
          intersect(pieces[static_cast<std::size_t>(i)],
                    pieces[static_cast<std::size_t>(j)]));
      report.pairs.push_back(OverlapReport::PairOverlap{i, j, cells});
      if (cells != 0) report.disjoint_at_resolution = false;
    }
  }
  return report;
}

}  // namespace lifs
