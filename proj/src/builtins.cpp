#include "lifs/builtins.hpp"

#include <cmath>
#include <utility>

#include "lifs/errors.hpp"
#include "lifs/geometry.hpp"
#include "lifs/symspace.hpp"

namespace lifs {

namespace {

GridSet triangle_cover(int level) {
  const std::vector<Point> verts = {Point::make(0.0, 0.0),
                                    Point::make(1.0, 0.0),
                                    Point::make(0.5, std::sqrt(3.0) / 2.0)};
  return cover_convex_polygon(level, verts);
}

}  // namespace

LocalIFS superfractal(double beta, int level) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    fail(ErrorCode::BadConfig, "superfractal height parameter outside [0,1]");
  }
  const GridSet tri = triangle_cover(level);
  const GridSet low = cover_halfplane(level, Point::make(0.0, 1.0), beta);

  std::vector<SpaceMap> maps;
  maps.push_back(make_contraction(AffineMap::scale_translate(0.5, 0.0, 0.0)));
  maps.push_back(make_contraction(AffineMap::scale_translate(0.5, 0.5, 0.0)));
  maps.push_back(make_contraction(
      AffineMap::scale_translate(0.5, 0.25, std::sqrt(3.0) / 4.0)));

  std::vector<SpaceSet> domains = {tri, tri, intersect(tri, low)};
  return make_local_ifs(std::move(maps), std::move(domains));
}

LocalIFS nonsemicont(double t, int level) {
  if (!(t >= 0.125 && t <= 1.0)) {
    fail(ErrorCode::BadConfig, "corner-domain parameter outside [1/8, 1]");
  }
  const GridSet quarter =
      cover_box(2, level, Point::make(0.0, 0.0), Point::make(0.5, 0.5));
  const GridSet corner =
      cover_box(2, level, Point::make(1.0 - t, 1.0 - t), Point::make(1.0, 1.0));

  std::vector<SpaceMap> maps;
  maps.push_back(make_contraction(AffineMap::scale_translate(0.25, 0.25, 0.25)));
  maps.push_back(make_contraction(AffineMap::scale_translate(0.25, 0.0, 0.25)));
  maps.push_back(make_contraction(AffineMap::scale_translate(0.25, 0.25, 0.0)));
  maps.push_back(make_contraction(AffineMap::scale_translate(0.2, 0.6, 0.6)));

  std::vector<SpaceSet> domains = {quarter, quarter, quarter, corner};
  return make_local_ifs(std::move(maps), std::move(domains));
}

LocalIFS markov2(int level) {
  const GridSet full = GridSet::full_set(1, level);
  std::vector<SpaceMap> maps;
  maps.push_back(make_contraction(AffineMap::scale_translate(0.25, 0.2)));
  maps.push_back(make_contraction(AffineMap::scale_translate(0.25, 0.55)));
  std::vector<SpaceSet> domains = {full, full};
  return make_local_ifs(std::move(maps), std::move(domains));
}

LocalIFS exshift2(int window) {
  const sym::SymbolicSet binary = sym::SymbolicSet::zero_one_space(window);
  std::vector<SpaceMap> maps = {sym::SymbolicMap::prepend(0),
                                sym::SymbolicMap::prepend(1),
                                sym::SymbolicMap::pair_sum()};
  std::vector<SpaceSet> domains = {binary, binary, binary};
  return make_local_ifs(std::move(maps), std::move(domains));
}

ReplayOrbit exshift2_replay(double delta, int horizon, int window) {
  if (!(delta > 0.0 && delta <= 0.25)) {
    fail(ErrorCode::BadConfig, "replay step budget outside (0, 1/4]");
  }
  const int n = static_cast<int>(std::floor(std::log2(1.0 / delta))) + 1;
  if (horizon < n + 1) {
    fail(ErrorCode::BadConfig,
         "replay horizon must reach one past the glitch position");
  }
  if (window < n + 3) {
    fail(ErrorCode::BadConfig,
         "window too small to resolve the replay's digits");
  }

  ReplayOrbit out;
  out.delta = delta;
  out.glitch = n - 2;  // the one step whose error is 2^-(n+1), not zero

  out.a.assign(static_cast<std::size_t>(horizon) + 1, 0);
  out.a[0] = 2;
  for (int k = n - 1; k <= horizon; ++k) {
    out.a[static_cast<std::size_t>(k)] = 2;
  }

  // x^0 = (0,1,0,...); x^1 = pair-sum of it = (0,0,1,1,0,...);
  // x^k = zeros then the 1,1 block at positions k+2, k+3; from the
  // glitch on, the zero sequence.
  out.points.reserve(static_cast<std::size_t>(horizon) + 1);
  out.points.push_back(sym::SymbolicPoint({0, 1}));
  for (int k = 1; k <= n - 2; ++k) {
    std::vector<int> digits(static_cast<std::size_t>(k + 3), 0);
    digits[static_cast<std::size_t>(k + 1)] = 1;  // position k+2, 1-based
    digits[static_cast<std::size_t>(k + 2)] = 1;  // position k+3
    out.points.push_back(sym::SymbolicPoint(std::move(digits)));
  }
  for (int k = n - 1; k <= horizon; ++k) {
    out.points.push_back(sym::SymbolicPoint::zero());
  }
  return out;
}

FiberGraph gd_2cycle(int level) {
  FiberGraph g;
  g.vertex_count = 2;
  g.fiber_domains = {GridSet::full_set(1, level), GridSet::full_set(1, level)};
  g.edges.push_back(
      {0, 1, make_contraction(AffineMap::scale_translate(0.4, 0.05))});
  g.edges.push_back(
      {1, 0, make_contraction(AffineMap::scale_translate(0.4, 0.55))});
  return g;
}

BetaSystem beta_golden() {
  return make_beta_system((1.0 + std::sqrt(5.0)) / 2.0);
}

BetaSystem beta_sparse() {
  return solve_sparse_beta({1, 2, 3, 4, 5}, 5, 1e-12);
}

}  // namespace lifs
