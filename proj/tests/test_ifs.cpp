#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lifs/ifs.hpp"

using namespace lifs;

namespace {

const double kRoot3 = std::sqrt(3.0);

// Global gasket system on the triangle cover: three half-scale maps.
LocalIFS gasket(int level) {
  const std::vector<Point> verts = {Point::make(0.0, 0.0), Point::make(1.0, 0.0),
                                    Point::make(0.5, kRoot3 / 2.0)};
  const GridSet tri = cover_convex_polygon(level, verts);
  std::vector<SpaceMap> maps;
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.0, 0.0)));
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.5, 0.0)));
  maps.emplace_back(
      make_contraction(AffineMap::scale_translate(0.5, 0.25, kRoot3 / 4.0)));
  return make_local_ifs(std::move(maps), {tri, tri, tri});
}

// Binary halving system: attractor is the whole interval, everything
// dyadic so grid covers are exact.
LocalIFS halving(int level) {
  const GridSet full = GridSet::full_set(1, level);
  std::vector<SpaceMap> maps;
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.0)));
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.5)));
  return make_local_ifs(std::move(maps), {full, full});
}

// Two pieces with separated domains and images: f_0 keeps [0,0.4] deep
// inside itself, f_1 keeps [0.6,1] deep inside itself, and neither image
// comes near the other domain.
LocalIFS separated(int level) {
  const GridSet x0 = cover_box(1, level, Point::make(0.0), Point::make(0.4));
  const GridSet x1 = cover_box(1, level, Point::make(0.6), Point::make(1.0));
  std::vector<SpaceMap> maps;
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.25, 0.0)));
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.125, 0.8)));
  return make_local_ifs(std::move(maps), {x0, x1});
}

// The sequence-space example: two prepend maps on the binary subspace
// plus the pair-sum rule.
LocalIFS shift_system(int window) {
  const sym::SymbolicSet binary = sym::SymbolicSet::zero_one_space(window);
  std::vector<SpaceMap> maps;
  maps.emplace_back(sym::SymbolicMap::prepend(0));
  maps.emplace_back(sym::SymbolicMap::prepend(1));
  maps.emplace_back(sym::SymbolicMap::pair_sum());
  return make_local_ifs(std::move(maps), {binary, binary, binary});
}

GridSet random_mask(std::mt19937_64& rng, int level, int per_mille) {
  GridSet g = GridSet::empty_set(1, level);
  for (std::uint32_t i = 0; i < g.side(); ++i)
    if (rng() % 1000 < static_cast<std::uint64_t>(per_mille)) g.set(i);
  return g;
}

}  // namespace

TEST_CASE("system assembly validates pieces") {
  const GridSet full = GridSet::full_set(1, 6);
  const SpaceMap half{make_contraction(AffineMap::scale_translate(0.5, 0.0))};

  CHECK_THROWS_AS(make_local_ifs({half}, {full}), Error);  // one piece
  CHECK_THROWS_AS(make_local_ifs({half, half}, {full}), Error);  // mismatch
  CHECK_THROWS_AS(make_local_ifs({half, half}, {full, GridSet::empty_set(1, 6)}),
                  Error);
  CHECK_THROWS_AS(
      make_local_ifs({half, half}, {full, GridSet::full_set(1, 7)}), Error);
  CHECK_THROWS_AS(
      make_local_ifs({half, SpaceMap{sym::SymbolicMap::prepend(0)}},
                     {full, full}),
      Error);
  // Image [0.7, 1.2] leaves the cube.
  const SpaceMap leak{make_contraction(AffineMap::scale_translate(0.5, 0.7))};
  try {
    make_local_ifs({half, leak}, {full, full});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainViolation);
  }

  const LocalIFS ok = halving(6);
  CHECK(ok.piece_count() == 2);
  CHECK(ok.lambda == 0.5);
  CHECK(!ok.symbolic);
  CHECK(shift_system(8).symbolic);
  CHECK(shift_system(8).lambda == 0.5);
}

TEST_CASE("set operator: empty input, monotonicity, backend guard") {
  const LocalIFS R = halving(7);
  CHECK(set_empty(hutchinson_step(R, GridSet::empty_set(1, 7))));
  CHECK_THROWS_AS(hutchinson_step(R, sym::SymbolicSet::full_set(8)), Error);

  std::mt19937_64 rng(19);
  const LocalIFS S = separated(7);
  for (int trial = 0; trial < 10; ++trial) {
    const GridSet b = random_mask(rng, 7, 300);
    const GridSet extra = random_mask(rng, 7, 200);
    const GridSet c = unite(b, extra);
    CHECK(is_subset(hutchinson_step(R, b), hutchinson_step(R, c)));
    CHECK(is_subset(hutchinson_step(S, b), hutchinson_step(S, c)));
  }
}

TEST_CASE("attractor: exact fixed covers on dyadic systems") {
  // Halving system: the full interval is invariant from the first step.
  const AttractorReport full = attractor(halving(8), 10, 0.0);
  CHECK(full.converged);
  CHECK(full.nested);
  CHECK(full.iterations == 1);
  CHECK(full.final_step == 0.0);
  CHECK(std::get<GridSet>(full.cover) == GridSet::full_set(1, 8));

  // Two constant maps: the attractor is the two target cells.
  std::vector<SpaceMap> maps;
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.0, 0.3)));
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.0, 0.7)));
  const GridSet line = GridSet::full_set(1, 8);
  const LocalIFS constant = make_local_ifs(std::move(maps), {line, line});
  const AttractorReport pts = attractor(constant, 10, 0.0);
  CHECK(pts.converged);
  CHECK(pts.iterations == 2);
  CHECK(pts.final_step == 0.0);
  const GridSet& cells = std::get<GridSet>(pts.cover);
  CHECK(cells.cell_count() == 2);
  CHECK(cells.contains_point(Point::make(0.3)));
  CHECK(cells.contains_point(Point::make(0.7)));

  CHECK_THROWS_AS(attractor(constant, 0, 0.0), Error);
}

TEST_CASE("attractor: chain that dies reports the empty limit") {
  // Both images land outside both domains, so the second iterate is empty.
  const GridSet x0 = cover_box(1, 6, Point::make(0.0), Point::make(0.1));
  const GridSet x1 = cover_box(1, 6, Point::make(0.2), Point::make(0.3));
  std::vector<SpaceMap> maps;
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.25, 0.5)));
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.25, 0.6)));
  const LocalIFS R = make_local_ifs(std::move(maps), {x0, x1});
  const AttractorReport report = attractor(R, 10, 0.0);
  CHECK(report.converged);
  CHECK(report.nested);
  CHECK(set_empty(report.cover));
  CHECK(report.iterations <= 3);
}

TEST_CASE("attractor: gasket cover agrees with the chaos game") {
  const int L = 7;
  const LocalIFS R = gasket(L);
  const AttractorReport report = attractor(R, 200, 0.0);
  CHECK(report.converged);
  CHECK(report.nested);
  const GridSet& cover = std::get<GridSet>(report.cover);

  // Random-orbit oracle: orbit points lie in the true attractor, which
  // the cover must contain; and the cover should not be much fatter.
  GridSet cloud = GridSet::empty_set(2, L);
  std::mt19937_64 rng(23);
  double x = 0.0, y = 0.0;
  for (int k = 0; k < 100000; ++k) {
    switch (rng() % 3) {
      case 0: x = 0.5 * x; y = 0.5 * y; break;
      case 1: x = 0.5 * x + 0.5; y = 0.5 * y; break;
      default: x = 0.5 * x + 0.25; y = 0.5 * y + kRoot3 / 4.0; break;
    }
    const auto c = cloud.cell_of(Point::make(x, y));
    cloud.set(c[0], c[1]);
  }
  CHECK(is_subset(cloud, cover));
  CHECK(directed_cloud_distance(cover, cloud) <= 3.0 * cover.cell_diagonal());

  // Invariance of the final cover.
  CHECK(hausdorff_distance(hutchinson_step(R, report.cover), report.cover) <=
        2.0 * cover.cell_diagonal());

  // Truncated run is flagged, still nested, and contains the limit.
  const AttractorReport partial = attractor(R, 2, 0.0);
  CHECK(!partial.converged);
  CHECK(partial.nested);
  CHECK(is_subset(cover, std::get<GridSet>(partial.cover)));
}

TEST_CASE("attractor: sequence-space system stabilizes exactly") {
  const int W = 8;
  const LocalIFS R = shift_system(W);
  const AttractorReport report = attractor(R, 10, 0.0);
  CHECK(report.converged);
  CHECK(report.nested);
  CHECK(report.iterations == 2);
  const sym::SymbolicSet binary = sym::SymbolicSet::zero_one_space(W);
  const sym::SymbolicSet expected =
      unite(binary, set_image(binary, sym::SymbolicMap::pair_sum()));
  CHECK(std::get<sym::SymbolicSet>(report.cover) == expected);
}

TEST_CASE("composition cylinders shrink and certify diameters") {
  const int W = 8;
  const LocalIFS R = shift_system(W);

  CHECK_THROWS_AS(compose_image(R, Word{}), Error);
  CHECK_THROWS_AS(compose_image(R, Word{3}), Error);

  // Double pair-sum pins the first three digits to zero.
  const SpaceSet v22 = compose_image(R, Word{2, 2});
  const SpaceSet zero3{
      sym::SymbolicSet::from_cylinders(W, {std::vector<int>{0, 0, 0}})};
  CHECK(!set_empty(v22));
  CHECK(is_subset(v22, zero3));
  CHECK(diameter_upper(v22) <= std::ldexp(1.0, -4));

  // Certified contraction of cylinder diameters, exact backend.
  const double diam_x = 0.5;
  for (const Word& w : {Word{0}, Word{1, 2}, Word{2, 2, 0}, Word{0, 1, 0, 1},
                        Word{2, 0, 1, 2, 1}}) {
    const SpaceSet v = compose_image(R, w);
    if (set_empty(v)) continue;
    const double bound =
        std::pow(R.lambda, static_cast<double>(w.size())) * diam_x +
        std::ldexp(1.0, -(W + 1));
    CHECK(diameter_upper(v) <= bound);
  }

  // Dyadic grid system: same certificate, but every image step can add
  // one touching cell per side, so the resolution slack is the
  // geometric series 2h/(1-lambda) rather than a single diagonal.
  const LocalIFS H = halving(8);
  const GridSet full = GridSet::full_set(1, 8);
  const double slack =
      2.0 * full.cell_size() / (1.0 - H.lambda) + full.cell_diagonal();
  for (const Word& w :
       {Word{0}, Word{1}, Word{0, 1}, Word{1, 0, 1}, Word{0, 0, 0, 0}}) {
    const SpaceSet v = compose_image(H, w);
    const double bound =
        std::pow(0.5, static_cast<double>(w.size())) * diameter_upper(full);
    CHECK(diameter_upper(v) <= bound + slack);
  }

  // Single-symbol case is the piece image.
  CHECK(std::get<GridSet>(compose_image(H, Word{0})) ==
        set_image(full, AffineMap::scale_translate(0.5, 0.0)));
}

TEST_CASE("admissibility and code words: counted languages") {
  const LocalIFS R = shift_system(8);
  // Counts frozen from an independent brute-force oracle (eventually-zero
  // binary seeds pushed through the composition; domination by an
  // admissible seed preserves admissibility, so finite seeds suffice).
  // The language is full through depth 3; from depth 4 on, words whose
  // intermediate set left the binary subspace for good die off, the
  // first being the three extensions of (1,1,2).
  const std::vector<std::size_t> true_counts = {3, 9, 27, 78, 216};
  const LanguageSample words = code_words(R, 5);
  for (int k = 1; k <= 5; ++k)
    CHECK(words.words_of_length(k).size() ==
          true_counts[static_cast<std::size_t>(k - 1)]);
  CHECK(check_factorial(words));
  CHECK(admissible(R, Word{2, 2, 2, 2}));
  CHECK(admissible(R, Word{1, 1, 2}));
  CHECK(!admissible(R, Word{1, 1, 2, 0}));
  CHECK(!admissible(R, Word{1, 1, 2, 1}));
  CHECK(!admissible(R, Word{1, 1, 2, 2}));

  const TransitionMatrix m = transition_matrix(R);
  for (const auto& row : m)
    for (int e : row) CHECK(e == 1);

  const LocalIFS H = halving(7);
  const LanguageSample hw = code_words(H, 6);
  for (int k = 1; k <= 6; ++k)
    CHECK(hw.words_of_length(k).size() ==
          static_cast<std::size_t>(std::pow(2.0, k)));
}

TEST_CASE("separated system: diagonal matrix, constant words only") {
  const LocalIFS S = separated(8);
  const TransitionMatrix m = transition_matrix(S);
  const TransitionMatrix diagonal = {{1, 0}, {0, 1}};
  CHECK(m == diagonal);

  CHECK(admissible(S, Word{0, 0, 0}));
  CHECK(admissible(S, Word{1, 1}));
  CHECK(!admissible(S, Word{0, 1}));
  CHECK(!admissible(S, Word{1, 0, 0}));

  const LanguageSample words = code_words(S, 7);
  for (int k = 1; k <= 7; ++k) {
    std::vector<Word> got = words.words_of_length(k);
    std::sort(got.begin(), got.end());
    const std::vector<Word> want = {Word(static_cast<std::size_t>(k), 0),
                                    Word(static_cast<std::size_t>(k), 1)};
    CHECK(got == want);
  }

  const MarkovReport markov = markov_condition(S, 0.05, 7);
  CHECK(markov.passes);
  CHECK(markov.violations.empty());
  CHECK(markov.matrix == m);
  CHECK(markov.classes[0][0] == MarkovClass::Inside);
  CHECK(markov.classes[1][0] == MarkovClass::Disjoint);
  CHECK(markov.words_checked);
  CHECK(markov.words_match);
}

TEST_CASE("markov dichotomy: straddling images are violations") {
  // f_0(X_0) = [0, 0.5] straddles X_1 = [0, 0.3]: neither inside nor
  // separated.
  const int L = 8;
  const GridSet x0 = GridSet::full_set(1, L);
  const GridSet x1 = cover_box(1, L, Point::make(0.0), Point::make(0.3));
  std::vector<SpaceMap> maps;
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.0)));
  maps.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.2)));
  const LocalIFS R = make_local_ifs(std::move(maps), {x0, x1});
  const MarkovReport report = markov_condition(R, 0.02, 4);
  CHECK(!report.passes);
  CHECK(!report.violations.empty());
  CHECK(!report.words_checked);
  bool straddle_found = false;
  for (const auto& [i, j] : report.violations)
    if (i == 1 && j == 0) straddle_found = true;
  CHECK(straddle_found);

  CHECK_THROWS_AS(markov_condition(R, 0.001, 4), Error);  // below resolution
}

TEST_CASE("orbit domains: exact symbolic folds and grid emptiness") {
  const int W = 8;
  const LocalIFS R = shift_system(W);

  CHECK(std::get<sym::SymbolicSet>(orbit_domain(R, Word{2})) ==
        sym::SymbolicSet::zero_one_space(W));

  // Points iterable twice by the pair-sum rule: binary sequences whose
  // image is binary again, i.e. no adjacent ones among the constrained
  // digits (the last window digit is unconstrained by the fold).
  std::vector<std::vector<int>> no_adjacent;
  for (int bits = 0; bits < (1 << W); ++bits) {
    std::vector<int> w(W);
    for (int d = 0; d < W; ++d) w[static_cast<std::size_t>(d)] = (bits >> d) & 1;
    bool ok = true;
    for (int d = 0; d + 1 < W - 1; ++d)
      if (w[static_cast<std::size_t>(d)] == 1 &&
          w[static_cast<std::size_t>(d + 1)] == 1)
        ok = false;
    if (ok) no_adjacent.push_back(w);
  }
  const SpaceSet i2 = orbit_domain(R, Word{2, 2});
  CHECK(std::get<sym::SymbolicSet>(i2) ==
        sym::SymbolicSet::from_cylinders(W, no_adjacent));

  // Nested in the word length.
  SpaceSet prev = orbit_domain(R, Word{2});
  Word a{2};
  for (int n = 2; n <= 5; ++n) {
    a.push_back(2);
    const SpaceSet cur = orbit_domain(R, a);
    CHECK(is_subset(cur, prev));
    prev = cur;
  }

  const LocalIFS S = separated(8);
  CHECK(set_empty(orbit_domain(S, Word{0, 1})));
  CHECK(!set_empty(orbit_domain(S, Word{0, 0})));
  CHECK_THROWS_AS(orbit_domain(S, Word{}), Error);
}

TEST_CASE("infinite core: global equality, local exclusion") {
  // Global system: every point of the attractor survives forever.
  const LocalIFS H = halving(8);
  const AttractorReport ha = attractor(H, 10, 0.0);
  for (int depth : {1, 3, 6})
    CHECK(infinite_core(H, ha.cover, depth) == ha.cover);

  // Sequence-space system: the digit-2 shell of the attractor has no
  // forward step at all, so depth one already removes it.
  const int W = 8;
  const LocalIFS R = shift_system(W);
  const AttractorReport ra = attractor(R, 10, 0.0);
  const SpaceSet core1 = infinite_core(R, ra.cover, 1);
  const SpaceSet binary_part =
      intersect(ra.cover, SpaceSet{sym::SymbolicSet::zero_one_space(W)});
  CHECK(core1 == binary_part);
  // The all-ones sequence maps to (0,0,2,2,...), a shell point with no
  // forward step of its own.
  const SpacePoint shell{
      sym::SymbolicPoint(std::vector<int>{0, 0, 2, 2, 2, 2, 2, 2})};
  CHECK(!contains_point(core1, shell));
  CHECK(contains_point(ra.cover, shell));

  SpaceSet prev = core1;
  for (int depth = 2; depth <= 4; ++depth) {
    const SpaceSet cur = infinite_core(R, ra.cover, depth);
    CHECK(is_subset(cur, prev));
    prev = cur;
  }
  CHECK_THROWS_AS(infinite_core(R, ra.cover, 0), Error);
}

TEST_CASE("overlap probe separates the three example regimes") {
  // Identical pieces: total overlap.
  const GridSet full = GridSet::full_set(1, 7);
  std::vector<SpaceMap> same;
  same.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.0)));
  same.emplace_back(make_contraction(AffineMap::scale_translate(0.5, 0.0)));
  const LocalIFS dup = make_local_ifs(std::move(same), {full, full});
  const AttractorReport da = attractor(dup, 50, 0.0);
  const OverlapReport dr = osc_probe(dup, da.cover);
  CHECK(!dr.disjoint_at_resolution);
  CHECK(dr.pairs.size() == 1);
  CHECK(dr.pairs[0].cells == cover_size(hutchinson_step(dup, da.cover)));

  // Separated pieces: no overlap at all.
  const LocalIFS S = separated(8);
  const AttractorReport sa = attractor(S, 50, 0.0);
  const OverlapReport sr = osc_probe(S, sa.cover);
  CHECK(sr.disjoint_at_resolution);
  for (const auto& p : sr.pairs) CHECK(p.cells == 0);

  // Gasket: corner-touching pieces overlap, but only marginally.
  const LocalIFS G = gasket(7);
  const AttractorReport ga = attractor(G, 200, 0.0);
  const OverlapReport gr = osc_probe(G, ga.cover);
  CHECK(!gr.disjoint_at_resolution);
  std::uint64_t total = 0;
  for (const auto& p : gr.pairs) total += p.cells;
  CHECK(total > 0);
  CHECK(total < cover_size(ga.cover) / 10);
}
