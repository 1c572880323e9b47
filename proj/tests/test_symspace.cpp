#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lifs/symspace.hpp"

using lifs::Error;
using lifs::ErrorCode;
using namespace lifs::sym;

namespace {

using IntWord = std::vector<int>;
using WordSet = std::set<IntWord>;

// Brute-force mirror of the trie backend: a set is the explicit list of
// its depth-window words, every operation is spelled out directly from
// the definitions.

std::uint64_t pow3i(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

std::vector<IntWord> all_depth_words(int window) {
  std::vector<IntWord> out;
  IntWord w(static_cast<std::size_t>(window), 0);
  while (true) {
    out.push_back(w);
    int i = window - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == 2) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

SymbolicSet build(int window, const WordSet& words) {
  return SymbolicSet::from_cylinders(
      window, std::vector<IntWord>(words.begin(), words.end()));
}

// 2^{-first difference}; 0 when the words are identical.
double word_gap(const IntWord& u, const IntWord& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) return std::ldexp(1.0, -static_cast<int>(i) - 1);
  return 0.0;
}

WordSet o_unite(const WordSet& a, const WordSet& b) {
  WordSet r = a;
  r.insert(b.begin(), b.end());
  return r;
}

WordSet o_intersect(const WordSet& a, const WordSet& b) {
  WordSet r;
  for (const auto& w : a)
    if (b.count(w)) r.insert(w);
  return r;
}

bool o_subset(const WordSet& a, const WordSet& b) {
  for (const auto& w : a)
    if (!b.count(w)) return false;
  return true;
}

WordSet o_prepend_image(const WordSet& a, int s) {
  WordSet r;
  for (const auto& u : a) {
    IntWord w;
    w.push_back(s);
    w.insert(w.end(), u.begin(), u.end() - 1);
    r.insert(w);
  }
  return r;
}

WordSet o_prepend_preimage(const WordSet& a, int s) {
  WordSet r;
  for (const auto& u : a) {
    if (u.front() != s) continue;
    for (int c = 0; c < kAlphabet; ++c) {
      IntWord w(u.begin() + 1, u.end());
      w.push_back(c);
      r.insert(w);
    }
  }
  return r;
}

WordSet o_pair_sum_image(const WordSet& a) {
  WordSet r;
  for (const auto& u : a) {
    if (*std::max_element(u.begin(), u.end()) > 1) continue;
    IntWord w(u.size(), 0);
    for (std::size_t k = 2; k < u.size(); ++k) w[k] = u[k - 2] + u[k - 1];
    r.insert(w);
  }
  return r;
}

WordSet o_pair_sum_preimage(const WordSet& a, int window) {
  WordSet r;
  for (const auto& x : all_depth_words(window)) {
    if (*std::max_element(x.begin(), x.end()) > 1) continue;
    IntWord w(x.size(), 0);
    for (std::size_t k = 2; k < x.size(); ++k) w[k] = x[k - 2] + x[k - 1];
    if (a.count(w)) r.insert(x);
  }
  return r;
}

WordSet o_dilate(const WordSet& a, double radius, int window) {
  int m = -1;
  for (int k = 0; k <= window; ++k) {
    if (std::ldexp(1.0, -k) <= radius) {
      m = k;
      break;
    }
  }
  if (m < 0) return a;
  WordSet r;
  for (const auto& w : all_depth_words(window))
    for (const auto& u : a)
      if (std::equal(u.begin(), u.begin() + (m - 1 > 0 ? m - 1 : 0), w.begin())) {
        r.insert(w);
        break;
      }
  return r;
}

double o_directed(const WordSet& a, const WordSet& b) {
  double worst = 0.0;
  for (const auto& u : a) {
    double best = 1.0;
    for (const auto& v : b) best = std::min(best, word_gap(u, v));
    worst = std::max(worst, best);
  }
  return worst;
}

double o_point_to_set(const SymbolicPoint& p, const WordSet& a, int window) {
  IntWord pw;
  for (int d = 1; d <= window; ++d) pw.push_back(p.digit(d));
  double best = 1.0;
  for (const auto& u : a) best = std::min(best, word_gap(pw, u));
  return best;
}

double o_diameter(const WordSet& a, int window) {
  if (a.empty()) return 0.0;
  double worst = std::ldexp(1.0, -window - 1);
  for (const auto& u : a)
    for (const auto& v : a) worst = std::max(worst, word_gap(u, v));
  return worst;
}

bool has_prefix(const IntWord& w, const IntWord& prefix) {
  return std::equal(prefix.begin(), prefix.end(), w.begin());
}

void o_reps(const WordSet& a, int window, IntWord& prefix,
            std::vector<IntWord>& out) {
  std::uint64_t present = 0;
  for (const auto& w : a)
    if (has_prefix(w, prefix)) ++present;
  if (present == 0) return;
  if (present == pow3i(window - static_cast<int>(prefix.size()))) {
    out.push_back(prefix);
    return;
  }
  for (int s = 0; s < kAlphabet; ++s) {
    prefix.push_back(s);
    o_reps(a, window, prefix, out);
    prefix.pop_back();
  }
}

std::vector<SymbolicPoint> o_centers(const WordSet& a, int window,
                                     const SymbolicPoint& near, std::size_t cap) {
  std::vector<IntWord> reps;
  IntWord prefix;
  o_reps(a, window, prefix, reps);
  std::vector<std::pair<double, IntWord>> keyed;
  for (const auto& q : reps)
    keyed.emplace_back(distance(SymbolicPoint(q), near), q);
  std::sort(keyed.begin(), keyed.end());
  if (keyed.size() > cap) keyed.resize(cap);
  std::vector<SymbolicPoint> out;
  for (const auto& [d, q] : keyed) out.push_back(SymbolicPoint(q));
  return out;
}

WordSet random_set(std::mt19937_64& rng, int window, int per_mille) {
  WordSet s;
  for (const auto& w : all_depth_words(window))
    if (rng() % 1000 < static_cast<std::uint64_t>(per_mille)) s.insert(w);
  return s;
}

WordSet random_binary_set(std::mt19937_64& rng, int window, int per_mille) {
  WordSet s;
  for (const auto& w : all_depth_words(window)) {
    if (*std::max_element(w.begin(), w.end()) > 1) continue;
    if (rng() % 1000 < static_cast<std::uint64_t>(per_mille)) s.insert(w);
  }
  return s;
}

}  // namespace

TEST_CASE("symbolic points: digits, metric, map action") {
  const SymbolicPoint zero = SymbolicPoint::zero();
  const SymbolicPoint x(IntWord{1, 1, 0, 1});
  CHECK(x.digit(1) == 1);
  CHECK(x.digit(3) == 0);
  CHECK(x.digit(4) == 1);
  CHECK(x.digit(99) == 0);
  CHECK_THROWS_AS(x.digit(0), Error);
  CHECK_THROWS_AS(SymbolicPoint(IntWord{0, 3}), Error);

  // Trailing zeros are not stored, so equal points compare equal.
  CHECK(SymbolicPoint(IntWord{1, 0, 0}) == SymbolicPoint(IntWord{1}));

  CHECK(distance(zero, zero) == 0.0);
  CHECK(distance(x, x) == 0.0);
  CHECK(distance(SymbolicPoint(IntWord{1}), zero) == 0.5);
  CHECK(distance(SymbolicPoint(IntWord{0, 0, 1}), zero) == 0.125);
  CHECK(distance(SymbolicPoint(IntWord{2, 1}), SymbolicPoint(IntWord{2, 0, 1})) ==
        0.25);

  const SymbolicMap p2 = SymbolicMap::prepend(2);
  CHECK(p2(x) == SymbolicPoint(IntWord{2, 1, 1, 0, 1}));
  CHECK(p2.lambda() == 0.5);
  CHECK_THROWS_AS(SymbolicMap::prepend(3), Error);

  const SymbolicMap ps = SymbolicMap::pair_sum();
  // (1,1,0,1,0,...) -> (0,0, 1+1, 1+0, 0+1, 1+0, 0,...)
  CHECK(ps(x) == SymbolicPoint(IntWord{0, 0, 2, 1, 1, 1}));
  CHECK(ps(zero) == zero);
  CHECK_THROWS_AS(ps(SymbolicPoint(IntWord{2})), Error);

  // Both shapes contract by exactly 1/2 on their domains.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    IntWord u, v;
    for (int i = 0; i < 10; ++i) {
      u.push_back(static_cast<int>(rng() % 2));
      v.push_back(static_cast<int>(rng() % 2));
    }
    const SymbolicPoint a(u), b(v);
    CHECK(distance(p2(a), p2(b)) == 0.5 * distance(a, b));
    // Digit sums may collide (0+1 = 1+0), so the pair-sum rule is only
    // Lipschitz, not a similarity.
    CHECK(distance(ps(a), ps(b)) <= 0.5 * distance(a, b));
  }
}

TEST_CASE("set construction, membership, and counting") {
  const int W = 5;
  CHECK(SymbolicSet::empty_set(W).empty());
  CHECK(SymbolicSet::full_set(W).is_full());
  CHECK(SymbolicSet::full_set(W).cylinder_count() == 243);
  CHECK(SymbolicSet::zero_one_space(W).cylinder_count() == 32);
  CHECK(SymbolicSet::zero_one_space(6).cylinder_count() == 64);
  CHECK(SymbolicSet::full_set(W).resolution() == std::ldexp(1.0, -6));

  const SymbolicSet a = SymbolicSet::from_cylinders(W, {{0}, {1, 1}});
  CHECK(a.cylinder_count() == 81 + 27);
  CHECK(contains_point(a, SymbolicPoint::zero()));
  CHECK(contains_point(a, SymbolicPoint(IntWord{0, 2, 2, 2, 2, 1})));
  CHECK(contains_point(a, SymbolicPoint(IntWord{1, 1, 2})));
  CHECK(!contains_point(a, SymbolicPoint(IntWord{1, 0})));
  CHECK(!contains_point(a, SymbolicPoint(IntWord{2})));

  // Canonical tries make set equality independent of construction order.
  CHECK(a == SymbolicSet::from_cylinders(W, {{1, 1}, {0}}));
  CHECK(a != SymbolicSet::from_cylinders(W, {{0}}));
  const std::vector<IntWord> all0 = {{0, 0}, {0, 1}, {0, 2}};
  CHECK(SymbolicSet::from_cylinders(W, all0) ==
        SymbolicSet::from_cylinders(W, {{0}}));

  // The {0,1} subspace is exactly the union of its binary cylinders.
  WordSet binary;
  for (const auto& w : all_depth_words(W))
    if (*std::max_element(w.begin(), w.end()) <= 1) binary.insert(w);
  CHECK(SymbolicSet::zero_one_space(W) == build(W, binary));

  CHECK_THROWS_AS(SymbolicSet::empty_set(3), Error);
  CHECK_THROWS_AS(SymbolicSet::full_set(kMaxWindow + 1), Error);
  CHECK_THROWS_AS(SymbolicSet::from_cylinders(W, {{0, 3}}), Error);
  CHECK_THROWS_AS(SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 0, 0}}), Error);
  try {
    SymbolicSet::empty_set(2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadConfig);
  }
}

TEST_CASE("set algebra matches the explicit word algebra") {
  const int W = 5;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    const int density = trial % 3 == 0 ? 80 : (trial % 3 == 1 ? 300 : 600);
    const WordSet wa = random_set(rng, W, density);
    const WordSet wb = random_set(rng, W, density);
    const SymbolicSet a = build(W, wa);
    const SymbolicSet b = build(W, wb);

    CHECK(a.cylinder_count() == wa.size());
    CHECK(unite(a, b) == build(W, o_unite(wa, wb)));
    CHECK(intersect(a, b) == build(W, o_intersect(wa, wb)));
    CHECK(is_subset(a, b) == o_subset(wa, wb));
    CHECK(is_subset(intersect(a, b), a));
    CHECK(is_subset(a, unite(a, b)));
  }

  // Exhaustive membership for one mid-density set.
  const WordSet wa = random_set(rng, W, 400);
  const SymbolicSet a = build(W, wa);
  for (const auto& w : all_depth_words(W))
    CHECK(contains_point(a, SymbolicPoint(w)) == (wa.count(w) > 0));

  CHECK_THROWS_AS(unite(SymbolicSet::full_set(5), SymbolicSet::full_set(6)),
                  Error);
  CHECK_THROWS_AS(intersect(SymbolicSet::full_set(5), SymbolicSet::empty_set(6)),
                  Error);
  CHECK_THROWS_AS(is_subset(SymbolicSet::full_set(5), SymbolicSet::full_set(6)),
                  Error);
}

TEST_CASE("prepend maps: images and preimages") {
  const int W = 5;

  // Hand case: prepending 2 to the binary subspace fixes digit one and
  // keeps four binary digits in the window.
  const SymbolicSet zw = SymbolicSet::zero_one_space(W);
  const SymbolicSet img = set_image(zw, SymbolicMap::prepend(2));
  CHECK(img.cylinder_count() == 16);
  CHECK(contains_point(img, SymbolicPoint(IntWord{2, 1, 0, 1, 0})));
  CHECK(!contains_point(img, SymbolicPoint(IntWord{0})));
  CHECK(!contains_point(img, SymbolicPoint(IntWord{2, 2})));

  const SymbolicSet c21 = SymbolicSet::from_cylinders(W, {{2, 1}});
  CHECK(set_preimage(c21, SymbolicMap::prepend(2)) ==
        SymbolicSet::from_cylinders(W, {{1}}));
  CHECK(set_preimage(c21, SymbolicMap::prepend(0)).empty());
  CHECK(set_preimage(SymbolicSet::full_set(W), SymbolicMap::prepend(1)).is_full());

  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 9; ++trial) {
    const WordSet wa = random_set(rng, W, 250);
    const SymbolicSet a = build(W, wa);
    const int s = trial % 3;
    const SymbolicMap f = SymbolicMap::prepend(s);
    CHECK(set_image(a, f) == build(W, o_prepend_image(wa, s)));
    CHECK(set_preimage(a, f) == build(W, o_prepend_preimage(wa, s)));
    // Round trip: every point of a cylinder of f's image pulls back.
    CHECK(is_subset(a, set_preimage(set_image(a, f), f)));
  }
}

TEST_CASE("pair-sum map: images and preimages") {
  const int W = 5;

  // Hand case: the single binary cylinder 1 1 0 0 1 maps onto the digit
  // sums 0 0 2 1 0.
  const SymbolicSet one = SymbolicSet::from_cylinders(W, {{1, 1, 0, 0, 1}});
  const SymbolicMap ps = SymbolicMap::pair_sum();
  CHECK(set_image(one, ps) == SymbolicSet::from_cylinders(W, {{0, 0, 2, 1, 0}}));

  // A branch whose window ends in a forced 2 leaves the domain, so it
  // contributes nothing.
  CHECK(set_image(SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 2}}), ps).empty());
  CHECK(set_image(SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 1}}), ps) ==
        SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 0}}));

  // Hand preimage: sums (2,1,0) force digits 1,1,0,0 with a free fifth.
  const SymbolicSet back =
      set_preimage(SymbolicSet::from_cylinders(W, {{0, 0, 2, 1, 0}}), ps);
  CHECK(back ==
        SymbolicSet::from_cylinders(W, {{1, 1, 0, 0, 0}, {1, 1, 0, 0, 1}}));
  CHECK(set_preimage(SymbolicSet::from_cylinders(W, {{1}}), ps).empty());

  // The whole binary subspace maps into the cylinder 0 0.
  const SymbolicSet zw = SymbolicSet::zero_one_space(W);
  CHECK(is_subset(set_image(zw, ps), SymbolicSet::from_cylinders(W, {{0, 0}})));
  CHECK(set_preimage(SymbolicSet::full_set(W), ps) == zw);

  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 9; ++trial) {
    WordSet wa = random_binary_set(rng, W, 400);
    // Salt with digit-2 words: the rule must ignore them.
    for (const auto& w : random_set(rng, W, 60)) wa.insert(w);
    const SymbolicSet a = build(W, wa);
    CHECK(set_image(a, ps) == build(W, o_pair_sum_image(wa)));

    const WordSet wb = random_set(rng, W, 300);
    const SymbolicSet b = build(W, wb);
    CHECK(set_preimage(b, ps) == build(W, o_pair_sum_preimage(wb, W)));
  }
}

TEST_CASE("dilation is exact truncation at the ball depth") {
  const int W = 5;
  const SymbolicSet cell = SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 0}});
  CHECK(dilate(cell, 0.25) == SymbolicSet::from_cylinders(W, {{0}}));
  CHECK(dilate(cell, 0.3) == SymbolicSet::from_cylinders(W, {{0}}));
  CHECK(dilate(cell, std::ldexp(1.0, -5)) ==
        SymbolicSet::from_cylinders(W, {{0, 0, 0, 0}}));
  CHECK(dilate(cell, 0.5).is_full());
  CHECK(dilate(cell, 2.0).is_full());
  CHECK(dilate(cell, std::ldexp(1.0, -6)) == cell);  // below resolution
  CHECK(dilate(cell, 0.0) == cell);
  CHECK(dilate(SymbolicSet::empty_set(W), 0.5).empty());
  CHECK_THROWS_AS(dilate(cell, -0.01), Error);

  std::mt19937_64 rng(404);
  const double radii[] = {0.0,  std::ldexp(1.0, -6), std::ldexp(1.0, -5),
                          0.1,  0.25,                0.3,
                          0.49, 0.5,                 0.9};
  for (int trial = 0; trial < 4; ++trial) {
    const WordSet wa = random_set(rng, W, 150);
    const SymbolicSet a = build(W, wa);
    for (double r : radii) {
      CHECK(dilate(a, r) == build(W, o_dilate(wa, r, W)));
      CHECK(is_subset(a, dilate(a, r)));
    }
  }
}

TEST_CASE("distances and diameters match the word oracle exactly") {
  const int W = 5;

  // Hand case: everything in cylinder 0 sits within 1/4 of cylinder 0 0,
  // which is itself inside cylinder 0.
  const SymbolicSet c0 = SymbolicSet::from_cylinders(W, {{0}});
  const SymbolicSet c00 = SymbolicSet::from_cylinders(W, {{0, 0}});
  CHECK(directed_distance(c0, c00) == 0.25);
  CHECK(directed_distance(c00, c0) == 0.0);
  CHECK(hausdorff_distance(c0, c00) == 0.25);
  CHECK(hausdorff_distance(c0, SymbolicSet::from_cylinders(W, {{1}})) == 0.5);

  CHECK(diameter_upper(SymbolicSet::empty_set(W)) == 0.0);
  CHECK(diameter_upper(SymbolicSet::full_set(W)) == 0.5);
  CHECK(diameter_upper(SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 0}})) ==
        std::ldexp(1.0, -6));
  CHECK(diameter_upper(
            SymbolicSet::from_cylinders(W, {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 1}})) ==
        std::ldexp(1.0, -5));

  CHECK_THROWS_AS(hausdorff_distance(c0, SymbolicSet::empty_set(W)), Error);
  CHECK_THROWS_AS(directed_distance(SymbolicSet::empty_set(W), c0), Error);
  CHECK_THROWS_AS(hausdorff_distance(c0, SymbolicSet::full_set(6)), Error);

  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 10; ++trial) {
    WordSet wa = random_set(rng, W, 120);
    WordSet wb = random_set(rng, W, 120);
    if (wa.empty()) wa.insert(IntWord{0, 1, 2, 1, 0});
    if (wb.empty()) wb.insert(IntWord{2, 2, 0, 0, 1});
    const SymbolicSet a = build(W, wa);
    const SymbolicSet b = build(W, wb);
    CHECK(directed_distance(a, b) == o_directed(wa, wb));
    CHECK(directed_distance(b, a) == o_directed(wb, wa));
    CHECK(hausdorff_distance(a, b) ==
          std::max(o_directed(wa, wb), o_directed(wb, wa)));
    CHECK(diameter_upper(a) == o_diameter(wa, W));
  }

  // One wider-window cross-check.
  const WordSet w6a = random_set(rng, 6, 40);
  const WordSet w6b = random_set(rng, 6, 40);
  if (!w6a.empty() && !w6b.empty()) {
    CHECK(hausdorff_distance(build(6, w6a), build(6, w6b)) ==
          std::max(o_directed(w6a, w6b), o_directed(w6b, w6a)));
  }
}

TEST_CASE("point-to-set distance walks the digit path") {
  const int W = 5;
  const SymbolicSet a = SymbolicSet::from_cylinders(W, {{0, 1}, {2}});
  CHECK(point_to_set_distance(SymbolicPoint::zero(), a) == 0.25);
  CHECK(point_to_set_distance(SymbolicPoint(IntWord{0, 1, 1, 1, 1, 1}), a) == 0.0);
  CHECK(point_to_set_distance(SymbolicPoint(IntWord{2, 0, 2}), a) == 0.0);
  CHECK(point_to_set_distance(SymbolicPoint(IntWord{1}), a) == 0.5);
  CHECK_THROWS_AS(point_to_set_distance(SymbolicPoint::zero(),
                                        SymbolicSet::empty_set(W)),
                  Error);

  std::mt19937_64 rng(606);
  const SymbolicPoint probes[] = {
      SymbolicPoint::zero(), SymbolicPoint(IntWord{1}),
      SymbolicPoint(IntWord{2, 1, 0, 2}), SymbolicPoint(IntWord{1, 1, 1, 1, 1}),
      SymbolicPoint(IntWord{0, 2, 0, 2, 0, 2, 0})};
  for (int trial = 0; trial < 8; ++trial) {
    WordSet wa = random_set(rng, W, 100);
    if (wa.empty()) wa.insert(IntWord{1, 0, 1, 0, 1});
    const SymbolicSet a2 = build(W, wa);
    for (const auto& p : probes)
      CHECK(point_to_set_distance(p, a2) == o_point_to_set(p, wa, W));
  }
}

TEST_CASE("representatives come out nearest first with stable ties") {
  const int W = 5;

  // Hand case: two decided blocks; the deeper one is closer to the probe.
  const SymbolicSet a = SymbolicSet::from_cylinders(W, {{0}, {1, 1}});
  const SymbolicPoint near(IntWord{1, 1, 1});
  const auto got = centers_by_distance(a, near, 10);
  REQUIRE(got.size() == 2);
  CHECK(got[0] == SymbolicPoint(IntWord{1, 1}));
  CHECK(got[1] == SymbolicPoint::zero());
  CHECK(centers_by_distance(a, near, 1).size() == 1);
  CHECK(centers_by_distance(a, near, 1)[0] == SymbolicPoint(IntWord{1, 1}));

  // The full space is one decided block: its lone representative is the
  // zero tail, whatever the probe.
  const auto whole =
      centers_by_distance(SymbolicSet::full_set(W), SymbolicPoint(IntWord{2}), 5);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0] == SymbolicPoint::zero());

  CHECK(centers_by_distance(SymbolicSet::empty_set(W), near, 5).empty());
  CHECK(centers_by_distance(a, near, 0).empty());

  std::mt19937_64 rng(707);
  const SymbolicPoint probes[] = {
      SymbolicPoint::zero(), SymbolicPoint(IntWord{1}),
      SymbolicPoint(IntWord{2, 1, 0, 2}), SymbolicPoint(IntWord{1, 1, 1, 1, 1})};
  for (int trial = 0; trial < 8; ++trial) {
    const WordSet wa = random_set(rng, W, trial % 2 == 0 ? 150 : 500);
    const SymbolicSet a2 = build(W, wa);
    for (const auto& p : probes) {
      for (std::size_t cap : {std::size_t{1}, std::size_t{4}, std::size_t{1000}}) {
        const auto lhs = centers_by_distance(a2, p, cap);
        const auto rhs = o_centers(wa, W, p, cap);
        REQUIRE(lhs.size() == rhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == rhs[i]);
      }
    }
  }

  // Every representative of a decided block lies in the set.
  const WordSet wa = random_set(rng, W, 350);
  if (!wa.empty()) {
    const SymbolicSet a3 = build(W, wa);
    for (const auto& rep : centers_by_distance(a3, SymbolicPoint::zero(), 1000))
      CHECK(contains_point(a3, rep));
  }
}
