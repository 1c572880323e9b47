#include "lifs/shadowing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace lifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_word(const LocalIFS& R, const Word& a) {
  if (a.empty()) fail(ErrorCode::BadWord, "symbol word is empty");
  for (int s : a)
    if (s < 0 || s >= R.piece_count())
      fail(ErrorCode::BadWord, "symbol outside the piece range");
}

// Deterministic anchor used to order candidate cells when no better
// reference point exists.
SpacePoint origin_of(const SpaceSet& s) {
  if (const auto* g = std::get_if<GridSet>(&s))
    return g->dim() == 1 ? Point::make(0.0) : Point::make(0.0, 0.0);
  return sym::SymbolicPoint::zero();
}

// The stabilized attractor cover the generated points are kept on.
SpaceSet attractor_cover(const LocalIFS& R) {
  return attractor(R, 256, 0.0).cover;
}

bool orbit_sup_distance(const LocalIFS& R, const PseudoOrbit& po,
                        const SpacePoint& start, double* sup, double* mean) {
  SpacePoint x = start;
  double worst = 0.0;
  double total = 0.0;
  const std::size_t n = po.points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto j = static_cast<std::size_t>(po.a[k]);
    if (!contains_point(R.domains[j], x)) return false;
    const double d = distance(x, po.points[k]);
    worst = std::max(worst, d);
    total += d;
    if (k + 1 < n) x = lifs::apply(R.maps[j], x);
  }
  *sup = worst;
  *mean = total / static_cast<double>(n);
  return true;
}

}  // namespace

PseudoOrbit make_pseudo_orbit(const LocalIFS& R, const Word& a, double delta,
                              int N, std::uint64_t seed) {
  if (delta <= 0.0) fail(ErrorCode::BadConfig, "tolerance must be positive");
  if (N < 1) fail(ErrorCode::BadConfig, "need at least one step");
  check_word(R, a);
  if (static_cast<int>(a.size()) != N + 1)
    fail(ErrorCode::BadWord, "symbol word must supply N + 1 entries");

  const SpaceSet cover = attractor_cover(R);
  std::mt19937_64 rng(seed);

  PseudoOrbit po;
  po.a = a;
  po.delta = delta;

  const SpaceSet start_set =
      intersect(R.domains[static_cast<std::size_t>(a[0])], cover);
  if (set_empty(start_set))
    fail(ErrorCode::DeadEnd, "no start available in the first piece at step 0");
  const auto starts = centers_by_distance(start_set, origin_of(cover), 4096);
  po.points.push_back(starts[rng() % starts.size()]);

  for (int k = 0; k < N; ++k) {
    const auto jk = static_cast<std::size_t>(a[static_cast<std::size_t>(k)]);
    const auto jn =
        static_cast<std::size_t>(a[static_cast<std::size_t>(k) + 1]);
    const SpacePoint y = lifs::apply(R.maps[jk], po.points.back());
    const SpaceSet target = intersect(R.domains[jn], cover);
    std::ostringstream at;
    at << "no continuation within delta at step " << k;
    if (set_empty(target)) fail(ErrorCode::DeadEnd, at.str());

    // Prefer a seeded jittered landing; fall back to the exact image or
    // the nearest representable point still below the tolerance.
    const auto near = centers_by_distance(target, y, 64);
    std::vector<SpacePoint> jitter;
    for (const SpacePoint& c : near)
      if (distance(c, y) < 0.6 * delta) jitter.push_back(c);
    if (!jitter.empty()) {
      po.points.push_back(jitter[rng() % jitter.size()]);
    } else if (contains_point(target, y)) {
      po.points.push_back(y);
    } else if (!near.empty() && distance(near.front(), y) < delta) {
      po.points.push_back(near.front());
    } else {
      fail(ErrorCode::DeadEnd, at.str());
    }
  }

  po.verified = true;
  for (std::size_t k = 0; k < po.points.size(); ++k) {
    const auto j = static_cast<std::size_t>(a[k]);
    if (!contains_point(R.domains[j], po.points[k])) po.verified = false;
    if (k + 1 < po.points.size() &&
        distance(lifs::apply(R.maps[j], po.points[k]), po.points[k + 1]) >= delta)
      po.verified = false;
  }
  return po;
}

PseudoOrbit assemble_pseudo_orbit(const LocalIFS& R, const Word& a,
                                  std::vector<SpacePoint> points,
                                  double delta) {
  if (delta <= 0.0) fail(ErrorCode::BadConfig, "tolerance must be positive");
  check_word(R, a);
  if (points.size() != a.size() || points.size() < 2)
    fail(ErrorCode::BadConfig, "need one point per symbol, at least two");

  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto j = static_cast<std::size_t>(a[k]);
    if (!contains_point(R.domains[j], points[k]))
      fail(ErrorCode::DomainViolation, "point leaves its piece");
    if (k + 1 < points.size() &&
        distance(lifs::apply(R.maps[j], points[k]), points[k + 1]) >= delta)
      fail(ErrorCode::BadConfig, "step error reaches the tolerance");
  }

  PseudoOrbit po;
  po.a = a;
  po.points = std::move(points);
  po.delta = delta;
  po.verified = true;
  return po;
}

double l1_bound(double delta, double lambda, int m, double d0) {
  if (lambda < 0.0 || lambda >= 1.0)
    fail(ErrorCode::BadRate, "rate must lie in [0, 1)");
  if (delta < 0.0 || d0 < 0.0 || m < 0)
    fail(ErrorCode::BadConfig, "negative inputs");
  return delta / (1.0 - lambda) + std::pow(lambda, m) * d0;
}

ShadowResult shadow_search(const LocalIFS& R, const PseudoOrbit& po,
                           double eps) {
  if (!po.verified) fail(ErrorCode::BadConfig, "pseudo-orbit not verified");
  if (eps <= 0.0) fail(ErrorCode::BadConfig, "eps must be positive");

  ShadowResult result;
  result.horizon = po.horizon();

  const SpaceSet ia = orbit_domain(R, po.a);
  if (set_empty(ia)) {
    result.status = ShadowStatus::CertifiedNone;
    result.lower_bound = kInf;
    result.note = "no point can follow the word at resolution";
    return result;
  }

  const double start_gap = point_to_set_distance(po.points.front(), ia);
  if (start_gap >= eps) {
    result.status = ShadowStatus::CertifiedNone;
    result.lower_bound = start_gap;
    result.note = "start is provably farther than eps from every "
                  "admissible start";
    return result;
  }

  const auto candidates = centers_by_distance(ia, po.points.front(), 4096);
  double best = kInf;
  double best_mean = kInf;
  for (const SpacePoint& c : candidates) {
    double sup = 0.0, mean = 0.0;
    if (!orbit_sup_distance(R, po, c, &sup, &mean)) continue;
    if (sup < eps) {
      result.status = ShadowStatus::Found;
      result.witness = c;
      result.achieved = sup;
      result.cesaro = mean;
      return result;
    }
    if (sup < best) {
      best = sup;
      best_mean = mean;
    }
  }

  result.status = ShadowStatus::Inconclusive;
  result.achieved = best;
  result.cesaro = best_mean;
  result.note = "no candidate start tracked the orbit; no distance "
                "obstruction certified";
  return result;
}

SpaceSet gamma_zero_set(const LocalIFS& R, const Word& a, double delta,
                        int N) {
  if (delta < 0.0) fail(ErrorCode::BadConfig, "tolerance must be nonnegative");
  if (N < 1) fail(ErrorCode::BadConfig, "need at least one step");
  check_word(R, a);
  if (static_cast<int>(a.size()) < N + 1)
    fail(ErrorCode::BadWord, "symbol word shorter than the horizon");

  const Word head(a.begin(), a.begin() + (N + 1));
  if (delta == 0.0) return orbit_domain(R, head);

  SpaceSet s = R.domains[static_cast<std::size_t>(head.back())];
  for (std::size_t k = head.size() - 1; k-- > 0;) {
    const auto j = static_cast<std::size_t>(head[k]);
    s = intersect(R.domains[j],
                  set_preimage(dilate(s, delta), R.maps[j], R.domains[j]));
  }
  return s;
}

GapCurve shadowing_gap(const LocalIFS& R, const Word& a,
                       const std::vector<double>& deltas, int N) {
  if (deltas.empty()) fail(ErrorCode::BadConfig, "empty tolerance list");
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i)
    if (deltas[i] <= deltas[i + 1])
      fail(ErrorCode::BadConfig, "tolerances must strictly decrease");
  if (deltas.back() < 0.0)
    fail(ErrorCode::BadConfig, "tolerances must be nonnegative");
  check_word(R, a);
  if (static_cast<int>(a.size()) < N + 1)
    fail(ErrorCode::BadWord, "symbol word shorter than the horizon");

  const Word head(a.begin(), a.begin() + (N + 1));
  const SpaceSet ia = orbit_domain(R, head);
  if (set_empty(ia))
    fail(ErrorCode::EmptyIa, "no point can follow the word at resolution");

  GapCurve curve;
  curve.horizon = N;
  curve.deltas = deltas;
  for (const double d : deltas) {
    const SpaceSet gamma = gamma_zero_set(R, head, d, N);
    curve.values.push_back(gamma == ia ? 0.0 : hausdorff_distance(gamma, ia));
  }
  return curve;
}

NegShadowReport negative_shadowing_certificate(const LocalIFS& R, int k,
                                               int K) {
  if (k < 1) fail(ErrorCode::BadConfig, "memory length must be positive");
  if (K <= k) fail(ErrorCode::BadConfig, "depth must exceed the memory");

  NegShadowReport report;
  report.k = k;
  report.depth = K;

  const OverlapReport overlap = osc_probe(R, attractor_cover(R));
  report.overlap_clean = overlap.disjoint_at_resolution;

  const LanguageSample sample = code_words(R, K);
  const SftCheck check = is_k_step_sft(sample, k);
  report.finite_type = check.consistent;
  report.witness = check.witness;

  std::ostringstream text;
  if (report.finite_type)
    text << "negative shadowing: finite-depth YES (" << k
         << "-step certificate at depth " << K << ")";
  else
    text << "negative shadowing: finite-depth NO, witness "
         << word_to_string(check.witness) << " at depth " << K;
  if (!report.overlap_clean)
    text << " [warning: piece images overlap at resolution]";
  report.text = text.str();
  return report;
}

std::pair<Word, SpacePoint> skew_step(const LocalIFS& R, const Word& a,
                                      const SpacePoint& x) {
  check_word(R, a);
  const auto j = static_cast<std::size_t>(a.front());
  if (!contains_point(R.domains[j], x))
    fail(ErrorCode::DomainViolation, "point outside the leading piece");
  return {Word(a.begin() + 1, a.end()), lifs::apply(R.maps[j], x)};
}

}  // namespace lifs
