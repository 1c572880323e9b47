#ifndef LIFS_SHADOWING_HPP
#define LIFS_SHADOWING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lifs/ifs.hpp"

namespace lifs {

// Pseudo-orbit machinery: sequences that follow a symbol word while
// erring by less than a tolerance at every step, the search for true
// orbits staying uniformly close to them, and the gap diagnostic that
// measures how far the set of approximate starts sits from the set of
// exact ones.

struct PseudoOrbit {
  Word a;                          // symbols a_0..a_N
  std::vector<SpacePoint> points;  // x_0..x_N, one per symbol
  double delta = 0.0;              // strict per-step error bound
  bool verified = false;           // re-checked against the definition

  int horizon() const { return static_cast<int>(points.size()) - 1; }
};

// Builds a verified pseudo-orbit along `a` (length N+1): each step lands
// a seeded perturbation of the mapped point inside the next piece and
// the attractor cover.  Deterministic given the seed.
PseudoOrbit make_pseudo_orbit(const LocalIFS& R, const Word& a, double delta,
                              int N, std::uint64_t seed);

// Wraps explicitly supplied points (replays, true orbits) after checking
// the definition: every point in its piece, every step error below
// delta.
PseudoOrbit assemble_pseudo_orbit(const LocalIFS& R, const Word& a,
                                  std::vector<SpacePoint> points,
                                  double delta);

// The a-priori deviation bound delta/(1-lambda) + lambda^m * d0 for a
// true orbit started distance d0 from the pseudo-orbit's start.
double l1_bound(double delta, double lambda, int m, double d0);

enum class ShadowStatus { Found, CertifiedNone, Inconclusive };

struct ShadowResult {
  ShadowStatus status = ShadowStatus::Inconclusive;
  SpacePoint witness;        // valid when status == Found
  double achieved = 0.0;     // sup-distance of the witness / best candidate
  double lower_bound = 0.0;  // CertifiedNone: exact start-distance bound
  double cesaro = 0.0;       // mean distance along the reported orbit
  int horizon = 0;
  std::string note;
};

// Looks for a true orbit following po.a that stays within eps of the
// pseudo-orbit.  A negative answer is only certified through the exact
// distance from the start to the outer cover of all admissible starts;
// search exhaustion alone reports Inconclusive.
ShadowResult shadow_search(const LocalIFS& R, const PseudoOrbit& po,
                           double eps);

// Outer cover of the starting points of (a, delta)-pseudo-orbits
// truncated at N: the backward fold of the pieces with a delta-dilation
// inserted before every preimage.  delta = 0 reproduces orbit_domain.
SpaceSet gamma_zero_set(const LocalIFS& R, const Word& a, double delta,
                        int N);

struct GapCurve {
  std::vector<double> deltas;
  std::vector<double> values;  // cover distance to the exact-start cover
  int horizon = 0;
};

// The gap curve delta -> dist(approximate starts, exact starts) over a
// decreasing tolerance list; a curve bounded away from zero witnesses a
// pseudo-orbit family that no true orbit tracks.
GapCurve shadowing_gap(const LocalIFS& R, const Word& a,
                       const std::vector<double>& deltas, int N);

struct NegShadowReport {
  bool finite_type = false;  // k-step certificate held at this depth
  int k = 0;
  int depth = 0;
  Word witness;              // violating word when the certificate fails
  bool overlap_clean = true; // piece images disjoint at resolution
  std::string text;
};

// Finite-depth certificate run: checks whether the code language is
// k-step determined at depth K, the combinatorial route to the negative
// shadowing property.
NegShadowReport negative_shadowing_certificate(const LocalIFS& R, int k,
                                               int K);

// One step of the skew product on (word, point): applies the piece of
// the leading symbol and shifts the word.  Iterating reproduces the
// orbit along the word.
std::pair<Word, SpacePoint> skew_step(const LocalIFS& R, const Word& a,
                                      const SpacePoint& x);

}  // namespace lifs

#endif  // LIFS_SHADOWING_HPP
