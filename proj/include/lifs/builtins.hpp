#ifndef LIFS_BUILTINS_HPP
#define LIFS_BUILTINS_HPP

#include <cstdint>
#include <vector>

#include "lifs/beta.hpp"
#include "lifs/ifs.hpp"
#include "lifs/shadowing.hpp"
#include "lifs/stability.hpp"

namespace lifs {

// The named example systems the command line and the acceptance checks
// run.  Every constructor validates its parameter range and returns a
// fully assembled system.

// Three half-scale maps on the equilateral triangle with vertices
// (0,0), (1,0), (1/2, sqrt(3)/2).  The first two act on the whole
// triangle; the third, whose image is the top quarter, acts only on the
// part of height at most beta.  beta in [0,1].
LocalIFS superfractal(double beta, int level);

// Four maps on the unit square: three quarter-scale maps acting on
// [0, 1/2]^2 whose joint attractor is a gasket with corners (1/3, 1/3),
// (0, 1/3), (1/3, 0), and one rate-0.2 contraction toward its fixed
// point (3/4, 3/4) acting on [1-t, 1]^2.  As t crosses 1/4 the fixed
// point enters the fourth domain and the attractor gains an isolated
// piece near (3/4, 3/4).  t in [1/8, 1].
LocalIFS nonsemicont(double t, int level);

// Two quarter-scale interval branches x/4 + 0.2 and x/4 + 0.55 on the
// full interval: images [0.2, 0.45] and [0.55, 0.8] are separated by
// 0.1 and every word is admissible.
LocalIFS markov2(int level);

// The dichotomy margin markov2 certifies.
inline constexpr double kMarkov2Margin = 0.25;

// Sequence-space system on {0,1,2}^N: two prepend maps and the pair-sum
// map, each restricted to the binary subspace.  Words that ask for the
// pair-sum map repeatedly die out, so the code space has unbounded
// memory.
LocalIFS exshift2(int window);

// The standard no-shadowing replay for exshift2: a delta-pseudo-orbit
// that follows one pair-sum step, rides the prepend-0 map until its
// digits pass position N = floor(log2(1/delta)) + 1, jumps (the single
// delta-size error) to the zero sequence, and then asks for the
// pair-sum map forever.  Every point that could follow the same symbol
// word to horizon >= N+1 must have a zero second digit, and the start
// point has a one there, so no true orbit stays within 1/4 of the
// replay.
struct ReplayOrbit {
  Word a;                          // one symbol per point
  std::vector<SpacePoint> points;  // horizon + 1 points
  double delta = 0.0;
  int glitch = 0;  // index of the one inexact step
};

// horizon >= N(delta) + 1; delta in (0, 1/4]; window large enough to
// see position N + 3 (BadConfig otherwise).
ReplayOrbit exshift2_replay(double delta, int horizon, int window);

// Two vertices with full [0,1] fibers and two edges closing a cycle:
// the edge acting on fiber 1 lands in fiber 0 through x/2.5 + 0.05, the
// edge acting on fiber 0 lands in fiber 1 through x/2.5 + 0.55.  The
// embedded system's transition matrix is the 2-cycle [[0,1],[1,0]] and
// its attractor is one point per band.
FiberGraph gd_2cycle(int level);

// The golden mean (1+sqrt(5))/2, whose digit sequence of one is (1,1).
BetaSystem beta_golden();

// The sparse-digit base in (4,5) built from run lengths (1,2,3,4,5);
// its restricted language over {0,2,4} is the standard non-finite-type
// specimen.
BetaSystem beta_sparse();

}  // namespace lifs

#endif  // LIFS_BUILTINS_HPP
