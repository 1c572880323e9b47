#ifndef LIFS_IFS_HPP
#define LIFS_IFS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lifs/space.hpp"
#include "lifs/symbolic.hpp"

namespace lifs {

// A finite family of contractions, each restricted to its own compact
// piece of the space.  The induced set operator is
//   F(B) = union over j of f_j(B intersect X_j),
// whose maximal compact invariant set (the local attractor) the rest of
// the library approximates from above.

struct LocalIFS {
  std::vector<SpaceMap> maps;      // f_j
  std::vector<SpaceSet> domains;   // X_j, same backend and resolution
  double lambda = 0.0;             // max piece rate, < 1
  bool symbolic = false;

  int piece_count() const { return static_cast<int>(maps.size()); }
  // The full space the chain starts from: the whole cube cover or the
  // whole sequence space at the domains' resolution.
  SpaceSet ambient() const;
};

// Validates and assembles the system: at least two pieces, one backend,
// one resolution, nonempty domains, and (grid backend) piece images that
// stay inside the unit cube.
LocalIFS make_local_ifs(std::vector<SpaceMap> maps,
                        std::vector<SpaceSet> domains);

// One application of the set operator F.
SpaceSet hutchinson_step(const LocalIFS& R, const SpaceSet& B);

struct AttractorReport {
  SpaceSet cover;          // outer approximation of the local attractor
  int iterations = 0;      // steps actually taken
  double final_step = 0.0; // cover distance of the last two iterates
  bool nested = true;      // every iterate contained the next one
  bool converged = false;  // chain stabilized before max_iter
};

// Iterates B_{k+1} = F(B_k) from the full space, keeping the nested
// chain, until the step distance drops to tol, the chain repeats or
// empties exactly, or max_iter is hit (then the report is returned
// partial with converged = false rather than failing).
AttractorReport attractor(const LocalIFS& R, int max_iter, double tol);

// The cylinder set of a composition word (earliest symbol first):
//   V_(s)    = f_s(X_s)
//   V_(w, s) = f_s(V_w intersect X_s).
// May be empty; that emptiness is exact, while nonemptiness of the
// cover can be resolution-limited.
SpaceSet compose_image(const LocalIFS& R, const Word& w);

// Whether the word's cylinder set survives at resolution.
bool admissible(const LocalIFS& R, const Word& w);

// All admissible words of lengths 1..max_length, grown by extending
// admissible words only (emptiness is inherited by superwords).
LanguageSample code_words(const LocalIFS& R, int max_length);

using TransitionMatrix = std::vector<std::vector<int>>;

// matrix[i][j] = 1 exactly when f_j(X_j) meets X_i at resolution, i.e.
// symbol j may be followed by symbol i.
TransitionMatrix transition_matrix(const LocalIFS& R);

enum class MarkovClass { Inside, Disjoint, Violation };

struct MarkovReport {
  bool passes = false;
  TransitionMatrix matrix;  // 1 on Inside pairs, 0 on Disjoint pairs
  std::vector<std::vector<MarkovClass>> classes;        // [i][j]
  std::vector<std::pair<int, int>> violations;          // (i, j) pairs
  bool words_checked = false;  // word comparison ran (only on pass)
  bool words_match = false;    // code_words == walk_words up to depth
  int word_depth = 0;
};

// Certified piece-transition dichotomy: each image f_j(X_j) must either
// sit zeta-deep inside X_i or stay zeta-separated from it.  On pass the
// admissible words are exactly the matrix walks; that identity is
// verified up to word_depth.  Requires zeta above the resolution.
MarkovReport markov_condition(const LocalIFS& R, double zeta,
                              int word_depth = 6);

// Outer cover of the set of points whose forward orbit can follow the
// symbol word a (earliest symbol first):
//   I(a) = X_{a_0} intersect f_{a_0}^{-1}(I(shifted a)).
// Monotone decreasing as a grows.
SpaceSet orbit_domain(const LocalIFS& R, const Word& a);

// Outer cover of the points of the attractor from which some admissible
// forward orbit survives `depth` more steps; decreasing in depth.
SpaceSet infinite_core(const LocalIFS& R, const SpaceSet& attractor_cover,
                       int depth);

struct OverlapReport {
  struct PairOverlap {
    int i = 0;
    int j = 0;
    std::uint64_t cells = 0;  // shared cover cells of the two pieces
  };
  std::vector<PairOverlap> pairs;   // all i < j
  bool disjoint_at_resolution = false;
};

// Heuristic separation evidence: pairwise cover overlap of the piece
// images f_j(A intersect X_j).  Zero overlap is consistent with (not
// proof of) the pieces being separable.
OverlapReport osc_probe(const LocalIFS& R, const SpaceSet& attractor_cover);

}  // namespace lifs

#endif  // LIFS_IFS_HPP
