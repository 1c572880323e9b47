#ifndef LIFS_STABILITY_HPP
#define LIFS_STABILITY_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "lifs/geometry.hpp"
#include "lifs/ifs.hpp"
#include "lifs/shadowing.hpp"

namespace lifs {

// Tools for the stability questions: how far apart two systems are, how
// a system's code words respond to small perturbations, how a
// graph-directed family embeds as a single local system, and how the
// attractor of a parameterized family behaves across its parameter.

// ---------------------------------------------------------------------------
// Perturbations.
// ---------------------------------------------------------------------------

enum class DomainAction { None, Inflate, Deflate, BoundaryShift };

struct DomainChange {
  DomainAction action = DomainAction::None;
  double amount = 0.0;  // radius / shift distance, >= 0
  int axis = 0;         // BoundaryShift only
};

// A finite recipe for a nearby system: per-map translation offsets and
// per-domain grow/shrink/slide actions.  Empty vectors mean "no change".
struct PerturbationSpec {
  std::vector<std::array<double, 2>> map_offsets;
  std::vector<DomainChange> domain_changes;
  std::uint64_t seed = 0;
};

// A seeded spec with every translation of length <= radius/2 and every
// domain inflated or deflated by at most radius/2.  radius = 0 yields
// the all-zero spec.  Grid systems only.
PerturbationSpec random_perturbation(const LocalIFS& R, double radius,
                                     std::uint64_t seed);

// Applies the spec: translated maps, changed domains, then the usual
// system validation.  Grid systems only (BackendMismatch).  Errors:
// BadConfig (negative magnitudes, wrong vector sizes, bad axis),
// EmptyDomain (a deflation or slide emptied a piece), OutOfSpace (a
// translated map would leave the unit cube).
LocalIFS perturb(const LocalIFS& R, const PerturbationSpec& spec);

// ---------------------------------------------------------------------------
// Distance between systems.
// ---------------------------------------------------------------------------

// An upper bound for the system distance
//   max_i distH(X_i, Y_i)  +  max_i pairing-distance of the i-th maps,
// where the pairing distance of f_i and g_i is the infimum over domain
// pairings z : X_i -> Y_i of sup |z(x) - x| + sup |f_i(x) - g_i(z(x))|,
// taken in both directions.  The infimum itself is not computable; this
// routine certifies a bound piece by piece:
//   - identical piece domains use the identity pairing, and the map
//     term is the cell-center supremum plus Lipschitz slack — a true
//     upper bound;
//   - otherwise no pairing is certified and the map term is the
//     sentinel 3 * diam([0,1]^d), which dominates every pairing-based
//     distance of maps into the cube (pass explicit pairings below to
//     do better).
// Grid systems with equal piece counts only (ShapeMismatch,
// BackendMismatch, LevelMismatch).
double d_distance_upper(const LocalIFS& R, const LocalIFS& S);

// Same bound with caller-supplied invertible affine pairings z_i taking
// the i-th domain of R onto the i-th domain of S; both directions are
// sampled (z_i forward, its inverse backward).  BadConfig when a
// pairing is singular or the count is wrong.
double d_distance_upper(const LocalIFS& R, const LocalIFS& S,
                        const std::vector<AffineMap>& pairings);

// ---------------------------------------------------------------------------
// Code-word stability probes.
// ---------------------------------------------------------------------------

struct WordDiff {
  bool equal = true;
  Word word;                  // shortest word admissible in exactly one
  bool in_second_only = false;
};

// Compares the admissible words of the two systems up to the depth and
// reports the first mismatch (shortest, then lexicographic).
WordDiff compare_code_words(const LocalIFS& R, const LocalIFS& S, int depth);

struct ProbeReport {
  bool stable = false;
  int samples_run = 0;
  int depth = 0;
  double radius = 0.0;
  int differing_sample = -1;  // index of the first sample that changed
  Word differing_word;
  bool word_appeared = false;  // admissible only in the perturbed system
};

// Draws `samples` seeded perturbations within the radius and compares
// admissible words up to `depth` against the unperturbed system.
// Stable means every sample produced exactly the same words.  radius = 0
// is trivially stable.  BadConfig for samples < 1 or depth < 1.
ProbeReport combinatorial_probe(const LocalIFS& R, double radius, int samples,
                                int depth, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Graph-directed embedding.
// ---------------------------------------------------------------------------

// A finite set of vertices carrying one-dimensional fiber domains, and
// edges carrying contractions that must send their domain vertex's
// fiber into their image vertex's fiber.
struct FiberGraph {
  struct Edge {
    int image_vertex = 0;   // fiber the edge's image lands in
    int domain_vertex = 0;  // fiber the edge acts on
    AffineContraction fiber_map;
  };
  int vertex_count = 0;
  std::vector<GridSet> fiber_domains;  // 1D, one per vertex, shared level
  std::vector<Edge> edges;
};

// The horizontal band of the unit square assigned to a vertex: the
// square is split into `vertex_count` equal slots and each band keeps
// the middle two thirds of its slot, so consecutive bands are separated
// by one third of a slot.
std::array<double, 2> embed_band(int vertex_count, int vertex);

// The minimal distance between two bands.
double embed_gap(int vertex_count);

// The margin the embedded system certifies: half the band gap.
double embed_margin(int vertex_count);

// Realizes the graph as one local system on the unit square: vertex v
// becomes the band embed_band(n, v), edge e becomes the map
//   (x, y) |-> (fiber_map_e(x), y/4 + c_e)
// acting on (domain fiber) x (domain band) and landing centered in the
// image band.  Piece order follows edge order.  The resulting
// transition matrix is exactly edge composability: e may be followed by
// e' when e's image vertex is e''s domain vertex.  Errors: BadConfig
// (no edges, bad indices, a fiber map leaving its image fiber, non-1D
// or mismatched fibers), EmptyDomain, PackingOverflow (bands thinner
// than four grid cells).
LocalIFS graph_directed_embed(const FiberGraph& g);

// The 1D slice of a 2D set over a vertex's band: column ix is occupied
// when any cell of the band's rows is.
GridSet fiber_slice(const GridSet& set2d, int vertex_count, int vertex);

// ---------------------------------------------------------------------------
// Pseudo-orbit transfer.
// ---------------------------------------------------------------------------

struct TransferResult {
  PseudoOrbit orbit;
  double max_moved = 0.0;  // largest per-point snap distance
};

// Re-verifies a pseudo-orbit of a nearby system against R: every point
// is snapped to the nearest cell center of its piece when it lies
// outside, and the result is assembled with the step budget scaled by
// delta_factor.  Errors propagate from assembly (BadConfig when the
// scaled budget still does not cover the snapped step errors).
TransferResult transfer_pseudo_orbit(const LocalIFS& R, const PseudoOrbit& po,
                                     double delta_factor = 5.0);

// ---------------------------------------------------------------------------
// Parameter sweeps.
// ---------------------------------------------------------------------------

enum class Family { Superfractal, Nonsemicont, Beta1d };

struct SweepConfig {
  Family family = Family::Superfractal;
  std::vector<double> params;  // strictly increasing
  int level = 7;
  int max_iter = 256;
  double tol = 0.0;
  double jump_threshold = 0.15;
  double usc_slack = -1.0;  // negative: four cell diagonals
};

struct SweepReport {
  std::vector<double> params;
  std::vector<AttractorReport> reports;
  // Symmetric matrix of attractor cover distances.
  std::vector<std::vector<double>> pairwise;
  // Adjacent-pair diagnostics; entry k compares params[k] and params[k+1].
  std::vector<char> usc_ok;    // lower attractor inside the dilated upper
  std::vector<char> lsc_jump;  // one-sided gain at least jump_threshold
  std::vector<double> jump_size;   // directed distance upper -> lower
  std::vector<Point> jump_witness; // farthest gained cell (when lsc_jump)
  double usc_slack = 0.0;
  double jump_threshold = 0.0;
};

// Computes the attractor of the builtin family at every parameter and
// the cross-parameter diagnostics described above.  The inclusion check
// asks whether each attractor sits inside the next parameter's
// attractor dilated by the slack; the jump detector measures how far
// the next attractor reaches beyond the current one and flags adjacent
// pairs at or above the threshold, recording the farthest gained cell.
// BadConfig for an empty or non-increasing grid or parameters outside
// the family's range.
SweepReport family_sweep(const SweepConfig& cfg);

}  // namespace lifs

#endif  // LIFS_STABILITY_HPP
