#ifndef LIFS_IO_HPP
#define LIFS_IO_HPP

#include <string>
#include <vector>

#include "lifs/beta.hpp"
#include "lifs/geometry.hpp"
#include "lifs/ifs.hpp"
#include "lifs/shadowing.hpp"
#include "lifs/stability.hpp"
#include "lifs/symbolic.hpp"

namespace lifs {
namespace io {

// File writers for the command line.  All output is deterministic:
// fixed number formatting, no timestamps, newline line ends.  Every
// writer raises IoFailure when the file cannot be opened or written.

// Binary PGM (P5): a 1D set rendered as a strip of `rows` identical
// rows, black cells on white.
void write_pgm_strip(const std::string& path, const GridSet& cells,
                     int rows = 32);

// Binary PPM (P6): a 2D set, black cells on white, row 0 at the top
// (largest y first).
void write_ppm(const std::string& path, const GridSet& cells);

// Key-value text report of an attractor run.
void write_attractor_report(const std::string& path,
                            const AttractorReport& rep);

// CSV "length,word": every sampled word, shortest first.
void write_language_csv(const std::string& path, const LanguageSample& words);

// CSV "m,follower_sets": distinct follower-set counts for word lengths
// 1..max_m.
void write_follower_csv(const std::string& path, const LanguageSample& words,
                        int max_m);

// CSV "k,symbol,point,step_error": the pseudo-orbit with per-step
// errors measured against the system's maps (last row leaves the error
// column empty).
void write_orbit_csv(const std::string& path, const LocalIFS& R,
                     const PseudoOrbit& po);

// CSV "delta,gap".
void write_gap_csv(const std::string& path, const GapCurve& curve);

// CSV "parameter,cells,d0,d1,...": one row per parameter with the full
// distance matrix row appended.
void write_sweep_csv(const std::string& path, const SweepReport& rep);

// Plain-text rendering of a point: coordinates for grid points, the
// digit prefix for sequence-space points.
std::string format_point(const SpacePoint& p);

// Loads a grid system from a JSON description:
//   {
//     "level": 7, "dim": 2,
//     "maps": [ {"scale": 0.5, "translate": [0, 0]},
//               {"a": [[...]], "b": [...], "lambda": 0.5} ],
//     "domains": [ "full",
//                  {"box": {"lo": [...], "hi": [...]}},
//                  {"halfplane": {"normal": [...], "offset": 0.3}},
//                  {"polygon": [[x, y], ...]} ]
//   }
// BadConfig on schema violations, IoFailure when unreadable.
LocalIFS load_system_json(const std::string& path);

}  // namespace io
}  // namespace lifs

#endif  // LIFS_IO_HPP
