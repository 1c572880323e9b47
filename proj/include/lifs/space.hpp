#ifndef LIFS_SPACE_HPP
#define LIFS_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "lifs/errors.hpp"
#include "lifs/geometry.hpp"
#include "lifs/symspace.hpp"

namespace lifs {

// One vocabulary over the two set backends: dyadic grids in [0,1]^d and
// cylinder-union covers of the sequence space.  Every operation below
// dispatches to the backend of its operands and fails with
// BackendMismatch when they disagree.  Semantics are the shared outer
// cover contract of the two backends.

using SpacePoint = std::variant<Point, sym::SymbolicPoint>;
using SpaceSet = std::variant<GridSet, sym::SymbolicSet>;
using SpaceMap = std::variant<AffineContraction, sym::SymbolicMap>;

// Contraction rate of the piece.
double map_rate(const SpaceMap& f);

SpacePoint apply(const SpaceMap& f, const SpacePoint& p);
double distance(const SpacePoint& p, const SpacePoint& q);

bool set_empty(const SpaceSet& a);
std::uint64_t cover_size(const SpaceSet& a);
// Finest distance the representation resolves (cell diagonal, or the
// diameter of one depth-window cylinder).
double resolution(const SpaceSet& a);
const char* backend_name(const SpaceSet& a);

SpaceSet unite(const SpaceSet& a, const SpaceSet& b);
SpaceSet intersect(const SpaceSet& a, const SpaceSet& b);
bool is_subset(const SpaceSet& inner, const SpaceSet& outer);
SpaceSet set_image(const SpaceSet& a, const SpaceMap& f);
// Outer cover of {x in domain : f(x) in region(a)}.
SpaceSet set_preimage(const SpaceSet& a, const SpaceMap& f,
                      const SpaceSet& domain);
SpaceSet dilate(const SpaceSet& a, double radius);

double hausdorff_distance(const SpaceSet& a, const SpaceSet& b);
double diameter_upper(const SpaceSet& a);
double point_to_set_distance(const SpacePoint& p, const SpaceSet& a);
bool contains_point(const SpaceSet& a, const SpacePoint& p);
// dilate(inner, zeta) within outer.
bool contains_with_margin(const SpaceSet& outer, const SpaceSet& inner,
                          double zeta);
std::vector<SpacePoint> centers_by_distance(const SpaceSet& a,
                                            const SpacePoint& near,
                                            std::size_t cap);

}  // namespace lifs

#endif  // LIFS_SPACE_HPP
