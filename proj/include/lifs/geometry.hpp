#ifndef LIFS_GEOMETRY_HPP
#define LIFS_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lifs/errors.hpp"

namespace lifs {

// ---------------------------------------------------------------------------
// Points and affine maps on the ambient cube [0,1]^d, d in {1,2}.
// ---------------------------------------------------------------------------

struct Point {
  int dim = 2;
  std::array<double, 2> v{0.0, 0.0};

  static Point make(double x) { return Point{1, {x, 0.0}}; }
  static Point make(double x, double y) { return Point{2, {x, y}}; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
};

double distance(const Point& p, const Point& q);

// General affine map x |-> A x + b. Not necessarily a contraction: used both
// for system maps and for pairing homeomorphisms / fiber placements.
struct AffineMap {
  int dim = 2;
  // Row-major linear part; 1D maps use a[0][0] only.
  std::array<std::array<double, 2>, 2> a{{{1.0, 0.0}, {0.0, 1.0}}};
  std::array<double, 2> b{0.0, 0.0};

  Point operator()(const Point& p) const;
  // Largest singular value of the linear part (exact closed form for d <= 2).
  double operator_norm() const;
  bool invertible(double tol = 1e-12) const;
  AffineMap inverse() const;

  static AffineMap identity(int dim);
  // x |-> s*x + t (componentwise scale), the common case in this project.
  static AffineMap scale_translate(double s, double tx);
  static AffineMap scale_translate(double s, double tx, double ty);
};

AffineMap compose(const AffineMap& outer, const AffineMap& inner);  // outer∘inner

// An affine map together with a certified Lipschitz bound lambda in [0,1).
struct AffineContraction {
  AffineMap map;
  double lambda = 0.0;
};

// Computes the operator norm and fails with BadRate unless it is < 1.
AffineContraction make_contraction(const AffineMap& m);
// Validates a declared rate against the operator norm (tolerance 1e-12).
AffineContraction make_contraction(const AffineMap& m, double lambda);

// ---------------------------------------------------------------------------
// GridSet: dyadic-grid outer approximations of compact subsets of [0,1]^d.
// ---------------------------------------------------------------------------
//
// A GridSet is a bitmask over the uniform grid with 2^L cells per axis. Cell
// (ix, iy) covers the half-open box [ix*h, (ix+1)*h) x [iy*h, (iy+1)*h) with
// h = 2^-L (the last cell per axis closes at 1). The library-wide contract is
// outer approximation: whatever true compact set an occupied mask stands for,
// every point of that set lies in an occupied cell, and all operations below
// preserve that property for their natural set semantics.

class GridSet {
 public:
  GridSet() = default;

  static GridSet empty_set(int dim, int level);
  static GridSet full_set(int dim, int level);

  int dim() const { return dim_; }
  int level() const { return level_; }
  std::uint32_t side() const { return 1u << level_; }
  std::size_t capacity() const;            // total number of cells
  std::size_t cell_count() const;          // occupied cells
  bool empty() const;
  double cell_size() const;                // h = 2^-L
  double cell_diagonal() const;            // sqrt(d) * h

  bool test(std::uint32_t ix, std::uint32_t iy = 0) const;
  void set(std::uint32_t ix, std::uint32_t iy = 0);
  void reset(std::uint32_t ix, std::uint32_t iy = 0);

  Point cell_center(std::uint32_t ix, std::uint32_t iy = 0) const;
  // Cell index containing p under the half-open convention (clamped to grid).
  std::array<std::uint32_t, 2> cell_of(const Point& p) const;
  bool contains_point(const Point& p) const;

  // Visits every occupied cell as (ix, iy); iy == 0 in dimension 1.
  void for_each_cell(
      const std::function<void(std::uint32_t, std::uint32_t)>& fn) const;

  // Occupied-cell index bounding box {xmin, xmax, ymin, ymax}; requires a
  // nonempty set (EmptySet otherwise).
  std::array<std::uint32_t, 4> index_bounds() const;

  const std::vector<std::uint64_t>& words() const { return bits_; }
  std::vector<std::uint64_t>& mutable_words() { return bits_; }

  friend bool operator==(const GridSet& a, const GridSet& b);

 private:
  GridSet(int dim, int level);
  std::size_t linear(std::uint32_t ix, std::uint32_t iy) const;

  int dim_ = 0;       // 0 marks a default-constructed, unusable set
  int level_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Lattice operations (operands must share dim and level: LevelMismatch).
GridSet unite(const GridSet& a, const GridSet& b);
GridSet intersect(const GridSet& a, const GridSet& b);
GridSet complement(const GridSet& a);
bool is_subset(const GridSet& a, const GridSet& b);

// Resolution changes. refine() splits every cell into its 2^d children;
// coarsen() marks a parent when any child is occupied (both keep covers).
GridSet refine(const GridSet& a);
GridSet coarsen(const GridSet& a);

// Closed r-neighborhood, exact at grid resolution: the result is precisely
// the set of cells whose box distance to the occupied region is <= r.
// Monotone in r; NegativeRadius for r < 0. Note dilate(A, 0) is the set of
// cells touching the closed region (a cover of it), which contains A.
GridSet dilate(const GridSet& a, double r);

// Inner erosion: keeps cells whose box distance to the complement exceeds r.
GridSet erode(const GridSet& a, double r);

// Max of the two directed cell-center cloud distances plus one cell diagonal;
// an upper bound for the Hausdorff distance of any true sets the operands
// cover. Returns exactly one cell diagonal for identical nonempty masks.
// EmptySet if either operand is empty.
double hausdorff_distance(const GridSet& a, const GridSet& b);
// The directed center-cloud part alone (no diagonal slack), for diagnostics.
double directed_cloud_distance(const GridSet& a, const GridSet& b);

// Outer cover of f(A): every point of the region of A maps into an occupied
// cell of the result. Image content outside [0,1]^d is clipped away (system
// validation keeps library callers inside the cube). For non-diagonal linear
// parts the per-cell image is covered by its corner bounding box.
GridSet set_image(const GridSet& a, const AffineMap& f);

// Outer cover of {x in domain : f(x) in region(A)} via the per-cell forward
// test: a domain cell is kept when its image bounding box meets A.
GridSet set_preimage(const GridSet& a, const AffineMap& f,
                     const GridSet& domain);

// Certified margin inclusion: dilate(inner, zeta) within outer (both clipped
// to the ambient cube, i.e. interiors are relative to [0,1]^d).
bool contains_with_margin(const GridSet& outer, const GridSet& inner,
                          double zeta);

// Upper bound for the diameter of the covered region: exact maximal
// center-to-center distance (convex hull + rotating calipers in 2D) plus one
// cell diagonal. Returns 0 for an empty set.
double diameter_upper(const GridSet& a);

// Exact distance from p to the covered region (min over occupied cells of
// the closed-box distance). EmptySet if a is empty.
double point_to_set_distance(const Point& p, const GridSet& a);

// All occupied-cell centers sorted by (distance to `near`, linear index),
// truncated to at most `cap` entries.
std::vector<Point> centers_by_distance(const GridSet& a, const Point& near,
                                       std::size_t cap);

// Region covers (all outer; boundary-touching cells are included).
GridSet cover_box(int dim, int level, const Point& lo, const Point& hi);
// Cells meeting the closed half-plane {x : n·x <= c} (2D).
GridSet cover_halfplane(int level, const Point& normal, double c);
// Cells meeting a closed convex polygon given by CCW vertices (2D).
GridSet cover_convex_polygon(int level, const std::vector<Point>& verts);

// Serialization: "GSET" magic, version, dim, level, then the bitmask packed
// LSB-first in linear cell order. IoFailure on malformed input.
void write_gset(std::ostream& os, const GridSet& a);
GridSet read_gset(std::istream& is);

}  // namespace lifs

#endif  // LIFS_GEOMETRY_HPP
