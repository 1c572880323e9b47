#ifndef LIFS_SYMSPACE_HPP
#define LIFS_SYMSPACE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lifs/errors.hpp"

namespace lifs {
namespace sym {

// Sequence space over the alphabet {0,1,2} with the metric
// d(x,y) = 2^{-N}, N = least n >= 1 with x_n != y_n.
//
// Sets are unions of cylinders tracked to a finite window depth W:
// a set is represented as a trie whose depth-d edges fix digit d, with
// two canonical leaves (empty, full).  Beyond depth W every surviving
// branch is considered unconstrained ("full tail"), which makes every
// represented set an outer cover of the intended one at resolution
// 2^{-(W+1)}.  Tries are hash-consed in a process-wide arena, so
// structural equality is pointer equality and set algebra memoizes.

inline constexpr int kAlphabet = 3;
inline constexpr int kMaxWindow = 30;

// A point: finitely many explicit digits followed by an implicit
// all-zero tail.  Digit positions are 1-based to match the metric.
struct SymbolicPoint {
  std::vector<int> digits;

  SymbolicPoint() = default;
  explicit SymbolicPoint(std::vector<int> prefix);

  int digit(int position) const;  // 1-based; 0 beyond the stored prefix
  static SymbolicPoint zero() { return SymbolicPoint{}; }

  bool operator==(const SymbolicPoint& other) const {
    return digits == other.digits;
  }
};

// Exact distance 2^{-N}; 0 for equal points.
double distance(const SymbolicPoint& a, const SymbolicPoint& b);

class SymbolicSet {
 public:
  static SymbolicSet empty_set(int window);
  static SymbolicSet full_set(int window);
  // Union of the cylinders fixed by the given digit prefixes.
  static SymbolicSet from_cylinders(int window,
                                    const std::vector<std::vector<int>>& prefixes);
  // All sequences whose digits lie in {0,1}: the binary subshift used as
  // the domain of every map in the sequence-space example systems.
  static SymbolicSet zero_one_space(int window);

  int window() const { return window_; }
  int root_id() const { return root_; }
  bool empty() const { return root_ == 0; }
  bool is_full() const { return root_ == 1; }

  // Number of depth-window cylinders in the cover.
  std::uint64_t cylinder_count() const;

  // Finest distance the window can resolve: the diameter of one
  // depth-window cylinder.
  double resolution() const;

  bool operator==(const SymbolicSet& other) const {
    return root_ == other.root_ && window_ == other.window_;
  }
  bool operator!=(const SymbolicSet& other) const { return !(*this == other); }

 private:
  SymbolicSet(int root, int window) : root_(root), window_(window) {}
  friend SymbolicSet unite(const SymbolicSet&, const SymbolicSet&);
  friend SymbolicSet intersect(const SymbolicSet&, const SymbolicSet&);
  friend bool is_subset(const SymbolicSet&, const SymbolicSet&);
  friend SymbolicSet dilate(const SymbolicSet&, double);
  friend class SymbolicMapOps;

  int root_;
  int window_;
};

// A contraction of the sequence space.  Two shapes cover the example
// systems: prepending one symbol (Lipschitz 1/2), and the index-shift
// digit rule x |-> (0, 0, x_1+x_2, x_2+x_3, ...) evaluated in Z, defined
// on {0,1}-sequences (also Lipschitz 1/2 because output digit k depends
// only on input digits < k).
struct SymbolicMap {
  enum class Kind { Prepend, PairSum };

  Kind kind = Kind::Prepend;
  int symbol = 0;

  static SymbolicMap prepend(int s);
  static SymbolicMap pair_sum() { return SymbolicMap{Kind::PairSum, 0}; }

  double lambda() const { return 0.5; }
  SymbolicPoint operator()(const SymbolicPoint& x) const;
};

SymbolicSet unite(const SymbolicSet& a, const SymbolicSet& b);
SymbolicSet intersect(const SymbolicSet& a, const SymbolicSet& b);
bool is_subset(const SymbolicSet& inner, const SymbolicSet& outer);

// Outer cover of the image f(A); branches of A on which f is undefined
// (digits outside {0,1} consumed by the pair-sum rule) contribute nothing.
SymbolicSet set_image(const SymbolicSet& a, const SymbolicMap& f);

// Outer cover of the preimage f^{-1}(A) within the map's domain of
// definition.
SymbolicSet set_preimage(const SymbolicSet& a, const SymbolicMap& f);

// Closed-ball dilation.  A ball of radius r is the cylinder of depth
// m-1 where m is the least integer with 2^{-m} <= r, so dilation
// truncates the trie at that depth.  r >= 1/2 gives the full space
// (when nonempty); r smaller than the window resolution is a no-op.
SymbolicSet dilate(const SymbolicSet& a, double radius);

double directed_distance(const SymbolicSet& a, const SymbolicSet& b);
double hausdorff_distance(const SymbolicSet& a, const SymbolicSet& b);

// Exact diameter of the cover (a single depth-W cylinder has diameter
// 2^{-(W+1)}).
double diameter_upper(const SymbolicSet& a);

bool contains_point(const SymbolicSet& a, const SymbolicPoint& p);

// Exact distance from p to the cover of a.
double point_to_set_distance(const SymbolicPoint& p, const SymbolicSet& a);

// Representatives (cylinder prefix + zero tail) of the cover's maximal
// decided subtrees, sorted by (distance to near, prefix), truncated to cap.
std::vector<SymbolicPoint> centers_by_distance(const SymbolicSet& a,
                                               const SymbolicPoint& near,
                                               std::size_t cap);

}  // namespace sym
}  // namespace lifs

#endif  // LIFS_SYMSPACE_HPP
