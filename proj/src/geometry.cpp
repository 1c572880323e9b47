#include "lifs/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace lifs {

namespace {

constexpr double kInf = 1e18;

// Quotient values that land within this distance of an integer are treated as
// exactly on the grid line. Dyadic data hits grid lines exactly (no snap is
// ever needed); for irrational coefficients this absorbs last-bit rounding
// without inflating covers by whole cells at exact boundaries.
constexpr double kSnapEps = 1e-9;

double snap_quotient(double q) {
  const double r = std::round(q);
  return (std::abs(q - r) <= kSnapEps) ? r : q;
}

// Largest cell index whose half-open cell contains coordinate values at
// quotient q (used for covering a closed interval from above).
long floor_index(double q) { return static_cast<long>(std::floor(snap_quotient(q))); }

// Closed cell box [ih, (i+1)h] meets closed interval starting at quotient q
// iff i >= q - 1; this is the smallest such index.
long touch_low_index(double q) {
  return static_cast<long>(std::ceil(snap_quotient(q) - 1.0));
}

void check_dim(int dim) {
  if (dim != 1 && dim != 2) fail(ErrorCode::ShapeMismatch, "dimension must be 1 or 2");
}

void check_level(int dim, int level) {
  check_dim(dim);
  const int max_level = (dim == 1) ? 22 : 12;
  if (level < 0 || level > max_level)
    fail(ErrorCode::OutOfSpace, "grid level out of supported range");
}

void require_compatible(const GridSet& a, const GridSet& b) {
  if (a.dim() == 0 || b.dim() == 0)
    fail(ErrorCode::ShapeMismatch, "uninitialized grid set");
  if (a.dim() != b.dim() || a.level() != b.level())
    fail(ErrorCode::LevelMismatch, "grid sets live on different grids");
}

void require_initialized(const GridSet& a) {
  if (a.dim() == 0) fail(ErrorCode::ShapeMismatch, "uninitialized grid set");
}

// Lower-envelope distance transform of a sampled function: given f, computes
// d[q] = min_j (q - j)^2 + f[j]. Exact for the integer-squared values used
// here. `v` and `z` are scratch of sizes n and n + 1.
void edt_pass(const std::vector<double>& f, std::vector<double>& d, int n,
              std::vector<int>& v, std::vector<double>& z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    double s = 0.0;
    while (true) {
      const int p = v[static_cast<std::size_t>(k)];
      s = ((f[static_cast<std::size_t>(q)] + static_cast<double>(q) * q) -
           (f[static_cast<std::size_t>(p)] + static_cast<double>(p) * p)) /
          (2.0 * (q - p));
      if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
        --k;
      } else if (s <= z[static_cast<std::size_t>(k)]) {
        // Replace the only parabola.
        v[0] = q;
        z[0] = -kInf;
        z[1] = kInf;
        s = kInf;
        break;
      } else {
        break;
      }
    }
    if (s < kInf) {
      ++k;
      v[static_cast<std::size_t>(k)] = q;
      z[static_cast<std::size_t>(k)] = s;
      z[static_cast<std::size_t>(k) + 1] = kInf;
    }
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < static_cast<double>(q)) ++k;
    const int p = v[static_cast<std::size_t>(k)];
    d[static_cast<std::size_t>(q)] =
        static_cast<double>(q - p) * (q - p) + f[static_cast<std::size_t>(p)];
  }
}

// Squared center-to-center distance (in cell units) from every grid cell to
// the nearest occupied cell of `a`; kInf-scaled values when `a` is empty.
std::vector<double> squared_distance_field(const GridSet& a) {
  const std::uint32_t side = a.side();
  const std::size_t cap = a.capacity();
  std::vector<double> field(cap, kInf);
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    field[static_cast<std::size_t>(iy) * side + ix] = 0.0;
  });
  const int n = static_cast<int>(side);
  std::vector<double> row(static_cast<std::size_t>(n));
  std::vector<double> out(static_cast<std::size_t>(n));
  std::vector<int> v(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  // Pass along x within each row.
  const std::uint32_t rows = (a.dim() == 2) ? side : 1;
  for (std::uint32_t iy = 0; iy < rows; ++iy) {
    double* base = field.data() + static_cast<std::size_t>(iy) * side;
    std::copy(base, base + n, row.begin());
    edt_pass(row, out, n, v, z);
    std::copy(out.begin(), out.end(), base);
  }
  if (a.dim() == 2) {
    for (std::uint32_t ix = 0; ix < side; ++ix) {
      for (int iy = 0; iy < n; ++iy)
        row[static_cast<std::size_t>(iy)] =
            field[static_cast<std::size_t>(iy) * side + ix];
      edt_pass(row, out, n, v, z);
      for (int iy = 0; iy < n; ++iy)
        field[static_cast<std::size_t>(iy) * side + ix] =
            out[static_cast<std::size_t>(iy)];
    }
  }
  return field;
}

// One-cell Chebyshev dilation (union of the 3^d neighborhood, clipped at the
// grid border).
GridSet chebyshev_one(const GridSet& a) {
  GridSet out = GridSet::empty_set(a.dim(), a.level());
  const long side = static_cast<long>(a.side());
  const int dim = a.dim();
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    for (long dy = (dim == 2 ? -1 : 0); dy <= (dim == 2 ? 1 : 0); ++dy) {
      const long ny = static_cast<long>(iy) + dy;
      if (ny < 0 || ny >= (dim == 2 ? side : 1)) continue;
      for (long dx = -1; dx <= 1; ++dx) {
        const long nx = static_cast<long>(ix) + dx;
        if (nx < 0 || nx >= side) continue;
        out.set(static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny));
      }
    }
  });
  return out;
}

struct Box {
  double lo[2];
  double hi[2];
};

// Bounding box of the affine image of the closed cell box (exact cover: the
// image of a box is the convex hull of its mapped corners).
Box image_box(const AffineMap& f, int dim, double x0, double x1, double y0,
              double y1) {
  Box b{};
  if (dim == 1) {
    const double u = f.a[0][0] * x0 + f.b[0];
    const double v = f.a[0][0] * x1 + f.b[0];
    b.lo[0] = std::min(u, v);
    b.hi[0] = std::max(u, v);
    b.lo[1] = b.hi[1] = 0.0;
    return b;
  }
  double cx[4], cy[4];
  const double xs[4] = {x0, x1, x0, x1};
  const double ys[4] = {y0, y0, y1, y1};
  for (int i = 0; i < 4; ++i) {
    cx[i] = f.a[0][0] * xs[i] + f.a[0][1] * ys[i] + f.b[0];
    cy[i] = f.a[1][0] * xs[i] + f.a[1][1] * ys[i] + f.b[1];
  }
  b.lo[0] = *std::min_element(cx, cx + 4);
  b.hi[0] = *std::max_element(cx, cx + 4);
  b.lo[1] = *std::min_element(cy, cy + 4);
  b.hi[1] = *std::max_element(cy, cy + 4);
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Points and affine maps
// ---------------------------------------------------------------------------

double distance(const Point& p, const Point& q) {
  if (p.dim != q.dim) fail(ErrorCode::ShapeMismatch, "points of different dimension");
  if (p.dim == 1) return std::abs(p.v[0] - q.v[0]);
  return std::hypot(p.v[0] - q.v[0], p.v[1] - q.v[1]);
}

Point AffineMap::operator()(const Point& p) const {
  if (p.dim != dim) fail(ErrorCode::ShapeMismatch, "map/point dimension mismatch");
  Point out;
  out.dim = dim;
  if (dim == 1) {
    out.v[0] = a[0][0] * p.v[0] + b[0];
    out.v[1] = 0.0;
  } else {
    out.v[0] = a[0][0] * p.v[0] + a[0][1] * p.v[1] + b[0];
    out.v[1] = a[1][0] * p.v[0] + a[1][1] * p.v[1] + b[1];
  }
  return out;
}

double AffineMap::operator_norm() const {
  if (dim == 1) return std::abs(a[0][0]);
  // Largest singular value of the 2x2 linear part via the eigenvalues of
  // A^T A: sigma^2 = (p + s)/2 + sqrt(((p - s)/2)^2 + q^2).
  const double p = a[0][0] * a[0][0] + a[1][0] * a[1][0];
  const double s = a[0][1] * a[0][1] + a[1][1] * a[1][1];
  const double q = a[0][0] * a[0][1] + a[1][0] * a[1][1];
  const double mid = 0.5 * (p + s);
  const double rad = std::sqrt(0.25 * (p - s) * (p - s) + q * q);
  return std::sqrt(std::max(0.0, mid + rad));
}

bool AffineMap::invertible(double tol) const {
  if (dim == 1) return std::abs(a[0][0]) > tol;
  return std::abs(a[0][0] * a[1][1] - a[0][1] * a[1][0]) > tol;
}

AffineMap AffineMap::inverse() const {
  AffineMap inv;
  inv.dim = dim;
  if (dim == 1) {
    if (std::abs(a[0][0]) <= 1e-300)
      fail(ErrorCode::ShapeMismatch, "affine map is not invertible");
    inv.a[0][0] = 1.0 / a[0][0];
    inv.b[0] = -b[0] / a[0][0];
    return inv;
  }
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (std::abs(det) <= 1e-300)
    fail(ErrorCode::ShapeMismatch, "affine map is not invertible");
  inv.a[0][0] = a[1][1] / det;
  inv.a[0][1] = -a[0][1] / det;
  inv.a[1][0] = -a[1][0] / det;
  inv.a[1][1] = a[0][0] / det;
  inv.b[0] = -(inv.a[0][0] * b[0] + inv.a[0][1] * b[1]);
  inv.b[1] = -(inv.a[1][0] * b[0] + inv.a[1][1] * b[1]);
  return inv;
}

AffineMap AffineMap::identity(int dim) {
  check_dim(dim);
  AffineMap m;
  m.dim = dim;
  return m;
}

AffineMap AffineMap::scale_translate(double s, double tx) {
  AffineMap m;
  m.dim = 1;
  m.a = {{{s, 0.0}, {0.0, 0.0}}};
  m.b = {tx, 0.0};
  return m;
}

AffineMap AffineMap::scale_translate(double s, double tx, double ty) {
  AffineMap m;
  m.dim = 2;
  m.a = {{{s, 0.0}, {0.0, s}}};
  m.b = {tx, ty};
  return m;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.dim != inner.dim)
    fail(ErrorCode::ShapeMismatch, "composing maps of different dimension");
  AffineMap m;
  m.dim = outer.dim;
  if (m.dim == 1) {
    m.a = {{{outer.a[0][0] * inner.a[0][0], 0.0}, {0.0, 0.0}}};
    m.b = {outer.a[0][0] * inner.b[0] + outer.b[0], 0.0};
    return m;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j)
      m.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          outer.a[static_cast<std::size_t>(i)][0] * inner.a[0][static_cast<std::size_t>(j)] +
          outer.a[static_cast<std::size_t>(i)][1] * inner.a[1][static_cast<std::size_t>(j)];
    m.b[static_cast<std::size_t>(i)] =
        outer.a[static_cast<std::size_t>(i)][0] * inner.b[0] +
        outer.a[static_cast<std::size_t>(i)][1] * inner.b[1] +
        outer.b[static_cast<std::size_t>(i)];
  }
  return m;
}

AffineContraction make_contraction(const AffineMap& m) {
  const double n = m.operator_norm();
  if (!(n < 1.0)) fail(ErrorCode::BadRate, "map is not a contraction");
  return AffineContraction{m, n};
}

AffineContraction make_contraction(const AffineMap& m, double lambda) {
  if (!(lambda >= 0.0) || !(lambda < 1.0))
    fail(ErrorCode::BadRate, "contraction rate outside [0,1)");
  if (m.operator_norm() > lambda + 1e-12)
    fail(ErrorCode::BadRate, "declared rate below the actual operator norm");
  return AffineContraction{m, lambda};
}

// ---------------------------------------------------------------------------
// GridSet basics
// ---------------------------------------------------------------------------

GridSet::GridSet(int dim, int level) : dim_(dim), level_(level) {
  check_level(dim, level);
  bits_.assign((capacity() + 63) / 64, 0u);
}

GridSet GridSet::empty_set(int dim, int level) { return GridSet(dim, level); }

GridSet GridSet::full_set(int dim, int level) {
  GridSet g(dim, level);
  std::fill(g.bits_.begin(), g.bits_.end(), ~0ull);
  const std::size_t cap = g.capacity();
  const std::size_t rem = cap % 64;
  if (rem != 0) g.bits_.back() &= (1ull << rem) - 1ull;
  return g;
}

std::size_t GridSet::capacity() const {
  const std::size_t s = side();
  return (dim_ == 2) ? s * s : s;
}

std::size_t GridSet::cell_count() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool GridSet::empty() const {
  for (std::uint64_t w : bits_)
    if (w != 0) return false;
  return true;
}

double GridSet::cell_size() const { return std::ldexp(1.0, -level_); }

double GridSet::cell_diagonal() const {
  return cell_size() * std::sqrt(static_cast<double>(dim_));
}

std::size_t GridSet::linear(std::uint32_t ix, std::uint32_t iy) const {
  return static_cast<std::size_t>(iy) * side() + ix;
}

bool GridSet::test(std::uint32_t ix, std::uint32_t iy) const {
  const std::size_t i = linear(ix, iy);
  return (bits_[i / 64] >> (i % 64)) & 1ull;
}

void GridSet::set(std::uint32_t ix, std::uint32_t iy) {
  const std::size_t i = linear(ix, iy);
  bits_[i / 64] |= (1ull << (i % 64));
}

void GridSet::reset(std::uint32_t ix, std::uint32_t iy) {
  const std::size_t i = linear(ix, iy);
  bits_[i / 64] &= ~(1ull << (i % 64));
}

Point GridSet::cell_center(std::uint32_t ix, std::uint32_t iy) const {
  const double h = cell_size();
  Point p;
  p.dim = dim_;
  p.v[0] = (static_cast<double>(ix) + 0.5) * h;
  p.v[1] = (dim_ == 2) ? (static_cast<double>(iy) + 0.5) * h : 0.0;
  return p;
}

std::array<std::uint32_t, 2> GridSet::cell_of(const Point& p) const {
  if (p.dim != dim_) fail(ErrorCode::ShapeMismatch, "point/grid dimension mismatch");
  const double h = cell_size();
  const long s = static_cast<long>(side());
  std::array<std::uint32_t, 2> idx{0, 0};
  for (int k = 0; k < dim_; ++k) {
    long i = floor_index(p.v[static_cast<std::size_t>(k)] / h);
    i = std::clamp(i, 0l, s - 1);
    idx[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(i);
  }
  return idx;
}

bool GridSet::contains_point(const Point& p) const {
  for (int k = 0; k < dim_; ++k) {
    const double x = p.v[static_cast<std::size_t>(k)];
    if (x < 0.0 || x > 1.0) return false;
  }
  const auto idx = cell_of(p);
  return test(idx[0], idx[1]);
}

void GridSet::for_each_cell(
    const std::function<void(std::uint32_t, std::uint32_t)>& fn) const {
  const std::uint32_t s = side();
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      word &= word - 1;
      const std::size_t i = w * 64 + static_cast<std::size_t>(bit);
      fn(static_cast<std::uint32_t>(i % s), static_cast<std::uint32_t>(i / s));
    }
  }
}

std::array<std::uint32_t, 4> GridSet::index_bounds() const {
  if (empty()) fail(ErrorCode::EmptySet, "index bounds of an empty set");
  std::uint32_t xmin = side(), xmax = 0, ymin = side(), ymax = 0;
  for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    xmin = std::min(xmin, ix);
    xmax = std::max(xmax, ix);
    ymin = std::min(ymin, iy);
    ymax = std::max(ymax, iy);
  });
  return {xmin, xmax, ymin, ymax};
}

bool operator==(const GridSet& a, const GridSet& b) {
  return a.dim_ == b.dim_ && a.level_ == b.level_ && a.bits_ == b.bits_;
}

// ---------------------------------------------------------------------------
// Lattice operations
// ---------------------------------------------------------------------------

GridSet unite(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  GridSet out = a;
  for (std::size_t i = 0; i < out.mutable_words().size(); ++i)
    out.mutable_words()[i] |= b.words()[i];
  return out;
}

GridSet intersect(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  GridSet out = a;
  for (std::size_t i = 0; i < out.mutable_words().size(); ++i)
    out.mutable_words()[i] &= b.words()[i];
  return out;
}

GridSet complement(const GridSet& a) {
  require_initialized(a);
  GridSet out = a;
  for (auto& w : out.mutable_words()) w = ~w;
  const std::size_t rem = a.capacity() % 64;
  if (rem != 0) out.mutable_words().back() &= (1ull << rem) - 1ull;
  return out;
}

bool is_subset(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  for (std::size_t i = 0; i < a.words().size(); ++i)
    if ((a.words()[i] & ~b.words()[i]) != 0) return false;
  return true;
}

GridSet refine(const GridSet& a) {
  require_initialized(a);
  GridSet out = GridSet::empty_set(a.dim(), a.level() + 1);
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    for (std::uint32_t dy = 0; dy < (a.dim() == 2 ? 2u : 1u); ++dy)
      for (std::uint32_t dx = 0; dx < 2u; ++dx)
        out.set(2 * ix + dx, a.dim() == 2 ? 2 * iy + dy : 0);
  });
  return out;
}

GridSet coarsen(const GridSet& a) {
  require_initialized(a);
  if (a.level() == 0) fail(ErrorCode::LevelMismatch, "cannot coarsen level 0");
  GridSet out = GridSet::empty_set(a.dim(), a.level() - 1);
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    out.set(ix / 2, a.dim() == 2 ? iy / 2 : 0);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Metric operations
// ---------------------------------------------------------------------------

GridSet dilate(const GridSet& a, double r) {
  require_initialized(a);
  if (r < 0.0) fail(ErrorCode::NegativeRadius, "dilate with negative radius");
  GridSet out = GridSet::empty_set(a.dim(), a.level());
  if (a.empty()) return out;
  // Box distance between cells i and j factorizes per axis as
  // h * (|i - j| - 1)_+ and (|d| - 1)_+^2 = min_{|e| <= 1} (d - e)^2, so the
  // squared box distance to the region equals the squared center distance to
  // the one-cell Chebyshev dilation. That field is exact, so the result is
  // exactly the set of cells whose box distance to region(a) is <= r.
  const GridSet grown = chebyshev_one(a);
  const std::vector<double> sq = squared_distance_field(grown);
  const double h = a.cell_size();
  const double tq = (r / h) * (r / h);
  const double thresh = tq + 1e-9 * std::max(1.0, tq);
  const std::uint32_t side = a.side();
  const std::uint32_t rows = (a.dim() == 2) ? side : 1;
  for (std::uint32_t iy = 0; iy < rows; ++iy)
    for (std::uint32_t ix = 0; ix < side; ++ix)
      if (sq[static_cast<std::size_t>(iy) * side + ix] <= thresh) out.set(ix, iy);
  return out;
}

GridSet erode(const GridSet& a, double r) {
  require_initialized(a);
  if (r < 0.0) fail(ErrorCode::NegativeRadius, "erode with negative radius");
  const GridSet co = complement(a);
  if (co.empty()) return a;
  const GridSet grown = chebyshev_one(co);
  const std::vector<double> sq = squared_distance_field(grown);
  GridSet out = GridSet::empty_set(a.dim(), a.level());
  const double h = a.cell_size();
  const double tq = (r / h) * (r / h);
  const double thresh = tq + 1e-9 * std::max(1.0, tq);
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    if (sq[static_cast<std::size_t>(iy) * a.side() + ix] > thresh) out.set(ix, iy);
  });
  return out;
}

double directed_cloud_distance(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  if (a.empty() || b.empty())
    fail(ErrorCode::EmptySet, "cloud distance with an empty operand");
  const std::vector<double> sq = squared_distance_field(b);
  double worst = 0.0;
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    worst = std::max(worst, sq[static_cast<std::size_t>(iy) * a.side() + ix]);
  });
  return std::sqrt(worst) * a.cell_size();
}

double hausdorff_distance(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  if (a.empty() || b.empty())
    fail(ErrorCode::EmptySet, "hausdorff distance with an empty operand");
  const double ab = directed_cloud_distance(a, b);
  const double ba = directed_cloud_distance(b, a);
  return std::max(ab, ba) + a.cell_diagonal();
}

GridSet set_image(const GridSet& a, const AffineMap& f) {
  require_initialized(a);
  if (f.dim != a.dim()) fail(ErrorCode::ShapeMismatch, "map/grid dimension mismatch");
  GridSet out = GridSet::empty_set(a.dim(), a.level());
  const double h = a.cell_size();
  const long side = static_cast<long>(a.side());
  const int dim = a.dim();
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    const double x0 = static_cast<double>(ix) * h;
    const double y0 = static_cast<double>(iy) * h;
    Box box = image_box(f, dim, x0, x0 + h, y0, y0 + h);
    long lo[2] = {0, 0};
    long hi[2] = {0, 0};
    for (int k = 0; k < dim; ++k) {
      const double cl = std::max(box.lo[k], 0.0);
      const double ch = std::min(box.hi[k], 1.0);
      if (ch < cl) return;  // image of this cell lies outside the cube
      lo[k] = std::clamp(floor_index(cl / h), 0l, side - 1);
      hi[k] = std::clamp(floor_index(ch / h), 0l, side - 1);
    }
    for (long jy = lo[1]; jy <= (dim == 2 ? hi[1] : 0); ++jy)
      for (long jx = lo[0]; jx <= hi[0]; ++jx)
        out.set(static_cast<std::uint32_t>(jx), static_cast<std::uint32_t>(jy));
  });
  return out;
}

GridSet set_preimage(const GridSet& a, const AffineMap& f, const GridSet& domain) {
  require_compatible(a, domain);
  if (f.dim != a.dim()) fail(ErrorCode::ShapeMismatch, "map/grid dimension mismatch");
  GridSet out = GridSet::empty_set(a.dim(), a.level());
  const double h = a.cell_size();
  const long side = static_cast<long>(a.side());
  const int dim = a.dim();
  domain.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    const double x0 = static_cast<double>(ix) * h;
    const double y0 = static_cast<double>(iy) * h;
    Box box = image_box(f, dim, x0, x0 + h, y0, y0 + h);
    long lo[2] = {0, 0};
    long hi[2] = {0, 0};
    for (int k = 0; k < dim; ++k) {
      lo[k] = std::clamp(touch_low_index(box.lo[k] / h), 0l, side - 1);
      hi[k] = std::clamp(floor_index(box.hi[k] / h), 0l, side - 1);
      if (box.hi[k] < 0.0 || box.lo[k] > 1.0) return;  // image misses the cube
    }
    for (long jy = lo[1]; jy <= (dim == 2 ? hi[1] : 0); ++jy) {
      for (long jx = lo[0]; jx <= hi[0]; ++jx) {
        if (a.test(static_cast<std::uint32_t>(jx), static_cast<std::uint32_t>(jy))) {
          out.set(ix, iy);
          return;
        }
      }
    }
  });
  return out;
}

bool contains_with_margin(const GridSet& outer, const GridSet& inner, double zeta) {
  require_compatible(outer, inner);
  return is_subset(dilate(inner, zeta), outer);
}

double diameter_upper(const GridSet& a) {
  require_initialized(a);
  if (a.empty()) return 0.0;
  const double h = a.cell_size();
  if (a.dim() == 1) {
    const auto b = a.index_bounds();
    return static_cast<double>(b[1] - b[0]) * h + a.cell_diagonal();
  }
  std::vector<Point> pts;
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    pts.push_back(a.cell_center(ix, iy));
  });
  // Andrew monotone chain on the centers, then all hull pairs.
  std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) {
    return (p.v[0] != q.v[0]) ? p.v[0] < q.v[0] : p.v[1] < q.v[1];
  });
  auto cross = [](const Point& o, const Point& p, const Point& q) {
    return (p.v[0] - o.v[0]) * (q.v[1] - o.v[1]) -
           (p.v[1] - o.v[1]) * (q.v[0] - o.v[0]);
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size(); i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, distance(hull[i], hull[j]));
  return best + a.cell_diagonal();
}

double point_to_set_distance(const Point& p, const GridSet& a) {
  require_initialized(a);
  if (p.dim != a.dim()) fail(ErrorCode::ShapeMismatch, "point/grid dimension mismatch");
  if (a.empty()) fail(ErrorCode::EmptySet, "distance to an empty set");
  const double h = a.cell_size();
  double best = std::numeric_limits<double>::infinity();
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    double sq = 0.0;
    const std::uint32_t idx[2] = {ix, iy};
    for (int k = 0; k < a.dim(); ++k) {
      const double lo = static_cast<double>(idx[k]) * h;
      const double hi = lo + h;
      const double gap =
          std::max({0.0, lo - p.v[static_cast<std::size_t>(k)],
                    p.v[static_cast<std::size_t>(k)] - hi});
      sq += gap * gap;
    }
    best = std::min(best, sq);
  });
  return std::sqrt(best);
}

std::vector<Point> centers_by_distance(const GridSet& a, const Point& near,
                                       std::size_t cap) {
  require_initialized(a);
  struct Entry {
    double d;
    std::size_t idx;
    Point p;
  };
  std::vector<Entry> entries;
  a.for_each_cell([&](std::uint32_t ix, std::uint32_t iy) {
    const Point c = a.cell_center(ix, iy);
    entries.push_back(
        Entry{distance(c, near), static_cast<std::size_t>(iy) * a.side() + ix, c});
  });
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return (x.d != y.d) ? x.d < y.d : x.idx < y.idx;
  });
  if (entries.size() > cap) entries.resize(cap);
  std::vector<Point> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.p);
  return out;
}

// ---------------------------------------------------------------------------
// Region covers
// ---------------------------------------------------------------------------

GridSet cover_box(int dim, int level, const Point& lo, const Point& hi) {
  check_level(dim, level);
  if (lo.dim != dim || hi.dim != dim)
    fail(ErrorCode::ShapeMismatch, "corner/grid dimension mismatch");
  GridSet out = GridSet::empty_set(dim, level);
  const double h = out.cell_size();
  const long side = static_cast<long>(out.side());
  long ilo[2] = {0, 0};
  long ihi[2] = {0, 0};
  for (int k = 0; k < dim; ++k) {
    const double l = lo.v[static_cast<std::size_t>(k)];
    const double u = hi.v[static_cast<std::size_t>(k)];
    if (u < l) return out;
    if (u < 0.0 || l > 1.0) return out;
    ilo[k] = std::clamp(touch_low_index(l / h), 0l, side - 1);
    ihi[k] = std::clamp(floor_index(u / h), 0l, side - 1);
  }
  for (long jy = ilo[1]; jy <= (dim == 2 ? ihi[1] : 0); ++jy)
    for (long jx = ilo[0]; jx <= ihi[0]; ++jx)
      out.set(static_cast<std::uint32_t>(jx), static_cast<std::uint32_t>(jy));
  return out;
}

GridSet cover_halfplane(int level, const Point& normal, double c) {
  check_level(2, level);
  if (normal.dim != 2) fail(ErrorCode::ShapeMismatch, "half-plane normal must be 2d");
  GridSet out = GridSet::empty_set(2, level);
  const double h = out.cell_size();
  const std::uint32_t side = out.side();
  const double nx = normal.v[0];
  const double ny = normal.v[1];
  for (std::uint32_t iy = 0; iy < side; ++iy) {
    const double y0 = static_cast<double>(iy) * h;
    for (std::uint32_t ix = 0; ix < side; ++ix) {
      const double x0 = static_cast<double>(ix) * h;
      const double mn = std::min(nx * x0, nx * (x0 + h)) +
                        std::min(ny * y0, ny * (y0 + h));
      if (mn <= c + 1e-12) out.set(ix, iy);
    }
  }
  return out;
}

GridSet cover_convex_polygon(int level, const std::vector<Point>& verts) {
  check_level(2, level);
  if (verts.size() < 3) fail(ErrorCode::ShapeMismatch, "polygon needs >= 3 vertices");
  GridSet out = GridSet::empty_set(2, level);
  const double h = out.cell_size();
  const std::uint32_t side = out.side();
  // Separating axes: the box axes and each edge's outward normal.
  std::vector<std::array<double, 2>> axes = {{1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Point& p = verts[i];
    const Point& q = verts[(i + 1) % verts.size()];
    const double ex = q.v[0] - p.v[0];
    const double ey = q.v[1] - p.v[1];
    axes.push_back({-ey, ex});
  }
  std::vector<std::array<double, 2>> poly_range;
  poly_range.reserve(axes.size());
  for (const auto& ax : axes) {
    double mn = kInf, mx = -kInf;
    for (const Point& p : verts) {
      const double t = ax[0] * p.v[0] + ax[1] * p.v[1];
      mn = std::min(mn, t);
      mx = std::max(mx, t);
    }
    poly_range.push_back({mn, mx});
  }
  // Restrict the scan to the polygon's bounding box.
  double bx0 = kInf, bx1 = -kInf, by0 = kInf, by1 = -kInf;
  for (const Point& p : verts) {
    bx0 = std::min(bx0, p.v[0]);
    bx1 = std::max(bx1, p.v[0]);
    by0 = std::min(by0, p.v[1]);
    by1 = std::max(by1, p.v[1]);
  }
  if (bx1 < 0.0 || bx0 > 1.0 || by1 < 0.0 || by0 > 1.0) return out;
  const long s = static_cast<long>(side);
  const long jx0 = std::clamp(touch_low_index(bx0 / h), 0l, s - 1);
  const long jx1 = std::clamp(floor_index(bx1 / h), 0l, s - 1);
  const long jy0 = std::clamp(touch_low_index(by0 / h), 0l, s - 1);
  const long jy1 = std::clamp(floor_index(by1 / h), 0l, s - 1);
  for (long iy = jy0; iy <= jy1; ++iy) {
    const double y0 = static_cast<double>(iy) * h;
    for (long ix = jx0; ix <= jx1; ++ix) {
      const double x0 = static_cast<double>(ix) * h;
      bool overlap = true;
      for (std::size_t k = 0; k < axes.size(); ++k) {
        const auto& ax = axes[k];
        const double b0 = std::min(ax[0] * x0, ax[0] * (x0 + h)) +
                          std::min(ax[1] * y0, ax[1] * (y0 + h));
        const double b1 = std::max(ax[0] * x0, ax[0] * (x0 + h)) +
                          std::max(ax[1] * y0, ax[1] * (y0 + h));
        if (b1 < poly_range[k][0] - 1e-12 || b0 > poly_range[k][1] + 1e-12) {
          overlap = false;
          break;
        }
      }
      if (overlap)
        out.set(static_cast<std::uint32_t>(ix), static_cast<std::uint32_t>(iy));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void write_gset(std::ostream& os, const GridSet& a) {
  require_initialized(a);
  const char magic[4] = {'G', 'S', 'E', 'T'};
  os.write(magic, 4);
  const unsigned char header[3] = {1u, static_cast<unsigned char>(a.dim()),
                                   static_cast<unsigned char>(a.level())};
  os.write(reinterpret_cast<const char*>(header), 3);
  const std::size_t nbytes = (a.capacity() + 7) / 8;
  for (std::size_t j = 0; j < nbytes; ++j) {
    const unsigned char byte =
        static_cast<unsigned char>((a.words()[j / 8] >> ((j % 8) * 8)) & 0xFFu);
    os.put(static_cast<char>(byte));
  }
  if (!os) fail(ErrorCode::IoFailure, "could not write grid set");
}

GridSet read_gset(std::istream& is) {
  char magic[4] = {0, 0, 0, 0};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "GSET", 4) != 0)
    fail(ErrorCode::IoFailure, "bad grid set magic");
  unsigned char header[3];
  is.read(reinterpret_cast<char*>(header), 3);
  if (!is || header[0] != 1u)
    fail(ErrorCode::IoFailure, "unsupported grid set version");
  const int dim = header[1];
  const int level = header[2];
  if (dim != 1 && dim != 2) fail(ErrorCode::IoFailure, "bad grid set dimension");
  const int max_level = (dim == 1) ? 22 : 12;
  if (level > max_level) fail(ErrorCode::IoFailure, "bad grid set level");
  GridSet out = GridSet::empty_set(dim, level);
  const std::size_t nbytes = (out.capacity() + 7) / 8;
  for (std::size_t j = 0; j < nbytes; ++j) {
    const int ch = is.get();
    if (ch == std::char_traits<char>::eof())
      fail(ErrorCode::IoFailure, "truncated grid set payload");
    out.mutable_words()[j / 8] |=
        static_cast<std::uint64_t>(static_cast<unsigned char>(ch)) << ((j % 8) * 8);
  }
  const std::size_t rem = out.capacity() % 64;
  if (rem != 0 &&
      (out.words().back() & ~((1ull << rem) - 1ull)) != 0)
    fail(ErrorCode::IoFailure, "grid set payload has bits beyond capacity");
  return out;
}

}  // namespace lifs
