#include "lifs/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

namespace lifs {
namespace sym {

namespace {

// Hash-consed trie arena.  Node 0 is the empty set, node 1 the full set;
// node 1's children are node 1 so a full subtree can be walked like any
// other.  Real (interned) nodes only ever sit at depths < window, which
// keeps every recursion here independent of the depth it is called at.
constexpr int kIdBits = 21;
constexpr int kIdCap = 1 << kIdBits;

struct Arena {
  struct Node {
    int c[3];
  };
  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, int> intern;
  std::unordered_map<std::uint64_t, int> memo_unite;
  std::unordered_map<std::uint64_t, int> memo_intersect;
  std::unordered_map<std::uint64_t, int> memo_truncate;
  std::unordered_map<std::uint64_t, char> memo_subset;
  std::unordered_map<std::uint64_t, double> memo_directed;

  Arena() {
    nodes.push_back(Node{{0, 0, 0}});
    nodes.push_back(Node{{1, 1, 1}});
  }

  static Arena& instance() {
    static Arena arena;
    return arena;
  }

  int child(int id, int s) const { return nodes[static_cast<std::size_t>(id)].c[s]; }

  int make(int c0, int c1, int c2) {
    if (c0 == 0 && c1 == 0 && c2 == 0) return 0;
    if (c0 == 1 && c1 == 1 && c2 == 1) return 1;
    const std::uint64_t key = static_cast<std::uint64_t>(c0) |
                              (static_cast<std::uint64_t>(c1) << kIdBits) |
                              (static_cast<std::uint64_t>(c2) << (2 * kIdBits));
    auto it = intern.find(key);
    if (it != intern.end()) return it->second;
    const int id = static_cast<int>(nodes.size());
    if (id >= kIdCap) fail(ErrorCode::OutOfSpace, "cylinder trie arena exhausted");
    nodes.push_back(Node{{c0, c1, c2}});
    intern.emplace(key, id);
    return id;
  }
};

std::uint64_t pair_key(int a, int b) {
  return static_cast<std::uint64_t>(a) | (static_cast<std::uint64_t>(b) << 32);
}

int unite_nodes(Arena& ar, int a, int b) {
  if (a == b) return a;
  if (a == 0) return b;
  if (b == 0) return a;
  if (a == 1 || b == 1) return 1;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = pair_key(a, b);
  auto it = ar.memo_unite.find(key);
  if (it != ar.memo_unite.end()) return it->second;
  const int r = ar.make(unite_nodes(ar, ar.child(a, 0), ar.child(b, 0)),
                        unite_nodes(ar, ar.child(a, 1), ar.child(b, 1)),
                        unite_nodes(ar, ar.child(a, 2), ar.child(b, 2)));
  ar.memo_unite.emplace(key, r);
  return r;
}

int intersect_nodes(Arena& ar, int a, int b) {
  if (a == b) return a;
  if (a == 0 || b == 0) return 0;
  if (a == 1) return b;
  if (b == 1) return a;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = pair_key(a, b);
  auto it = ar.memo_intersect.find(key);
  if (it != ar.memo_intersect.end()) return it->second;
  const int r = ar.make(intersect_nodes(ar, ar.child(a, 0), ar.child(b, 0)),
                        intersect_nodes(ar, ar.child(a, 1), ar.child(b, 1)),
                        intersect_nodes(ar, ar.child(a, 2), ar.child(b, 2)));
  ar.memo_intersect.emplace(key, r);
  return r;
}

bool subset_nodes(Arena& ar, int a, int b) {
  if (a == 0 || a == b || b == 1) return true;
  if (b == 0 || a == 1) return false;
  const std::uint64_t key = pair_key(a, b);
  auto it = ar.memo_subset.find(key);
  if (it != ar.memo_subset.end()) return it->second != 0;
  const bool r = subset_nodes(ar, ar.child(a, 0), ar.child(b, 0)) &&
                 subset_nodes(ar, ar.child(a, 1), ar.child(b, 1)) &&
                 subset_nodes(ar, ar.child(a, 2), ar.child(b, 2));
  ar.memo_subset.emplace(key, static_cast<char>(r));
  return r;
}

// Replaces every nonempty node at the given depth by a full subtree.
int truncate_nodes(Arena& ar, int id, int depth) {
  if (id == 0 || id == 1) return id;
  if (depth <= 0) return 1;
  const std::uint64_t key =
      static_cast<std::uint64_t>(id) | (static_cast<std::uint64_t>(depth) << 32);
  auto it = ar.memo_truncate.find(key);
  if (it != ar.memo_truncate.end()) return it->second;
  const int r = ar.make(truncate_nodes(ar, ar.child(id, 0), depth - 1),
                        truncate_nodes(ar, ar.child(id, 1), depth - 1),
                        truncate_nodes(ar, ar.child(id, 2), depth - 1));
  ar.memo_truncate.emplace(key, r);
  return r;
}

// sup over x in [a] of d(x, [b]) in units of the current depth's scale.
// Values lie in [0, 1/2]; leaves carry the semantics, so the memo may be
// shared across depths.
double directed_nodes(Arena& ar, int a, int b) {
  if (a == 0 || b == 1) return 0.0;
  const std::uint64_t key = pair_key(a, b);
  auto it = ar.memo_directed.find(key);
  if (it != ar.memo_directed.end()) return it->second;
  double best = 0.0;
  for (int s = 0; s < kAlphabet; ++s) {
    const int as = ar.child(a, s);
    if (as == 0) continue;
    const int bs = ar.child(b, s);
    const double v = (bs == 0) ? 0.5 : 0.5 * directed_nodes(ar, as, bs);
    best = std::max(best, v);
  }
  ar.memo_directed.emplace(key, best);
  return best;
}

void require_same_window(const SymbolicSet& a, const SymbolicSet& b) {
  if (a.window() != b.window())
    fail(ErrorCode::LevelMismatch, "sets tracked at different window depths");
}

void check_window(int window) {
  if (window < 4 || window > kMaxWindow)
    fail(ErrorCode::BadConfig, "window depth outside the supported range");
}

void check_digit(int d) {
  if (d < 0 || d >= kAlphabet) fail(ErrorCode::BadWord, "digit outside alphabet");
}

// Transducer states for the pair-sum rule: pairs (input node, previous
// input digit).  Kept sorted for canonical memo keys.
using PsumState = std::vector<std::pair<int, int>>;

struct PsumBuilder {
  Arena& ar;
  int window;
  std::map<std::pair<PsumState, int>, int> memo;

  // Trie node at output depth k-1 whose edges emit output digit k.
  int build(const PsumState& state, int k) {
    if (k > window) {
      // Output digits are exhausted; the branch survives only if some
      // input continuation stays inside the {0,1} domain at the last
      // represented input position.
      for (const auto& np : state)
        if (ar.child(np.first, 0) != 0 || ar.child(np.first, 1) != 0) return 1;
      return 0;
    }
    const auto key = std::make_pair(state, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int ch[3] = {0, 0, 0};
    for (int out = 0; out < kAlphabet; ++out) {
      PsumState next;
      for (const auto& [node, prev] : state) {
        for (int c = 0; c <= 1; ++c) {
          if (prev + c != out) continue;
          const int nc = ar.child(node, c);
          if (nc != 0) next.emplace_back(nc, c);
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      ch[out] = next.empty() ? 0 : build(next, k + 1);
    }
    const int r = ar.make(ch[0], ch[1], ch[2]);
    memo.emplace(key, r);
    return r;
  }
};

int psum_image_root(Arena& ar, int aroot, int window) {
  if (aroot == 0) return 0;
  PsumState start;
  for (int c = 0; c <= 1; ++c) {
    const int n = ar.child(aroot, c);
    if (n != 0) start.emplace_back(n, c);
  }
  std::sort(start.begin(), start.end());
  if (start.empty()) return 0;
  PsumBuilder builder{ar, window, {}};
  const int inner = builder.build(start, 3);
  if (inner == 0) return 0;
  return ar.make(ar.make(inner, 0, 0), 0, 0);
}

struct PsumPreBuilder {
  Arena& ar;
  int window;
  std::unordered_map<std::uint64_t, int> memo;

  // Preimage node at input depth j; edges choose digit x_{j+1} in {0,1}
  // and advance the image trie by the emitted sum x_j + x_{j+1}.
  int build(int bnode, int prev, int j) {
    if (j >= window) return 1;
    const std::uint64_t key = static_cast<std::uint64_t>(bnode) |
                              (static_cast<std::uint64_t>(prev) << 32) |
                              (static_cast<std::uint64_t>(j) << 34);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int ch[3] = {0, 0, 0};
    for (int c = 0; c <= 1; ++c) {
      const int next = ar.child(bnode, prev + c);
      ch[c] = (next == 0) ? 0 : build(next, c, j + 1);
    }
    const int r = ar.make(ch[0], ch[1], 0);
    memo.emplace(key, r);
    return r;
  }
};

int psum_preimage_root(Arena& ar, int aroot, int window) {
  const int b = ar.child(ar.child(aroot, 0), 0);
  if (b == 0) return 0;
  PsumPreBuilder builder{ar, window, {}};
  int ch[3] = {0, 0, 0};
  for (int c = 0; c <= 1; ++c) ch[c] = builder.build(b, c, 1);
  return ar.make(ch[0], ch[1], 0);
}

struct RawSet {
  int root;
  int window;
};

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

std::uint64_t count_nodes(const Arena& ar, int id, int remaining,
                          std::unordered_map<std::uint64_t, std::uint64_t>& memo) {
  if (id == 0) return 0;
  if (id == 1) return pow3(remaining);
  const std::uint64_t key =
      static_cast<std::uint64_t>(id) | (static_cast<std::uint64_t>(remaining) << 32);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (int s = 0; s < kAlphabet; ++s)
    total += count_nodes(ar, ar.child(id, s), remaining - 1, memo);
  memo.emplace(key, total);
  return total;
}

void collect_group(const Arena& ar, int id, std::vector<int>& prefix,
                   std::vector<SymbolicPoint>& out, std::size_t cap) {
  if (id == 0 || out.size() >= cap) return;
  if (id == 1) {
    out.push_back(SymbolicPoint(prefix));
    return;
  }
  for (int s = 0; s < kAlphabet && out.size() < cap; ++s) {
    prefix.push_back(s);
    collect_group(ar, ar.child(id, s), prefix, out, cap);
    prefix.pop_back();
  }
}

}  // namespace

SymbolicPoint::SymbolicPoint(std::vector<int> prefix) : digits(std::move(prefix)) {
  for (int d : digits) check_digit(d);
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
}

int SymbolicPoint::digit(int position) const {
  if (position < 1) fail(ErrorCode::BadWord, "digit positions are 1-based");
  const std::size_t i = static_cast<std::size_t>(position - 1);
  return i < digits.size() ? digits[i] : 0;
}

double distance(const SymbolicPoint& a, const SymbolicPoint& b) {
  const std::size_t len = std::max(a.digits.size(), b.digits.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a.digit(static_cast<int>(i) + 1) != b.digit(static_cast<int>(i) + 1))
      return std::ldexp(1.0, -static_cast<int>(i) - 1);
  }
  return 0.0;
}

SymbolicMap SymbolicMap::prepend(int s) {
  check_digit(s);
  return SymbolicMap{Kind::Prepend, s};
}

SymbolicPoint SymbolicMap::operator()(const SymbolicPoint& x) const {
  if (kind == Kind::Prepend) {
    std::vector<int> out;
    out.reserve(x.digits.size() + 1);
    out.push_back(symbol);
    out.insert(out.end(), x.digits.begin(), x.digits.end());
    return SymbolicPoint(std::move(out));
  }
  for (int d : x.digits)
    if (d > 1) fail(ErrorCode::DomainViolation, "pair-sum rule needs {0,1} digits");
  const std::size_t n = x.digits.size();
  std::vector<int> out(n + 2, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i + 2] = x.digits[i] + x.digits[i + 1];
  if (n >= 1) out[n + 1] = x.digits[n - 1];
  return SymbolicPoint(std::move(out));
}

SymbolicSet SymbolicSet::empty_set(int window) {
  check_window(window);
  return SymbolicSet(0, window);
}

SymbolicSet SymbolicSet::full_set(int window) {
  check_window(window);
  return SymbolicSet(1, window);
}

SymbolicSet SymbolicSet::from_cylinders(int window,
                                        const std::vector<std::vector<int>>& prefixes) {
  check_window(window);
  Arena& ar = Arena::instance();
  int root = 0;
  for (const auto& prefix : prefixes) {
    if (prefix.size() > static_cast<std::size_t>(window))
      fail(ErrorCode::BadWord, "cylinder prefix deeper than the window");
    int node = 1;
    for (std::size_t i = prefix.size(); i-- > 0;) {
      check_digit(prefix[i]);
      int ch[3] = {0, 0, 0};
      ch[prefix[i]] = node;
      node = ar.make(ch[0], ch[1], ch[2]);
    }
    root = unite_nodes(ar, root, node);
  }
  return SymbolicSet(root, window);
}

SymbolicSet SymbolicSet::zero_one_space(int window) {
  check_window(window);
  Arena& ar = Arena::instance();
  int node = 1;
  for (int d = 0; d < window; ++d) node = ar.make(node, node, 0);
  return SymbolicSet(node, window);
}

std::uint64_t SymbolicSet::cylinder_count() const {
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  return count_nodes(Arena::instance(), root_, window_, memo);
}

double SymbolicSet::resolution() const { return std::ldexp(1.0, -window_ - 1); }

SymbolicSet unite(const SymbolicSet& a, const SymbolicSet& b) {
  require_same_window(a, b);
  return SymbolicSet(unite_nodes(Arena::instance(), a.root_, b.root_), a.window_);
}

SymbolicSet intersect(const SymbolicSet& a, const SymbolicSet& b) {
  require_same_window(a, b);
  return SymbolicSet(intersect_nodes(Arena::instance(), a.root_, b.root_), a.window_);
}

bool is_subset(const SymbolicSet& inner, const SymbolicSet& outer) {
  require_same_window(inner, outer);
  return subset_nodes(Arena::instance(), inner.root_, outer.root_);
}

class SymbolicMapOps {
 public:
  static SymbolicSet image(const SymbolicSet& a, const SymbolicMap& f) {
    Arena& ar = Arena::instance();
    if (f.kind == SymbolicMap::Kind::Prepend) {
      const int body = truncate_nodes(ar, a.root_, a.window_ - 1);
      int ch[3] = {0, 0, 0};
      ch[f.symbol] = body;
      return SymbolicSet(ar.make(ch[0], ch[1], ch[2]), a.window_);
    }
    return SymbolicSet(psum_image_root(ar, a.root_, a.window_), a.window_);
  }

  static SymbolicSet preimage(const SymbolicSet& a, const SymbolicMap& f) {
    Arena& ar = Arena::instance();
    if (f.kind == SymbolicMap::Kind::Prepend)
      return SymbolicSet(ar.child(a.root_, f.symbol), a.window_);
    return SymbolicSet(psum_preimage_root(ar, a.root_, a.window_), a.window_);
  }
};

SymbolicSet set_image(const SymbolicSet& a, const SymbolicMap& f) {
  return SymbolicMapOps::image(a, f);
}

SymbolicSet set_preimage(const SymbolicSet& a, const SymbolicMap& f) {
  return SymbolicMapOps::preimage(a, f);
}

SymbolicSet dilate(const SymbolicSet& a, double radius) {
  if (radius < 0.0) fail(ErrorCode::NegativeRadius, "negative dilation radius");
  if (radius == 0.0 || a.root_ == 0) return a;
  int m = -1;
  for (int k = 0; k <= a.window_; ++k) {
    if (std::ldexp(1.0, -k) <= radius) {
      m = k;
      break;
    }
  }
  if (m < 0) return a;  // below the window resolution: already covered
  return SymbolicSet(truncate_nodes(Arena::instance(), a.root_, m - 1), a.window_);
}

double directed_distance(const SymbolicSet& a, const SymbolicSet& b) {
  require_same_window(a, b);
  if (a.empty() || b.empty())
    fail(ErrorCode::EmptySet, "cloud distance with an empty operand");
  return directed_nodes(Arena::instance(), a.root_id(), b.root_id());
}

double hausdorff_distance(const SymbolicSet& a, const SymbolicSet& b) {
  require_same_window(a, b);
  if (a.empty() || b.empty())
    fail(ErrorCode::EmptySet, "hausdorff distance with an empty operand");
  Arena& ar = Arena::instance();
  return std::max(directed_nodes(ar, a.root_id(), b.root_id()),
                  directed_nodes(ar, b.root_id(), a.root_id()));
}

double diameter_upper(const SymbolicSet& a) {
  if (a.empty()) return 0.0;
  const Arena& ar = Arena::instance();
  int node = a.root_id();
  int depth = 0;
  while (node != 1) {
    int only = -1;
    int live = 0;
    for (int s = 0; s < kAlphabet; ++s) {
      if (ar.child(node, s) != 0) {
        ++live;
        only = s;
      }
    }
    if (live >= 2) return std::ldexp(1.0, -depth - 1);
    node = ar.child(node, only);
    ++depth;
  }
  return std::ldexp(1.0, -depth - 1);
}

bool contains_point(const SymbolicSet& a, const SymbolicPoint& p) {
  const Arena& ar = Arena::instance();
  int node = a.root_id();
  for (int d = 1; d <= a.window() && node != 0 && node != 1; ++d)
    node = ar.child(node, p.digit(d));
  return node != 0;
}

double point_to_set_distance(const SymbolicPoint& p, const SymbolicSet& a) {
  if (a.empty()) fail(ErrorCode::EmptySet, "distance to an empty set");
  const Arena& ar = Arena::instance();
  int node = a.root_id();
  for (int d = 1; d <= a.window(); ++d) {
    if (node == 1) return 0.0;
    const int next = ar.child(node, p.digit(d));
    if (next == 0) return std::ldexp(1.0, -d);
    node = next;
  }
  return 0.0;
}

std::vector<SymbolicPoint> centers_by_distance(const SymbolicSet& a,
                                               const SymbolicPoint& near,
                                               std::size_t cap) {
  std::vector<SymbolicPoint> out;
  if (a.empty() || cap == 0) return out;
  const Arena& ar = Arena::instance();

  // Walk near's digit path.  The subtree hanging off the path at depth d
  // by a digit other than near's sits entirely at distance 2^{-d}; the
  // on-path full subtree (if reached) holds the unique nearest
  // representative.  Groups are emitted nearest-first, lexicographic
  // within a group.
  struct Group {
    int depth;
    int node;
    std::vector<int> prefix;
  };
  std::vector<Group> groups;
  std::vector<int> path;
  int node = a.root_id();
  bool on_path_full = false;
  for (int d = 1; d <= a.window() && node != 0; ++d) {
    if (node == 1) {
      on_path_full = true;
      break;
    }
    const int want = near.digit(d);
    for (int s = 0; s < kAlphabet; ++s) {
      if (s == want) continue;
      const int off = ar.child(node, s);
      if (off != 0) {
        std::vector<int> prefix = path;
        prefix.push_back(s);
        groups.push_back(Group{d, off, std::move(prefix)});
      }
    }
    node = ar.child(node, want);
    path.push_back(want);
  }
  if (node == 1) on_path_full = true;
  if (on_path_full) out.push_back(SymbolicPoint(path));

  std::sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) {
    if (x.depth != y.depth) return x.depth > y.depth;
    return x.prefix < y.prefix;
  });
  for (const Group& g : groups) {
    if (out.size() >= cap) break;
    std::vector<int> prefix = g.prefix;
    collect_group(ar, g.node, prefix, out, cap);
  }
  if (out.size() > cap) out.resize(cap);
  return out;
}

}  // namespace sym
}  // namespace lifs
