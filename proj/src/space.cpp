#include "lifs/space.hpp"

#include <type_traits>

namespace lifs {

namespace {

[[noreturn]] void mixed() {
  fail(ErrorCode::BackendMismatch, "operands use different space backends");
}

template <typename A, typename B>
inline constexpr bool kSame = std::is_same_v<std::decay_t<A>, std::decay_t<B>>;

}  // namespace

double map_rate(const SpaceMap& f) {
  return std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>,
                                     AffineContraction>)
          return m.lambda;
        else
          return m.lambda();
      },
      f);
}

SpacePoint apply(const SpaceMap& f, const SpacePoint& p) {
  return std::visit(
      [](const auto& m, const auto& x) -> SpacePoint {
        if constexpr (kSame<decltype(m), AffineContraction> &&
                      kSame<decltype(x), Point>)
          return m.map(x);
        else if constexpr (kSame<decltype(m), sym::SymbolicMap> &&
                           kSame<decltype(x), sym::SymbolicPoint>)
          return m(x);
        else
          mixed();
      },
      f, p);
}

double distance(const SpacePoint& p, const SpacePoint& q) {
  return std::visit(
      [](const auto& x, const auto& y) -> double {
        if constexpr (kSame<decltype(x), decltype(y)>)
          return distance(x, y);
        else
          mixed();
      },
      p, q);
}

bool set_empty(const SpaceSet& a) {
  return std::visit([](const auto& s) { return s.empty(); }, a);
}

std::uint64_t cover_size(const SpaceSet& a) {
  return std::visit(
      [](const auto& s) -> std::uint64_t {
        if constexpr (kSame<decltype(s), GridSet>)
          return s.cell_count();
        else
          return s.cylinder_count();
      },
      a);
}

double resolution(const SpaceSet& a) {
  return std::visit(
      [](const auto& s) {
        if constexpr (kSame<decltype(s), GridSet>)
          return s.cell_diagonal();
        else
          return s.resolution();
      },
      a);
}

const char* backend_name(const SpaceSet& a) {
  return a.index() == 0 ? "grid" : "cylinder";
}

SpaceSet unite(const SpaceSet& a, const SpaceSet& b) {
  return std::visit(
      [](const auto& x, const auto& y) -> SpaceSet {
        if constexpr (kSame<decltype(x), decltype(y)>)
          return unite(x, y);
        else
          mixed();
      },
      a, b);
}

SpaceSet intersect(const SpaceSet& a, const SpaceSet& b) {
  return std::visit(
      [](const auto& x, const auto& y) -> SpaceSet {
        if constexpr (kSame<decltype(x), decltype(y)>)
          return intersect(x, y);
        else
          mixed();
      },
      a, b);
}

bool is_subset(const SpaceSet& inner, const SpaceSet& outer) {
  return std::visit(
      [](const auto& x, const auto& y) -> bool {
        if constexpr (kSame<decltype(x), decltype(y)>)
          return is_subset(x, y);
        else
          mixed();
      },
      inner, outer);
}

SpaceSet set_image(const SpaceSet& a, const SpaceMap& f) {
  return std::visit(
      [](const auto& s, const auto& m) -> SpaceSet {
        if constexpr (kSame<decltype(s), GridSet> &&
                      kSame<decltype(m), AffineContraction>)
          return set_image(s, m.map);
        else if constexpr (kSame<decltype(s), sym::SymbolicSet> &&
                           kSame<decltype(m), sym::SymbolicMap>)
          return set_image(s, m);
        else
          mixed();
      },
      a, f);
}

SpaceSet set_preimage(const SpaceSet& a, const SpaceMap& f,
                      const SpaceSet& domain) {
  return std::visit(
      [](const auto& s, const auto& m, const auto& d) -> SpaceSet {
        if constexpr (kSame<decltype(s), GridSet> &&
                      kSame<decltype(m), AffineContraction> &&
                      kSame<decltype(d), GridSet>)
          return set_preimage(s, m.map, d);
        else if constexpr (kSame<decltype(s), sym::SymbolicSet> &&
                           kSame<decltype(m), sym::SymbolicMap> &&
                           kSame<decltype(d), sym::SymbolicSet>)
          return intersect(set_preimage(s, m), d);
        else
          mixed();
      },
      a, f, domain);
}

SpaceSet dilate(const SpaceSet& a, double radius) {
  return std::visit([radius](const auto& s) -> SpaceSet { return dilate(s, radius); },
                    a);
}

double hausdorff_distance(const SpaceSet& a, const SpaceSet& b) {
  return std::visit(
      [](const auto& x, const auto& y) -> double {
        if constexpr (kSame<decltype(x), decltype(y)>)
          return hausdorff_distance(x, y);
        else
          mixed();
      },
      a, b);
}

double diameter_upper(const SpaceSet& a) {
  return std::visit([](const auto& s) { return diameter_upper(s); }, a);
}

double point_to_set_distance(const SpacePoint& p, const SpaceSet& a) {
  return std::visit(
      [](const auto& x, const auto& s) -> double {
        if constexpr (kSame<decltype(x), Point> && kSame<decltype(s), GridSet>)
          return point_to_set_distance(x, s);
        else if constexpr (kSame<decltype(x), sym::SymbolicPoint> &&
                           kSame<decltype(s), sym::SymbolicSet>)
          return point_to_set_distance(x, s);
        else
          mixed();
      },
      p, a);
}

bool contains_point(const SpaceSet& a, const SpacePoint& p) {
  return std::visit(
      [](const auto& s, const auto& x) -> bool {
        if constexpr (kSame<decltype(s), GridSet> && kSame<decltype(x), Point>)
          return s.contains_point(x);
        else if constexpr (kSame<decltype(s), sym::SymbolicSet> &&
                           kSame<decltype(x), sym::SymbolicPoint>)
          return contains_point(s, x);
        else
          mixed();
      },
      a, p);
}

bool contains_with_margin(const SpaceSet& outer, const SpaceSet& inner,
                          double zeta) {
  return std::visit(
      [zeta](const auto& o, const auto& i) -> bool {
        if constexpr (kSame<decltype(o), GridSet> && kSame<decltype(i), GridSet>)
          return contains_with_margin(o, i, zeta);
        else if constexpr (kSame<decltype(o), sym::SymbolicSet> &&
                           kSame<decltype(i), sym::SymbolicSet>)
          return is_subset(dilate(i, zeta), o);
        else
          mixed();
      },
      outer, inner);
}

std::vector<SpacePoint> centers_by_distance(const SpaceSet& a,
                                            const SpacePoint& near,
                                            std::size_t cap) {
  return std::visit(
      [cap](const auto& s, const auto& x) -> std::vector<SpacePoint> {
        if constexpr ((kSame<decltype(s), GridSet> &&
                       kSame<decltype(x), Point>) ||
                      (kSame<decltype(s), sym::SymbolicSet> &&
                       kSame<decltype(x), sym::SymbolicPoint>)) {
          std::vector<SpacePoint> out;
          for (auto& c : centers_by_distance(s, x, cap)) out.emplace_back(c);
          return out;
        } else {
          mixed();
        }
      },
      a, near);
}

}  // namespace lifs
