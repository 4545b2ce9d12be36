#pragma once

#include <optional>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "group.hpp"

namespace twist {

/// [A, B] for subgroups A, B of g (normal closure is implicit when B = g).
inline Subgroup commutator_subgroup(FiniteGroup const &g, Subgroup const &a, Subgroup const &b)
{
  ElementSet values(g.order());
  auto bs = b.members();
  a.mask().for_each([&](Element x) {
    for (auto y : bs)
      values.insert(commutator(g, x, y));
  });
  auto h = subgroup_generated(g, values);
  if (a.known_normal().value_or(false) && b.known_normal().value_or(false))
    return Subgroup::trusted(g, h.mask(), true);
  return h;
}

inline Subgroup derived_subgroup(FiniteGroup const &g)
{
  auto whole = Subgroup::whole(g);
  return commutator_subgroup(g, whole, whole);
}

struct LowerCentralSeries
{
  std::vector<Subgroup> terms;                 ///< gamma_1 = G, gamma_2, ...
  std::optional<unsigned> nilpotency_class;    ///< empty when not nilpotent
};

/// gamma_{k+1} = [gamma_k, G] until the series stabilizes.
inline LowerCentralSeries lower_central_series(FiniteGroup const &g)
{
  LowerCentralSeries out;
  auto whole = Subgroup::whole(g);
  out.terms.push_back(whole);
  while (!out.terms.back().is_trivial()) {
    auto next = commutator_subgroup(g, out.terms.back(), whole);
    if (next.size() == out.terms.back().size())
      return out;
    out.terms.push_back(std::move(next));
  }
  out.nilpotency_class = static_cast<unsigned>(out.terms.size() - 1);
  return out;
}

inline std::vector<Subgroup> derived_series(FiniteGroup const &g)
{
  std::vector<Subgroup> terms{Subgroup::whole(g)};
  while (!terms.back().is_trivial()) {
    auto next = commutator_subgroup(g, terms.back(), terms.back());
    if (next.size() == terms.back().size())
      break;
    terms.push_back(std::move(next));
  }
  return terms;
}

inline bool is_solvable(FiniteGroup const &g)
{ return derived_series(g).back().is_trivial(); }

/// First pair (x, y) with [x, y, y] != 1.
inline std::optional<std::pair<Element, Element>> two_engel_violation(FiniteGroup const &g)
{
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      auto c = commutator(g, x, y);
      if (commutator(g, c, y) != g.identity())
        return std::pair{x, y};
    }
  return std::nullopt;
}

inline bool is_two_engel(FiniteGroup const &g)
{ return !two_engel_violation(g); }

/// First triple violating [a,b,c] = [a,c,b]^{-1}.
inline std::optional<std::tuple<Element, Element, Element>>
commutator_swap_violation(FiniteGroup const &g)
{
  auto n = g.order();
  std::vector<Element> comm(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      comm[a * n + b] = commutator(g, a, b);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      auto ab = comm[a * n + b];
      for (Element c = 0; c < n; ++c) {
        auto ac = comm[a * n + c];
        if (comm[ab * n + c] != g.inv(comm[ac * n + b]))
          return std::tuple{a, b, c};
      }
    }
  return std::nullopt;
}

/// First (a, b, c, h) where the weight-3 commutator [a,b,c] fails to commute with h.
inline std::optional<std::tuple<Element, Element, Element, Element>>
weight_three_centrality_violation(FiniteGroup const &g)
{
  auto n = g.order();
  ElementSet weight3(n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      auto ab = commutator(g, a, b);
      for (Element c = 0; c < n; ++c) {
        auto w = commutator(g, ab, c);
        if (!weight3.insert(w))
          continue;
        for (Element h = 0; h < n; ++h)
          if (g.mul(w, h) != g.mul(h, w))
            return std::tuple{a, b, c, h};
      }
    }
  return std::nullopt;
}

inline Subgroup center(FiniteGroup const &g)
{
  ElementSet z(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (auto s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central)
      z.insert(x);
  }
  return Subgroup::trusted(g, std::move(z), true);
}

/// Conjugacy class representatives (smallest index of each class).
inline std::vector<Element> class_representatives(FiniteGroup const &g)
{
  std::vector<Element> reps;
  ElementSet seen(g.order());
  std::vector<Element> orbit;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen.contains(x))
      continue;
    reps.push_back(x);
    seen.insert(x);
    orbit.assign(1, x);
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (auto s : g.generators()) {
        auto y = g.conj(orbit[head], s);
        if (seen.insert(y))
          orbit.push_back(y);
      }
  }
  return reps;
}

namespace detail {

struct ElementSetHash
{
  std::size_t operator()(ElementSet const &s) const noexcept { return s.hash(); }
};

} // namespace detail

/// Every normal subgroup of g, sorted by size then members. Each normal
/// subgroup is a join of normal closures of conjugacy classes, so the lattice
/// is generated from those.
inline std::vector<Subgroup> normal_subgroups(FiniteGroup const &g)
{
  std::vector<ElementSet> minimal;
  for (auto x : class_representatives(g)) {
    if (x == g.identity())
      continue;
    Element gens[] = {x};
    auto nc = normal_closure(g, gens).mask();
    if (std::find(minimal.begin(), minimal.end(), nc) == minimal.end())
      minimal.push_back(std::move(nc));
  }

  std::vector<ElementSet> found{Subgroup::trivial(g).mask()};
  std::unordered_set<ElementSet, detail::ElementSetHash> seen(found.begin(), found.end());
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (auto const &m : minimal) {
      if (m.is_subset_of(found[i]))
        continue;
      // NM = {nm} for normal N, M
      ElementSet joined(g.order());
      auto ms = m.elements();
      found[i].for_each([&](Element x) {
        for (auto y : ms)
          joined.insert(g.mul(x, y));
      });
      if (seen.insert(joined).second)
        found.push_back(std::move(joined));
    }
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto &s : found)
    out.push_back(Subgroup::trusted(g, std::move(s), true));
  std::sort(out.begin(), out.end(), [](Subgroup const &a, Subgroup const &b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

} // namespace twist
