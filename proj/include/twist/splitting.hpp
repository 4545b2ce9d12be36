#pragma once

#include <span>
#include <vector>

#include "automorphism.hpp"
#include "density.hpp"
#include "group.hpp"

namespace twist {

/// X_{n,alpha}(G) = { x : x alpha(x) alpha^2(x) ... alpha^{n-1}(x) = 1 }.
struct SolutionSet
{
  FiniteGroup parent;
  Automorphism alpha;
  unsigned n = 1;
  std::vector<Element> members;  ///< sorted
  Density density;

  bool contains(Element x) const
  { return std::binary_search(members.begin(), members.end(), x); }

  bool is_whole() const noexcept { return members.size() == parent.order(); }
};

/// Evaluates the twisted norm x alpha(x) ... alpha^{n-1}(x) for every x at
/// once. The product is accumulated left to right exactly as written.
class TwistedNorm
{
public:
  TwistedNorm(FiniteGroup const &g, std::span<Element const> alpha, unsigned n)
  : g_(g), norm_(g.order()), power_(g.order())
  {
    for (Element x = 0; x < g.order(); ++x) {
      norm_[x] = x;
      power_[x] = x;
    }
    for (unsigned k = 1; k < n; ++k)
      for (Element x = 0; x < g.order(); ++x) {
        power_[x] = alpha[power_[x]];
        norm_[x] = g.mul(norm_[x], power_[x]);
      }
    if (n == 0)
      std::fill(norm_.begin(), norm_.end(), g.identity());
  }

  Element operator()(Element x) const noexcept { return norm_[x]; }
  std::span<Element const> values() const noexcept { return norm_; }

  std::size_t count_trivial() const noexcept
  {
    std::size_t c = 0;
    for (auto v : norm_)
      c += v == g_.identity();
    return c;
  }

private:
  FiniteGroup g_;
  std::vector<Element> norm_;
  std::vector<Element> power_;
};

/// Density of X_{n,alpha}(G) without materializing the set.
inline Density twisted_density(FiniteGroup const &g, std::span<Element const> alpha, unsigned n)
{
  TwistedNorm norm(g, alpha, n);
  return Density::of(norm.count_trivial(), g.order());
}

inline SolutionSet twisted_solution_set(FiniteGroup const &g, Automorphism const &alpha,
                                        unsigned n)
{
  if (n == 0 || n % alpha.order() != 0)
    throw Error(Errc::automorphism_order_mismatch,
                "automorphism of order " + std::to_string(alpha.order()) +
                  " does not satisfy alpha^" + std::to_string(n) + " = id");
  TwistedNorm norm(g, alpha.images(), n);
  SolutionSet s{g, alpha, n, {}, {}};
  for (Element x = 0; x < g.order(); ++x)
    if (norm(x) == g.identity())
      s.members.push_back(x);
  s.density = Density::of(s.members.size(), g.order());
  return s;
}

/// X_n(G) = { x : x^n = 1 }.
inline SolutionSet power_solution_set(FiniteGroup const &g, unsigned n)
{
  if (n == 0)
    throw Error(Errc::invalid_argument, "n must be positive");
  auto id = Automorphism::identity(g);
  SolutionSet s{g, id, n, {}, {}};
  for (Element x = 0; x < g.order(); ++x)
    if (n % g.element_order(x) == 0)
      s.members.push_back(x);
  s.density = Density::of(s.members.size(), g.order());
  return s;
}

/// H_n(G) = < x : x^n != 1 >. Normal because its generating set is a union
/// of conjugacy classes.
inline Subgroup hughes_thompson_subgroup(FiniteGroup const &g, unsigned n)
{
  std::vector<Element> gens;
  for (Element x = 0; x < g.order(); ++x)
    if (n % g.element_order(x) != 0)
      gens.push_back(x);
  auto h = subgroup_generated(g, gens);
  return Subgroup::trusted(g, h.mask(), true);
}

struct IndexBoundReport
{
  std::size_t hn_order = 0;
  std::size_t hn_index = 0;
  Density density;             ///< density of X_n(G)
  bool containment_ok = false; ///< G \ H_n(G) subset of X_n(G)
  bool vacuous = false;        ///< H_n(G) = 1 or X_n(G) = G
  bool bound_ok = false;       ///< index <= 1 / (1 - density); true when vacuous
};

inline IndexBoundReport check_index_bound(FiniteGroup const &g, unsigned n)
{
  IndexBoundReport r;
  auto hn = hughes_thompson_subgroup(g, n);
  auto xn = power_solution_set(g, n);
  r.hn_order = hn.size();
  r.hn_index = hn.index();
  r.density = xn.density;

  r.containment_ok = true;
  for (Element x = 0; x < g.order(); ++x)
    if (!hn.contains(x) && !xn.contains(x))
      r.containment_ok = false;

  r.vacuous = hn.is_trivial() || xn.is_whole();
  if (r.vacuous) {
    r.bound_ok = true;
  } else {
    // index <= 1/(1-d)  <=>  index * (1 - d) <= 1
    auto lhs = Density(static_cast<std::int64_t>(r.hn_index), 1) * (Density(1, 1) - r.density);
    r.bound_ok = lhs <= Density(1, 1);
  }
  return r;
}

} // namespace twist
