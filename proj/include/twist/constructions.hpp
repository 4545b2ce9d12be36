#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "automorphism.hpp"
#include "density.hpp"
#include "group.hpp"
#include "splitting.hpp"
#include "structure.hpp"

namespace twist {

/// G x| C_n where the cyclic factor <t> has order exactly n and acts through
/// alpha by t^{-1} x t = alpha(x). The pair (x, t^k) has index k*|G| + x, so
/// the embedded base occupies indices 0..|G|-1. Multiplication is
/// (x, t^k)(y, t^l) = (x alpha^{-k}(y), t^{k+l}).
struct SemidirectProduct
{
  FiniteGroup base;
  unsigned acting_order = 1;
  Automorphism action;
  FiniteGroup product;
  std::vector<Element> embedding;
  Element generator_t = 0;

  Element pair(Element x, unsigned k) const
  { return static_cast<Element>(k % acting_order * base.order() + x); }
};

inline SemidirectProduct semidirect_with_cyclic(FiniteGroup const &g, Automorphism const &alpha,
                                                unsigned n,
                                                std::size_t order_cap = default_order_cap)
{
  if (n == 0 || n % alpha.order() != 0)
    throw Error(Errc::automorphism_order_mismatch,
                "alpha^" + std::to_string(n) + " is not the identity");
  auto m = g.order();
  if (m * n > order_cap)
    throw Error(Errc::order_cap_exceeded,
                "semidirect product of order " + std::to_string(m * n) + " exceeds cap");

  // inv_pow[k] = alpha^{-k}
  std::vector<std::vector<Element>> inv_pow(n, std::vector<Element>(m));
  auto alpha_inv = alpha.inverse();
  for (Element x = 0; x < m; ++x)
    inv_pow[0][x] = x;
  for (unsigned k = 1; k < n; ++k)
    for (Element x = 0; x < m; ++x)
      inv_pow[k][x] = alpha_inv(inv_pow[k - 1][x]);

  auto order = m * n;
  std::vector<Element> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    auto x = static_cast<Element>(a % m);
    auto k = static_cast<unsigned>(a / m);
    auto *r = table.data() + a * order;
    for (std::size_t b = 0; b < order; ++b) {
      auto y = static_cast<Element>(b % m);
      auto l = static_cast<unsigned>(b / m);
      r[b] = static_cast<Element>((k + l) % n * m + g.mul(x, inv_pow[k][y]));
    }
  }

  std::vector<std::string> labels;
  labels.reserve(order);
  for (std::size_t a = 0; a < order; ++a) {
    auto x = a % m;
    auto k = a / m;
    std::string base = g.labels().empty() ? "g" + std::to_string(x) : g.labels()[x];
    labels.push_back(k == 0 ? base : base + "t^" + std::to_string(k));
  }

  SemidirectProduct sp{g, n, alpha, {}, {}, 0};
  sp.product = FiniteGroup::from_trusted_table(order, std::move(table), g.identity(),
                                               std::move(labels));
  sp.embedding.resize(m);
  for (Element x = 0; x < m; ++x)
    sp.embedding[x] = x;
  sp.generator_t = sp.pair(g.identity(), 1);
  return sp;
}

struct CosetRelationReport
{
  std::size_t lhs_size = 0;  ///< |X_n(G x| C_n) intersected with G t^{-1}|
  std::size_t rhs_size = 0;  ///< |X_{n,alpha}(G)|
  bool equal = false;
  Density twisted_density;
};

/// Checks X_n(G x| <t>) ∩ G t^{-1} = X_{n,alpha}(G) t^{-1} as sets.
inline CosetRelationReport verify_coset_relation(SemidirectProduct const &sp)
{
  auto const &g = sp.base;
  auto n = sp.acting_order;
  auto xp = power_solution_set(sp.product, n);
  auto xg = twisted_solution_set(g, sp.action, n);

  auto t_inv = sp.product.inv(sp.generator_t);
  std::vector<Element> lhs, rhs;
  for (auto p : xp.members)
    if (p / g.order() == (n - 1) % n)  // p lies in G t^{-1}
      lhs.push_back(p);
  for (auto x : xg.members)
    rhs.push_back(sp.product.mul(sp.embedding[x], t_inv));
  std::sort(rhs.begin(), rhs.end());

  CosetRelationReport r;
  r.lhs_size = lhs.size();
  r.rhs_size = rhs.size();
  r.equal = lhs == rhs;
  r.twisted_density = xg.density;
  return r;
}

inline CosetRelationReport verify_coset_relation(FiniteGroup const &g, Automorphism const &alpha,
                                                 unsigned n,
                                                 std::size_t order_cap = default_order_cap)
{ return verify_coset_relation(semidirect_with_cyclic(g, alpha, n, order_cap)); }

/// Same relation evaluated with pair arithmetic in G x| <t>, without
/// building the product table: p = (y, t^{n-1}) lies on the left side when
/// p^n = 1.
inline CosetRelationReport verify_coset_relation_pairwise(FiniteGroup const &g,
                                                          Automorphism const &alpha, unsigned n)
{
  if (n == 0 || n % alpha.order() != 0)
    throw Error(Errc::automorphism_order_mismatch,
                "alpha^" + std::to_string(n) + " is not the identity");
  auto m = g.order();
  std::vector<std::vector<Element>> inv_pow(n, std::vector<Element>(m));
  auto alpha_inv = alpha.inverse();
  for (Element x = 0; x < m; ++x)
    inv_pow[0][x] = x;
  for (unsigned k = 1; k < n; ++k)
    for (Element x = 0; x < m; ++x)
      inv_pow[k][x] = alpha_inv(inv_pow[k - 1][x]);

  auto xg = twisted_solution_set(g, alpha, n);
  std::vector<Element> lhs;
  for (Element y = 0; y < m; ++y) {
    // (a, t^k) (y, t^{n-1}) = (a alpha^{-k}(y), t^{k+n-1})
    Element a = g.identity();
    unsigned k = 0;
    for (unsigned i = 0; i < n; ++i) {
      a = g.mul(a, inv_pow[k][y]);
      k = (k + n - 1) % n;
    }
    if (a == g.identity() && k == 0)
      lhs.push_back(y);
  }
  CosetRelationReport r;
  r.lhs_size = lhs.size();
  r.rhs_size = xg.members.size();
  r.equal = lhs == xg.members;
  r.twisted_density = xg.density;
  return r;
}

struct MonotonicityReport
{
  Density density_g;  ///< X_{n,alpha}(G)
  Density density_q;  ///< X_{n,alpha-bar}(G/N)
  bool ok = false;    ///< density_g <= density_q
};

inline MonotonicityReport verify_quotient_monotonicity(FiniteGroup const &g,
                                                       Automorphism const &alpha, unsigned n,
                                                       Quotient const &q, Subgroup const &normal)
{
  auto bar = induced_quotient_automorphism(q, normal, alpha);
  MonotonicityReport r;
  r.density_g = twisted_solution_set(g, alpha, n).density;
  r.density_q = twisted_solution_set(q.group, bar, n).density;
  r.ok = r.density_g <= r.density_q;
  return r;
}

inline MonotonicityReport verify_quotient_monotonicity(FiniteGroup const &g,
                                                       Automorphism const &alpha, unsigned n,
                                                       Subgroup const &normal)
{
  if (n == 0 || n % alpha.order() != 0)
    throw Error(Errc::automorphism_order_mismatch,
                "alpha^" + std::to_string(n) + " is not the identity");
  if (!is_normal(g, normal))
    throw Error(Errc::not_normal, "N is not normal");
  return verify_quotient_monotonicity(g, alpha, n, quotient_group(g, normal), normal);
}

inline bool is_invariant(Automorphism const &alpha, Subgroup const &h)
{
  bool ok = true;
  h.mask().for_each([&](Element x) {
    if (ok && !h.contains(alpha(x)))
      ok = false;
  });
  return ok;
}

struct QuotientFamilyReport
{
  std::size_t family_size = 0;       ///< nontrivial invariant N with full X on G/N
  std::size_t intersection_order = 0;
  bool premise = false;              ///< family intersection is trivial
  bool whole = false;                ///< X_{n,alpha}(G) = G
  bool ok = false;                   ///< premise implies whole
};

/// If every quotient by a family of alpha-invariant normal subgroups with
/// trivial intersection has a full solution set, then X_{n,alpha}(G) = G.
/// The family taken is every nontrivial invariant N with a full quotient set.
inline QuotientFamilyReport verify_quotient_family(FiniteGroup const &g, Automorphism const &alpha,
                                                   unsigned n,
                                                   std::vector<Subgroup> const &normals)
{
  QuotientFamilyReport r;
  TwistedNorm norm(g, alpha.images(), n);
  ElementSet meet(g.order());
  for (Element x = 0; x < g.order(); ++x)
    meet.insert(x);
  for (auto const &nsub : normals) {
    if (nsub.is_trivial() || !is_invariant(alpha, nsub))
      continue;
    auto q = quotient_group(g, nsub);
    auto bar = induced_quotient_automorphism(q, nsub, alpha);
    if (!twisted_solution_set(q.group, bar, n).is_whole())
      continue;
    ++r.family_size;
    meet = meet.intersect(nsub.mask());
  }
  r.intersection_order = meet.size();
  r.premise = r.family_size > 0 && meet.size() == 1;
  r.whole = norm.count_trivial() == g.order();
  r.ok = !r.premise || r.whole;
  return r;
}

struct LargeIntersectionReport
{
  Density epsilon;      ///< 1 - |A|/|G|
  Density lower_bound;  ///< 1 - k epsilon (may be negative)
  Density actual;       ///< |g_1 A ∩ ... ∩ g_k A| / |G|
  bool ok = false;
};

inline LargeIntersectionReport check_large_intersection(FiniteGroup const &g,
                                                        ElementSet const &a,
                                                        std::span<Element const> shifts)
{
  ElementSet meet(g.order());
  for (Element x = 0; x < g.order(); ++x)
    meet.insert(x);
  for (auto s : shifts) {
    ElementSet translate(g.order());
    a.for_each([&](Element x) { translate.insert(g.mul(s, x)); });
    meet = meet.intersect(translate);
  }
  LargeIntersectionReport r;
  r.epsilon = Density(1, 1) - Density::of(a.size(), g.order());
  r.lower_bound = Density(1, 1) - Density(static_cast<std::int64_t>(shifts.size()), 1) * r.epsilon;
  r.actual = Density::of(meet.size(), g.order());
  r.ok = r.actual >= r.lower_bound;
  return r;
}

struct CosetDensityReport
{
  std::size_t r = 0;           ///< [G:N]
  std::size_t s = 0;           ///< cosets of N meeting A
  Density max_coset_density;   ///< max |Nx ∩ A| / |N|
  bool ine1_ok = false;        ///< (r - s)/r <= 1 - |A|/|G|
  bool ine2_ok = false;        ///< |A|/|G| <= s |Nx ∩ A| / |G|
};

inline CosetDensityReport check_coset_density(FiniteGroup const &g, ElementSet const &a,
                                              Subgroup const &normal)
{
  if (!is_normal(g, normal))
    throw Error(Errc::not_normal, "N is not normal");
  if (a.empty())
    throw Error(Errc::empty_set, "A is empty");

  auto q = quotient_group(g, normal);
  std::vector<std::size_t> hits(q.group.order(), 0);
  a.for_each([&](Element x) { ++hits[q.projection[x]]; });

  CosetDensityReport rep;
  rep.r = q.group.order();
  std::size_t best = 0;
  for (auto h : hits) {
    rep.s += h > 0;
    best = std::max(best, h);
  }
  rep.max_coset_density = Density::of(best, normal.size());

  auto m_a = Density::of(a.size(), g.order());
  auto lhs1 = Density::of(rep.r - rep.s, rep.r);
  rep.ine1_ok = lhs1 <= Density(1, 1) - m_a;
  rep.ine2_ok = m_a <= Density::of(rep.s * best, g.order());
  return rep;
}

/// Uniform random subset of g with a uniformly chosen size in [min_size, |G|].
inline ElementSet random_subset(FiniteGroup const &g, std::mt19937_64 &rng,
                                std::size_t min_size = 1)
{
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> size_dist(std::min(min_size, all.size()),
                                                       all.size());
  auto k = size_dist(rng);
  ElementSet out(g.order());
  for (std::size_t i = 0; i < k; ++i)
    out.insert(all[i]);
  return out;
}

struct TrialSummary
{
  std::size_t draws = 0;
  std::size_t failures = 0;
};

/// Random (A, shifts) draws with 1..max_shifts shifts each.
inline TrialSummary large_intersection_trials(FiniteGroup const &g, std::mt19937_64 &rng,
                                              std::size_t draws, std::size_t max_shifts = 4)
{
  TrialSummary t;
  std::uniform_int_distribution<std::size_t> count(1, max_shifts);
  std::uniform_int_distribution<Element> elem(0, static_cast<Element>(g.order() - 1));
  std::vector<Element> shifts;
  for (std::size_t i = 0; i < draws; ++i) {
    auto a = random_subset(g, rng);
    shifts.resize(count(rng));
    for (auto &s : shifts)
      s = elem(rng);
    ++t.draws;
    if (!check_large_intersection(g, a, shifts).ok)
      ++t.failures;
  }
  return t;
}

inline TrialSummary coset_density_trials(FiniteGroup const &g, Subgroup const &normal,
                                         std::mt19937_64 &rng, std::size_t draws)
{
  TrialSummary t;
  for (std::size_t i = 0; i < draws; ++i) {
    auto a = random_subset(g, rng);
    auto r = check_coset_density(g, a, normal);
    ++t.draws;
    if (!r.ine1_ok || !r.ine2_ok)
      ++t.failures;
  }
  return t;
}

} // namespace twist
