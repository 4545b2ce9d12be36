#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"

using namespace twist;
using namespace testing_support;

namespace {

Catalog const &catalog_to(std::size_t max_order)
{
  static std::map<std::size_t, Catalog> cache;
  auto it = cache.find(max_order);
  if (it == cache.end()) {
    CatalogOptions o;
    o.max_order = max_order;
    it = cache.emplace(max_order, enumerate_catalog(o)).first;
  }
  return it->second;
}

std::vector<CatalogEntry const *> entries_to(std::size_t max_order)
{
  std::vector<CatalogEntry const *> out;
  for (auto const &e : catalog_to(128).entries)
    if (e.group.order() <= max_order)
      out.push_back(&e);
  return out;
}

/// Runs f on every catalog group up to max_order in parallel; f returns an
/// empty string on success or a description of the first failure.
template<typename F>
void for_each_group(std::size_t max_order, F f)
{
  auto es = entries_to(max_order);
  auto res = parallel_map<std::string>(es.size(), resolve_workers(), [&](std::size_t i) {
    return f(*es[i]);
  });
  for (std::size_t i = 0; i < es.size(); ++i)
    EXPECT_EQ(res[i], "") << es[i]->spec.name();
}

using Images = std::vector<Element>;

Images images(Automorphism const &a) { return {a.images().begin(), a.images().end()}; }

Images compose(Images const &a, Images const &b)
{
  Images r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    r[x] = a[b[x]];
  return r;
}

std::set<Images> generated(std::vector<Images> const &gens, std::size_t n)
{
  Images id(n);
  std::iota(id.begin(), id.end(), Element{0});
  std::set<Images> seen{id};
  std::vector<Images> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto const &g : gens) {
      auto next = compose(g, queue[head]);
      if (seen.insert(next).second)
        queue.push_back(std::move(next));
    }
  return seen;
}

unsigned valuation(std::size_t m, unsigned p)
{
  unsigned v = 0;
  for (; m % p == 0; m /= p)
    ++v;
  return v;
}

} // namespace

// group-core

TEST(GroupProperties, Associativity)
{
  for_each_group(128, [](CatalogEntry const &e) -> std::string {
    auto const &g = e.group;
    auto n = g.order();
    auto t = g.flat_table();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = t[i * n + j];
        for (std::size_t k = 0; k < n; ++k)
          if (t[ij * n + k] != t[i * n + t[j * n + k]])
            return "not associative";
      }
    return "";
  });
}

TEST(GroupProperties, Lagrange)
{
  for_each_group(128, [](CatalogEntry const &e) -> std::string {
    auto const &g = e.group;
    for (Element x = 0; x < g.order(); ++x) {
      unsigned k = 1;
      for (auto y = x; y != g.identity(); y = g.mul(y, x))
        ++k;
      if (k != g.element_order(x) || g.order() % k != 0)
        return "element order " + std::to_string(k);
    }
    return "";
  });
}

TEST(GroupProperties, TwoEngelGroupsHaveClassAtMostThree)
{
  std::atomic<std::size_t> engel{0};
  for_each_group(128, [&](CatalogEntry const &e) -> std::string {
    if (!is_two_engel(e.group))
      return "";
    ++engel;
    auto cls = lower_central_series(e.group).nilpotency_class;
    if (!cls || *cls > 3)
      return "class above 3";
    if (commutator_swap_violation(e.group))
      return "[a,b,c] != [a,c,b]^-1";
    return "";
  });
  EXPECT_GT(engel.load(), 50u);
}

TEST(GroupProperties, WeightThreeCommutatorsCentralInClassThree)
{
  std::atomic<std::size_t> class3{0};
  for_each_group(128, [&](CatalogEntry const &e) -> std::string {
    auto cls = lower_central_series(e.group).nilpotency_class;
    if (!cls || *cls > 3)
      return "";
    class3 += *cls == 3;
    return weight_three_centrality_violation(e.group) ? "weight-3 commutator not central" : "";
  });
  EXPECT_GT(class3.load(), 0u);
}

TEST(GroupProperties, ProjectionIsHomomorphism)
{
  for_each_group(128, [](CatalogEntry const &e) -> std::string {
    auto const &g = e.group;
    std::vector<Subgroup> ns;
    if (g.order() <= 32) {
      ns = normal_subgroups(g);
    } else {
      ns.push_back(center(g));
      ns.push_back(derived_subgroup(g));
      for (unsigned n = 2; n <= 4; ++n)
        ns.push_back(hughes_thompson_subgroup(g, n));
    }
    for (auto const &nsub : ns) {
      auto q = quotient_group(g, nsub);
      if (q.group.order() * nsub.size() != g.order())
        return "quotient order";
      for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
          if (q.projection[g.mul(x, y)] != q.group.mul(q.projection[x], q.projection[y]))
            return "projection not multiplicative";
    }
    return "";
  });
}

TEST(GroupProperties, PowerDensityIsMultiplicativeOnProducts)
{
  auto es = entries_to(16);
  for (auto const *a : es)
    for (auto const *b : es) {
      if (a->group.order() * b->group.order() > 128 || a->group.order() == 1)
        continue;
      auto p = direct_product(a->group, b->group);
      for (unsigned n = 2; n <= 6; ++n)
        EXPECT_EQ(power_solution_set(p, n).density,
                  power_solution_set(a->group, n).density * power_solution_set(b->group, n).density)
          << a->spec.name() << " x " << b->spec.name() << " n=" << n;
    }
}

// automorphisms

TEST(AutomorphismProperties, CompleteGroupsAreClosed)
{
  for (auto const *e : entries_to(24)) {
    auto const &g = e->group;
    auto set = automorphism_group(g);
    ASSERT_TRUE(set.complete());
    std::set<Images> members;
    for (auto const &a : set.members)
      members.insert(images(a));
    EXPECT_EQ(members.size(), set.size()) << "duplicates in " << e->spec.name();

    // greedy generating subset, then compare the generated group with the set
    std::vector<Images> gens;
    std::set<Images> span = generated(gens, g.order());
    for (auto const &m : members)
      if (!span.count(m)) {
        gens.push_back(m);
        span = generated(gens, g.order());
      }
    EXPECT_EQ(span, members) << e->spec.name();
    for (auto const &a : set.members)
      EXPECT_TRUE(members.count(images(a.inverse())));

    // |Aut(G)| divides |G|!
    for (unsigned p = 2; p <= set.size(); ++p) {
      auto v = valuation(set.size(), p);
      if (v == 0 || !detail::is_prime(p))
        continue;
      unsigned fact = 0;
      for (std::size_t k = 2; k <= g.order(); ++k)
        fact += valuation(k, p);
      EXPECT_LE(v, fact) << e->spec.name();
    }
  }
}

TEST(AutomorphismProperties, OrderDividingNComposesToIdentity)
{
  for_each_group(48, [](CatalogEntry const &e) -> std::string {
    for (unsigned n = 1; n <= 8; ++n)
      for (auto const &a : automorphisms_of_order_dividing(e.group, n).members) {
        auto r = Automorphism::identity(e.group);
        for (unsigned k = 0; k < n; ++k)
          r = a.after(r);
        if (!r.is_identity())
          return "alpha^" + std::to_string(n) + " != id";
        if (!naive_is_hom(e.group, images(a)))
          return "not a homomorphism";
      }
    return "";
  });
}

TEST(AutomorphismProperties, ConjugationComposes)
{
  for (auto const *e : entries_to(24)) {
    auto const &g = e->group;
    std::vector<Automorphism> conj;
    for (Element c = 0; c < g.order(); ++c)
      conj.push_back(conjugation_automorphism(g, c));
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        ASSERT_EQ(conj[a].after(conj[b]), conj[g.mul(a, b)]) << e->spec.name();
  }
}

TEST(AutomorphismProperties, InducedMapCommutesWithProjection)
{
  for_each_group(24, [](CatalogEntry const &e) -> std::string {
    auto const &g = e.group;
    auto normals = normal_subgroups(g);
    auto auts = automorphisms_of_order_dividing(g, 12);
    for (auto const &nsub : normals) {
      auto q = quotient_group(g, nsub);
      for (auto const &a : auts.members) {
        if (!is_invariant(a, nsub))
          continue;
        auto bar = induced_quotient_automorphism(q, nsub, a);
        for (Element x = 0; x < g.order(); ++x)
          if (q.projection[a(x)] != bar(q.projection[x]))
            return "pi(alpha(x)) != bar(pi(x))";
      }
    }
    return "";
  });
}

// splitting

TEST(SplittingProperties, SolutionSetsContainIdentityAndAreInvariant)
{
  for_each_group(32, [](CatalogEntry const &e) -> std::string {
    auto const &g = e.group;
    for (unsigned n = 1; n <= 6; ++n)
      for (auto const &a : automorphisms_of_order_dividing(g, n).members) {
        auto s = twisted_solution_set(g, a, n);
        if (!s.contains(g.identity()))
          return "identity missing";
        for (auto x : s.members)
          if (!s.contains(a(x)))
            return "not alpha-invariant";
        if (s.members.size() != naive_twisted_count(g, images(a), n))
          return "count differs from naive";
      }
    return "";
  });
}

TEST(SplittingProperties, IdentityTwistIsPowerSet)
{
  for_each_group(64, [](CatalogEntry const &e) -> std::string {
    for (unsigned n = 1; n <= 8; ++n)
      if (twisted_solution_set(e.group, Automorphism::identity(e.group), n).members !=
          power_solution_set(e.group, n).members)
        return "n=" + std::to_string(n);
    return "";
  });
}

TEST(SplittingProperties, HughesThompsonNormalAndContainment)
{
  for_each_group(128, [](CatalogEntry const &e) -> std::string {
    for (unsigned n = 1; n <= 8; ++n) {
      auto h = hughes_thompson_subgroup(e.group, n);
      if (!is_normal(e.group, h))
        return "H_n not normal, n=" + std::to_string(n);
      if (!check_index_bound(e.group, n).containment_ok)
        return "containment, n=" + std::to_string(n);
    }
    return "";
  });
}

// constructions

TEST(ConstructionProperties, SemidirectProducts)
{
  for_each_group(24, [](CatalogEntry const &e) -> std::string {
    auto const &g = e.group;
    for (unsigned n = 1; n <= 6; ++n)
      for (auto const &a : automorphisms_of_order_dividing(g, n).members) {
        auto sp = semidirect_with_cyclic(g, a, n);
        auto const &p = sp.product;
        ElementSet base(p.order());
        for (auto x : sp.embedding)
          base.insert(x);
        Subgroup b(p, base);
        if (b.index() != n || !is_normal(p, b))
          return "base not normal of index n";
        auto t = sp.generator_t, t_inv = p.inv(t);
        TwistedNorm norm(g, a.images(), n);
        for (Element x = 0; x < g.order(); ++x) {
          if (p.conj(sp.embedding[x], t) != sp.embedding[a(x)])
            return "t^-1 x t != alpha(x)";
          auto y = p.mul(sp.embedding[x], t_inv);
          if (naive_power(p, y, n) != sp.embedding[norm(x)])
            return "(x t^-1)^n != norm(x)";
        }
      }
    return "";
  });
}

// catalog

TEST(CatalogProperties, EveryGroupRevalidates)
{
  for_each_group(64, [](CatalogEntry const &e) -> std::string {
    auto h = build_from_table(e.group.table());
    return h.table() == e.group.table() ? "" : "table changed";
  });
}

TEST(CatalogProperties, FingerprintSurvivesRelabelling)
{
  std::mt19937_64 rng(2024);
  for (auto const *e : entries_to(64)) {
    auto const &g = e->group;
    std::vector<Element> perm(g.order());
    std::iota(perm.begin(), perm.end(), Element{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<Element>> rows(g.order(), std::vector<Element>(g.order()));
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
    EXPECT_EQ(fingerprint(build_from_table(rows)), e->fingerprint) << e->spec.name();
  }
}

TEST(CatalogProperties, DistinctFingerprints)
{
  std::set<Fingerprint> seen;
  for (auto const &e : catalog_to(128).entries)
    EXPECT_TRUE(seen.insert(e.fingerprint).second) << e.spec.name();
}

// survey

TEST(SurveyProperties, NoPairStrictlyBetweenThreeQuartersAndOne)
{
  SurveyOptions o;
  o.n = 2;
  o.max_order = 48;
  auto r = survey_c_n(o);
  for (auto const &g : r.groups)
    for (auto const &c : g.classes)
      EXPECT_TRUE(c.density <= Density(3, 4) || c.density.is_one()) << g.spec;
}

TEST(SurveyProperties, FrontierMonotoneUnderCatalogInclusion)
{
  for (unsigned n : {2u, 3u, 5u, 6u}) {
    SurveyOptions o;
    o.n = n;
    o.max_order = 60;
    o.restriction = ClassRestriction::solvable;
    auto small = survey_c_n(o);
    o.restriction = ClassRestriction::all;
    auto big = survey_c_n(o);
    ASSERT_TRUE(big.frontier.best_density);
    if (small.frontier.best_density) {
      EXPECT_LE(*small.frontier.best_density, *big.frontier.best_density) << "n=" << n;
    }
  }
}
