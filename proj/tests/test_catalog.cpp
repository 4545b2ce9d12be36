#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace twist;
using namespace testing_support;
using nlohmann::json;

namespace {

Catalog catalog_to(std::size_t max_order)
{
  CatalogOptions o;
  o.max_order = max_order;
  return enumerate_catalog(o);
}

/// Relabels g by a permutation of its elements, keeping the identity at 0.
FiniteGroup relabel(FiniteGroup const &g, std::vector<Element> const &perm)
{
  std::vector<std::vector<Element>> rows(g.order(), std::vector<Element>(g.order()));
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
  return build_from_table(rows);
}

} // namespace

// families

TEST(Family, CyclicOneIsTrivial)
{
  auto g = spec("cyclic(1)");
  EXPECT_EQ(g.order(), 1u);
}

TEST(Family, DicyclicTwoIsQuaternion)
{
  auto g = spec("dicyclic(2)");
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(naive_involutions(g), 1u);
  EXPECT_FALSE(g.is_abelian());
}

TEST(Family, ExtraspecialExponentP)
{
  auto g = spec("extraspecial(3,exponent_p)");
  EXPECT_EQ(g.order(), 27u);
  EXPECT_EQ(g.exponent(), 3u);
  EXPECT_EQ(center(g).size(), 3u);
  auto h = spec("extraspecial(3,exponent_p2)");
  EXPECT_EQ(h.order(), 27u);
  EXPECT_EQ(h.exponent(), 9u);
  EXPECT_EQ(center(h).size(), 3u);
  auto big = spec("extraspecial(3,exponent_p,2)");
  EXPECT_EQ(big.order(), 243u);
  EXPECT_EQ(center(big).size(), 3u);
  EXPECT_EQ(lower_central_series(big).nilpotency_class, 2u);
}

TEST(Family, Orders)
{
  std::pair<char const *, std::size_t> cases[] = {
    {"cyclic(12)", 12},        {"abelian(2,4)", 8},     {"elementary_abelian(3,3)", 27},
    {"dihedral(6)", 12},       {"dicyclic(3)", 12},     {"symmetric(4)", 24},
    {"alternating(5)", 60},    {"product(symmetric(3),cyclic(2))", 12},
    {"semidirect(cyclic(7),power(2),3)", 21},
    {"semidirect(elementary_abelian(2,2),shift,2)", 8},
  };
  for (auto [s, order] : cases) {
    EXPECT_EQ(spec(s).order(), order) << s;
    EXPECT_EQ(spec_order(GroupSpec::parse(s)), static_cast<std::int64_t>(order)) << s;
  }
}

TEST(Family, InvalidParameters)
{
  EXPECT_THROW(spec("extraspecial(2,exponent_p)"), Error);
  EXPECT_THROW(spec("semidirect(cyclic(7),power(3),2)"), Error);
  EXPECT_THROW(generate_family(GroupSpec::parse("symmetric(7)"), 1000), Error);
}

// specs

TEST(Spec, RoundTrip)
{
  for (auto s : {"cyclic(5)", "product(dihedral(4),cyclic(3))", "extraspecial(5,exponent_p2)",
                 "semidirect(cyclic(7),power(2),3)",
                 "semidirect(elementary_abelian(2,3),shift,3)", "abelian(2,2,4)"})
    EXPECT_EQ(GroupSpec::parse(s).name(), s);
}

TEST(Spec, DisplayNames)
{
  EXPECT_EQ(GroupSpec::parse("cyclic(6)").display(), "C6");
  EXPECT_EQ(GroupSpec::parse("elementary_abelian(2,3)").display(), "C2^3");
  EXPECT_EQ(GroupSpec::parse("dihedral(4)").display(), "D8");
}

TEST(Spec, Errors)
{
  try {
    GroupSpec::parse("frobenius(21)");
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), Errc::unknown_family);
  }
  for (auto bad : {"cyclic(", "cyclic(3", "cyclic(x)", "product(cyclic(2))", ""}) {
    try {
      GroupSpec::parse(bad);
      ADD_FAILURE() << bad;
    } catch (Error const &e) {
      EXPECT_EQ(e.code(), Errc::parse_error) << bad;
    }
  }
}

// fingerprints

TEST(Fingerprint, InvariantUnderRelabelling)
{
  auto g = spec("dicyclic(3)");
  std::vector<Element> perm(g.order());
  std::iota(perm.begin(), perm.end(), Element{0});
  std::reverse(perm.begin() + 1, perm.end());
  auto h = relabel(g, perm);
  EXPECT_EQ(fingerprint(g), fingerprint(h));
}

TEST(Fingerprint, SeparatesGroupsWithEqualOrderStatistics)
{
  // same order histogram, class sizes, center and derived subgroup
  auto a = spec("semidirect(cyclic(4),power(3),4)"), b = spec("product(cyclic(2),dicyclic(2))");
  auto fa = fingerprint(a), fb = fingerprint(b);
  EXPECT_EQ(fa.order_histogram, fb.order_histogram);
  EXPECT_EQ(fa.class_sizes, fb.class_sizes);
  EXPECT_NE(fa, fb);
}

TEST(Fingerprint, SeparatesSmallGroups)
{
  EXPECT_NE(fingerprint(spec("cyclic(4)")), fingerprint(spec("elementary_abelian(2,2)")));
  auto d8 = fingerprint(spec("dihedral(4)")), q8 = fingerprint(spec("dicyclic(2)"));
  EXPECT_NE(d8, q8);
  EXPECT_EQ(naive_involutions(spec("dihedral(4)")), 5u);
  EXPECT_EQ(naive_involutions(spec("dicyclic(2)")), 1u);
}

// catalog

TEST(Catalog, OrderOneIsTrivialOnly)
{
  auto c = catalog_to(1);
  ASSERT_EQ(c.entries.size(), 1u);
  EXPECT_EQ(c.entries[0].group.order(), 1u);
}

TEST(Catalog, AllGroupsUpToSix)
{
  auto c = catalog_to(6);
  ASSERT_EQ(c.entries.size(), 8u);
  std::multiset<std::size_t> orders;
  for (auto const &e : c.entries)
    orders.insert(e.group.order());
  EXPECT_EQ(orders, (std::multiset<std::size_t>{1, 2, 3, 4, 4, 5, 6, 6}));
}

TEST(Catalog, KnownCountsOfSmallOrders)
{
  // isomorphism classes of order 1..15 are all reached; of the 14 groups of
  // order 16 the central product C4 o D8 is not generated by any family
  std::size_t want[] = {0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 13};
  auto c = catalog_to(16);
  std::vector<std::size_t> got(17, 0);
  for (auto const &e : c.entries)
    ++got[e.group.order()];
  for (std::size_t n = 1; n <= 16; ++n)
    EXPECT_EQ(got[n], want[n]) << "order " << n;
}

TEST(Catalog, AtLeastTwentyFingerprintsUpToSixteen)
{
  auto c = catalog_to(16);
  std::set<Fingerprint> fps;
  for (auto const &e : c.entries)
    fps.insert(e.fingerprint);
  EXPECT_GE(fps.size(), 20u);
  EXPECT_EQ(fps.size(), c.entries.size());
  EXPECT_EQ(c.entries.size(), 41u);
}

TEST(Catalog, SolvableOnlyExcludesA5)
{
  CatalogOptions o;
  o.max_order = 60;
  auto all = enumerate_catalog(o);
  o.solvable_only = true;
  auto solv = enumerate_catalog(o);
  EXPECT_EQ(all.entries.size(), solv.entries.size() + 1);
  for (auto const &e : solv.entries)
    EXPECT_TRUE(e.solvable) << e.name();
  auto a5 = fingerprint(spec("alternating(5)"));
  EXPECT_TRUE(std::none_of(solv.entries.begin(), solv.entries.end(),
                           [&](auto const &e) { return e.fingerprint == a5; }));
}

TEST(Catalog, PGroupAndExponentFilters)
{
  CatalogOptions o;
  o.max_order = 32;
  o.p_group = 2;
  auto c = enumerate_catalog(o);
  for (auto const &e : c.entries) {
    auto n = e.group.order();
    EXPECT_EQ(n & (n - 1), 0u) << e.name();
  }
  o.p_group = 0;
  o.exponent_divides = 2;
  auto d = enumerate_catalog(o);
  EXPECT_EQ(d.entries.size(), 6u);  // C2^k for k = 0..5
}

TEST(Catalog, Deterministic)
{
  auto a = catalog_to(24), b = catalog_to(24);
  EXPECT_EQ(a.identity(), b.identity());
  EXPECT_EQ(a.manifest(), b.manifest());
  EXPECT_NE(a.identity(), catalog_to(16).identity());
}

TEST(Catalog, SortedByOrder)
{
  auto c = catalog_to(32);
  EXPECT_TRUE(std::is_sorted(c.entries.begin(), c.entries.end(), [](auto const &a, auto const &b) {
    return a.group.order() < b.group.order();
  }));
}

TEST(Catalog, RejectsOrderAboveCap)
{
  CatalogOptions o;
  o.max_order = 600;
  EXPECT_THROW(enumerate_catalog(o), Error);
}

// import / export

TEST(ImportExport, RoundTrip)
{
  auto g = spec("dicyclic(3)");
  auto doc = export_group(g, "dicyclic(3)");
  EXPECT_EQ(doc["name"], "dicyclic(3)");
  auto h = import_group(doc);
  EXPECT_EQ(h.table(), g.table());
  EXPECT_EQ(h.labels(), g.labels());
  EXPECT_EQ(fingerprint(h), fingerprint(g));
}

TEST(ImportExport, NonLatinTableIsValidationError)
{
  json doc = {{"table", {{0, 1}, {1, 1}}}};
  try {
    import_group(doc);
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), Errc::validation_error);
  }
}

TEST(ImportExport, GeneratorDocument)
{
  json doc = {{"generators", {{1, 0, 2}, {1, 2, 0}}}};
  auto g = import_group(doc);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(fingerprint(g), fingerprint(s3()));
}

TEST(ImportExport, MalformedDocuments)
{
  for (auto const &doc : {json::array(), json{{"name", "x"}},
                          json{{"table", {{0}}}, {"generators", json::array()}},
                          json{{"table", "abc"}}}) {
    try {
      import_group(doc);
      ADD_FAILURE() << doc.dump();
    } catch (Error const &e) {
      EXPECT_EQ(e.code(), Errc::parse_error) << doc.dump();
    }
  }
}

TEST(ImportExport, SampleFile)
{
  auto g = load_group_file(std::string(TWIST_SAMPLES_DIR) + "/s3.grp");
  EXPECT_EQ(fingerprint(g), fingerprint(s3()));
}

TEST(ImportExport, Automorphism)
{
  auto g = spec("cyclic(5)");
  auto a = import_automorphism(g, json{0, 2, 4, 1, 3});
  EXPECT_EQ(a.order(), 4u);
  auto doc = export_automorphism(a, "cyclic(5)");
  EXPECT_EQ(import_automorphism(g, doc), a);
  try {
    import_automorphism(g, json{0, 1, 1, 3, 4});
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), Errc::not_automorphism);
  }
}
