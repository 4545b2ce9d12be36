#pragma once

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "automorphism.hpp"
#include "catalog.hpp"
#include "constructions.hpp"
#include "density.hpp"
#include "parallel.hpp"
#include "splitting.hpp"
#include "structure.hpp"

namespace twist {

enum class ClassRestriction { all, solvable };

inline std::string_view to_string(ClassRestriction c)
{ return c == ClassRestriction::all ? "all" : "solvable"; }

struct SurveyOptions
{
  unsigned n = 2;
  std::size_t max_order = 16;
  ClassRestriction restriction = ClassRestriction::all;
  unsigned p_group = 0;
  unsigned exponent_divides = 0;
  unsigned workers = 0;              ///< 0: TWIST_WORKERS or hardware
  AutSearchOptions aut;
  bool keep_pairs = false;           ///< record every (automorphism, density) pair

  CatalogOptions catalog_options() const
  {
    CatalogOptions c;
    c.max_order = max_order;
    c.solvable_only = restriction == ClassRestriction::solvable;
    c.p_group = p_group;
    c.exponent_divides = exponent_divides;
    c.order_cap = std::max<std::size_t>(512, max_order);
    return c;
  }
};

/// All automorphisms of one group sharing a (density, automorphism order).
struct DensityClass
{
  Density density;
  unsigned aut_order = 1;
  std::size_t count = 0;
  std::vector<Element> witness;  ///< lexicographically smallest member
};

struct PairRecord
{
  std::vector<Element> automorphism;
  unsigned aut_order = 1;
  Density density;
};

struct GroupSurvey
{
  std::string spec;
  std::string display;
  std::size_t order = 0;
  std::string fingerprint;
  bool solvable = true;
  Coverage coverage = Coverage::complete;
  std::size_t automorphisms = 0;
  std::vector<DensityClass> classes;  ///< sorted by (density, aut order)
  std::vector<PairRecord> pairs;      ///< only with keep_pairs

  /// Largest density strictly below 1, if any.
  DensityClass const *best_below_one() const
  {
    DensityClass const *best = nullptr;
    for (auto const &c : classes)
      if (c.density < Density(1, 1) && (!best || best->density < c.density))
        best = &c;
    return best;
  }
};

namespace detail {

inline std::uint64_t image_hash(std::span<Element const> img)
{
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : img) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

inline GroupSurvey survey_group(CatalogEntry const &e, unsigned n, AutSearchOptions const &aut,
                                bool keep_pairs)
{
  GroupSurvey s;
  s.spec = e.spec.name();
  s.display = e.spec.display();
  s.order = e.group.order();
  s.fingerprint = e.fingerprint.str();
  s.solvable = e.solvable;

  auto const &g = e.group;
  std::map<std::pair<Density, unsigned>, DensityClass> classes;
  std::vector<Element> buf;
  std::vector<std::uint64_t> hashes;
  auto visit = [&](std::span<Element const> img) {
    auto d = twisted_density(g, img, n);
    // order of the automorphism
    buf.assign(img.begin(), img.end());
    unsigned ord = 1;
    bool id = false;
    while (!id) {
      id = true;
      for (Element x = 0; x < g.order(); ++x)
        if (buf[x] != x) {
          id = false;
          break;
        }
      if (id)
        break;
      for (Element x = 0; x < g.order(); ++x)
        buf[x] = img[buf[x]];
      ++ord;
    }
    auto &c = classes[{d, ord}];
    if (c.count == 0 || std::lexicographical_compare(img.begin(), img.end(), c.witness.begin(),
                                                     c.witness.end()))
      c.witness.assign(img.begin(), img.end());
    c.density = d;
    c.aut_order = ord;
    ++c.count;
    ++s.automorphisms;
    hashes.push_back(image_hash(img));
    if (keep_pairs)
      s.pairs.push_back({{img.begin(), img.end()}, ord, d});
  };

  auto stats = for_each_automorphism(g, n, aut, visit);
  s.coverage = stats.coverage;
  if (s.coverage == Coverage::partial_budget) {
    // the budget cut the search short; make sure the fallback family is covered
    std::unordered_set<std::uint64_t> seen(hashes.begin(), hashes.end());
    for (auto const &a : fallback_family(g, n)) {
      if (seen.contains(image_hash(a.images())))
        continue;
      ++s.automorphisms;
      auto d = twisted_density(g, a.images(), n);
      auto &c = classes[{d, a.order()}];
      if (c.count == 0 || std::lexicographical_compare(a.images().begin(), a.images().end(),
                                                       c.witness.begin(), c.witness.end()))
        c.witness.assign(a.images().begin(), a.images().end());
      c.density = d;
      c.aut_order = a.order();
      ++c.count;
    }
  }
  for (auto &[k, c] : classes)
    s.classes.push_back(std::move(c));
  if (keep_pairs)
    std::sort(s.pairs.begin(), s.pairs.end(),
              [](auto const &a, auto const &b) { return a.automorphism < b.automorphism; });
  return s;
}

} // namespace detail

struct FrontierRecord
{
  unsigned n = 2;
  ClassRestriction restriction = ClassRestriction::all;
  std::optional<Density> best_density;  ///< empty: EmptyFrontier
  std::string witness_spec;
  std::string witness_display;
  std::vector<Element> witness_automorphism;
  unsigned witness_aut_order = 1;
  std::size_t orders_from = 1, orders_to = 1;
  std::string catalog_identity;
};

struct SurveyReport
{
  SurveyOptions options;
  std::string catalog_identity;
  std::size_t catalog_size = 0;
  std::size_t fingerprint_merges = 0;
  std::vector<GroupSurvey> groups;
  FrontierRecord frontier;
  unsigned workers = 1;
  double elapsed_seconds = 0;

  std::size_t pairs() const
  {
    std::size_t p = 0;
    for (auto const &g : groups)
      p += g.automorphisms;
    return p;
  }

  std::size_t partial_groups() const
  {
    return static_cast<std::size_t>(std::count_if(groups.begin(), groups.end(), [](auto const &g) {
      return g.coverage != Coverage::complete;
    }));
  }
};

/// Frontier over the groups in catalog order: ties keep the earliest group,
/// i.e. smallest order then fingerprint.
inline FrontierRecord frontier_of(std::vector<GroupSurvey> const &groups, unsigned n,
                                  ClassRestriction restriction)
{
  FrontierRecord f;
  f.n = n;
  f.restriction = restriction;
  for (auto const &g : groups) {
    auto const *c = g.best_below_one();
    if (!c)
      continue;
    if (!f.best_density || *f.best_density < c->density) {
      f.best_density = c->density;
      f.witness_spec = g.spec;
      f.witness_display = g.display;
      f.witness_automorphism = c->witness;
      f.witness_aut_order = c->aut_order;
    }
  }
  return f;
}

/// Surveys density of X_{n,alpha}(G) over catalog x {alpha : alpha^n = 1}.
/// Work is split over groups; results are merged in catalog order.
inline SurveyReport survey_catalog(Catalog const &cat, SurveyOptions const &opts)
{
  auto start = std::chrono::steady_clock::now();
  SurveyReport r;
  r.options = opts;
  r.catalog_identity = cat.identity();
  r.catalog_size = cat.entries.size();
  r.fingerprint_merges = cat.merged();
  r.workers = resolve_workers(opts.workers);
  r.groups = parallel_map<GroupSurvey>(cat.entries.size(), r.workers, [&](std::size_t i) {
    return detail::survey_group(cat.entries[i], opts.n, opts.aut, opts.keep_pairs);
  });
  r.frontier = frontier_of(r.groups, opts.n, opts.restriction);
  r.frontier.catalog_identity = r.catalog_identity;
  r.frontier.orders_from = 1;
  r.frontier.orders_to = opts.max_order;
  r.elapsed_seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline SurveyReport survey_c_n(SurveyOptions const &opts)
{ return survey_catalog(enumerate_catalog(opts.catalog_options()), opts); }

inline SurveyReport survey_c_n(unsigned n, std::size_t max_order,
                               ClassRestriction restriction = ClassRestriction::all)
{
  SurveyOptions o;
  o.n = n;
  o.max_order = max_order;
  o.restriction = restriction;
  return survey_c_n(o);
}

/// Re-evaluates every recorded witness; returns the first mismatch.
inline std::optional<std::string> recheck_witnesses(SurveyReport const &r)
{
  for (auto const &g : r.groups) {
    auto grp = generate_family(GroupSpec::parse(g.spec), std::max<std::size_t>(512, g.order));
    for (auto const &c : g.classes) {
      auto a = Automorphism::from_images(grp, c.witness);
      if (a.order() != c.aut_order || r.options.n % a.order() != 0)
        return g.spec + ": witness order mismatch";
      if (twisted_density(grp, c.witness, r.options.n) != c.density)
        return g.spec + ": witness density mismatch";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// n = 3 threshold and structure checks

struct ThresholdViolation
{
  std::string spec;
  std::vector<Element> automorphism;
  unsigned aut_order = 1;
  Density density;
  std::size_t count = 0;  ///< automorphisms in the same class
};

struct ThresholdReport
{
  SurveyReport survey;
  std::vector<ThresholdViolation> above_seven_eighths;   ///< density in (7/8, 1)
  std::vector<ThresholdViolation> above_fifteen_16ths;   ///< density in (15/16, 1)
  std::size_t pairs_checked = 0;
  std::size_t partial_groups = 0;

  bool ok() const { return above_seven_eighths.empty() && above_fifteen_16ths.empty(); }
};

inline ThresholdReport threshold_from_survey(SurveyReport survey)
{
  ThresholdReport t;
  for (auto const &g : survey.groups)
    for (auto const &c : g.classes) {
      if (!(c.density < Density(1, 1)))
        continue;
      ThresholdViolation v{g.spec, c.witness, c.aut_order, c.density, c.count};
      if (Density(7, 8) < c.density)
        t.above_seven_eighths.push_back(v);
      if (Density(15, 16) < c.density)
        t.above_fifteen_16ths.push_back(v);
    }
  t.pairs_checked = survey.pairs();
  t.partial_groups = survey.partial_groups();
  t.survey = std::move(survey);
  return t;
}

/// All (G, alpha) with alpha^3 = 1 whose density lands in (7/8, 1) or (15/16, 1).
inline ThresholdReport verify_threshold_theorem(SurveyOptions opts)
{
  opts.n = 3;
  return threshold_from_survey(survey_c_n(opts));
}

inline ThresholdReport verify_threshold_theorem(std::size_t max_order)
{
  SurveyOptions o;
  o.max_order = max_order;
  return verify_threshold_theorem(o);
}

struct StructureCheck
{
  std::string spec;
  std::size_t order = 0;
  std::size_t qualifying = 0;        ///< automorphisms with X_{3,alpha}(G) = G
  Coverage coverage = Coverage::complete;
  bool two_engel = true;
  std::optional<unsigned> nilpotency_class;
  bool swap_identity = true;         ///< [a,b,c] = [a,c,b]^{-1}
  bool weight3_central = true;

  bool ok() const
  {
    return qualifying == 0 ||
           (two_engel && nilpotency_class && *nilpotency_class <= 3 && swap_identity &&
            weight3_central);
  }
};

struct StructureReport
{
  std::vector<StructureCheck> groups;
  std::size_t vacuous = 0;  ///< groups without a qualifying automorphism
  std::string catalog_identity;

  bool ok() const
  {
    return std::all_of(groups.begin(), groups.end(), [](auto const &g) { return g.ok(); });
  }
};

inline StructureCheck structure_check(FiniteGroup const &g, std::string spec, std::size_t qualifying,
                                      Coverage coverage)
{
  StructureCheck s;
  s.spec = std::move(spec);
  s.order = g.order();
  s.qualifying = qualifying;
  s.coverage = coverage;
  if (qualifying == 0)
    return s;
  s.two_engel = is_two_engel(g);
  s.nilpotency_class = lower_central_series(g).nilpotency_class;
  s.swap_identity = !commutator_swap_violation(g);
  if (s.nilpotency_class && *s.nilpotency_class <= 3)
    s.weight3_central = !weight_three_centrality_violation(g);
  return s;
}

/// For each group with some alpha^3 = 1 and X_{3,alpha}(G) = G, checks
/// 2-Engel, class <= 3 and the commutator swap identity.
inline StructureReport verify_splitting_structure(SurveyReport const &survey)
{
  StructureReport r;
  r.catalog_identity = survey.catalog_identity;
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < survey.groups.size(); ++i) {
    auto const &g = survey.groups[i];
    std::size_t q = 0;
    for (auto const &c : g.classes)
      if (c.density.is_one())
        q += c.count;
    if (q == 0)
      ++r.vacuous;
    todo.push_back(q);
  }
  r.groups = parallel_map<StructureCheck>(survey.groups.size(), survey.workers, [&](std::size_t i) {
    auto const &g = survey.groups[i];
    if (todo[i] == 0)
      return StructureCheck{g.spec, g.order, 0, g.coverage, true, std::nullopt, true, true};
    auto grp = generate_family(GroupSpec::parse(g.spec), std::max<std::size_t>(512, g.order));
    return structure_check(grp, g.spec, todo[i], g.coverage);
  });
  return r;
}

inline StructureReport verify_splitting_structure(SurveyOptions opts)
{
  opts.n = 3;
  return verify_splitting_structure(survey_c_n(opts));
}

inline StructureReport verify_splitting_structure(std::size_t max_order)
{
  SurveyOptions o;
  o.max_order = max_order;
  return verify_splitting_structure(o);
}

// ---------------------------------------------------------------------------
// catalog sweeps for the construction checks

struct SweepTally
{
  std::size_t tuples = 0;            ///< (G, alpha, n) examined
  std::size_t checks = 0;            ///< individual comparisons
  std::size_t failures = 0;
  std::size_t family_premises = 0;   ///< quotient family with trivial intersection
  std::size_t family_failures = 0;

  SweepTally &operator+=(SweepTally const &o)
  {
    tuples += o.tuples;
    checks += o.checks;
    failures += o.failures;
    family_premises += o.family_premises;
    family_failures += o.family_failures;
    return *this;
  }
};

/// One catalog group at one n.
struct SweepRecord
{
  std::string spec;
  unsigned n = 1;
  Coverage coverage = Coverage::complete;
  SweepTally tally;
  std::vector<nlohmann::json> failing;  ///< full inputs of every failed check
};

struct SweepReport
{
  std::string kind;
  std::string catalog_identity;
  std::vector<SweepRecord> records;

  SweepTally total() const
  {
    SweepTally t;
    for (auto const &r : records)
      t += r.tally;
    return t;
  }

  std::size_t partial() const
  {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](auto const &r) {
      return r.coverage != Coverage::complete;
    }));
  }

  bool ok() const
  {
    auto t = total();
    return t.failures == 0 && t.family_failures == 0;
  }
};

namespace detail {

template<typename PerGroup>
SweepReport sweep(std::string kind, Catalog const &cat, unsigned workers, PerGroup &&per_group)
{
  SweepReport rep;
  rep.kind = std::move(kind);
  rep.catalog_identity = cat.identity();
  auto res = parallel_map<std::vector<SweepRecord>>(cat.entries.size(), resolve_workers(workers),
                                                    [&](std::size_t i) {
    return per_group(cat.entries[i]);
  });
  for (auto &rs : res)
    for (auto &r : rs)
      rep.records.push_back(std::move(r));
  return rep;
}

inline nlohmann::json images_of(Automorphism const &a)
{ return std::vector<Element>(a.images().begin(), a.images().end()); }

} // namespace detail

/// Coset relation for every catalog group, every alpha with alpha^n = 1, n in ns.
inline SweepReport relation_sweep(Catalog const &cat, std::vector<unsigned> const &ns,
                                  unsigned workers = 0, AutSearchOptions const &aut = {})
{
  return detail::sweep("coset-relation", cat, workers, [&](CatalogEntry const &e) {
    std::vector<SweepRecord> out;
    for (auto n : ns) {
      SweepRecord r{e.spec.name(), n, Coverage::complete, {}, {}};
      auto set = automorphisms_of_order_dividing(e.group, n, aut);
      r.coverage = set.coverage;
      for (auto const &a : set.members) {
        ++r.tally.tuples;
        ++r.tally.checks;
        auto rel = verify_coset_relation(e.group, a, n);
        if (!rel.equal) {
          ++r.tally.failures;
          r.failing.push_back({{"automorphism", detail::images_of(a)},
                               {"lhs_size", rel.lhs_size},
                               {"rhs_size", rel.rhs_size}});
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  });
}

/// Quotient monotonicity over every alpha-invariant normal subgroup, plus the
/// trivial-intersection family statement, for every catalog group and n in ns.
inline SweepReport monotonicity_sweep(Catalog const &cat, std::vector<unsigned> const &ns,
                                      unsigned workers = 0, AutSearchOptions const &aut = {})
{
  return detail::sweep("quotient-monotonicity", cat, workers, [&](CatalogEntry const &e) {
    auto const &g = e.group;
    auto normals = normal_subgroups(g);
    std::vector<Quotient> quotients;
    for (auto const &nsub : normals)
      quotients.push_back(quotient_group(g, nsub));
    std::vector<SweepRecord> out;
    for (auto n : ns) {
      SweepRecord r{e.spec.name(), n, Coverage::complete, {}, {}};
      auto set = automorphisms_of_order_dividing(g, n, aut);
      r.coverage = set.coverage;
      for (auto const &a : set.members) {
        ++r.tally.tuples;
        for (std::size_t k = 0; k < normals.size(); ++k) {
          if (!is_invariant(a, normals[k]))
            continue;
          ++r.tally.checks;
          auto m = verify_quotient_monotonicity(g, a, n, quotients[k], normals[k]);
          if (!m.ok) {
            ++r.tally.failures;
            r.failing.push_back({{"automorphism", detail::images_of(a)},
                                 {"normal_subgroup", normals[k].members()},
                                 {"density_g", m.density_g.str()},
                                 {"density_q", m.density_q.str()}});
          }
        }
        auto fam = verify_quotient_family(g, a, n, normals);
        r.tally.family_premises += fam.premise;
        if (!fam.ok) {
          ++r.tally.family_failures;
          r.failing.push_back({{"automorphism", detail::images_of(a)},
                               {"family_size", fam.family_size},
                               {"whole", fam.whole}});
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  });
}

/// Containment of G minus H_n(G) in X_n(G) and the index bound for every catalog group.
inline SweepReport hughes_sweep(Catalog const &cat, std::vector<unsigned> const &ns,
                                unsigned workers = 0)
{
  return detail::sweep("hughes-thompson", cat, workers, [&](CatalogEntry const &e) {
    std::vector<SweepRecord> out;
    for (auto n : ns) {
      SweepRecord r{e.spec.name(), n, Coverage::complete, {}, {}};
      auto b = check_index_bound(e.group, n);
      r.tally.tuples = 1;
      r.tally.checks = 1 + !b.vacuous;
      r.tally.failures = !b.containment_ok + !b.bound_ok;
      if (r.tally.failures)
        r.failing.push_back({{"hn_order", b.hn_order},
                             {"hn_index", b.hn_index},
                             {"density", b.density.str()},
                             {"containment_ok", b.containment_ok},
                             {"bound_ok", b.bound_ok}});
      out.push_back(std::move(r));
    }
    return out;
  });
}

inline nlohmann::json to_json(SweepReport const &rep)
{
  nlohmann::json j;
  j["kind"] = rep.kind;
  j["catalog_identity"] = rep.catalog_identity;
  auto t = rep.total();
  j["tuples"] = t.tuples;
  j["checks"] = t.checks;
  j["failures"] = t.failures;
  if (rep.kind == "quotient-monotonicity") {
    j["family_premises"] = t.family_premises;
    j["family_failures"] = t.family_failures;
  }
  j["partial_coverage_records"] = rep.partial();
  auto &rs = j["records"] = nlohmann::json::array();
  for (auto const &r : rep.records)
    rs.push_back({{"spec", r.spec},
                  {"n", r.n},
                  {"automorphism_coverage", to_string(r.coverage)},
                  {"tuples", r.tally.tuples},
                  {"checks", r.tally.checks},
                  {"failures", r.tally.failures},
                  {"failing", r.failing},
                  {"ok", r.tally.failures == 0 && r.tally.family_failures == 0}});
  j["ok"] = rep.ok();
  return j;
}

// ---------------------------------------------------------------------------
// measure inequalities on random subsets

struct LemmaSuiteReport
{
  std::uint64_t seed = 0;
  std::vector<std::string> intersection_groups;
  std::size_t intersection_draws = 0, intersection_failures = 0;
  std::vector<std::pair<std::string, std::size_t>> coset_pairs;  ///< (group, |N|)
  std::size_t coset_draws = 0, coset_failures = 0;

  bool ok() const { return intersection_failures == 0 && coset_failures == 0; }
};

/// Runs the intersection bound on `groups` catalog groups (order >= 4) and
/// the coset inequalities on `groups` (G, N) pairs, N a proper nontrivial
/// normal subgroup, each pair drawn from a different group.
inline LemmaSuiteReport lemma_suite(std::uint64_t seed, std::size_t groups,
                                    std::size_t intersection_draws, std::size_t coset_draws,
                                    std::size_t max_order = 32)
{
  CatalogOptions co;
  co.max_order = max_order;
  auto cat = enumerate_catalog(co);
  std::mt19937_64 rng(seed);
  LemmaSuiteReport r;
  r.seed = seed;
  for (auto const &e : cat.entries) {
    if (r.intersection_groups.size() == groups)
      break;
    if (e.group.order() < 4)
      continue;
    r.intersection_groups.push_back(e.spec.name());
    auto t = large_intersection_trials(e.group, rng, intersection_draws);
    r.intersection_draws += t.draws;
    r.intersection_failures += t.failures;
  }
  for (auto const &e : cat.entries) {
    if (r.coset_pairs.size() == groups)
      break;
    for (auto const &nsub : normal_subgroups(e.group)) {
      if (nsub.is_trivial() || nsub.is_whole())
        continue;
      r.coset_pairs.emplace_back(e.spec.name(), nsub.size());
      auto t = coset_density_trials(e.group, nsub, rng, coset_draws);
      r.coset_draws += t.draws;
      r.coset_failures += t.failures;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// report documents

namespace detail {

inline nlohmann::json images_json(std::vector<Element> const &v) { return v; }

inline std::string utc_now()
{
  auto t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace detail

inline nlohmann::json to_json(FrontierRecord const &f)
{
  nlohmann::json j;
  j["n"] = f.n;
  j["class_restriction"] = to_string(f.restriction);
  j["orders_scanned"] = {f.orders_from, f.orders_to};
  j["catalog_identity"] = f.catalog_identity;
  if (f.best_density) {
    j["status"] = "ok";
    j["best_density"] = f.best_density->str();
    j["witness"] = {{"spec", f.witness_spec},
                    {"display", f.witness_display},
                    {"automorphism", f.witness_automorphism},
                    {"automorphism_order", f.witness_aut_order}};
  } else {
    j["status"] = "EmptyFrontier";
    j["best_density"] = nullptr;
    j["witness"] = nullptr;
  }
  j["note"] = "lower bound over the named catalog only";
  return j;
}

inline nlohmann::json to_json(GroupSurvey const &g)
{
  nlohmann::json j;
  j["spec"] = g.spec;
  j["display"] = g.display;
  j["order"] = g.order;
  j["fingerprint"] = g.fingerprint;
  j["solvable"] = g.solvable;
  j["automorphism_coverage"] = to_string(g.coverage);
  j["automorphisms"] = g.automorphisms;
  auto &cls = j["densities"] = nlohmann::json::array();
  for (auto const &c : g.classes)
    cls.push_back({{"density", c.density.str()},
                   {"automorphism_order", c.aut_order},
                   {"count", c.count},
                   {"witness", c.witness}});
  if (!g.pairs.empty()) {
    auto &ps = j["pairs"] = nlohmann::json::array();
    for (auto const &p : g.pairs)
      ps.push_back({{"automorphism", p.automorphism},
                    {"automorphism_order", p.aut_order},
                    {"density", p.density.str()}});
  }
  return j;
}

/// The "run" member holds the only non-deterministic fields.
inline nlohmann::json to_json(SurveyReport const &r)
{
  nlohmann::json j;
  j["kind"] = "survey";
  j["n"] = r.options.n;
  j["max_order"] = r.options.max_order;
  j["class_restriction"] = to_string(r.options.restriction);
  j["p_group"] = r.options.p_group;
  j["automorphism_order_cap"] = r.options.aut.order_cap;
  j["automorphism_budget"] = r.options.aut.max_results;
  j["catalog"] = {{"identity", r.catalog_identity},
                  {"groups", r.catalog_size},
                  {"fingerprint_merges", r.fingerprint_merges}};
  j["frontier"] = to_json(r.frontier);
  j["pairs"] = r.pairs();
  j["partial_coverage_groups"] = r.partial_groups();
  auto &gs = j["groups"] = nlohmann::json::array();
  for (auto const &g : r.groups)
    gs.push_back(to_json(g));
  j["run"] = {{"workers", r.workers},
              {"elapsed_seconds", r.elapsed_seconds},
              {"finished", detail::utc_now()}};
  return j;
}

inline nlohmann::json to_json(ThresholdViolation const &v)
{
  return {{"spec", v.spec},
          {"automorphism", v.automorphism},
          {"automorphism_order", v.aut_order},
          {"density", v.density.str()},
          {"class_size", v.count}};
}

inline nlohmann::json to_json(ThresholdReport const &t)
{
  auto j = to_json(t.survey);
  j["kind"] = "threshold";
  auto &a = j["violations_above_7_8"] = nlohmann::json::array();
  for (auto const &v : t.above_seven_eighths)
    a.push_back(to_json(v));
  auto &b = j["violations_above_15_16"] = nlohmann::json::array();
  for (auto const &v : t.above_fifteen_16ths)
    b.push_back(to_json(v));
  j["pairs_checked"] = t.pairs_checked;
  j["coverage_note"] = t.partial_groups ? "checked on covered automorphisms" : "complete";
  j["ok"] = t.ok();
  return j;
}

inline nlohmann::json to_json(StructureReport const &r)
{
  nlohmann::json j;
  j["kind"] = "structure";
  j["catalog_identity"] = r.catalog_identity;
  j["vacuous_groups"] = r.vacuous;
  auto &gs = j["groups"] = nlohmann::json::array();
  for (auto const &g : r.groups) {
    if (g.qualifying == 0)
      continue;
    gs.push_back({{"spec", g.spec},
                  {"order", g.order},
                  {"qualifying_automorphisms", g.qualifying},
                  {"automorphism_coverage", to_string(g.coverage)},
                  {"two_engel", g.two_engel},
                  {"nilpotency_class", g.nilpotency_class ? nlohmann::json(*g.nilpotency_class)
                                                          : nlohmann::json("NotNilpotent")},
                  {"swap_identity", g.swap_identity},
                  {"weight3_central", g.weight3_central},
                  {"ok", g.ok()}});
  }
  j["ok"] = r.ok();
  return j;
}

/// Drops run metadata so two reports can be compared byte for byte.
inline nlohmann::json scrub(nlohmann::json j)
{
  j.erase("run");
  return j;
}

/// group, order, automorphism order, density, flags; one row per density class.
inline std::string to_csv(SurveyReport const &r)
{
  std::ostringstream os;
  os << "group,order,automorphism_order,density,count,flags\n";
  for (auto const &g : r.groups)
    for (auto const &c : g.classes) {
      std::string flags;
      if (g.coverage != Coverage::complete)
        flags += "partial;";
      if (c.density.is_one())
        flags += "full;";
      if (r.frontier.best_density && c.density == *r.frontier.best_density)
        flags += "frontier;";
      if (!flags.empty())
        flags.pop_back();
      os << '"' << g.spec << "\"," << g.order << "," << c.aut_order << "," << c.density.str()
         << "," << c.count << "," << flags << "\n";
    }
  return os.str();
}

} // namespace twist
