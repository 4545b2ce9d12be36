#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "automorphism.hpp"
#include "catalog.hpp"
#include "constructions.hpp"
#include "splitting.hpp"
#include "survey.hpp"

namespace twist {

namespace cli {

enum Exit : int { ok = 0, failed = 1, usage = 2 };

struct Named
{
  std::string name;
  FiniteGroup group;
};

/// A path to a group file, or a group spec string.
inline Named resolve_group(std::string const &arg, std::size_t cap = 512)
{
  if (std::filesystem::is_regular_file(arg)) {
    auto doc = read_json_file(arg);
    auto g = import_group(doc, cap);
    auto name = doc.value("name", std::filesystem::path(arg).stem().string());
    return {name, std::move(g)};
  }
  auto spec = GroupSpec::parse(arg);
  return {spec.name(), generate_family(spec, cap)};
}

/// A path to an automorphism file, or a comma/space separated image list.
/// Empty means the identity.
inline Automorphism resolve_automorphism(FiniteGroup const &g, std::string const &arg)
{
  if (arg.empty())
    return Automorphism::identity(g);
  if (std::filesystem::is_regular_file(arg))
    return import_automorphism(g, read_json_file(arg));
  std::vector<Element> images;
  std::string tok;
  std::istringstream in(arg);
  for (char c; in.get(c);) {
    if (c == ',' || c == ' ' || c == '[' || c == ']') {
      if (!tok.empty())
        images.push_back(static_cast<Element>(std::stoul(tok)));
      tok.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok += c;
    } else {
      throw Error(Errc::parse_error, "bad automorphism image list '" + arg + "'");
    }
  }
  if (!tok.empty())
    images.push_back(static_cast<Element>(std::stoul(tok)));
  return Automorphism::from_images(g, std::move(images));
}

inline void write_text(std::string const &path, std::string const &text)
{
  std::ofstream out(path);
  if (!out)
    throw Error(Errc::invalid_argument, "cannot write " + path);
  out << text;
}

inline void write_json(std::string const &path, nlohmann::json const &doc)
{ write_text(path, doc.dump(2) + "\n"); }

inline void error_record(std::ostream &err, std::string_view kind, std::string const &message)
{
  err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
}

struct SurveyFlags
{
  unsigned n = 2;
  std::size_t max_order = 16;
  bool solvable_only = false;
  unsigned p_group = 0;
  unsigned exponent = 0;
  unsigned workers = 0;
  std::size_t aut_cap = 256;
  std::size_t aut_budget = 2'000'000;
  std::string out;
  std::string csv;
  bool pairs = false;

  void add_to(CLI::App *cmd, bool with_n)
  {
    if (with_n)
      cmd->add_option("--n", n, "exponent n")->check(CLI::Range(1u, 64u));
    cmd->add_option("--max-order", max_order, "largest catalog group order")
      ->check(CLI::Range(std::size_t{1}, std::size_t{512}));
    cmd->add_flag("--solvable-only", solvable_only, "restrict to solvable groups");
    cmd->add_option("--p-group", p_group, "restrict to p-groups for this prime");
    cmd->add_option("--exponent-divides", exponent, "restrict to groups whose exponent divides this");
    cmd->add_option("--workers", workers, "worker threads (default: TWIST_WORKERS or all cores)");
    cmd->add_option("--aut-cap", aut_cap, "largest group whose automorphisms are enumerated");
    cmd->add_option("--aut-budget", aut_budget, "automorphisms enumerated per group before the search stops");
    cmd->add_option("--out", out, "write the JSON report here");
    cmd->add_option("--csv", csv, "write the summary CSV here");
    cmd->add_flag("--pairs", pairs, "list every (automorphism, density) pair in the report");
  }

  SurveyOptions options() const
  {
    SurveyOptions o;
    o.n = n;
    o.max_order = max_order;
    o.restriction = solvable_only ? ClassRestriction::solvable : ClassRestriction::all;
    o.p_group = p_group;
    o.exponent_divides = exponent;
    o.workers = workers;
    o.aut.order_cap = aut_cap;
    o.aut.max_results = aut_budget;
    o.keep_pairs = pairs;
    return o;
  }
};

} // namespace cli

/// Entry point for the twist command line. Returns the process exit code.
inline int run_cli(int argc, char const *const *argv, std::ostream &out = std::cout,
                   std::ostream &err = std::cerr)
{
  using namespace cli;
  CLI::App app{"Twisted power sets of finite groups: densities, surveys and checks", "twist"};
  app.require_subcommand(1);

  // survey
  SurveyFlags survey_flags;
  auto *survey = app.add_subcommand("survey", "frontier of X_{n,alpha} densities below 1 over the catalog");
  survey_flags.add_to(survey, true);

  SurveyFlags thr_flags;
  thr_flags.max_order = 100;
  auto *threshold = app.add_subcommand("verify-threshold", "n = 3: no density in (7/8, 1) or (15/16, 1)");
  thr_flags.add_to(threshold, false);

  SurveyFlags struct_flags;
  struct_flags.max_order = 100;
  auto *structure = app.add_subcommand("verify-structure", "n = 3: X = G forces 2-Engel, class <= 3");
  struct_flags.add_to(structure, false);

  std::size_t rel_max = 16;
  std::vector<unsigned> rel_ns{2, 3, 4};
  unsigned rel_workers = 0;
  std::string rel_group, rel_aut, rel_out;
  auto *relation = app.add_subcommand("verify-relation", "X_n(G x| C_n) meets G t^-1 in X_{n,alpha}(G) t^-1");
  relation->add_option("--max-order", rel_max, "largest catalog group order");
  relation->add_option("--n", rel_ns, "values of n")->expected(1, -1);
  relation->add_option("--group", rel_group, "single group (file or spec) instead of the catalog");
  relation->add_option("--aut,--automorphism", rel_aut, "automorphism for --group (file or image list)");
  relation->add_option("--workers", rel_workers, "worker threads");
  relation->add_option("--out", rel_out, "write the per-group report here");

  std::size_t mono_max = 16;
  std::vector<unsigned> mono_ns{2, 3, 4, 5, 6};
  unsigned mono_workers = 0;
  std::string mono_out;
  auto *mono = app.add_subcommand("verify-monotonicity", "density of X_{n,alpha} never drops in quotients");
  mono->add_option("--max-order", mono_max, "largest catalog group order");
  mono->add_option("--n", mono_ns, "values of n")->expected(1, -1);
  mono->add_option("--workers", mono_workers, "worker threads");
  mono->add_option("--out", mono_out, "write the per-group report here");

  std::uint64_t seed = 1;
  std::size_t draws = 1000, coset_draws = 500, lemma_groups = 10;
  auto *lemmas = app.add_subcommand("check-lemmas", "seeded random checks of the measure inequalities");
  lemmas->add_option("--seed", seed, "RNG seed");
  lemmas->add_option("--draws", draws, "intersection draws per group");
  lemmas->add_option("--coset-draws", coset_draws, "coset draws per (G, N) pair");
  lemmas->add_option("--groups", lemma_groups, "number of groups and of (G, N) pairs");

  std::string frac_group, frac_aut;
  unsigned frac_n = 2;
  auto *fraction = app.add_subcommand("fraction", "exact density of X_{n,alpha}(G)");
  fraction->add_option("--group", frac_group, "group file or spec")->required();
  fraction->add_option("--n", frac_n, "exponent n")->required()->check(CLI::Range(1u, 1024u));
  fraction->add_option("--aut,--automorphism", frac_aut, "automorphism file or image list (default identity)");

  std::string hug_group;
  unsigned hug_n = 2;
  auto *hughes = app.add_subcommand("hughes", "Hughes-Thompson subgroup H_n(G) and the index bound");
  hughes->add_option("--group", hug_group, "group file or spec")->required();
  hughes->add_option("--n", hug_n, "exponent n")->required()->check(CLI::Range(1u, 1024u));

  std::string aut_group, aut_out;
  unsigned aut_n = 0;
  std::size_t aut_cap = 256, aut_budget = 2'000'000;
  auto *aut = app.add_subcommand("aut", "automorphisms of a group");
  aut->add_option("--group", aut_group, "group file or spec")->required();
  aut->add_option("--n", aut_n, "only automorphisms with alpha^n = id");
  aut->add_option("--aut-cap", aut_cap, "largest group enumerated exhaustively");
  aut->add_option("--aut-budget", aut_budget, "stop after this many automorphisms");
  aut->add_option("--out", aut_out, "write the automorphism list here");

  std::string sd_group, sd_aut, sd_out;
  unsigned sd_n = 2;
  auto *semidirect = app.add_subcommand("semidirect", "build G x| C_n with t^-1 x t = alpha(x)");
  semidirect->add_option("--group", sd_group, "group file or spec")->required();
  semidirect->add_option("--aut,--automorphism", sd_aut, "automorphism file or image list (default identity)");
  semidirect->add_option("--n", sd_n, "order of the cyclic factor")->required();
  semidirect->add_option("--out", sd_out, "write the product as a group file");

  std::size_t cat_max = 16;
  bool cat_solvable = false;
  unsigned cat_p = 0;
  std::string cat_out;
  auto *catalog = app.add_subcommand("catalog", "list the deduplicated catalog");
  catalog->add_option("--max-order", cat_max, "largest order");
  catalog->add_flag("--solvable-only", cat_solvable, "solvable groups only");
  catalog->add_option("--p-group", cat_p, "p-groups only");
  catalog->add_option("--out", cat_out, "write the manifest here");

  std::string imp_file, imp_out;
  auto *import_cmd = app.add_subcommand("import", "validate a group file");
  import_cmd->add_option("file", imp_file, "group file")->required();
  import_cmd->add_option("--out", imp_out, "re-export the validated table here");

  std::string exp_group, exp_out, exp_name;
  auto *export_cmd = app.add_subcommand("export", "write a group file");
  export_cmd->add_option("--group", exp_group, "group spec or file")->required();
  export_cmd->add_option("--name", exp_name, "name stored in the file");
  export_cmd->add_option("--out", exp_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e, out, err);
  } catch (CLI::CallForAllHelp const &e) {
    return app.exit(e, out, err);
  } catch (CLI::CallForVersion const &e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const &e) {
    error_record(err, "UsageError", e.what());
    return usage;
  }

  try {
    if (*survey) {
      auto opts = survey_flags.options();
      auto rep = survey_c_n(opts);
      auto bad_witness = recheck_witnesses(rep);
      auto doc = to_json(rep);
      if (!survey_flags.out.empty())
        write_json(survey_flags.out, doc);
      if (!survey_flags.csv.empty())
        write_text(survey_flags.csv, to_csv(rep));
      auto const &f = rep.frontier;
      out << "catalog " << rep.catalog_identity << ": " << rep.catalog_size << " groups, "
          << rep.pairs() << " pairs, " << rep.partial_groups() << " with partial coverage\n";
      if (f.best_density)
        out << "frontier n=" << opts.n << " (" << to_string(opts.restriction)
            << ", orders <= " << opts.max_order << "): " << f.best_density->str() << "  witness "
            << f.witness_spec << " with an automorphism of order " << f.witness_aut_order << "\n";
      else
        out << "frontier n=" << opts.n << ": EmptyFrontier (every density is 1)\n";
      if (bad_witness) {
        error_record(err, "WitnessMismatch", *bad_witness);
        return failed;
      }
      // densities above these would contradict the known bounds
      if (f.best_density && ((opts.n == 2 && Density(3, 4) < *f.best_density) ||
                              (opts.n == 3 && Density(7, 8) < *f.best_density))) {
        error_record(err, "VerificationFailure", "frontier above the proven bound");
        return failed;
      }
      return ok;
    }

    if (*threshold) {
      auto opts = thr_flags.options();
      auto rep = verify_threshold_theorem(opts);
      if (!thr_flags.out.empty())
        write_json(thr_flags.out, to_json(rep));
      out << "n=3 threshold over " << rep.survey.catalog_size << " groups (catalog "
          << rep.survey.catalog_identity << "), " << rep.pairs_checked << " pairs: "
          << rep.above_seven_eighths.size() << " classes in (7/8,1), "
          << rep.above_fifteen_16ths.size() << " in (15/16,1)";
      if (rep.partial_groups)
        out << "; checked on covered automorphisms (" << rep.partial_groups
            << " groups partial)";
      out << "\n";
      for (auto const &v : rep.above_seven_eighths)
        error_record(err, "ThresholdViolation", v.spec + " density " + v.density.str());
      return rep.ok() ? ok : failed;
    }

    if (*structure) {
      auto opts = struct_flags.options();
      auto rep = verify_splitting_structure(opts);
      if (!struct_flags.out.empty())
        write_json(struct_flags.out, to_json(rep));
      std::size_t checked = 0;
      for (auto const &g : rep.groups)
        checked += g.qualifying > 0;
      out << "structure: " << checked << " groups with X_{3,alpha} = G checked, " << rep.vacuous
          << " vacuous\n";
      for (auto const &g : rep.groups)
        if (!g.ok())
          error_record(err, "StructureViolation", g.spec);
      return rep.ok() ? ok : failed;
    }

    if (*relation) {
      if (!rel_group.empty()) {
        auto [name, g] = resolve_group(rel_group);
        auto alpha = resolve_automorphism(g, rel_aut);
        bool all = true;
        for (auto n : rel_ns) {
          if (n % alpha.order() != 0)
            continue;
          auto r = verify_coset_relation(g, alpha, n);
          out << name << " n=" << n << ": |lhs|=" << r.lhs_size << " |rhs|=" << r.rhs_size
              << (r.equal ? " equal" : " DIFFERENT") << "\n";
          all &= r.equal;
        }
        return all ? ok : failed;
      }
      CatalogOptions co;
      co.max_order = rel_max;
      auto rep = relation_sweep(enumerate_catalog(co), rel_ns, rel_workers);
      if (!rel_out.empty())
        write_json(rel_out, to_json(rep));
      auto t = rep.total();
      out << "coset relation: " << t.tuples << " tuples, " << t.failures << " failures\n";
      return rep.ok() ? ok : failed;
    }

    if (*mono) {
      CatalogOptions co;
      co.max_order = mono_max;
      auto rep = monotonicity_sweep(enumerate_catalog(co), mono_ns, mono_workers);
      if (!mono_out.empty())
        write_json(mono_out, to_json(rep));
      auto t = rep.total();
      out << "quotient monotonicity: " << t.tuples << " (G, alpha, n) tuples, " << t.checks
          << " invariant normal subgroups checked, " << t.failures << " failures; quotient family: "
          << t.family_premises << " premises, " << t.family_failures << " failures\n";
      return rep.ok() ? ok : failed;
    }

    if (*lemmas) {
      auto r = lemma_suite(seed, lemma_groups, draws, coset_draws);
      out << "intersection bound: " << r.intersection_groups.size() << " groups, "
          << r.intersection_draws << " draws, " << r.intersection_failures << " failures\n";
      out << "coset inequalities: " << r.coset_pairs.size() << " (G, N) pairs, " << r.coset_draws
          << " draws, " << r.coset_failures << " failures\n";
      return r.ok() ? ok : failed;
    }

    if (*fraction) {
      auto [name, g] = resolve_group(frac_group);
      auto alpha = resolve_automorphism(g, frac_aut);
      auto s = twisted_solution_set(g, alpha, frac_n);
      out << s.density.str() << "\n";
      return ok;
    }

    if (*hughes) {
      auto [name, g] = resolve_group(hug_group);
      auto r = check_index_bound(g, hug_n);
      out << name << " n=" << hug_n << ": |H_n|=" << r.hn_order << " index=" << r.hn_index
          << " density(X_n)=" << r.density.str() << " containment="
          << (r.containment_ok ? "ok" : "FAILED") << " bound="
          << (r.vacuous ? "vacuous" : r.bound_ok ? "ok" : "FAILED") << "\n";
      return r.containment_ok && r.bound_ok ? ok : failed;
    }

    if (*aut) {
      auto [name, g] = resolve_group(aut_group);
      AutSearchOptions ao;
      ao.order_cap = aut_cap;
      ao.max_results = aut_budget;
      auto set = aut_n ? automorphisms_of_order_dividing(g, aut_n, ao) : automorphism_group(g, ao);
      out << name << ": " << set.size() << " automorphisms"
          << (aut_n ? " with alpha^" + std::to_string(aut_n) + " = id" : "") << ", coverage "
          << to_string(set.coverage) << "\n";
      for (auto [o, c] : order_histogram(set))
        out << "  order " << o << ": " << c << "\n";
      if (!aut_out.empty()) {
        nlohmann::json doc;
        doc["group"] = name;
        doc["coverage"] = to_string(set.coverage);
        auto &list = doc["automorphisms"] = nlohmann::json::array();
        for (auto const &a : set.members)
          list.push_back(std::vector<Element>(a.images().begin(), a.images().end()));
        write_json(aut_out, doc);
      }
      return ok;
    }

    if (*semidirect) {
      auto [name, g] = resolve_group(sd_group);
      auto alpha = resolve_automorphism(g, sd_aut);
      auto sp = semidirect_with_cyclic(g, alpha, sd_n);
      auto r = verify_coset_relation(sp);
      out << "order " << sp.product.order() << ", t = element " << sp.generator_t
          << "; coset relation " << (r.equal ? "holds" : "FAILS") << " (" << r.lhs_size
          << " elements)\n";
      if (!sd_out.empty())
        write_json(sd_out, export_group(sp.product, name + "_x_C" + std::to_string(sd_n)));
      return r.equal ? ok : failed;
    }

    if (*catalog) {
      CatalogOptions co;
      co.max_order = cat_max;
      co.solvable_only = cat_solvable;
      co.p_group = cat_p;
      auto cat = enumerate_catalog(co);
      if (!cat_out.empty()) {
        auto doc = cat.manifest();
        doc["identity"] = cat.identity();
        write_json(cat_out, doc);
      }
      for (auto const &e : cat.entries)
        out << e.group.order() << "\t" << e.spec.display() << "\t" << e.spec.name() << "\n";
      out << cat.entries.size() << " groups, " << cat.merged() << " specs merged by fingerprint, identity "
          << cat.identity() << "\n";
      return ok;
    }

    if (*import_cmd) {
      auto doc = read_json_file(imp_file);
      auto g = import_group(doc, 2000);
      auto fp = fingerprint(g);
      out << doc.value("name", std::string("?")) << ": order " << g.order() << ", fingerprint "
          << fp.str() << "\n";
      if (!imp_out.empty())
        write_json(imp_out, export_group(g, doc.value("name", std::string("imported"))));
      return ok;
    }

    if (*export_cmd) {
      auto [name, g] = resolve_group(exp_group, 2000);
      auto doc = export_group(g, exp_name.empty() ? name : exp_name);
      if (exp_out.empty())
        out << doc.dump() << "\n";
      else
        write_json(exp_out, doc);
      return ok;
    }
  } catch (Error const &e) {
    error_record(err, to_string(e.code()), e.what());
    return usage;
  } catch (nlohmann::json::exception const &e) {
    error_record(err, "ParseError", e.what());
    return usage;
  }
  return usage;
}

} // namespace twist
