#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <twist/twist.hpp>

namespace testing_support {

using namespace twist;

inline FiniteGroup perm_group(std::vector<std::string> const &cycles, std::size_t degree)
{
  std::vector<Permutation> gens;
  for (auto const &c : cycles)
    gens.push_back(parse_cycles(c, degree));
  return build_from_permutation_generators(gens);
}

inline FiniteGroup s3() { return perm_group({"(0 1)", "(0 1 2)"}, 3); }

/// Element of a permutation group by its cycle label.
inline Element by_label(FiniteGroup const &g, std::string const &label)
{
  auto const &ls = g.labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end())
    throw std::runtime_error("no element labelled " + label);
  return static_cast<Element>(it - ls.begin());
}

inline FiniteGroup spec(std::string const &s) { return generate_family(GroupSpec::parse(s), 2000); }

// Naive oracles: recompute everything from the raw table with plain loops.

inline Element naive_power(FiniteGroup const &g, Element x, unsigned n)
{
  Element acc = g.identity();
  for (unsigned i = 0; i < n; ++i)
    acc = g.row(acc)[x];
  return acc;
}

inline std::size_t naive_involutions(FiniteGroup const &g)
{
  std::size_t c = 0;
  for (Element x = 0; x < g.order(); ++x)
    c += x != g.identity() && naive_power(g, x, 2) == g.identity();
  return c;
}

inline std::size_t naive_twisted_count(FiniteGroup const &g, std::vector<Element> const &alpha,
                                       unsigned n)
{
  std::size_t c = 0;
  for (Element x = 0; x < g.order(); ++x) {
    Element acc = g.identity(), y = x;
    for (unsigned k = 0; k < n; ++k) {
      acc = g.row(acc)[y];
      y = alpha[y];
    }
    c += acc == g.identity();
  }
  return c;
}

inline bool naive_is_hom(FiniteGroup const &g, std::vector<Element> const &f)
{
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (f[g.row(a)[b]] != g.row(f[a])[f[b]])
        return false;
  return true;
}

/// Every bijection of a tiny group that is multiplicative.
inline std::vector<std::vector<Element>> naive_automorphisms(FiniteGroup const &g)
{
  std::vector<Element> p(g.order());
  std::iota(p.begin(), p.end(), Element{0});
  std::vector<std::vector<Element>> out;
  do {
    if (naive_is_hom(g, p))
      out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<Element> inversion_map(FiniteGroup const &g)
{
  std::vector<Element> v(g.order());
  for (Element x = 0; x < g.order(); ++x)
    v[x] = g.inv(x);
  return v;
}

/// Coordinate swap on a direct product H x H (index i*|H| + j).
inline std::vector<Element> swap_map(std::size_t h)
{
  std::vector<Element> v(h * h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      v[i * h + j] = static_cast<Element>(j * h + i);
  return v;
}

inline std::size_t count_if_elements(FiniteGroup const &g, auto pred)
{
  std::size_t c = 0;
  for (Element x = 0; x < g.order(); ++x)
    c += pred(x);
  return c;
}

} // namespace testing_support
