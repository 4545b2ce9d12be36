#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "group.hpp"

namespace twist {

/// A bijective homomorphism of a group onto itself, stored as a full image
/// array so that applying it is a single lookup.
class Automorphism
{
public:
  /// Validates bijectivity and multiplicativity; throws NotAutomorphism.
  static Automorphism from_images(FiniteGroup g, std::vector<Element> image);

  /// Skips validation; for maps produced by the enumerators.
  static Automorphism trusted(FiniteGroup g, std::vector<Element> image);

  static Automorphism identity(FiniteGroup g)
  {
    std::vector<Element> img(g.order());
    std::iota(img.begin(), img.end(), Element{0});
    return trusted(std::move(g), std::move(img));
  }

  FiniteGroup const &parent() const noexcept { return parent_; }
  std::span<Element const> images() const noexcept { return image_; }
  Element operator()(Element x) const noexcept { return image_[x]; }
  unsigned order() const noexcept { return order_; }
  bool is_identity() const noexcept { return order_ == 1; }

  /// x -> this(other(x))
  Automorphism after(Automorphism const &other) const
  {
    std::vector<Element> img(image_.size());
    for (std::size_t x = 0; x < img.size(); ++x)
      img[x] = image_[other.image_[x]];
    return trusted(parent_, std::move(img));
  }

  Automorphism inverse() const
  {
    std::vector<Element> img(image_.size());
    for (std::size_t x = 0; x < img.size(); ++x)
      img[image_[x]] = static_cast<Element>(x);
    return trusted(parent_, std::move(img));
  }

  Automorphism power(unsigned k) const
  {
    auto r = identity(parent_);
    for (unsigned i = 0; i < k; ++i)
      r = after(r);
    return r;
  }

  friend bool operator==(Automorphism const &a, Automorphism const &b)
  { return a.image_ == b.image_; }

  friend bool operator<(Automorphism const &a, Automorphism const &b)
  { return a.image_ < b.image_; }

private:
  Automorphism(FiniteGroup g, std::vector<Element> image)
  : parent_(std::move(g)), image_(std::move(image))
  {
    order_ = 1;
    std::vector<Element> cur(image_);
    auto is_id = [](std::vector<Element> const &m) {
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != i)
          return false;
      return true;
    };
    while (!is_id(cur)) {
      for (auto &v : cur)
        v = image_[v];
      ++order_;
    }
  }

  FiniteGroup parent_;
  std::vector<Element> image_;
  unsigned order_ = 1;
};

inline bool is_automorphism(FiniteGroup const &g, std::span<Element const> image)
{
  if (image.size() != g.order() || !is_permutation(image))
    return false;
  if (image[g.identity()] != g.identity())
    return false;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (image[g.mul(a, b)] != g.mul(image[a], image[b]))
        return false;
  return true;
}

inline Automorphism Automorphism::from_images(FiniteGroup g, std::vector<Element> image)
{
  if (!is_automorphism(g, image))
    throw Error(Errc::not_automorphism, "image array is not an automorphism");
  return Automorphism(std::move(g), std::move(image));
}

inline Automorphism Automorphism::trusted(FiniteGroup g, std::vector<Element> image)
{ return Automorphism(std::move(g), std::move(image)); }

enum class Coverage {
  complete,        ///< every automorphism with the requested property
  partial_budget,  ///< enumeration stopped at the result budget
  partial_cap,     ///< group above the enumeration cap; fallback family only
};

inline std::string_view to_string(Coverage c)
{
  switch (c) {
  case Coverage::complete: return "complete";
  case Coverage::partial_budget: return "partial-budget";
  case Coverage::partial_cap: return "partial-cap";
  }
  return "unknown";
}

struct AutomorphismSet
{
  FiniteGroup parent;
  std::vector<Automorphism> members;  ///< sorted by image array
  Coverage coverage = Coverage::complete;

  bool complete() const noexcept { return coverage == Coverage::complete; }
  std::size_t size() const noexcept { return members.size(); }
};

struct AutSearchOptions
{
  std::size_t order_cap = 256;        ///< largest group searched exhaustively
  std::size_t max_results = 2'000'000;
};

struct AutSearchStats
{
  std::size_t found = 0;
  std::size_t nodes = 0;
  Coverage coverage = Coverage::complete;
};

namespace detail {

/// Backtracking search over partial homomorphisms. A node is an injective
/// homomorphism from a subgroup K onto its image; branching assigns the image
/// of one element outside K, and the map is extended to <K, y> by closure,
/// checking every edge of the Cayley graph.
///
/// With split_order > 0 only maps with alpha^split_order = id are produced:
/// partial alpha-orbits must close with a length dividing split_order, and an
/// image whose backward chain already has split_order - 1 steps is forced.
class AutSearch
{
public:
  AutSearch(FiniteGroup const &g, unsigned split_order, std::size_t max_results)
  : g_(g), n_(g.order()), split_(split_order), max_results_(max_results),
    img_(n_, no_element), pre_(n_, no_element), order_key_(n_)
  {
    for (Element x = 0; x < n_; ++x)
      order_key_[x] = {g.element_order(x), g.class_size(x)};
    gen_order_ = search_generators();
  }

  template<typename Visit>
  AutSearchStats run(Visit &&visit)
  {
    auto e = g_.identity();
    img_[e] = e;
    pre_[e] = e;
    domain_.push_back(e);
    recurse(visit);
    return stats_;
  }

private:
  std::vector<Element> search_generators() const
  {
    // greedy: each new generator maximizes the subgroup it generates
    std::vector<Element> gens;
    ElementSet span(n_);
    span.insert(g_.identity());
    std::vector<Element> queue;
    while (span.size() < n_) {
      std::size_t best_size = 0;
      Element best = no_element;
      for (Element c = 0; c < n_; ++c) {
        if (span.contains(c))
          continue;
        auto trial = span;
        queue = span.elements();
        queue.push_back(c);
        trial.insert(c);
        gens.push_back(c);
        close_under(g_.flat_table(), n_, gens, trial, queue);
        gens.pop_back();
        if (trial.size() > best_size) {
          best_size = trial.size();
          best = c;
        }
      }
      gens.push_back(best);
      queue = span.elements();
      queue.push_back(best);
      span.insert(best);
      close_under(g_.flat_table(), n_, gens, span, queue);
    }
    return gens;
  }

  bool assign(Element x, Element v, std::vector<Element> &added)
  {
    if (img_[x] != no_element)
      return img_[x] == v;
    if (pre_[v] != no_element)
      return false;
    if (order_key_[x] != order_key_[v])
      return false;
    img_[x] = v;
    pre_[v] = x;
    added.push_back(x);
    domain_.push_back(x);
    return true;
  }

  void undo(std::vector<Element> const &added, std::size_t gens_before)
  {
    for (auto x : added) {
      pre_[img_[x]] = no_element;
      img_[x] = no_element;
    }
    domain_.resize(domain_.size() - added.size());
    gens_.resize(gens_before);
    gen_imgs_.resize(gens_before);
  }

  bool extend(Element y, Element z, std::vector<Element> &added)
  {
    auto old_size = domain_.size();
    gens_.push_back(y);
    gen_imgs_.push_back(z);
    for (std::size_t i = 0; i < old_size; ++i) {
      auto d = domain_[i];
      if (!assign(g_.mul(d, y), g_.mul(img_[d], z), added))
        return false;
    }
    for (std::size_t i = old_size; i < domain_.size(); ++i) {
      auto d = domain_[i];
      for (std::size_t s = 0; s < gens_.size(); ++s)
        if (!assign(g_.mul(d, gens_[s]), g_.mul(img_[d], gen_imgs_[s]), added))
          return false;
    }
    return true;
  }

  bool chains_ok() const
  {
    for (auto x : domain_) {
      auto y = x;
      for (unsigned j = 1; j <= split_; ++j) {
        y = img_[y];
        if (y == x) {
          if (split_ % j != 0)
            return false;
          break;
        }
        if (j == split_)
          return false;
        if (img_[y] == no_element)
          break;
      }
    }
    return true;
  }

  /// Picks the element whose image is assigned next. Returns the forced
  /// image through `forced` when alpha^split = id determines it.
  Element choose(Element &forced) const
  {
    forced = no_element;
    if (split_ > 0) {
      Element pending = no_element;
      for (auto d : domain_) {
        auto y = img_[d];
        if (img_[y] != no_element)
          continue;
        auto z = y;
        unsigned steps = 0;
        while (steps + 1 < split_ && pre_[z] != no_element) {
          z = pre_[z];
          ++steps;
        }
        if (steps + 1 == split_) {
          forced = z;
          return y;
        }
        if (pending == no_element)
          pending = y;
      }
      if (pending != no_element)
        return pending;
    }
    for (auto s : gen_order_)
      if (img_[s] == no_element)
        return s;
    return no_element;
  }

  template<typename Visit>
  bool recurse(Visit &visit)
  {
    ++stats_.nodes;
    if (domain_.size() == n_) {
      if (stats_.found == max_results_) {
        stats_.coverage = Coverage::partial_budget;
        return false;
      }
      ++stats_.found;
      visit(std::span<Element const>(img_));
      return true;
    }

    Element forced;
    auto y = choose(forced);
    std::vector<Element> added;
    auto try_image = [&](Element z) {
      added.clear();
      auto gens_before = gens_.size();
      bool ok = extend(y, z, added) && (split_ == 0 || chains_ok());
      bool go_on = true;
      if (ok)
        go_on = recurse(visit);
      undo(added, gens_before);
      return go_on;
    };

    if (forced != no_element)
      return try_image(forced);

    for (Element z = 0; z < n_; ++z) {
      if (pre_[z] != no_element || order_key_[z] != order_key_[y])
        continue;
      if (!try_image(z))
        return false;
    }
    return true;
  }

  FiniteGroup const &g_;
  std::size_t n_;
  unsigned split_;
  std::size_t max_results_;
  std::vector<Element> img_, pre_;
  std::vector<std::pair<unsigned, std::size_t>> order_key_;
  std::vector<Element> gen_order_;
  std::vector<Element> domain_;
  std::vector<Element> gens_, gen_imgs_;
  AutSearchStats stats_;
};

} // namespace detail

/// x -> g x g^{-1}
inline Automorphism conjugation_automorphism(FiniteGroup const &g, Element c)
{
  std::vector<Element> img(g.order());
  auto ci = g.inv(c);
  for (Element x = 0; x < g.order(); ++x)
    img[x] = g.mul(g.mul(c, x), ci);
  return Automorphism::trusted(g, std::move(img));
}

/// Identity, inversion when abelian, and all inner automorphisms, restricted
/// to those whose order divides n (n = 0: no restriction). Sorted, distinct.
inline std::vector<Automorphism> fallback_family(FiniteGroup const &g, unsigned n = 0)
{
  std::vector<Automorphism> out;
  out.push_back(Automorphism::identity(g));
  if (g.is_abelian()) {
    std::vector<Element> img(g.order());
    for (Element x = 0; x < g.order(); ++x)
      img[x] = g.inv(x);
    out.push_back(Automorphism::trusted(g, std::move(img)));
  }
  for (Element c = 0; c < g.order(); ++c)
    out.push_back(conjugation_automorphism(g, c));
  std::erase_if(out, [&](Automorphism const &a) { return n != 0 && n % a.order() != 0; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Streams every automorphism alpha with alpha^n = id (n = 0: all of Aut)
/// to `visit` as an image span, in a deterministic order. Groups above the
/// cap stream the fallback family instead.
template<typename Visit>
AutSearchStats for_each_automorphism(FiniteGroup const &g, unsigned n,
                                     AutSearchOptions const &opts, Visit &&visit)
{
  if (g.order() > opts.order_cap) {
    AutSearchStats stats;
    for (auto const &a : fallback_family(g, n)) {
      visit(a.images());
      ++stats.found;
    }
    stats.coverage = Coverage::partial_cap;
    return stats;
  }
  detail::AutSearch search(g, n, opts.max_results);
  return search.run(visit);
}

namespace detail {

inline AutomorphismSet collect(FiniteGroup const &g, unsigned n, AutSearchOptions const &opts)
{
  AutomorphismSet set{g, {}, Coverage::complete};
  auto stats = for_each_automorphism(g, n, opts, [&](std::span<Element const> img) {
    set.members.push_back(Automorphism::trusted(g, {img.begin(), img.end()}));
  });
  set.coverage = stats.coverage;
  if (set.coverage == Coverage::partial_budget) {
    auto extra = fallback_family(g, n);
    set.members.insert(set.members.end(), extra.begin(), extra.end());
  }
  std::sort(set.members.begin(), set.members.end());
  set.members.erase(std::unique(set.members.begin(), set.members.end()), set.members.end());
  return set;
}

} // namespace detail

/// All of Aut(g). Coverage is partial above the order cap or result budget.
inline AutomorphismSet automorphism_group(FiniteGroup const &g, AutSearchOptions const &opts = {})
{ return detail::collect(g, 0, opts); }

/// Exactly the automorphisms alpha with alpha^n = id (always includes the identity).
inline AutomorphismSet automorphisms_of_order_dividing(FiniteGroup const &g, unsigned n,
                                                       AutSearchOptions const &opts = {})
{
  if (n == 0)
    throw Error(Errc::invalid_argument, "n must be positive");
  return detail::collect(g, n, opts);
}

/// Histogram of automorphism orders.
inline std::map<unsigned, std::size_t> order_histogram(AutomorphismSet const &set)
{
  std::map<unsigned, std::size_t> hist;
  for (auto const &a : set.members)
    ++hist[a.order()];
  return hist;
}

} // namespace twist

namespace twist {

/// The automorphism xN -> alpha(x)N of G/N. Requires alpha(N) = N.
inline Automorphism induced_quotient_automorphism(Quotient const &q, Subgroup const &n,
                                                  Automorphism const &alpha)
{
  auto const &g = n.parent();
  if (!is_normal(g, n))
    throw Error(Errc::not_normal, "N is not normal");
  n.mask().for_each([&](Element x) {
    if (!n.contains(alpha(x)))
      throw Error(Errc::not_invariant, "alpha moves element " + std::to_string(x) +
                                         " of N to " + std::to_string(alpha(x)));
  });
  std::vector<Element> img(q.group.order());
  for (Element c = 0; c < img.size(); ++c)
    img[c] = q.projection[alpha(q.representatives[c])];
  return Automorphism::trusted(q.group, std::move(img));
}

inline Automorphism induced_quotient_automorphism(FiniteGroup const &g, Subgroup const &n,
                                                  Automorphism const &alpha)
{
  if (!is_normal(g, n))
    throw Error(Errc::not_normal, "N is not normal");
  return induced_quotient_automorphism(quotient_group(g, n), n, alpha);
}

} // namespace twist
