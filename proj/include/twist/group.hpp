#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace twist {

/// A group element is a dense index into its group's multiplication table.
using Element = std::uint32_t;

inline constexpr Element no_element = std::numeric_limits<Element>::max();

/// Largest group for which a multiplication table is materialized.
inline constexpr std::size_t default_order_cap = 2000;

/// Fixed-universe bitset over element indices.
class ElementSet
{
public:
  ElementSet() = default;

  explicit ElementSet(std::size_t universe)
  : universe_(universe), words_((universe + 63) / 64, 0)
  {}

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Element x) const noexcept
  { return (words_[x >> 6] >> (x & 63u)) & 1u; }

  bool insert(Element x) noexcept
  {
    auto &w = words_[x >> 6];
    auto bit = std::uint64_t{1} << (x & 63u);
    if (w & bit)
      return false;
    w |= bit;
    ++count_;
    return true;
  }

  void erase(Element x) noexcept
  {
    auto &w = words_[x >> 6];
    auto bit = std::uint64_t{1} << (x & 63u);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }

  template<typename F>
  void for_each(F &&f) const
  {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        auto bit = static_cast<unsigned>(std::countr_zero(w));
        f(static_cast<Element>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> elements() const
  {
    std::vector<Element> out;
    out.reserve(count_);
    for_each([&](Element x) { out.push_back(x); });
    return out;
  }

  ElementSet intersect(ElementSet const &other) const
  {
    ElementSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      out.words_[i] = words_[i] & other.words_[i];
      out.count_ += static_cast<std::size_t>(std::popcount(out.words_[i]));
    }
    return out;
  }

  bool is_subset_of(ElementSet const &other) const
  {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i])
        return false;
    return true;
  }

  std::size_t hash() const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(ElementSet const &a, ElementSet const &b)
  { return a.universe_ == b.universe_ && a.words_ == b.words_; }

private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

class FiniteGroup;

/// A finite group given by its full multiplication table. Copies share the
/// same immutable table, so passing groups by value is cheap and safe across
/// threads.
class FiniteGroup
{
public:
  /// The trivial group.
  FiniteGroup()
  : FiniteGroup(from_trusted_table(1, {0}, 0, {}))
  {}

  /// Wraps a table that is already known to define a group (products,
  /// quotients and closures of permutations). No validation is performed;
  /// use build_from_table() for untrusted input.
  static FiniteGroup from_trusted_table(std::size_t order,
                                        std::vector<Element> table,
                                        Element identity,
                                        std::vector<std::string> labels);

  std::size_t order() const noexcept { return d_->order; }
  Element identity() const noexcept { return d_->identity; }

  Element mul(Element a, Element b) const noexcept
  { return d_->table[static_cast<std::size_t>(a) * d_->order + b]; }

  Element inv(Element a) const noexcept { return d_->inverse[a]; }

  /// a^k for any integer k.
  Element pow(Element a, std::int64_t k) const noexcept
  {
    auto ord = static_cast<std::int64_t>(d_->orders[a]);
    k %= ord;
    if (k < 0)
      k += ord;
    Element r = d_->identity;
    for (std::int64_t i = 0; i < k; ++i)
      r = mul(r, a);
    return r;
  }

  /// a^{-1} b a
  Element conj(Element b, Element a) const noexcept
  { return mul(mul(inv(a), b), a); }

  unsigned element_order(Element a) const noexcept { return d_->orders[a]; }

  /// Size of the conjugacy class of a.
  std::size_t class_size(Element a) const noexcept { return d_->class_sizes[a]; }

  /// A small generating set (greedy, by descending element order).
  std::span<Element const> generators() const noexcept { return d_->generators; }

  std::span<Element const> row(Element a) const noexcept
  { return {d_->table.data() + static_cast<std::size_t>(a) * d_->order, d_->order}; }

  std::span<Element const> flat_table() const noexcept { return d_->table; }

  std::vector<std::vector<Element>> table() const
  {
    std::vector<std::vector<Element>> out(order());
    for (Element a = 0; a < order(); ++a)
      out[a].assign(row(a).begin(), row(a).end());
    return out;
  }

  std::vector<std::string> const &labels() const noexcept { return d_->labels; }

  bool is_abelian() const noexcept { return d_->abelian; }

  unsigned exponent() const noexcept { return d_->exponent; }

  bool same_object(FiniteGroup const &other) const noexcept { return d_ == other.d_; }

private:
  struct Data
  {
    std::size_t order = 0;
    Element identity = 0;
    std::vector<Element> table;
    std::vector<Element> inverse;
    std::vector<unsigned> orders;
    std::vector<std::size_t> class_sizes;
    std::vector<Element> generators;
    std::vector<std::string> labels;
    bool abelian = true;
    unsigned exponent = 1;
  };

  explicit FiniteGroup(std::shared_ptr<Data const> d)
  : d_(std::move(d))
  {}

  std::shared_ptr<Data const> d_;
};

namespace detail {

/// BFS closure of `seed` under right multiplication by `gens`, using a raw
/// table of the given order.
inline void close_under(std::span<Element const> table, std::size_t order,
                        std::span<Element const> gens, ElementSet &members,
                        std::vector<Element> &queue)
{
  std::size_t head = 0;
  while (head < queue.size()) {
    auto x = queue[head++];
    for (auto g : gens) {
      auto y = table[static_cast<std::size_t>(x) * order + g];
      if (members.insert(y))
        queue.push_back(y);
    }
  }
}

} // namespace detail

inline FiniteGroup FiniteGroup::from_trusted_table(std::size_t order,
                                                   std::vector<Element> table,
                                                   Element identity,
                                                   std::vector<std::string> labels)
{
  auto d = std::make_shared<Data>();
  d->order = order;
  d->identity = identity;
  d->table = std::move(table);
  d->labels = std::move(labels);

  auto at = [&](Element a, Element b) {
    return d->table[static_cast<std::size_t>(a) * order + b];
  };

  d->inverse.assign(order, no_element);
  for (Element a = 0; a < order; ++a) {
    if (d->inverse[a] != no_element)
      continue;
    for (Element b = 0; b < order; ++b) {
      if (at(a, b) == identity) {
        d->inverse[a] = b;
        d->inverse[b] = a;
        break;
      }
    }
  }

  d->orders.assign(order, 0);
  for (Element a = 0; a < order; ++a) {
    unsigned k = 1;
    for (Element x = a; x != identity; x = at(x, a))
      ++k;
    d->orders[a] = k;
    d->exponent = std::lcm(d->exponent, k);
  }

  // greedy generating set, largest element orders first
  std::vector<Element> by_order(order);
  std::iota(by_order.begin(), by_order.end(), Element{0});
  std::stable_sort(by_order.begin(), by_order.end(), [&](Element a, Element b) {
    return d->orders[a] > d->orders[b];
  });

  ElementSet span(order);
  span.insert(identity);
  std::vector<Element> queue;
  for (auto c : by_order) {
    if (span.size() == order)
      break;
    if (span.contains(c))
      continue;
    d->generators.push_back(c);
    queue.assign(1, identity);
    span = ElementSet(order);
    span.insert(identity);
    detail::close_under(d->table, order, d->generators, span, queue);
  }

  for (auto g : d->generators) {
    for (Element x = 0; x < order && d->abelian; ++x)
      if (at(g, x) != at(x, g))
        d->abelian = false;
  }

  d->class_sizes.assign(order, 0);
  std::vector<Element> cls;
  for (Element x = 0; x < order; ++x) {
    if (d->class_sizes[x])
      continue;
    cls.assign(1, x);
    d->class_sizes[x] = 1;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      auto y = cls[head];
      for (auto g : d->generators) {
        auto z = at(at(d->inverse[g], y), g);
        if (!d->class_sizes[z]) {
          d->class_sizes[z] = 1;
          cls.push_back(z);
        }
      }
    }
    for (auto y : cls)
      d->class_sizes[y] = cls.size();
  }

  return FiniteGroup(std::move(d));
}

/// Validates an arbitrary square table and builds the group it defines.
inline FiniteGroup build_from_table(std::vector<std::vector<Element>> const &rows,
                                    std::vector<std::string> labels = {},
                                    std::size_t order_cap = default_order_cap)
{
  auto n = rows.size();
  if (n == 0)
    throw Error(Errc::validation_error, "empty table");
  if (n > order_cap)
    throw Error(Errc::order_cap_exceeded,
                "table of order " + std::to_string(n) + " exceeds cap " +
                  std::to_string(order_cap));

  std::vector<Element> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw Error(Errc::validation_error, "table is not square (row " + std::to_string(i) + ")");
    for (auto v : rows[i]) {
      if (v >= n)
        throw Error(Errc::not_latin, "entry " + std::to_string(v) + " out of range in row " +
                                       std::to_string(i));
      flat.push_back(v);
    }
  }
  auto at = [&](std::size_t a, std::size_t b) { return flat[a * n + b]; };

  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[at(i, j)]++)
        throw Error(Errc::not_latin, "row " + std::to_string(i) + " repeats " +
                                       std::to_string(at(i, j)));
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[at(j, i)]++)
        throw Error(Errc::not_latin, "column " + std::to_string(i) + " repeats " +
                                       std::to_string(at(j, i)));
    }
  }

  Element identity = no_element;
  for (std::size_t e = 0; e < n && identity == no_element; ++e) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j)
      ok = at(e, j) == j && at(j, e) == j;
    if (ok)
      identity = static_cast<Element>(e);
  }
  if (identity == no_element)
    throw Error(Errc::no_identity, "no two-sided identity");

  for (std::size_t a = 0; a < n; ++a) {
    std::size_t b = 0;
    while (at(a, b) != identity)
      ++b;
    if (at(b, a) != identity)
      throw Error(Errc::no_inverse, "element " + std::to_string(a) + " has no two-sided inverse");
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto ab = at(a, b);
      for (std::size_t c = 0; c < n; ++c)
        if (at(ab, c) != at(a, at(b, c)))
          throw Error(Errc::not_associative, "(" + std::to_string(a) + "," + std::to_string(b) +
                                               "," + std::to_string(c) + ")");
    }

  if (!labels.empty() && labels.size() != n)
    throw Error(Errc::validation_error, "label count does not match order");

  return FiniteGroup::from_trusted_table(n, std::move(flat), identity, std::move(labels));
}

// ---------------------------------------------------------------------------
// permutations

/// Images of the points 0..degree-1. Products act left to right: in x*y the
/// permutation x is applied first.
using Permutation = std::vector<Element>;

inline bool is_permutation(std::span<Element const> p)
{
  std::vector<char> seen(p.size());
  for (auto v : p) {
    if (v >= p.size() || seen[v])
      return false;
    seen[v] = 1;
  }
  return true;
}

/// Parses 0-based cycle notation such as "(0 1)(2 3 4)".
inline Permutation parse_cycles(std::string_view text, std::size_t degree)
{
  Permutation p(degree);
  std::iota(p.begin(), p.end(), Element{0});
  std::vector<Element> cycle;
  std::size_t i = 0;
  auto fail = [&](std::string const &why) {
    throw Error(Errc::parse_error, "cycle notation '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(')
      fail("expected '('");
    ++i;
    cycle.clear();
    while (true) {
      while (i < text.size() && (text[i] == ' ' || text[i] == ','))
        ++i;
      if (i >= text.size())
        fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9')
        ++j;
      if (j == i)
        fail("expected a point");
      auto pt = std::stoul(std::string(text.substr(i, j - i)));
      if (pt >= degree)
        fail("point out of range");
      cycle.push_back(static_cast<Element>(pt));
      i = j;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  if (!is_permutation(p))
    fail("points repeat");
  return p;
}

inline std::string cycle_string(std::span<Element const> p)
{
  std::string out;
  std::vector<char> done(p.size());
  for (Element i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i)
      continue;
    out += '(';
    for (Element j = i; !done[j]; j = p[j]) {
      done[j] = 1;
      if (j != i)
        out += ' ';
      out += std::to_string(j);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace detail {

struct PermutationHash
{
  std::size_t operator()(Permutation const &p) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace detail

/// Breadth-first closure of the generated permutation group. Element 0 is
/// the identity; other indices follow discovery order.
inline FiniteGroup build_from_permutation_generators(std::vector<Permutation> const &gens,
                                                     std::size_t order_cap = default_order_cap)
{
  std::size_t degree = gens.empty() ? 0 : gens.front().size();
  for (auto const &g : gens) {
    if (g.size() != degree)
      throw Error(Errc::invalid_argument, "generators act on different point sets");
    if (!is_permutation(g))
      throw Error(Errc::invalid_argument, "generator is not a permutation");
  }

  std::vector<Permutation> elems;
  std::unordered_map<Permutation, Element, detail::PermutationHash> index;
  std::vector<Element> parent, parent_gen, rmul;

  Permutation id(degree);
  std::iota(id.begin(), id.end(), Element{0});
  elems.push_back(id);
  index.emplace(id, 0);
  parent.push_back(0);
  parent_gen.push_back(0);

  auto k = gens.size();
  Permutation prod(degree);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t p = 0; p < degree; ++p)
        prod[p] = gens[s][elems[head][p]];
      auto [it, inserted] = index.try_emplace(prod, static_cast<Element>(elems.size()));
      if (inserted) {
        if (elems.size() + 1 > order_cap)
          throw Error(Errc::order_cap_exceeded,
                      "permutation closure exceeds " + std::to_string(order_cap) + " elements");
        elems.push_back(prod);
        parent.push_back(static_cast<Element>(head));
        parent_gen.push_back(static_cast<Element>(s));
      }
      rmul.push_back(it->second);
    }
  }

  auto n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto *r = table.data() + i * n;
    r[0] = static_cast<Element>(i);
    for (std::size_t j = 1; j < n; ++j)
      r[j] = rmul[static_cast<std::size_t>(r[parent[j]]) * k + parent_gen[j]];
  }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (auto const &e : elems)
    labels.push_back(cycle_string(e));

  return FiniteGroup::from_trusted_table(n, std::move(table), 0, std::move(labels));
}

// ---------------------------------------------------------------------------
// subgroups

class Subgroup
{
public:
  /// Validates closure; throws NotSubgroup otherwise.
  Subgroup(FiniteGroup parent, ElementSet members, std::optional<bool> normal = std::nullopt)
  : parent_(std::move(parent)), members_(std::move(members)), normal_(normal)
  {
    if (members_.universe() != parent_.order() || !members_.contains(parent_.identity()))
      throw Error(Errc::not_subgroup, "identity missing");
    auto list = members_.elements();
    for (auto a : list) {
      if (!members_.contains(parent_.inv(a)))
        throw Error(Errc::not_subgroup, "not closed under inverse");
      for (auto b : list)
        if (!members_.contains(parent_.mul(a, b)))
          throw Error(Errc::not_subgroup, "not closed under product");
    }
    if (parent_.order() % members_.size() != 0)
      throw Error(Errc::not_subgroup, "order does not divide the group order");
  }

  /// Skips validation; for sets produced by closure.
  static Subgroup trusted(FiniteGroup parent, ElementSet members,
                          std::optional<bool> normal = std::nullopt)
  {
    Subgroup h;
    h.parent_ = std::move(parent);
    h.members_ = std::move(members);
    h.normal_ = normal;
    return h;
  }

  static Subgroup whole(FiniteGroup const &g)
  {
    ElementSet all(g.order());
    for (Element x = 0; x < g.order(); ++x)
      all.insert(x);
    return trusted(g, std::move(all), true);
  }

  static Subgroup trivial(FiniteGroup const &g)
  {
    ElementSet one(g.order());
    one.insert(g.identity());
    return trusted(g, std::move(one), true);
  }

  FiniteGroup const &parent() const noexcept { return parent_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::size_t index() const noexcept { return parent_.order() / members_.size(); }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == parent_.order(); }
  bool contains(Element x) const noexcept { return members_.contains(x); }
  ElementSet const &mask() const noexcept { return members_; }
  std::vector<Element> members() const { return members_.elements(); }

  /// Normality if already known from construction.
  std::optional<bool> known_normal() const noexcept { return normal_; }

  friend bool operator==(Subgroup const &a, Subgroup const &b)
  { return a.members_ == b.members_; }

private:
  Subgroup() = default;

  FiniteGroup parent_;
  ElementSet members_;
  std::optional<bool> normal_;
};

inline unsigned element_order(FiniteGroup const &g, Element x)
{ return g.element_order(x); }

/// Left-normed commutator [a,b,...] with [a,b] = a^{-1} b^{-1} a b.
inline Element commutator(FiniteGroup const &g, Element a, Element b)
{ return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)); }

inline Element commutator(FiniteGroup const &g, std::span<Element const> elems)
{
  if (elems.size() < 2)
    throw Error(Errc::arity_too_small, "commutator needs at least two elements");
  auto c = elems[0];
  for (std::size_t i = 1; i < elems.size(); ++i)
    c = commutator(g, c, elems[i]);
  return c;
}

inline Element commutator(FiniteGroup const &g, std::initializer_list<Element> elems)
{ return commutator(g, std::span<Element const>(elems.begin(), elems.size())); }

inline Subgroup subgroup_generated(FiniteGroup const &g, std::span<Element const> gens)
{
  ElementSet members(g.order());
  members.insert(g.identity());
  std::vector<Element> queue{g.identity()};
  detail::close_under(g.flat_table(), g.order(), gens, members, queue);
  return Subgroup::trusted(g, std::move(members));
}

inline Subgroup subgroup_generated(FiniteGroup const &g, ElementSet const &gens)
{
  auto list = gens.elements();
  return subgroup_generated(g, std::span<Element const>(list));
}

inline bool is_normal(FiniteGroup const &g, Subgroup const &h)
{
  if (auto known = h.known_normal())
    return *known;
  bool normal = true;
  h.mask().for_each([&](Element x) {
    if (!normal)
      return;
    for (auto s : g.generators())
      if (!h.contains(g.conj(x, s))) {
        normal = false;
        return;
      }
  });
  return normal;
}

/// Closure of `gens` under products and conjugation by g.
inline Subgroup normal_closure(FiniteGroup const &g, std::span<Element const> gens)
{
  ElementSet members(g.order());
  members.insert(g.identity());
  std::vector<Element> queue{g.identity()};
  std::vector<Element> all_gens(gens.begin(), gens.end());
  while (true) {
    detail::close_under(g.flat_table(), g.order(), all_gens, members, queue);
    bool grew = false;
    for (auto x : members.elements())
      for (auto s : g.generators()) {
        auto y = g.conj(x, s);
        if (!members.contains(y)) {
          all_gens.push_back(y);
          grew = true;
        }
      }
    if (!grew)
      break;
    queue = members.elements();
  }
  return Subgroup::trusted(g, std::move(members), true);
}

/// Result of G/N. Cosets are numbered by their smallest member index.
struct Quotient
{
  FiniteGroup group;
  std::vector<Element> projection;       ///< G index -> coset index
  std::vector<Element> representatives;  ///< coset index -> smallest member
};

inline Quotient quotient_group(FiniteGroup const &g, Subgroup const &n)
{
  if (!is_normal(g, n))
    throw Error(Errc::not_normal, "quotient by a non-normal subgroup");

  Quotient q;
  q.projection.assign(g.order(), no_element);
  auto members = n.members();
  for (Element x = 0; x < g.order(); ++x) {
    if (q.projection[x] != no_element)
      continue;
    auto id = static_cast<Element>(q.representatives.size());
    q.representatives.push_back(x);
    for (auto m : members)
      q.projection[g.mul(x, m)] = id;
  }

  auto r = q.representatives.size();
  std::vector<Element> table(r * r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      table[a * r + b] = q.projection[g.mul(q.representatives[a], q.representatives[b])];

  std::vector<std::string> labels;
  if (!g.labels().empty())
    for (auto rep : q.representatives)
      labels.push_back(g.labels()[rep] + "N");

  q.group = FiniteGroup::from_trusted_table(r, std::move(table), q.projection[g.identity()],
                                            std::move(labels));
  return q;
}

/// Pair (i, j) maps to index i*|H| + j.
inline FiniteGroup direct_product(FiniteGroup const &g, FiniteGroup const &h,
                                  std::size_t order_cap = default_order_cap)
{
  auto m = g.order(), k = h.order();
  if (m * k > order_cap)
    throw Error(Errc::order_cap_exceeded,
                "direct product of order " + std::to_string(m * k) + " exceeds cap");
  auto n = m * k;
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    auto a1 = static_cast<Element>(a / k), a2 = static_cast<Element>(a % k);
    auto *r = table.data() + a * n;
    for (std::size_t b = 0; b < n; ++b)
      r[b] = static_cast<Element>(g.mul(a1, static_cast<Element>(b / k)) * k +
                                  h.mul(a2, static_cast<Element>(b % k)));
  }
  std::vector<std::string> labels;
  if (!g.labels().empty() && !h.labels().empty()) {
    labels.reserve(n);
    for (std::size_t a = 0; a < n; ++a)
      labels.push_back("(" + g.labels()[a / k] + "," + h.labels()[a % k] + ")");
  }
  return FiniteGroup::from_trusted_table(n, std::move(table),
                                         static_cast<Element>(g.identity() * k + h.identity()),
                                         std::move(labels));
}

} // namespace twist
