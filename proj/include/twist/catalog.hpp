#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <cstdio>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "automorphism.hpp"
#include "constructions.hpp"
#include "group.hpp"
#include "structure.hpp"

namespace twist {

// ---------------------------------------------------------------------------
// group specs

/// How the cyclic factor of a semidirect spec acts on the base.
struct ActionRef
{
  enum class Kind { power, shift, images };
  Kind kind = Kind::power;
  std::int64_t exponent = 1;       ///< power: x -> x^exponent
  std::vector<Element> images;     ///< images: explicit automorphism

  std::string str() const
  {
    switch (kind) {
    case Kind::power: return "power(" + std::to_string(exponent) + ")";
    case Kind::shift: return "shift";
    case Kind::images: {
      std::string s = "images[";
      for (std::size_t i = 0; i < images.size(); ++i)
        s += (i ? ";" : "") + std::to_string(images[i]);
      return s + "]";
    }
    }
    return {};
  }
};

/// A named, reproducible recipe for a catalog group. The canonical text
/// form, e.g. "product(dihedral(4),cyclic(3))", round-trips through parse().
struct GroupSpec
{
  enum class Kind {
    cyclic,
    elementary_abelian,
    abelian,
    dihedral,
    dicyclic,
    symmetric,
    alternating,
    extraspecial,
    semidirect,
    product,
    imported,
  };

  Kind kind = Kind::cyclic;
  std::vector<std::int64_t> params;
  std::vector<GroupSpec> factors;
  ActionRef action;
  std::string path;

  static GroupSpec cyclic(std::int64_t m) { return {Kind::cyclic, {m}, {}, {}, {}}; }
  static GroupSpec abelian(std::vector<std::int64_t> factors)
  { return {Kind::abelian, std::move(factors), {}, {}, {}}; }
  static GroupSpec elementary_abelian(std::int64_t p, std::int64_t k)
  { return {Kind::elementary_abelian, {p, k}, {}, {}, {}}; }
  static GroupSpec dihedral(std::int64_t m) { return {Kind::dihedral, {m}, {}, {}, {}}; }
  static GroupSpec dicyclic(std::int64_t m) { return {Kind::dicyclic, {m}, {}, {}, {}}; }
  static GroupSpec symmetric(std::int64_t k) { return {Kind::symmetric, {k}, {}, {}, {}}; }
  static GroupSpec alternating(std::int64_t k) { return {Kind::alternating, {k}, {}, {}, {}}; }
  /// type 0: exponent p (Heisenberg), type 1: exponent p^2; rank = half the
  /// dimension of G/Z (exponent p only).
  static GroupSpec extraspecial(std::int64_t p, std::int64_t type, std::int64_t rank = 1)
  {
    if (rank == 1)
      return {Kind::extraspecial, {p, type}, {}, {}, {}};
    return {Kind::extraspecial, {p, type, rank}, {}, {}, {}};
  }
  static GroupSpec product(GroupSpec a, GroupSpec b)
  { return {Kind::product, {}, {std::move(a), std::move(b)}, {}, {}}; }
  static GroupSpec semidirect(GroupSpec base, ActionRef action, std::int64_t n)
  { return {Kind::semidirect, {n}, {std::move(base)}, std::move(action), {}}; }
  static GroupSpec imported(std::string path) { return {Kind::imported, {}, {}, {}, std::move(path)}; }

  std::string name() const;
  std::string display() const;
  static GroupSpec parse(std::string_view text);

  friend bool operator==(GroupSpec const &a, GroupSpec const &b) { return a.name() == b.name(); }
};

namespace detail {

inline std::string join_params(std::vector<std::int64_t> const &ps)
{
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i)
    s += (i ? "," : "") + std::to_string(ps[i]);
  return s;
}

inline std::int64_t ipow(std::int64_t b, std::int64_t e)
{
  std::int64_t r = 1;
  while (e-- > 0)
    r *= b;
  return r;
}

inline bool is_prime(std::int64_t p)
{
  if (p < 2)
    return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

} // namespace detail

inline std::string GroupSpec::name() const
{
  using detail::join_params;
  switch (kind) {
  case Kind::cyclic: return "cyclic(" + join_params(params) + ")";
  case Kind::elementary_abelian: return "elementary_abelian(" + join_params(params) + ")";
  case Kind::abelian: return "abelian(" + join_params(params) + ")";
  case Kind::dihedral: return "dihedral(" + join_params(params) + ")";
  case Kind::dicyclic: return "dicyclic(" + join_params(params) + ")";
  case Kind::symmetric: return "symmetric(" + join_params(params) + ")";
  case Kind::alternating: return "alternating(" + join_params(params) + ")";
  case Kind::extraspecial: {
    std::string s = "extraspecial(" + std::to_string(params[0]) + "," +
                    (params[1] == 0 ? "exponent_p" : "exponent_p2");
    if (params.size() > 2)
      s += "," + std::to_string(params[2]);
    return s + ")";
  }
  case Kind::semidirect:
    return "semidirect(" + factors[0].name() + "," + action.str() + "," +
           std::to_string(params[0]) + ")";
  case Kind::product: return "product(" + factors[0].name() + "," + factors[1].name() + ")";
  case Kind::imported: return "imported(" + path + ")";
  }
  return {};
}

inline std::string GroupSpec::display() const
{
  auto p = [&](std::size_t i) { return std::to_string(params[i]); };
  switch (kind) {
  case Kind::cyclic: return "C" + p(0);
  case Kind::elementary_abelian: return "C" + p(0) + "^" + p(1);
  case Kind::abelian: {
    std::string s;
    for (std::size_t i = 0; i < params.size(); ++i)
      s += (i ? "xC" : "C") + p(i);
    return s;
  }
  case Kind::dihedral: return "D" + std::to_string(2 * params[0]);
  case Kind::dicyclic: return params[0] == 2 ? "Q8" : "Dic" + p(0);
  case Kind::symmetric: return "S" + p(0);
  case Kind::alternating: return "A" + p(0);
  case Kind::extraspecial: {
    auto rank = params.size() > 2 ? params[2] : 1;
    auto order = std::to_string(detail::ipow(params[0], 2 * rank + 1));
    return (params[1] == 0 ? "Heis" : "Mod") + order;
  }
  case Kind::semidirect: {
    auto a = action.kind == ActionRef::Kind::power ? "[" + std::to_string(action.exponent) + "]"
             : action.kind == ActionRef::Kind::shift ? std::string("[shift]")
                                                     : std::string("[aut]");
    return "(" + factors[0].display() + "):" + a + "C" + p(0);
  }
  case Kind::product: return factors[0].display() + "x" + factors[1].display();
  case Kind::imported: return path;
  }
  return {};
}

namespace detail {

class SpecParser
{
public:
  explicit SpecParser(std::string_view text)
  : text_(text)
  {}

  GroupSpec parse_all()
  {
    auto s = spec();
    skip();
    if (pos_ != text_.size())
      fail("trailing characters");
    return s;
  }

private:
  [[noreturn]] void fail(std::string const &why) const
  {
    throw Error(Errc::parse_error,
                "group spec '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + why);
  }

  void skip()
  {
    while (pos_ < text_.size() && text_[pos_] == ' ')
      ++pos_;
  }

  void expect(char c)
  {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c)
  {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string ident()
  {
    skip();
    auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_)
      fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer()
  {
    skip();
    auto start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-')
      ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_ || (pos_ - start == 1 && text_[start] == '-'))
      fail("expected an integer");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  std::vector<std::int64_t> integers()
  {
    std::vector<std::int64_t> out{integer()};
    while (peek(',')) {
      ++pos_;
      out.push_back(integer());
    }
    return out;
  }

  ActionRef action()
  {
    auto kind = ident();
    ActionRef a;
    if (kind == "power") {
      a.kind = ActionRef::Kind::power;
      expect('(');
      a.exponent = integer();
      expect(')');
    } else if (kind == "shift") {
      a.kind = ActionRef::Kind::shift;
    } else if (kind == "images") {
      a.kind = ActionRef::Kind::images;
      expect('[');
      if (!peek(']')) {
        a.images.push_back(static_cast<Element>(integer()));
        while (peek(';')) {
          ++pos_;
          a.images.push_back(static_cast<Element>(integer()));
        }
      }
      expect(']');
    } else {
      fail("unknown action '" + kind + "'");
    }
    return a;
  }

  GroupSpec spec()
  {
    auto name = ident();
    expect('(');
    GroupSpec s;
    using K = GroupSpec::Kind;
    if (name == "cyclic" || name == "dihedral" || name == "dicyclic" || name == "symmetric" ||
        name == "alternating" || name == "abelian" || name == "elementary_abelian") {
      s.kind = name == "cyclic"        ? K::cyclic
               : name == "dihedral"    ? K::dihedral
               : name == "dicyclic"    ? K::dicyclic
               : name == "symmetric"   ? K::symmetric
               : name == "alternating" ? K::alternating
               : name == "abelian"     ? K::abelian
                                       : K::elementary_abelian;
      s.params = integers();
    } else if (name == "extraspecial") {
      s.kind = K::extraspecial;
      s.params.push_back(integer());
      expect(',');
      auto type = ident();
      if (type == "exponent_p")
        s.params.push_back(0);
      else if (type == "exponent_p2")
        s.params.push_back(1);
      else
        fail("unknown extraspecial type '" + type + "'");
      if (peek(',')) {
        ++pos_;
        s.params.push_back(integer());
      }
    } else if (name == "product") {
      s.kind = K::product;
      s.factors.push_back(spec());
      expect(',');
      s.factors.push_back(spec());
    } else if (name == "semidirect") {
      s.kind = K::semidirect;
      s.factors.push_back(spec());
      expect(',');
      s.action = action();
      expect(',');
      s.params.push_back(integer());
    } else if (name == "imported") {
      s.kind = K::imported;
      skip();
      auto start = pos_;
      int depth = 0;
      while (pos_ < text_.size() && (text_[pos_] != ')' || depth > 0)) {
        depth += text_[pos_] == '(';
        depth -= text_[pos_] == ')';
        ++pos_;
      }
      s.path = std::string(text_.substr(start, pos_ - start));
    } else {
      throw Error(Errc::unknown_family, "unknown group family '" + name + "'");
    }
    expect(')');
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline GroupSpec GroupSpec::parse(std::string_view text)
{ return detail::SpecParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// group file format

/// Reads a group document: {"name": ..., "table": [[...]]} or
/// {"name": ..., "generators": [[images...], ...]} (0-based points).
inline FiniteGroup import_group(nlohmann::json const &doc, std::size_t order_cap = default_order_cap)
{
  if (!doc.is_object())
    throw Error(Errc::parse_error, "group document must be an object");
  bool has_table = doc.contains("table"), has_gens = doc.contains("generators");
  if (has_table == has_gens)
    throw Error(Errc::parse_error, "group document needs exactly one of 'table' or 'generators'");
  try {
    if (has_table) {
      auto rows = doc.at("table").get<std::vector<std::vector<Element>>>();
      std::vector<std::string> labels;
      if (doc.contains("labels"))
        labels = doc.at("labels").get<std::vector<std::string>>();
      try {
        return build_from_table(rows, std::move(labels), order_cap);
      } catch (Error const &e) {
        if (e.code() == Errc::order_cap_exceeded)
          throw;
        throw Error(Errc::validation_error, e.what());
      }
    }
    auto gens = doc.at("generators").get<std::vector<Permutation>>();
    try {
      return build_from_permutation_generators(gens, order_cap);
    } catch (Error const &e) {
      if (e.code() == Errc::order_cap_exceeded)
        throw;
      throw Error(Errc::validation_error, e.what());
    }
  } catch (nlohmann::json::exception const &e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline nlohmann::json export_group(FiniteGroup const &g, std::string const &name)
{
  nlohmann::json doc;
  doc["name"] = name;
  doc["table"] = g.table();
  if (!g.labels().empty())
    doc["labels"] = g.labels();
  return doc;
}

inline nlohmann::json read_json_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::parse_error, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (nlohmann::json::exception const &e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

inline FiniteGroup load_group_file(std::string const &path, std::size_t order_cap = default_order_cap)
{ return import_group(read_json_file(path), order_cap); }

/// Automorphism document: a bare array of images, or {"images": [...]}.
inline Automorphism import_automorphism(FiniteGroup const &g, nlohmann::json const &doc)
{
  std::vector<Element> images;
  try {
    images = doc.is_array() ? doc.get<std::vector<Element>>()
                            : doc.at("images").get<std::vector<Element>>();
  } catch (nlohmann::json::exception const &e) {
    throw Error(Errc::parse_error, e.what());
  }
  return Automorphism::from_images(g, std::move(images));
}

inline nlohmann::json export_automorphism(Automorphism const &a, std::string const &group_name)
{
  nlohmann::json doc;
  doc["group"] = group_name;
  doc["order"] = a.order();
  doc["images"] = std::vector<Element>(a.images().begin(), a.images().end());
  return doc;
}

// ---------------------------------------------------------------------------
// families

namespace detail {

inline FiniteGroup cyclic_group(std::size_t m)
{
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      table[i * m + j] = static_cast<Element>((i + j) % m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i)
    labels.push_back(i == 0 ? "1" : i == 1 ? "a" : "a^" + std::to_string(i));
  return FiniteGroup::from_trusted_table(m, std::move(table), 0, std::move(labels));
}

/// Groups a^i b^j (i < m, j < 2) with b a = a^{-1} b and b^2 = a^{square}.
inline FiniteGroup twisted_cyclic_extension(std::size_t m, std::size_t square, char a, char b)
{
  auto n = 2 * m;
  auto idx = [&](std::size_t i, std::size_t j) { return static_cast<Element>(j * m + i % m); };
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto i = x % m, j = x / m, k = y % m, l = y / m;
      auto ki = j ? (m - k) % m : k;
      auto e = i + ki;
      if (j && l)
        table[x * n + y] = idx(e + square, 0);
      else
        table[x * n + y] = idx(e, j ^ l);
    }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    auto i = x % m, j = x / m;
    std::string s = i == 0 ? "" : i == 1 ? std::string(1, a) : a + ("^" + std::to_string(i));
    if (j)
      s += b;
    labels.push_back(s.empty() ? "1" : s);
  }
  return FiniteGroup::from_trusted_table(n, std::move(table), 0, std::move(labels));
}

/// Heisenberg-type group: (a, b, c) with a, b in F_p^rank, c in F_p and
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b').
inline FiniteGroup heisenberg_group(std::size_t p, std::size_t rank)
{
  auto dim = 2 * rank + 1;
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i)
    n *= p;
  auto decode = [&](std::size_t x, std::vector<std::size_t> &v) {
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = x % p;
      x /= p;
    }
  };
  std::vector<std::size_t> u(dim), v(dim), w(dim);
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    decode(x, u);
    for (std::size_t y = 0; y < n; ++y) {
      decode(y, v);
      for (std::size_t i = 0; i < 2 * rank; ++i)
        w[i] = (u[i] + v[i]) % p;
      auto c = u[dim - 1] + v[dim - 1];
      for (std::size_t i = 0; i < rank; ++i)
        c += u[i] * v[rank + i];
      w[dim - 1] = c % p;
      std::size_t z = 0;
      for (std::size_t i = dim; i-- > 0;)
        z = z * p + w[i];
      table[x * n + y] = static_cast<Element>(z);
    }
  }
  return FiniteGroup::from_trusted_table(n, std::move(table), 0, {});
}

inline void check_cap(std::int64_t order, std::size_t cap)
{
  if (order > static_cast<std::int64_t>(cap))
    throw Error(Errc::order_cap_exceeded,
                "group of order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
}

} // namespace detail

/// Order of the group a spec names, without building it (0 if unknown).
inline std::int64_t spec_order(GroupSpec const &s)
{
  using K = GroupSpec::Kind;
  switch (s.kind) {
  case K::cyclic: return s.params[0];
  case K::elementary_abelian: return detail::ipow(s.params[0], s.params[1]);
  case K::abelian: {
    std::int64_t o = 1;
    for (auto d : s.params)
      o *= d;
    return o;
  }
  case K::dihedral: return 2 * s.params[0];
  case K::dicyclic: return 4 * s.params[0];
  case K::symmetric: {
    std::int64_t o = 1;
    for (std::int64_t i = 2; i <= s.params[0]; ++i)
      o *= i;
    return o;
  }
  case K::alternating: {
    std::int64_t o = 1;
    for (std::int64_t i = 3; i <= s.params[0]; ++i)
      o *= i;
    return o;
  }
  case K::extraspecial:
    return detail::ipow(s.params[0], 2 * (s.params.size() > 2 ? s.params[2] : 1) + 1);
  case K::semidirect: return spec_order(s.factors[0]) * s.params[0];
  case K::product: return spec_order(s.factors[0]) * spec_order(s.factors[1]);
  case K::imported: return 0;
  }
  return 0;
}

FiniteGroup generate_family(GroupSpec const &spec, std::size_t order_cap = default_order_cap);

namespace detail {

inline Automorphism action_automorphism(FiniteGroup const &base, GroupSpec const &base_spec,
                                        ActionRef const &act)
{
  std::vector<Element> img(base.order());
  switch (act.kind) {
  case ActionRef::Kind::power:
    for (Element x = 0; x < base.order(); ++x)
      img[x] = base.pow(x, act.exponent);
    break;
  case ActionRef::Kind::shift: {
    // rotate the coordinates of an elementary abelian base
    if (base_spec.kind != GroupSpec::Kind::elementary_abelian)
      throw Error(Errc::invalid_argument, "shift action needs an elementary_abelian base");
    auto p = static_cast<std::size_t>(base_spec.params[0]);
    auto k = static_cast<std::size_t>(base_spec.params[1]);
    for (std::size_t x = 0; x < base.order(); ++x) {
      std::vector<std::size_t> d(k);
      auto y = x;
      for (std::size_t i = k; i-- > 0;) {
        d[i] = y % p;
        y /= p;
      }
      std::rotate(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
      std::size_t z = 0;
      for (auto digit : d)
        z = z * p + digit;
      img[x] = static_cast<Element>(z);
    }
    break;
  }
  case ActionRef::Kind::images:
    img = act.images;
    break;
  }
  if (!is_automorphism(base, img))
    throw Error(Errc::invalid_argument, "action " + act.str() + " is not an automorphism of " +
                                          base_spec.name());
  return Automorphism::trusted(base, std::move(img));
}

} // namespace detail

/// Builds the group a spec names.
inline FiniteGroup generate_family(GroupSpec const &spec, std::size_t order_cap)
{
  using K = GroupSpec::Kind;
  auto const &ps = spec.params;
  auto need = [&](bool ok, std::string const &why) {
    if (!ok)
      throw Error(Errc::invalid_argument, spec.name() + ": " + why);
  };

  if (spec.kind != K::imported)
    detail::check_cap(spec_order(spec), order_cap);

  switch (spec.kind) {
  case K::cyclic:
    need(ps.size() == 1 && ps[0] >= 1, "needs m >= 1");
    return detail::cyclic_group(static_cast<std::size_t>(ps[0]));
  case K::elementary_abelian: {
    need(ps.size() == 2 && detail::is_prime(ps[0]) && ps[1] >= 0, "needs prime p and k >= 0");
    FiniteGroup g;
    for (std::int64_t i = 0; i < ps[1]; ++i)
      g = direct_product(g, detail::cyclic_group(static_cast<std::size_t>(ps[0])), order_cap);
    return g;
  }
  case K::abelian: {
    need(!ps.empty(), "needs at least one factor");
    FiniteGroup g;
    for (auto d : ps) {
      need(d >= 1, "factors must be positive");
      g = direct_product(g, detail::cyclic_group(static_cast<std::size_t>(d)), order_cap);
    }
    return g;
  }
  case K::dihedral:
    need(ps.size() == 1 && ps[0] >= 1, "needs m >= 1");
    return detail::twisted_cyclic_extension(static_cast<std::size_t>(ps[0]), 0, 'r', 's');
  case K::dicyclic:
    need(ps.size() == 1 && ps[0] >= 1, "needs m >= 1");
    return detail::twisted_cyclic_extension(static_cast<std::size_t>(2 * ps[0]),
                                            static_cast<std::size_t>(ps[0]), 'a', 'x');
  case K::symmetric: {
    need(ps.size() == 1 && ps[0] >= 1, "needs k >= 1");
    auto k = static_cast<std::size_t>(ps[0]);
    std::vector<Permutation> gens;
    if (k >= 2) {
      Permutation t(k), c(k);
      std::iota(t.begin(), t.end(), Element{0});
      std::swap(t[0], t[1]);
      for (std::size_t i = 0; i < k; ++i)
        c[i] = static_cast<Element>((i + 1) % k);
      gens = {t, c};
    }
    return build_from_permutation_generators(gens, order_cap);
  }
  case K::alternating: {
    need(ps.size() == 1 && ps[0] >= 1, "needs k >= 1");
    auto k = static_cast<std::size_t>(ps[0]);
    std::vector<Permutation> gens;
    if (k >= 3) {
      Permutation t(k), c(k);
      std::iota(t.begin(), t.end(), Element{0});
      t[0] = 1;
      t[1] = 2;
      t[2] = 0;
      std::iota(c.begin(), c.end(), Element{0});
      // (0 1 ... k-1) for odd k, (1 2 ... k-1) for even k
      std::size_t start = k % 2 ? 0 : 1;
      for (std::size_t i = start; i < k; ++i)
        c[i] = static_cast<Element>(i + 1 < k ? i + 1 : start);
      gens = {t, c};
    }
    return build_from_permutation_generators(gens, order_cap);
  }
  case K::extraspecial: {
    need(ps.size() >= 2 && detail::is_prime(ps[0]) && ps[0] > 2,
         "needs an odd prime (use dihedral(4) / dicyclic(2) for p = 2)");
    auto p = static_cast<std::size_t>(ps[0]);
    auto rank = ps.size() > 2 ? ps[2] : 1;
    need(rank >= 1, "rank must be positive");
    if (ps[1] == 0)
      return detail::heisenberg_group(p, static_cast<std::size_t>(rank));
    need(rank == 1, "exponent_p2 type is only built for order p^3");
    auto base = detail::cyclic_group(p * p);
    std::vector<Element> img(p * p);
    for (Element x = 0; x < p * p; ++x)
      img[x] = base.pow(x, static_cast<std::int64_t>(p + 1));
    return semidirect_with_cyclic(base, Automorphism::trusted(base, img),
                                  static_cast<unsigned>(p), order_cap)
      .product;
  }
  case K::semidirect: {
    need(ps.size() == 1 && ps[0] >= 1 && spec.factors.size() == 1, "needs base, action, n");
    auto base = generate_family(spec.factors[0], order_cap);
    auto alpha = detail::action_automorphism(base, spec.factors[0], spec.action);
    return semidirect_with_cyclic(base, alpha, static_cast<unsigned>(ps[0]), order_cap).product;
  }
  case K::product:
    need(spec.factors.size() == 2, "needs two factors");
    return direct_product(generate_family(spec.factors[0], order_cap),
                          generate_family(spec.factors[1], order_cap), order_cap);
  case K::imported:
    return load_group_file(spec.path, order_cap);
  }
  throw Error(Errc::unknown_family, spec.name());
}

// ---------------------------------------------------------------------------
// fingerprints

/// Isomorphism invariants used to deduplicate the catalog.
struct Fingerprint
{
  std::size_t order = 0;
  std::vector<std::pair<unsigned, std::size_t>> order_histogram;  ///< (element order, count)
  std::vector<std::size_t> class_sizes;                           ///< sorted
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  unsigned exponent = 1;
  /// Sorted per-element rows (order, class size, #p-th roots for each prime p
  /// dividing |G|). Separates e.g. C4 x| C4 from C2 x Q8, which agree on
  /// everything above.
  std::vector<std::vector<std::size_t>> element_profile;

  auto operator<=>(Fingerprint const &) const = default;

  std::uint64_t profile_hash() const
  {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto const &row : element_profile)
      for (auto v : row) {
        h ^= v + 1;
        h *= 0x100000001b3ULL;
      }
    return h;
  }

  std::string str() const
  {
    std::ostringstream os;
    os << order << "|";
    for (auto [o, c] : order_histogram)
      os << o << ":" << c << ",";
    os << "|";
    std::map<std::size_t, std::size_t> cls;
    for (auto s : class_sizes)
      ++cls[s];
    for (auto [s, c] : cls)
      os << s << "x" << c << ",";
    os << "|Z" << center_order << "|D" << derived_order << "|e" << exponent << "|P" << std::hex
       << std::setw(16) << std::setfill('0') << profile_hash();
    return os.str();
  }
};

inline Fingerprint fingerprint(FiniteGroup const &g)
{
  Fingerprint f;
  f.order = g.order();
  std::map<unsigned, std::size_t> hist;
  for (Element x = 0; x < g.order(); ++x)
    ++hist[g.element_order(x)];
  f.order_histogram.assign(hist.begin(), hist.end());
  for (auto rep : class_representatives(g))
    f.class_sizes.push_back(g.class_size(rep));
  std::sort(f.class_sizes.begin(), f.class_sizes.end());
  f.center_order = center(g).size();
  f.derived_order = g.is_abelian() ? 1 : derived_subgroup(g).size();
  f.exponent = g.exponent();

  std::vector<unsigned> primes;
  for (unsigned p = 2; p <= g.order(); ++p)
    if (g.order() % p == 0 && detail::is_prime(p))
      primes.push_back(p);
  std::vector<std::vector<std::size_t>> roots(primes.size(), std::vector<std::size_t>(g.order()));
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (Element x = 0; x < g.order(); ++x)
      ++roots[i][g.pow(x, primes[i])];
  f.element_profile.resize(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    auto &row = f.element_profile[x];
    row = {g.element_order(x), g.class_size(x)};
    for (auto const &r : roots)
      row.push_back(r[x]);
  }
  std::sort(f.element_profile.begin(), f.element_profile.end());
  return f;
}

// ---------------------------------------------------------------------------
// catalog

struct CatalogOptions
{
  std::size_t max_order = 16;
  bool solvable_only = false;
  unsigned p_group = 0;           ///< restrict to p-groups for this prime (0: off)
  unsigned exponent_divides = 0;  ///< restrict to exponent dividing this (0: off)
  std::size_t order_cap = 512;
};

struct CatalogEntry
{
  GroupSpec spec;
  FiniteGroup group;
  Fingerprint fingerprint;
  bool solvable = true;
  std::vector<std::string> aliases;  ///< other specs merged into this fingerprint

  std::string name() const { return spec.name(); }
};

struct Catalog
{
  CatalogOptions options;
  std::vector<CatalogEntry> entries;

  /// Number of specs dropped because their fingerprint was already present.
  std::size_t merged() const
  {
    std::size_t m = 0;
    for (auto const &e : entries)
      m += e.aliases.size();
    return m;
  }

  nlohmann::json manifest() const
  {
    nlohmann::json doc;
    doc["max_order"] = options.max_order;
    doc["solvable_only"] = options.solvable_only;
    doc["p_group"] = options.p_group;
    doc["exponent_divides"] = options.exponent_divides;
    auto &groups = doc["groups"] = nlohmann::json::array();
    for (auto const &e : entries)
      groups.push_back({{"spec", e.spec.name()},
                        {"display", e.spec.display()},
                        {"order", e.group.order()},
                        {"fingerprint", e.fingerprint.str()},
                        {"solvable", e.solvable},
                        {"source", e.spec.kind == GroupSpec::Kind::product ? "product" : "family"},
                        {"aliases", e.aliases}});
    doc["fingerprint_merges"] = merged();
    return doc;
  }

  /// FNV-1a over each entry's spec name and fingerprint, as 16 hex digits.
  std::string identity() const
  {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](std::string const &s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
      }
      h ^= '\n';
      h *= 1099511628211ull;
    };
    for (auto const &e : entries) {
      feed(e.spec.name());
      feed(e.fingerprint.str());
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

namespace detail {

inline int spec_rank(GroupSpec const &s)
{
  return static_cast<int>(s.kind) * 1000 +
         (s.kind == GroupSpec::Kind::product
            ? spec_rank(s.factors[0]) / 1000 + spec_rank(s.factors[1]) / 1000
            : 0);
}

/// Preferred representative among specs sharing a fingerprint.
inline bool prefer(GroupSpec const &a, GroupSpec const &b)
{
  auto ra = spec_rank(a), rb = spec_rank(b);
  if (ra != rb)
    return ra < rb;
  auto na = a.name(), nb = b.name();
  if (na.size() != nb.size())
    return na.size() < nb.size();
  return na < nb;
}

inline bool is_prime_power_of(std::int64_t n, std::int64_t p)
{
  if (n < 1)
    return false;
  while (n % p == 0)
    n /= p;
  return n == 1;
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m)
{
  std::int64_t r = 1 % m;
  b %= m;
  while (e-- > 0)
    r = r * b % m;
  return r;
}

/// Non-product family specs up to max_order.
inline std::vector<GroupSpec> base_specs(std::int64_t max_order)
{
  std::vector<GroupSpec> out;
  for (std::int64_t m = 1; m <= max_order; ++m)
    out.push_back(GroupSpec::cyclic(m));

  // invariant factors d1 | d2 | ... with at least two factors
  std::vector<std::int64_t> cur;
  auto rec = [&](auto &self, std::int64_t prod) -> void {
    if (cur.size() >= 2)
      out.push_back(GroupSpec::abelian(cur));
    auto last = cur.empty() ? 2 : cur.back();
    for (auto d = last; prod * d <= max_order; d += cur.empty() ? 1 : last) {
      if (cur.empty() || d % last == 0) {
        cur.push_back(d);
        self(self, prod * d);
        cur.pop_back();
      }
    }
  };
  rec(rec, 1);

  for (std::int64_t p = 2; p <= max_order; ++p)
    if (is_prime(p))
      for (std::int64_t k = 2; ipow(p, k) <= max_order; ++k)
        out.push_back(GroupSpec::elementary_abelian(p, k));
  for (std::int64_t m = 3; 2 * m <= max_order; ++m)
    out.push_back(GroupSpec::dihedral(m));
  for (std::int64_t m = 2; 4 * m <= max_order; ++m)
    out.push_back(GroupSpec::dicyclic(m));
  for (std::int64_t k = 3; k <= 6; ++k) {
    GroupSpec s = GroupSpec::symmetric(k);
    if (spec_order(s) <= max_order)
      out.push_back(s);
    GroupSpec a = GroupSpec::alternating(k + 1);
    if (spec_order(a) <= max_order)
      out.push_back(a);
  }
  for (std::int64_t p = 3; p * p * p <= max_order; ++p) {
    if (!is_prime(p))
      continue;
    out.push_back(GroupSpec::extraspecial(p, 0));
    out.push_back(GroupSpec::extraspecial(p, 1));
    for (std::int64_t rank = 2; ipow(p, 2 * rank + 1) <= max_order; ++rank)
      out.push_back(GroupSpec::extraspecial(p, 0, rank));
  }

  // metacyclic C_m x|_r C_k: one r per cyclic subgroup of units of order d | k, d > 1
  for (std::int64_t m = 3; 2 * m <= max_order; ++m) {
    for (std::int64_t k = 2; m * k <= max_order; ++k) {
      std::vector<std::vector<std::int64_t>> seen;
      for (std::int64_t r = 2; r < m; ++r) {
        if (std::gcd(r, m) != 1 || mod_pow(r, k, m) != 1)
          continue;
        std::vector<std::int64_t> sub;
        for (std::int64_t x = r; x != 1; x = x * r % m)
          sub.push_back(x);
        sub.push_back(1);
        std::sort(sub.begin(), sub.end());
        if (std::find(seen.begin(), seen.end(), sub) != seen.end())
          continue;
        seen.push_back(sub);
        out.push_back(GroupSpec::semidirect(GroupSpec::cyclic(m), {ActionRef::Kind::power, r, {}}, k));
      }
    }
  }

  // generalized dihedral groups of non-cyclic abelian groups
  auto n_base = out.size();
  for (std::size_t i = 0; i < n_base; ++i) {
    auto const &s = out[i];
    if ((s.kind == GroupSpec::Kind::abelian || s.kind == GroupSpec::Kind::elementary_abelian) &&
        2 * spec_order(s) <= max_order) {
      bool exponent_two = s.kind == GroupSpec::Kind::elementary_abelian
                            ? s.params[0] == 2
                            : std::all_of(s.params.begin(), s.params.end(),
                                          [](auto d) { return d <= 2; });
      if (!exponent_two)
        out.push_back(GroupSpec::semidirect(s, {ActionRef::Kind::power, -1, {}}, 2));
    }
  }

  // coordinate shifts on elementary abelian groups (wreath-type)
  for (std::int64_t p = 2; p <= max_order; ++p) {
    if (!is_prime(p))
      continue;
    for (std::int64_t k = 2; ipow(p, k) * k <= max_order; ++k)
      for (std::int64_t j = 1; j <= 3 && ipow(p, k) * k * j <= max_order; ++j)
        out.push_back(GroupSpec::semidirect(GroupSpec::elementary_abelian(p, k),
                                            {ActionRef::Kind::shift, 1, {}}, k * j));
  }
  return out;
}

} // namespace detail

/// All family instances and their direct products up to max_order,
/// deduplicated by fingerprint and sorted by (order, fingerprint, spec name).
inline Catalog enumerate_catalog(CatalogOptions const &opts)
{
  if (opts.max_order > opts.order_cap)
    throw Error(Errc::order_cap_exceeded, "catalog max_order " + std::to_string(opts.max_order) +
                                            " exceeds cap " + std::to_string(opts.order_cap));
  auto max = static_cast<std::int64_t>(opts.max_order);

  auto admissible_order = [&](std::int64_t order) {
    return order <= max && (opts.p_group == 0 || detail::is_prime_power_of(order, opts.p_group));
  };

  std::map<Fingerprint, CatalogEntry> by_fp;
  auto add = [&](GroupSpec spec, FiniteGroup g) -> bool {
    if (opts.exponent_divides && opts.exponent_divides % g.exponent() != 0)
      return false;
    auto fp = fingerprint(g);
    auto it = by_fp.find(fp);
    if (it == by_fp.end()) {
      bool solvable = is_solvable(g);
      if (opts.solvable_only && !solvable)
        return false;
      by_fp.emplace(fp, CatalogEntry{std::move(spec), std::move(g), fp, solvable, {}});
      return true;
    }
    auto &e = it->second;
    if (detail::prefer(spec, e.spec)) {
      e.aliases.push_back(e.spec.name());
      e.spec = std::move(spec);
      e.group = std::move(g);
    } else {
      e.aliases.push_back(spec.name());
    }
    return false;
  };

  for (auto &spec : detail::base_specs(max))
    if (admissible_order(spec_order(spec)))
      add(spec, generate_family(spec, opts.order_cap));

  // close under direct products of nontrivial members
  std::set<std::string> tried;
  while (true) {
    std::vector<std::pair<GroupSpec, std::size_t>> reps;
    for (auto const &[fp, e] : by_fp)
      if (e.group.order() > 1)
        reps.emplace_back(e.spec, e.group.order());
    bool grew = false;
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i; j < reps.size(); ++j) {
        auto order = static_cast<std::int64_t>(reps[i].second * reps[j].second);
        if (!admissible_order(order))
          continue;
        auto const &a = reps[i].first, &b = reps[j].first;
        auto spec = a.name() <= b.name() ? GroupSpec::product(a, b) : GroupSpec::product(b, a);
        if (!tried.insert(spec.name()).second)
          continue;
        grew |= add(spec, generate_family(spec, opts.order_cap));
      }
    if (!grew)
      break;
  }

  Catalog cat;
  cat.options = opts;
  for (auto &[fp, e] : by_fp) {
    std::sort(e.aliases.begin(), e.aliases.end());
    e.aliases.erase(std::unique(e.aliases.begin(), e.aliases.end()), e.aliases.end());
    cat.entries.push_back(std::move(e));
  }
  std::sort(cat.entries.begin(), cat.entries.end(), [](auto const &a, auto const &b) {
    if (a.group.order() != b.group.order())
      return a.group.order() < b.group.order();
    if (a.fingerprint != b.fingerprint)
      return a.fingerprint < b.fingerprint;
    return a.spec.name() < b.spec.name();
  });
  return cat;
}

} // namespace twist
