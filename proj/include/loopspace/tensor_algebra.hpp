#pragma once

/*
 * Finitely presented graded tensor algebras over a field.
 *
 * Dimensions of T(generators)/(relations) are computed degree by degree with
 * exact linear algebra: enumerate the free-algebra words of each degree,
 * span the ideal's degree-d slice by left*relation*right products, and count
 * dimensions as words minus rank.  Rank uses exact rational elimination over
 * Q and modular arithmetic over F_p.  Rows whose relations have at most two
 * monomials (commutator-style presentations) take a ratio-tracking
 * union-find fast path; anything wider goes through general sparse
 * elimination under stricter word caps.
 *
 * Relation grammar: sums of optionally signed terms, each an optional
 * integer coefficient times '*'-separated factors; a factor is a generator
 * name or a commutator bracket [x,y], which expands to the graded
 * commutator x*y - (-1)^{|x||y|} y*x.
 */

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "loopspace/homology.hpp"

namespace loopspace {

struct Generator {
  std::string name;
  int degree = 1;
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Term {
  Int coeff;
  std::vector<int> word;  // generator indices
  friend bool operator==(const Term&, const Term&) = default;
};

struct AlgebraElement {
  std::vector<Term> terms;  // canonical: sorted by word, nonzero coefficients

  static AlgebraElement zero() { return {}; }

  static AlgebraElement monomial(Int coeff, std::vector<int> word) {
    AlgebraElement e;
    e.terms.push_back({std::move(coeff), std::move(word)});
    e.canonicalize();
    return e;
  }

  void canonicalize() {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.word < b.word; });
    std::vector<Term> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().word == t.word)
        out.back().coeff += t.coeff;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.coeff == 0; }),
              out.end());
    terms = std::move(out);
  }

  bool is_zero() const { return terms.empty(); }

  friend AlgebraElement operator+(const AlgebraElement& a,
                                  const AlgebraElement& b) {
    AlgebraElement out;
    out.terms = a.terms;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    out.canonicalize();
    return out;
  }

  friend AlgebraElement operator*(const AlgebraElement& a,
                                  const AlgebraElement& b) {
    AlgebraElement out;
    for (const auto& x : a.terms)
      for (const auto& y : b.terms) {
        Term t;
        t.coeff = x.coeff * y.coeff;
        t.word = x.word;
        t.word.insert(t.word.end(), y.word.begin(), y.word.end());
        out.terms.push_back(std::move(t));
      }
    out.canonicalize();
    return out;
  }

  AlgebraElement scaled(const Int& c) const {
    AlgebraElement out = *this;
    for (auto& t : out.terms) t.coeff *= c;
    out.canonicalize();
    return out;
  }

  // canonical form makes term-list equality semantic equality
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) =
      default;
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<AlgebraElement> relations;
  CoefficientRing field = CoefficientRing::rationals();
};

inline int generator_index(const Presentation& p, const std::string& name) {
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    if (p.generators[i].name == name) return static_cast<int>(i);
  throw validation_error("unknown generator: " + name);
}

inline int word_degree(const std::vector<int>& word,
                       const std::vector<Generator>& gens) {
  int d = 0;
  for (int g : word) d += gens[g].degree;
  return d;
}

/* Degree of a homogeneous element; throws on inhomogeneous input. */
inline int element_degree(const AlgebraElement& e,
                          const std::vector<Generator>& gens) {
  if (e.is_zero()) return 0;
  int d = word_degree(e.terms[0].word, gens);
  for (const auto& t : e.terms)
    if (word_degree(t.word, gens) != d)
      throw validation_error("relation is not homogeneous");
  return d;
}

/* [x, y] = x*y - (-1)^{|x||y|} y*x. */
inline AlgebraElement graded_commutator(const Presentation& p, int x, int y) {
  long long dx = p.generators[x].degree;
  long long dy = p.generators[y].degree;
  Int sign = (dx * dy) % 2 == 0 ? 1 : -1;
  AlgebraElement e;
  e.terms.push_back({1, {x, y}});
  e.terms.push_back({-sign, {y, x}});
  e.canonicalize();
  return e;
}

inline AlgebraElement graded_commutator(const Presentation& p,
                                        const std::string& x,
                                        const std::string& y) {
  return graded_commutator(p, generator_index(p, x), generator_index(p, y));
}

/* ----- relation grammar ----- */

namespace detail {

struct RelationParser {
  const std::string& text;
  const Presentation& pres;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                    text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw validation_error("relation parse error at position " +
                           std::to_string(pos) + ": " + why + " in \"" + text +
                           "\"");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected a generator name");
    return text.substr(start, pos - start);
  }

  AlgebraElement factor() {
    skip_ws();
    if (eat('[')) {
      std::string x = ident();
      if (!eat(',')) fail("expected ',' in commutator");
      std::string y = ident();
      if (!eat(']')) fail("expected ']' in commutator");
      return graded_commutator(pres, x, y);
    }
    if (pos < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      return AlgebraElement::monomial(Int(text.substr(start, pos - start)),
                                      {});
    }
    std::string name = ident();
    return AlgebraElement::monomial(1, {generator_index(pres, name)});
  }

  AlgebraElement term() {
    AlgebraElement out = factor();
    while (true) {
      skip_ws();
      if (!eat('*')) break;
      out = out * factor();
    }
    return out;
  }

  AlgebraElement element() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    AlgebraElement out = term();
    if (neg) out = out.scaled(-1);
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      if (eat('+'))
        out = out + term();
      else if (eat('-'))
        out = out + term().scaled(-1);
      else
        fail("expected '+' or '-'");
    }
    return out;
  }
};

}  // namespace detail

inline AlgebraElement parse_element(const std::string& text,
                                    const Presentation& pres) {
  detail::RelationParser parser{text, pres};
  AlgebraElement e = parser.element();
  for (const auto& t : e.terms)
    if (t.word.empty())
      throw validation_error(
          "relation has a constant term; relations must be homogeneous of "
          "positive degree");
  return e;
}

inline std::string to_text(const AlgebraElement& e, const Presentation& pres) {
  if (e.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const auto& t = e.terms[i];
    Int mag = t.coeff < 0 ? Int(-t.coeff) : t.coeff;
    if (i == 0)
      out += t.coeff < 0 ? "-" : "";
    else
      out += t.coeff < 0 ? " - " : " + ";
    std::string body;
    if (mag != 1 || t.word.empty()) body = mag.str();
    for (int g : t.word) {
      if (!body.empty()) body += "*";
      body += pres.generators[g].name;
    }
    out += body;
  }
  return out;
}

inline void validate_presentation(const Presentation& p) {
  for (const auto& g : p.generators) {
    if (g.name.empty() ||
        (!std::isalpha(static_cast<unsigned char>(g.name[0])) &&
         g.name[0] != '_'))
      throw validation_error("generator name must be an identifier: \"" +
                             g.name + "\"");
    if (g.degree < 1)
      throw validation_error("generator degrees must be >= 1");
  }
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    for (std::size_t j = i + 1; j < p.generators.size(); ++j)
      if (p.generators[i].name == p.generators[j].name)
        throw validation_error("duplicate generator name: " +
                               p.generators[i].name);
  for (const auto& r : p.relations) {
    int d = element_degree(r, p.generators);  // throws if inhomogeneous
    if (!r.is_zero() && d < 1)
      throw validation_error("relations must have positive degree");
  }
}

inline json to_json(const Presentation& p) {
  json gens = json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"name", g.name}, {"degree", g.degree}});
  json rels = json::array();
  for (const auto& r : p.relations) rels.push_back(to_text(r, p));
  return json{
      {"generators", gens}, {"relations", rels}, {"field", p.field.token()}};
}

/* ----- dimension counting ----- */

/* Coefficients of 1/(1 - sum_i t^{d_i}): word counts of the free algebra. */
inline PowerSeries free_algebra_dims(const std::vector<int>& degrees,
                                     int trunc) {
  for (int d : degrees)
    if (d < 1) throw validation_error("generator degrees must be >= 1");
  PowerSeries f(trunc);
  f.c[0] = 1;
  for (int d = 1; d <= trunc; ++d)
    for (int g : degrees)
      if (g <= d) f.c[d] += f.c[d - g];
  return f;
}

inline PowerSeries free_algebra_dims(const Presentation& p, int trunc) {
  std::vector<int> degrees;
  for (const auto& g : p.generators) degrees.push_back(g.degree);
  return free_algebra_dims(degrees, trunc);
}

struct QuotientCaps {
  int degree_cap_two = 24;          // <= 2 generators
  int degree_cap_many = 14;         // >= 3 generators
  long long max_words = 8'000'000;  // union-find path, per degree
  long long general_max_words = 60'000;  // general elimination, per degree
};

namespace detail {

/* exact field ops, F_p flavor */
struct FpOps {
  long long p;
  using V = long long;
  V from_int(const Int& v) const {
    Int r = v % p;
    if (r < 0) r += p;
    return static_cast<long long>(r);
  }
  bool is_zero(V v) const { return v == 0; }
  V add(V a, V b) const { return (a + b) % p; }
  V neg(V a) const { return a == 0 ? 0 : p - a; }
  V mul(V a, V b) const {
    return static_cast<long long>(
        static_cast<unsigned __int128>(a) * static_cast<unsigned long long>(b) %
        static_cast<unsigned long long>(p));
  }
  V inv(V a) const {
    V r = 1, base = a;
    long long e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
};

/* exact field ops, Q flavor */
struct QOps {
  using V = Rat;
  V from_int(const Int& v) const { return Rat(v); }
  bool is_zero(const V& v) const { return v == 0; }
  V add(const V& a, const V& b) const { return a + b; }
  V neg(const V& a) const { return -a; }
  V mul(const V& a, const V& b) const { return a * b; }
  V inv(const V& a) const { return 1 / a; }
};

/* Lexicographic rank of a word among all words of its total degree; counts
 * come from the free-algebra dimension table (64-bit, guarded by caps). */
struct WordIndexer {
  std::vector<int> degrees;
  std::vector<long long> count;  // count[d] = number of words of degree d

  long long rank(const int* word, std::size_t len, int total) const {
    long long r = 0;
    int rem = total;
    for (std::size_t t = 0; t < len; ++t) {
      for (int h = 0; h < word[t]; ++h)
        if (degrees[h] <= rem) r += count[rem - degrees[h]];
      rem -= degrees[word[t]];
    }
    return r;
  }
};

/* Union-find over word indices with val[x] = ratio[x] * val[parent[x]];
 * processes rows with at most two nonzero entries.  A contradictory cycle
 * zeroes its whole component (`alive` drops); quotient dimension = number of
 * live components. */
template <class Ops>
struct SignedUnionFind {
  const Ops& ops;
  std::vector<long long> parent;
  std::vector<typename Ops::V> ratio;
  std::vector<long long> size;
  std::vector<char> alive;

  SignedUnionFind(const Ops& o, long long n)
      : ops(o),
        parent(n),
        ratio(n, o.from_int(1)),
        size(n, 1),
        alive(n, 1) {
    for (long long i = 0; i < n; ++i) parent[i] = i;
  }

  std::vector<long long> path_scratch;

  std::pair<long long, typename Ops::V> find(long long x) {
    path_scratch.clear();
    long long cur = x;
    while (parent[cur] != cur) {
      path_scratch.push_back(cur);
      cur = parent[cur];
    }
    long long root = cur;
    // compress top-down so each node's ratio points straight at the root
    typename Ops::V below = ops.from_int(1);
    for (auto it = path_scratch.rbegin(); it != path_scratch.rend(); ++it) {
      typename Ops::V direct = ops.mul(ratio[*it], below);
      parent[*it] = root;
      ratio[*it] = direct;
      below = direct;
    }
    return {root, path_scratch.empty() ? ops.from_int(1) : ratio[x]};
  }

  void kill(long long root) { alive[root] = 0; }

  /* c1 * val[x] + c2 * val[y] = 0, both coefficients nonzero */
  void relate(long long x, typename Ops::V c1, long long y,
              typename Ops::V c2) {
    auto [rx, a] = find(x);
    auto [ry, b] = find(y);
    typename Ops::V ca = ops.mul(c1, a);
    typename Ops::V cb = ops.mul(c2, b);
    if (rx == ry) {
      if (!ops.is_zero(ops.add(ca, cb))) kill(rx);
      return;
    }
    bool dead = !alive[rx] || !alive[ry];
    if (size[rx] > size[ry]) {
      std::swap(rx, ry);
      std::swap(ca, cb);
    }
    // val[rx] = -(cb / ca) * val[ry]
    parent[rx] = ry;
    ratio[rx] = ops.neg(ops.mul(cb, ops.inv(ca)));
    size[ry] += size[rx];
    if (dead) alive[ry] = 0;
  }

  void force_zero(long long x) {
    auto [rx, a] = find(x);
    (void)a;
    kill(rx);
  }

  long long live_components() {
    long long count = 0;
    for (long long i = 0; i < static_cast<long long>(parent.size()); ++i)
      if (parent[i] == i && alive[i]) ++count;
    return count;
  }
};

/* General sparse echelon form keyed by largest word index. */
template <class Ops>
struct SparseEchelon {
  const Ops& ops;
  using Row = std::vector<std::pair<long long, typename Ops::V>>;  // idx desc
  std::map<long long, Row> pivots;
  long long rank = 0;

  explicit SparseEchelon(const Ops& o) : ops(o) {}

  void insert(Row row) {
    while (!row.empty()) {
      long long lead = row.front().first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        // normalize so the leading coefficient is 1
        typename Ops::V inv = ops.inv(row.front().second);
        for (auto& [idx, v] : row) v = ops.mul(v, inv);
        pivots.emplace(lead, std::move(row));
        ++rank;
        return;
      }
      // row -= row.lead * pivot
      typename Ops::V factor = row.front().second;
      Row merged;
      merged.reserve(row.size() + it->second.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < it->second.size()) {
        if (j == it->second.size() ||
            (i < row.size() && row[i].first > it->second[j].first)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || it->second[j].first > row[i].first) {
          merged.emplace_back(it->second[j].first,
                              ops.neg(ops.mul(factor, it->second[j].second)));
          ++j;
        } else {
          typename Ops::V v =
              ops.add(row[i].second,
                      ops.neg(ops.mul(factor, it->second[j].second)));
          if (!ops.is_zero(v)) merged.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      row = std::move(merged);
    }
  }
};

/* Enumerate all (left, right) word pairs with the given degrees and feed
 * every left*relation*right row to `sink`. */
template <class Sink>
void for_each_bordered_row(const WordIndexer& ix, int left_deg, int right_deg,
                           Sink&& sink) {
  std::vector<int> left, right;
  int gens = static_cast<int>(ix.degrees.size());
  std::function<void(int)> enum_right = [&](int rem) {
    if (rem == 0) {
      sink(left, right);
      return;
    }
    for (int g = 0; g < gens; ++g)
      if (ix.degrees[g] <= rem) {
        right.push_back(g);
        enum_right(rem - ix.degrees[g]);
        right.pop_back();
      }
  };
  std::function<void(int)> enum_left = [&](int rem) {
    if (rem == 0) {
      enum_right(right_deg);
      return;
    }
    for (int g = 0; g < gens; ++g)
      if (ix.degrees[g] <= rem) {
        left.push_back(g);
        enum_left(rem - ix.degrees[g]);
        left.pop_back();
      }
  };
  enum_left(left_deg);
}

template <class Ops>
long long quotient_dim_degree(
    const Ops& ops, const WordIndexer& ix,
    const std::vector<std::pair<int, std::vector<std::pair<std::vector<int>,
                                                           typename Ops::V>>>>&
        relations,  // (degree, [(word, coeff)])
    int d, long long word_count, bool small_rows) {
  std::vector<int> scratch;
  auto compose_rank = [&](const std::vector<int>& l,
                          const std::vector<int>& w,
                          const std::vector<int>& r) {
    scratch.clear();
    scratch.insert(scratch.end(), l.begin(), l.end());
    scratch.insert(scratch.end(), w.begin(), w.end());
    scratch.insert(scratch.end(), r.begin(), r.end());
    return ix.rank(scratch.data(), scratch.size(), d);
  };

  if (small_rows) {
    SignedUnionFind<Ops> uf(ops, word_count);
    for (const auto& [rd, terms] : relations) {
      if (rd > d) continue;
      for (int a = 0; a + rd <= d; ++a) {
        for_each_bordered_row(
            ix, a, d - rd - a,
            [&](const std::vector<int>& l, const std::vector<int>& r) {
              // canonical row: combine repeated indices, drop field zeros
              std::pair<long long, typename Ops::V> entry[2];
              int used = 0;
              for (const auto& [w, coeff] : terms) {
                long long idx = compose_rank(l, w, r);
                bool merged = false;
                for (int t = 0; t < used; ++t)
                  if (entry[t].first == idx) {
                    entry[t].second = ops.add(entry[t].second, coeff);
                    merged = true;
                    break;
                  }
                if (!merged) entry[used++] = {idx, coeff};
              }
              int live = 0;
              for (int t = 0; t < used; ++t)
                if (!ops.is_zero(entry[t].second)) entry[live++] = entry[t];
              if (live == 1)
                uf.force_zero(entry[0].first);
              else if (live == 2)
                uf.relate(entry[0].first, entry[0].second, entry[1].first,
                          entry[1].second);
            });
      }
    }
    return uf.live_components();
  }

  SparseEchelon<Ops> ech(ops);
  for (const auto& [rd, terms] : relations) {
    if (rd > d) continue;
    for (int a = 0; a + rd <= d; ++a) {
      for_each_bordered_row(
          ix, a, d - rd - a,
          [&](const std::vector<int>& l, const std::vector<int>& r) {
            std::map<long long, typename Ops::V, std::greater<>> acc;
            for (const auto& [w, coeff] : terms) {
              long long idx = compose_rank(l, w, r);
              auto [it, fresh] = acc.emplace(idx, coeff);
              if (!fresh) it->second = ops.add(it->second, coeff);
            }
            typename SparseEchelon<Ops>::Row row;
            for (auto& [idx, v] : acc)
              if (!ops.is_zero(v)) row.emplace_back(idx, v);
            if (!row.empty()) ech.insert(std::move(row));
          });
    }
  }
  return word_count - ech.rank;
}

template <class Ops>
PowerSeries quotient_dims_impl(const Ops& ops, const Presentation& p,
                               int trunc, const QuotientCaps& caps) {
  WordIndexer ix;
  for (const auto& g : p.generators) ix.degrees.push_back(g.degree);

  PowerSeries counts = free_algebra_dims(p, trunc);
  bool small_rows = true;
  std::vector<std::pair<int, std::vector<std::pair<std::vector<int>,
                                                   typename Ops::V>>>>
      relations;
  for (const auto& rel : p.relations) {
    if (rel.is_zero()) continue;
    std::vector<std::pair<std::vector<int>, typename Ops::V>> terms;
    for (const auto& t : rel.terms) {
      typename Ops::V v = ops.from_int(t.coeff);
      if (!ops.is_zero(v)) terms.emplace_back(t.word, v);
    }
    if (terms.empty()) continue;  // relation vanishes in this field
    if (terms.size() > 2) small_rows = false;
    relations.emplace_back(element_degree(rel, p.generators),
                           std::move(terms));
  }

  long long word_cap =
      relations.empty()
          ? std::numeric_limits<long long>::max()
          : (small_rows ? caps.max_words : caps.general_max_words);

  PowerSeries dims(trunc);
  ix.count.assign(trunc + 1, 0);
  for (int d = 0; d <= trunc; ++d) {
    if (counts.c[d] > word_cap)
      throw resource_error(
          "quotient_dims: " + counts.c[d].str() + " words in degree " +
          std::to_string(d) + " exceeds the word cap; lower the degree");
    ix.count[d] = static_cast<long long>(counts.c[d]);
  }
  for (int d = 0; d <= trunc; ++d) {
    if (relations.empty()) {
      dims.c[d] = counts.c[d];
      continue;
    }
    dims.c[d] =
        quotient_dim_degree(ops, ix, relations, d, ix.count[d], small_rows);
  }
  return dims;
}

}  // namespace detail

/* Graded dimensions of T(generators)/(two-sided ideal of the relations). */
inline PowerSeries quotient_dims(const Presentation& p, int trunc,
                                 const QuotientCaps& caps = {}) {
  validate_presentation(p);
  if (!p.field.is_field())
    throw unsupported_error("quotient_dims: field coefficients only, got " +
                            p.field.pretty());
  if (trunc < 0) throw validation_error("quotient_dims: trunc must be >= 0");
  int cap = p.generators.size() <= 2 ? caps.degree_cap_two
                                     : caps.degree_cap_many;
  if (trunc > cap)
    throw resource_error("quotient_dims: degree " + std::to_string(trunc) +
                         " exceeds the cap " + std::to_string(cap) +
                         " for " + std::to_string(p.generators.size()) +
                         " generators (raise with --cap-degree)");
  if (p.field.kind == CoefficientRing::Kind::prime_field) {
    detail::FpOps ops{p.field.p};
    return detail::quotient_dims_impl(ops, p, trunc, caps);
  }
  detail::QOps ops;
  return detail::quotient_dims_impl(ops, p, trunc, caps);
}

/* ----- loop homology presentation of a capped complex ----- */

struct LoopHomologyPresentation {
  Presentation presentation;
  std::vector<std::string> hypotheses_used;
};

/*
 * Pontryagin ring presentation for loops on a capped complex with unit
 * coefficient: generators u (degree m-1), v (degree n-m-1), and one
 * generator per reduced field-homology class of C (desuspended by one);
 * single relation [u,v] + omega.  Requires k = +1 or -1 and an asserted
 * Whitehead component; the truncation bounds the generator degrees kept.
 */
inline LoopHomologyPresentation loop_homology_presentation(
    const CappedComplexSpec& spec, const CoefficientRing& field, int trunc) {
  spec.validate();
  if (!field.is_field())
    throw unsupported_error(
        "loop_homology_presentation: field coefficients only");
  if (spec.k != 1 && spec.k != -1)
    throw validation_error(
        "loop_homology_presentation: hypothesis k = +1 or -1 fails (k = " +
        std::to_string(spec.k) +
        "); the top cell does not split off loops integrally");
  if (!spec.whitehead_component_asserted)
    throw validation_error(
        "loop_homology_presentation: the attaching map's Whitehead component "
        "must be asserted");

  SpaceExpr c = normalize(spec.c);
  if (!is_co_h(c))
    throw unsupported_error(
        "loop_homology_presentation: C must normalize to a wedge of spheres, "
        "Moore spaces, or suspensions; got " +
        to_text(c));

  LoopHomologyPresentation out;
  Presentation& pres = out.presentation;
  pres.field = field;
  pres.generators.push_back({"u", spec.m - 1});
  pres.generators.push_back({"v", spec.n - spec.m - 1});

  PowerSeries red = reduced_poincare_series(c, field, trunc + 1);
  std::vector<int> extra_degrees;
  for (int d = 0; d <= trunc + 1; ++d)
    for (Int i = 0; i < red.c[d]; ++i) extra_degrees.push_back(d - 1);
  for (std::size_t i = 0; i < extra_degrees.size(); ++i) {
    if (extra_degrees[i] < 1)
      throw validation_error(
          "loop_homology_presentation: C must be simply connected");
    std::string name =
        extra_degrees.size() == 1 ? "w" : "w" + std::to_string(i + 1);
    pres.generators.push_back({name, extra_degrees[i]});
  }

  AlgebraElement relation = graded_commutator(pres, "u", "v");
  for (const auto& text : spec.omega) {
    AlgebraElement omega = parse_element(text, pres);
    if (!omega.is_zero() &&
        element_degree(omega, pres.generators) != spec.n - 2)
      throw validation_error(
          "loop_homology_presentation: omega terms must be homogeneous of "
          "degree n-2 = " +
          std::to_string(spec.n - 2));
    relation = relation + omega;
  }
  pres.relations.push_back(relation);
  validate_presentation(pres);

  out.hypotheses_used = {
      "capped complex is simply connected with 2 <= m <= n-2",
      "attaching map = k*[i1,i2] + omega with the Whitehead component "
      "asserted by the caller",
      "k = " + std::to_string(spec.k) + " is a unit, so loops on the base "
      "product of spheres split off",
      "field coefficients " + field.pretty() +
          " (universal coefficients applied to C)",
      spec.omega.empty()
          ? "omega = 0 assumed (no omega relations supplied)"
          : "omega relations supplied by the caller (" +
                std::to_string(spec.omega.size()) + " term(s))"};
  return out;
}

}  // namespace loopspace
