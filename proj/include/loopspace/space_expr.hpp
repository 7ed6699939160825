#pragma once

/*
 * Symbolic expressions for the spaces the calculator understands.
 *
 * Constructors: Point, Sphere(n >= 2), Moore(n >= 3, k) (cofiber of a degree
 * k self-map of S^{n-1}), MooreGroup(n >= 3, T) (wedge of prime-power Moore
 * spaces realizing the torsion multiset T), Wedge, Product, Smash, HalfSmash
 * (right half-smash A |x Y = (A x Y) / (* x Y)), Suspension, Loop.
 *
 * normalize() applies the rewrite rules innermost-first with a fixed
 * priority (Moore simplification, then half-smash distribution over wedges,
 * then the co-H splitting A |x Y -> A v (A ^ Y)), together with the
 * structural cleanups: wedge flattening, point elimination, smash-by-sphere
 * as iterated suspension, suspension of spheres/Moore spaces in closed form,
 * and Loop(Product) -> Product(Loop, Loop).
 *
 * Co-H recognition is syntactic: wedges of spheres, Moore spaces, and
 * explicit suspensions.  Nothing else is assumed co-H.
 */

#include <string>
#include <vector>

#include "loopspace/graded_core.hpp"

namespace loopspace {

struct SpaceExpr {
  enum class Kind {
    point,
    sphere,
    moore,
    moore_group,
    wedge,
    product,
    smash,
    half_smash,
    susp,
    loop
  };

  Kind kind = Kind::point;
  int n = 0;                        // sphere / Moore top dimension
  long long k = 0;                  // Moore coefficient
  std::vector<PrimePower> torsion;  // moore_group only, sorted (p, r)
  std::vector<SpaceExpr> kids;      // wedge: list; pairs: [a, b]; susp/loop: [a]

  static SpaceExpr point() { return {}; }

  static SpaceExpr sphere(int n) {
    if (n < 2) throw validation_error("Sphere: dimension must be >= 2");
    SpaceExpr e;
    e.kind = Kind::sphere;
    e.n = n;
    return e;
  }

  static SpaceExpr moore(int n, long long k) {
    if (n < 3) throw validation_error("Moore: dimension must be >= 3");
    SpaceExpr e;
    e.kind = Kind::moore;
    e.n = n;
    e.k = k;
    return e;
  }

  static SpaceExpr moore_group(int n, std::vector<PrimePower> t) {
    if (n < 3) throw validation_error("MooreGroup: dimension must be >= 3");
    for (const auto& q : t) {
      if (q.r < 1)
        throw validation_error("MooreGroup: exponents must be >= 1");
      if (!is_prime(q.p))
        throw validation_error("MooreGroup: " + std::to_string(q.p) +
                               " is not prime");
    }
    sort_torsion(t);
    SpaceExpr e;
    e.kind = Kind::moore_group;
    e.n = n;
    e.torsion = std::move(t);
    return e;
  }

  static SpaceExpr wedge(std::vector<SpaceExpr> kids) {
    SpaceExpr e;
    e.kind = Kind::wedge;
    e.kids = std::move(kids);
    return e;
  }

  static SpaceExpr product(SpaceExpr a, SpaceExpr b) {
    SpaceExpr e;
    e.kind = Kind::product;
    e.kids = {std::move(a), std::move(b)};
    return e;
  }

  static SpaceExpr smash(SpaceExpr a, SpaceExpr b) {
    SpaceExpr e;
    e.kind = Kind::smash;
    e.kids = {std::move(a), std::move(b)};
    return e;
  }

  static SpaceExpr half_smash(SpaceExpr a, SpaceExpr y) {
    SpaceExpr e;
    e.kind = Kind::half_smash;
    e.kids = {std::move(a), std::move(y)};
    return e;
  }

  static SpaceExpr susp(SpaceExpr a) {
    SpaceExpr e;
    e.kind = Kind::susp;
    e.kids = {std::move(a)};
    return e;
  }

  static SpaceExpr loop(SpaceExpr a) {
    SpaceExpr e;
    e.kind = Kind::loop;
    e.kids = {std::move(a)};
    return e;
  }

  bool is(Kind k_) const { return kind == k_; }

  friend bool operator==(const SpaceExpr&, const SpaceExpr&) = default;
};

/* Syntactic co-H recognition: wedges of spheres, Moore spaces, suspensions. */
inline bool is_co_h(const SpaceExpr& e) {
  switch (e.kind) {
    case SpaceExpr::Kind::point:
    case SpaceExpr::Kind::sphere:
    case SpaceExpr::Kind::moore:
    case SpaceExpr::Kind::moore_group:
    case SpaceExpr::Kind::susp:
      return true;
    case SpaceExpr::Kind::wedge:
      for (const auto& kid : e.kids)
        if (!is_co_h(kid)) return false;
      return true;
    default:
      return false;
  }
}

/* ----- canonical text ----- */

inline std::string to_text(const SpaceExpr& e) {
  using K = SpaceExpr::Kind;
  switch (e.kind) {
    case K::point:
      return "point";
    case K::sphere:
      return "S^" + std::to_string(e.n);
    case K::moore:
      return "P^" + std::to_string(e.n) + "(" + std::to_string(e.k) + ")";
    case K::moore_group: {
      std::string s = "P^" + std::to_string(e.n) + "(";
      for (std::size_t i = 0; i < e.torsion.size(); ++i)
        s += (i ? "," : "") + std::to_string(e.torsion[i].value());
      return s + ")";
    }
    case K::wedge: {
      std::string s;
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) s += " v ";
        bool paren = e.kids[i].is(K::wedge);
        s += paren ? "(" + to_text(e.kids[i]) + ")" : to_text(e.kids[i]);
      }
      return e.kids.empty() ? "point" : s;
    }
    case K::product:
      return "(" + to_text(e.kids[0]) + " x " + to_text(e.kids[1]) + ")";
    case K::smash:
      return "(" + to_text(e.kids[0]) + " ^ " + to_text(e.kids[1]) + ")";
    case K::half_smash:
      return "(" + to_text(e.kids[0]) + " |x " + to_text(e.kids[1]) + ")";
    case K::susp:
      return "Susp(" + to_text(e.kids[0]) + ")";
    case K::loop:
      return "Loop(" + to_text(e.kids[0]) + ")";
  }
  return "point";
}

/* ----- JSON interchange -----
 * "point", {"sphere": n}, {"moore": [n, k]}, {"moore_group": [n, [q...]]},
 * {"wedge": [...]}, {"product": [a, b]}, {"smash": [a, b]},
 * {"halfsmash": [a, b]}, {"susp": a}, {"loop": a}.
 */

inline json to_json(const SpaceExpr& e) {
  using K = SpaceExpr::Kind;
  switch (e.kind) {
    case K::point:
      return json("point");
    case K::sphere:
      return json{{"sphere", e.n}};
    case K::moore:
      return json{{"moore", {e.n, e.k}}};
    case K::moore_group: {
      json qs = json::array();
      for (const auto& q : e.torsion) qs.push_back(q.value());
      return json{{"moore_group", {e.n, qs}}};
    }
    case K::wedge: {
      json kids = json::array();
      for (const auto& kid : e.kids) kids.push_back(to_json(kid));
      return json{{"wedge", kids}};
    }
    case K::product:
      return json{{"product", {to_json(e.kids[0]), to_json(e.kids[1])}}};
    case K::smash:
      return json{{"smash", {to_json(e.kids[0]), to_json(e.kids[1])}}};
    case K::half_smash:
      return json{{"halfsmash", {to_json(e.kids[0]), to_json(e.kids[1])}}};
    case K::susp:
      return json{{"susp", to_json(e.kids[0])}};
    case K::loop:
      return json{{"loop", to_json(e.kids[0])}};
  }
  return json("point");
}

inline SpaceExpr space_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "point") return SpaceExpr::point();
    throw validation_error("unknown space literal: " + j.get<std::string>());
  }
  if (!j.is_object() || j.size() != 1)
    throw validation_error(
        "space JSON must be \"point\" or a single-key object");
  const auto& key = j.begin().key();
  const auto& val = j.begin().value();
  auto pair_of = [&](const json& v) {
    if (!v.is_array() || v.size() != 2)
      throw validation_error("space JSON: \"" + key +
                             "\" expects a two-element array");
    return std::make_pair(space_from_json(v[0]), space_from_json(v[1]));
  };
  if (key == "sphere") return SpaceExpr::sphere(val.get<int>());
  if (key == "moore") {
    if (!val.is_array() || val.size() != 2)
      throw validation_error("space JSON: \"moore\" expects [n, k]");
    return SpaceExpr::moore(val[0].get<int>(), val[1].get<long long>());
  }
  if (key == "moore_group") {
    if (!val.is_array() || val.size() != 2 || !val[1].is_array())
      throw validation_error(
          "space JSON: \"moore_group\" expects [n, [q, ...]]");
    std::vector<PrimePower> t;
    for (const auto& q : val[1]) {
      auto factors = torsion_of_order(q.get<long long>());
      if (factors.size() != 1)
        throw validation_error(
            "space JSON: moore_group entries must be prime powers");
      t.push_back(factors[0]);
    }
    return SpaceExpr::moore_group(val[0].get<int>(), std::move(t));
  }
  if (key == "wedge") {
    if (!val.is_array())
      throw validation_error("space JSON: \"wedge\" expects an array");
    std::vector<SpaceExpr> kids;
    for (const auto& kid : val) kids.push_back(space_from_json(kid));
    return SpaceExpr::wedge(std::move(kids));
  }
  if (key == "product") {
    auto [a, b] = pair_of(val);
    return SpaceExpr::product(std::move(a), std::move(b));
  }
  if (key == "smash") {
    auto [a, b] = pair_of(val);
    return SpaceExpr::smash(std::move(a), std::move(b));
  }
  if (key == "halfsmash") {
    auto [a, b] = pair_of(val);
    return SpaceExpr::half_smash(std::move(a), std::move(b));
  }
  if (key == "susp") return SpaceExpr::susp(space_from_json(val));
  if (key == "loop") return SpaceExpr::loop(space_from_json(val));
  throw validation_error("space JSON: unknown constructor \"" + key + "\"");
}

/* ----- normalization ----- */

namespace detail {

inline SpaceExpr normalize_rec(const SpaceExpr& e, int& budget);

/* Re-enter full normalization on a node freshly built by a rewrite rule
 * (its children may be unnormalized compositions of normalized pieces). */
inline SpaceExpr renormalize(SpaceExpr e, int& budget) {
  return normalize_rec(e, budget);
}

/* Applies rules at a node whose children are already normalized. */
inline SpaceExpr normalize_node(SpaceExpr e, int& budget) {
  using K = SpaceExpr::Kind;
  switch (e.kind) {
    case K::point:
    case K::sphere:
      return e;

    case K::moore: {
      if (e.k == 1 || e.k == -1) return SpaceExpr::point();
      if (e.k == 0)
        return SpaceExpr::wedge(
            {SpaceExpr::sphere(e.n - 1), SpaceExpr::sphere(e.n)});
      long long order = e.k < 0 ? -e.k : e.k;
      auto factors = torsion_of_order(order);
      if (factors.size() == 1)
        return SpaceExpr::moore_group(e.n, std::move(factors));
      std::vector<SpaceExpr> kids;
      for (const auto& q : factors)
        kids.push_back(SpaceExpr::moore_group(e.n, {q}));
      return renormalize(SpaceExpr::wedge(std::move(kids)), budget);
    }

    case K::moore_group: {
      if (e.torsion.empty()) return SpaceExpr::point();
      if (e.torsion.size() == 1) return e;
      std::vector<SpaceExpr> kids;
      for (const auto& q : e.torsion)
        kids.push_back(SpaceExpr::moore_group(e.n, {q}));
      return renormalize(SpaceExpr::wedge(std::move(kids)), budget);
    }

    case K::wedge: {
      std::vector<SpaceExpr> flat;
      for (auto& kid : e.kids) {
        if (kid.is(K::point)) continue;
        if (kid.is(K::wedge))
          for (auto& inner : kid.kids) flat.push_back(std::move(inner));
        else
          flat.push_back(std::move(kid));
      }
      if (flat.empty()) return SpaceExpr::point();
      if (flat.size() == 1) return flat[0];
      return SpaceExpr::wedge(std::move(flat));
    }

    case K::product: {
      if (e.kids[0].is(K::point)) return e.kids[1];
      if (e.kids[1].is(K::point)) return e.kids[0];
      return e;
    }

    case K::smash: {
      if (e.kids[0].is(K::point) || e.kids[1].is(K::point))
        return SpaceExpr::point();
      if (e.kids[1].is(K::sphere)) {  // A ^ S^n = Susp^n A
        SpaceExpr out = std::move(e.kids[0]);
        for (int i = 0; i < e.kids[1].n; ++i) out = SpaceExpr::susp(out);
        return renormalize(std::move(out), budget);
      }
      if (e.kids[0].is(K::sphere)) {
        SpaceExpr out = std::move(e.kids[1]);
        for (int i = 0; i < e.kids[0].n; ++i) out = SpaceExpr::susp(out);
        return renormalize(std::move(out), budget);
      }
      return e;
    }

    case K::half_smash: {
      SpaceExpr& a = e.kids[0];
      SpaceExpr& y = e.kids[1];
      if (a.is(K::point)) return SpaceExpr::point();  // (* x Y) / (* x Y)
      if (y.is(K::point)) return a;
      if (a.is(K::wedge)) {  // distribute before splitting
        std::vector<SpaceExpr> kids;
        for (auto& part : a.kids)
          kids.push_back(SpaceExpr::half_smash(std::move(part), y));
        return renormalize(SpaceExpr::wedge(std::move(kids)), budget);
      }
      if (is_co_h(a)) {  // A |x Y = A v (A ^ Y) for co-H A
        SpaceExpr smashed = SpaceExpr::smash(a, std::move(y));
        return renormalize(
            SpaceExpr::wedge({std::move(a), std::move(smashed)}), budget);
      }
      return e;
    }

    case K::susp: {
      SpaceExpr& a = e.kids[0];
      if (a.is(K::point)) return SpaceExpr::point();
      if (a.is(K::sphere)) return SpaceExpr::sphere(a.n + 1);
      if (a.is(K::moore))
        return renormalize(SpaceExpr::moore(a.n + 1, a.k), budget);
      if (a.is(K::moore_group))
        return SpaceExpr::moore_group(a.n + 1, a.torsion);
      if (a.is(K::wedge)) {
        std::vector<SpaceExpr> kids;
        for (auto& part : a.kids)
          kids.push_back(SpaceExpr::susp(std::move(part)));
        return renormalize(SpaceExpr::wedge(std::move(kids)), budget);
      }
      return e;
    }

    case K::loop: {
      SpaceExpr& a = e.kids[0];
      if (a.is(K::point)) return SpaceExpr::point();
      if (a.is(K::product))
        return renormalize(
            SpaceExpr::product(SpaceExpr::loop(std::move(a.kids[0])),
                               SpaceExpr::loop(std::move(a.kids[1]))),
            budget);
      return e;
    }
  }
  return e;
}

inline SpaceExpr normalize_rec(const SpaceExpr& e, int& budget) {
  if (--budget < 0)
    throw resource_error("normalize: rewrite budget exhausted");
  SpaceExpr node = e;
  for (auto& kid : node.kids) kid = normalize_rec(kid, budget);
  return normalize_node(std::move(node), budget);
}

}  // namespace detail

inline SpaceExpr normalize(const SpaceExpr& e) {
  int budget = 1 << 20;
  return detail::normalize_rec(e, budget);
}

/* ----- capped complex input ----- */

/*
 * A capped complex: an (n-1)-skeleton S^m v S^{n-m} v C with one n-cell
 * attached by k * (Whitehead product of the two sphere inclusions) plus a
 * perturbation omega living in the half-smash image.  The caller must assert
 * the Whitehead component; omega is given as relation text in the loop
 * homology presentation grammar (empty list means omega = 0).
 */
struct CappedComplexSpec {
  int n = 0;
  int m = 0;
  long long k = 0;
  SpaceExpr c = SpaceExpr::point();
  bool whitehead_component_asserted = false;
  std::vector<std::string> omega;

  void validate() const {
    if (n < 4) throw validation_error("capped complex: n must be >= 4");
    if (m < 2 || m > n - 2)
      throw validation_error("capped complex: need 2 <= m <= n-2");
  }
};

inline json to_json(const CappedComplexSpec& s) {
  json omega = json::array();
  for (const auto& rel : s.omega) omega.push_back(rel);
  return json{{"n", s.n},
              {"m", s.m},
              {"k", s.k},
              {"c", to_json(s.c)},
              {"whitehead_component_asserted", s.whitehead_component_asserted},
              {"omega", omega}};
}

inline CappedComplexSpec capped_from_json(const json& j) {
  if (!j.is_object())
    throw validation_error("capped complex JSON must be an object");
  CappedComplexSpec s;
  for (const char* key : {"n", "m", "k", "c"})
    if (!j.contains(key))
      throw validation_error(std::string("capped complex JSON: missing \"") +
                             key + "\"");
  s.n = j.at("n").get<int>();
  s.m = j.at("m").get<int>();
  s.k = j.at("k").get<long long>();
  s.c = space_from_json(j.at("c"));
  s.whitehead_component_asserted =
      j.value("whitehead_component_asserted", false);
  if (j.contains("omega"))
    for (const auto& rel : j.at("omega"))
      s.omega.push_back(rel.get<std::string>());
  s.validate();
  return s;
}

}  // namespace loopspace
