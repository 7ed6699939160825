#pragma once

/*
 * Rule-checked constructions on capped complexes: the loop space
 * decomposition report, the spherical-pair criterion on a cohomology ring,
 * skeleton reconstruction from homology data, inertness and hyperbolicity
 * verdict tables, and the X_{M,k} builder.
 *
 * Hypotheses that cannot be computed from the input data (existence of
 * spherical witness maps, co-H skeletons, the Whitehead component of an
 * attaching map, wedge-of-spheres-and-Moore-spaces membership) are boolean
 * assertions supplied by the caller and echoed in every report.  Verdict
 * tables are literal transcriptions of their case analyses; they never
 * extrapolate to primes or exponents the case analysis does not cover.
 */

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "loopspace/space_expr.hpp"

namespace loopspace {

/* ----- excluded primes with the rule that forced them ----- */

struct ExcludedPrime {
  long long p = 0;
  std::string rule;
};

namespace detail {

inline void add_excluded(std::vector<ExcludedPrime>& set, long long p,
                         const std::string& rule) {
  for (auto& e : set)
    if (e.p == p) {
      if (e.rule.find(rule) == std::string::npos) e.rule += " and " + rule;
      return;
    }
  set.push_back({p, rule});
  std::sort(set.begin(), set.end(),
            [](const ExcludedPrime& a, const ExcludedPrime& b) {
              return a.p < b.p;
            });
}

inline std::vector<long long> excluded_values(
    const std::vector<ExcludedPrime>& set) {
  std::vector<long long> out;
  for (const auto& e : set) out.push_back(e.p);
  return out;
}

inline json excluded_to_json(const std::vector<ExcludedPrime>& set) {
  json out = json::array();
  for (const auto& e : set) out.push_back({{"p", e.p}, {"rule", e.rule}});
  return out;
}

inline std::string excluded_to_text(const std::vector<ExcludedPrime>& set) {
  if (set.empty()) return "(none)";
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(set[i].p);
  }
  return out + "}";
}

inline long long order_to_ll(const Int& q) {
  if (q > std::numeric_limits<long long>::max())
    throw resource_error("torsion order " + q.str() +
                         " exceeds the 64-bit factoring range");
  return static_cast<long long>(q);
}

}  // namespace detail

/* ----- loop space decomposition of a capped complex ----- */

struct DecompositionReport {
  CappedComplexSpec spec;
  SpaceExpr base = SpaceExpr::point();
  SpaceExpr fiber = SpaceExpr::point();
  std::string statement;
  std::vector<std::string> hypotheses_used;
  std::vector<ExcludedPrime> excluded_primes;  // empty: integral statement
  std::vector<std::string> notes;
};

inline DecompositionReport decompose_capped(const CappedComplexSpec& spec) {
  spec.validate();
  if (!spec.whitehead_component_asserted)
    throw validation_error(
        "decompose_capped: the attaching map's component on S^m v S^{n-m} "
        "must be asserted to be the Whitehead product [i1,i2]; it cannot be "
        "computed from the data");

  DecompositionReport report;
  report.spec = spec;
  int nm = spec.n - spec.m;
  report.base = SpaceExpr::product(SpaceExpr::sphere(spec.m),
                                   SpaceExpr::sphere(nm));
  SpaceExpr inner = normalize(
      SpaceExpr::wedge({SpaceExpr::moore(spec.n, spec.k), spec.c}));
  std::string base_text =
      "S^" + std::to_string(spec.m) + " x S^" + std::to_string(nm);
  if (inner.is(SpaceExpr::Kind::point)) {
    report.fiber = SpaceExpr::point();
    report.statement = "Loop(X) ~ Loop(" + base_text + ")";
  } else {
    report.fiber = SpaceExpr::half_smash(
        inner, SpaceExpr::loop(report.base));
    report.statement = "Loop(X) ~ Loop(" + base_text + ") x Loop(" +
                       to_text(report.fiber) + ")";
  }

  report.hypotheses_used = {
      "X is a simply connected capped complex S^{n-1} -> S^m v S^{n-m} v C "
      "-> X with 2 <= m <= n-2",
      "the attaching map's component on S^m v S^{n-m} is the Whitehead "
      "product k*[i1,i2] (asserted by the caller)",
      "integral statement; no localization required"};
  if (spec.k == 0)
    report.notes.push_back(
        "k = 0 degenerate case: the attaching map's spherical component "
        "vanishes and X ~ S^" +
        std::to_string(spec.m) + " v S^" + std::to_string(nm) + " v S^" +
        std::to_string(spec.n) + " v C");
  if (spec.k == 1 || spec.k == -1)
    report.notes.push_back(
        "k = +-1: the Moore space P^n(k) is contractible, the top cell is "
        "inert, and the fiber reduces to C |x Loop(" + base_text + ")");
  return report;
}

inline json to_json(const DecompositionReport& r) {
  return json{{"capped", to_json(r.spec)},
              {"base", to_json(r.base)},
              {"fiber", to_json(r.fiber)},
              {"statement", r.statement},
              {"hypotheses_used", detail::strings_to_json(r.hypotheses_used)},
              {"excluded_primes", detail::excluded_to_json(r.excluded_primes)},
              {"notes", detail::strings_to_json(r.notes)}};
}

inline std::string to_text(const DecompositionReport& r) {
  std::string out;
  out += "capped complex: n=" + std::to_string(r.spec.n) +
         " m=" + std::to_string(r.spec.m) + " k=" + std::to_string(r.spec.k) +
         " C=" + to_text(r.spec.c) + "\n";
  out += "base: " + to_text(r.base) + "\n";
  out += "fiber: " + to_text(r.fiber) + "\n";
  out += "statement: " + r.statement + "\n";
  out += "excluded primes: " + detail::excluded_to_text(r.excluded_primes) +
         "\n";
  out += "hypotheses:\n";
  for (const auto& h : r.hypotheses_used) out += "  - " + h + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

/* ----- spherical pair criterion on a cohomology ring ----- */

struct RingClass {
  std::string name;
  int degree = 0;
};

struct RingProduct {
  std::string left, right;
  std::vector<std::pair<Int, std::string>> result;
};

struct CohomologyRingInput {
  int n = 0;
  std::vector<RingClass> basis;
  std::vector<RingProduct> products;
  std::string fundamental_class;
  std::string a, b;
  bool spherical_witnesses_asserted = false;
  bool skeleton_coH_asserted = false;
  long long divisibility_k = 1;
};

struct PairReport {
  int n = 0, m = 0, nm = 0;
  long long k = 1;
  Int lambda;
  Int lambda_over_k;
  SpaceExpr base = SpaceExpr::point();
  std::string statement;
  std::vector<ExcludedPrime> excluded_primes;
  std::vector<std::string> hypotheses_used;
  std::vector<std::string> notes;
};

namespace detail {

/* dense product table on the ring basis; absent products are zero */
struct RingTable {
  std::vector<RingClass> basis;
  std::map<std::string, int> index;
  std::map<std::pair<int, int>, std::map<int, Int>> table;

  int require(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end())
      throw validation_error("cohomology ring: unknown class \"" + name +
                             "\"");
    return it->second;
  }

  std::map<int, Int> multiply(int i, int j) const {
    auto it = table.find({i, j});
    return it == table.end() ? std::map<int, Int>{} : it->second;
  }
};

inline RingTable build_ring_table(const CohomologyRingInput& ring) {
  RingTable t;
  t.basis = ring.basis;
  for (std::size_t i = 0; i < ring.basis.size(); ++i) {
    const auto& cls = ring.basis[i];
    if (cls.name.empty())
      throw validation_error("cohomology ring: empty class name");
    if (cls.degree < 1 || cls.degree > ring.n)
      throw validation_error("cohomology ring: class \"" + cls.name +
                             "\" degree must lie in [1, n]");
    if (!t.index.emplace(cls.name, static_cast<int>(i)).second)
      throw validation_error("cohomology ring: duplicate class name \"" +
                             cls.name + "\"");
  }
  for (const auto& p : ring.products) {
    int i = t.require(p.left);
    int j = t.require(p.right);
    std::map<int, Int> combo;
    for (const auto& [coeff, name] : p.result) {
      int r = t.require(name);
      if (t.basis[r].degree != t.basis[i].degree + t.basis[j].degree)
        throw validation_error(
            "cohomology ring: product " + p.left + "*" + p.right +
            " has a term \"" + name + "\" in the wrong degree");
      combo[r] += coeff;
    }
    for (auto it = combo.begin(); it != combo.end();)
      it = it->second == 0 ? combo.erase(it) : std::next(it);
    if (!t.table.emplace(std::pair{i, j}, combo).second)
      throw validation_error("cohomology ring: product " + p.left + "*" +
                             p.right + " given twice");
  }
  // graded commutativity: y*x = (-1)^{|x||y|} x*y; fill or cross-check
  int count = static_cast<int>(t.basis.size());
  for (int i = 0; i < count; ++i)
    for (int j = i; j < count; ++j) {
      bool odd = (t.basis[i].degree % 2) && (t.basis[j].degree % 2);
      auto ij = t.table.find({i, j});
      auto ji = t.table.find({j, i});
      if (i == j) {
        if (odd && ij != t.table.end() && !ij->second.empty())
          throw validation_error(
              "cohomology ring: " + t.basis[i].name + "*" + t.basis[i].name +
              " must vanish (odd-degree square over Z)");
        continue;
      }
      auto flipped = [&](const std::map<int, Int>& m) {
        std::map<int, Int> out;
        for (const auto& [r, c] : m) out[r] = odd ? Int(-c) : c;
        return out;
      };
      if (ij != t.table.end() && ji != t.table.end()) {
        if (ji->second != flipped(ij->second))
          throw validation_error(
              "cohomology ring: graded commutativity fails between " +
              t.basis[i].name + " and " + t.basis[j].name);
      } else if (ij != t.table.end()) {
        t.table[{j, i}] = flipped(ij->second);
      } else if (ji != t.table.end()) {
        t.table[{i, j}] = flipped(ji->second);
      }
    }
  // associativity on the basis
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j)
      for (int l = 0; l < count; ++l) {
        std::map<int, Int> left, right;
        for (const auto& [r, c] : t.multiply(i, j))
          for (const auto& [s, d] : t.multiply(r, l)) left[s] += c * d;
        for (const auto& [r, c] : t.multiply(j, l))
          for (const auto& [s, d] : t.multiply(i, r)) right[s] += c * d;
        for (auto it = left.begin(); it != left.end();)
          it = it->second == 0 ? left.erase(it) : std::next(it);
        for (auto it = right.begin(); it != right.end();)
          it = it->second == 0 ? right.erase(it) : std::next(it);
        if (left != right)
          throw validation_error(
              "cohomology ring: associativity fails on (" + t.basis[i].name +
              ", " + t.basis[j].name + ", " + t.basis[l].name + ")");
      }
  return t;
}

/* {p prime : 2p < bound} */
inline void add_small_primes(std::vector<ExcludedPrime>& set, long long bound,
                             const std::string& rule) {
  for (long long p : primes_below((bound + 1) / 2))
    add_excluded(set, p, rule);
}

}  // namespace detail

inline PairReport check_spherical_pair(const CohomologyRingInput& ring) {
  if (ring.n < 4)
    throw validation_error("check_spherical_pair: top degree n must be >= 4");
  if (!ring.spherical_witnesses_asserted)
    throw validation_error(
        "check_spherical_pair: spherical witnesses s1, s2 must be asserted; "
        "their existence cannot be computed from ring data");
  if (!ring.skeleton_coH_asserted)
    throw validation_error(
        "check_spherical_pair: the co-H property of the (n-1)-skeleton must "
        "be asserted; it cannot be computed from ring data");
  if (ring.divisibility_k == 0)
    throw validation_error(
        "check_spherical_pair: divisibility coefficient k must be nonzero");

  detail::RingTable table = detail::build_ring_table(ring);
  int ia = table.require(ring.a);
  int ib = table.require(ring.b);
  int ifc = table.require(ring.fundamental_class);
  if (table.basis[ifc].degree != ring.n)
    throw validation_error(
        "check_spherical_pair: fundamental class degree must equal n");
  int m = table.basis[ia].degree;
  int nm = table.basis[ib].degree;
  if (m + nm != ring.n)
    throw validation_error(
        "check_spherical_pair: deg(a) + deg(b) must equal n");
  if (m < 2 || nm < 2)
    throw validation_error(
        "check_spherical_pair: need 2 <= m <= n-2 for the pair degrees");

  if (!table.multiply(ia, ia).empty())
    throw validation_error("check_spherical_pair: hypothesis a^2 = 0 fails (" +
                           ring.a + "*" + ring.a + " != 0)");
  if (!table.multiply(ib, ib).empty())
    throw validation_error("check_spherical_pair: hypothesis b^2 = 0 fails (" +
                           ring.b + "*" + ring.b + " != 0)");

  std::map<int, Int> ab = table.multiply(ia, ib);
  Int lambda = ab.count(ifc) ? ab.at(ifc) : Int(0);
  if (lambda == 0)
    throw validation_error(
        "check_spherical_pair: hypothesis <a u b, [X]> != 0 fails (the "
        "fundamental-class coefficient of " +
        ring.a + "*" + ring.b + " is 0)");
  if (lambda % ring.divisibility_k != 0)
    throw validation_error(
        "check_spherical_pair: divisibility conclusion fails: k = " +
        std::to_string(ring.divisibility_k) + " does not divide lambda = " +
        lambda.str() +
        "; k | <a u b, [X]> is forced, so the input is inconsistent");

  PairReport report;
  report.n = ring.n;
  report.m = m;
  report.nm = nm;
  report.k = ring.divisibility_k;
  report.lambda = lambda;
  report.lambda_over_k = lambda / ring.divisibility_k;
  report.base =
      SpaceExpr::product(SpaceExpr::sphere(m), SpaceExpr::sphere(nm));

  long long bound = std::max(m, nm) + 4;
  std::string small_rule =
      "2p < max(m, n-m) + 4 = " + std::to_string(bound);
  detail::add_small_primes(report.excluded_primes, bound, small_rule);
  Int q = report.lambda_over_k < 0 ? Int(-report.lambda_over_k)
                                   : report.lambda_over_k;
  if (q > std::numeric_limits<long long>::max())
    throw resource_error(
        "check_spherical_pair: |lambda/k| exceeds the 64-bit factoring range");
  if (q > 1)
    for (const auto& pp : factorize(static_cast<long long>(q)))
      detail::add_excluded(report.excluded_primes, pp.p,
                           "p divides lambda/k = " + q.str());

  std::string base_text =
      "S^" + std::to_string(m) + " x S^" + std::to_string(nm);
  report.statement =
      "after localization away from " +
      detail::excluded_to_text(report.excluded_primes) + ": Loop(X) ~ Loop(" +
      base_text + ") x Loop((P^" + std::to_string(ring.n) + "(" +
      std::to_string(report.k) + ") v C) |x Loop(" + base_text +
      ")) for some simply connected complement C of dimension < " +
      std::to_string(ring.n);
  report.hypotheses_used = {
      "products on the basis are graded-commutative and associative "
      "(validated)",
      "spherical witnesses s1: S^" + std::to_string(m) + " -> X and s2: S^" +
          std::to_string(nm) + " -> X asserted by the caller",
      "the (n-1)-skeleton of X is a co-H-space (asserted by the caller)",
      "a^2 = 0 and b^2 = 0 verified from the structure constants",
      "lambda = <a u b, [X]> = " + lambda.str() +
          " read off as the fundamental-class coefficient of " + ring.a +
          "*" + ring.b,
      "k = " + std::to_string(report.k) +
          " divides lambda (divisibility conclusion verified)"};
  if (lambda < 0)
    report.notes.push_back(
        "lambda is negative; the sign is an orientation choice and all prime "
        "arithmetic uses |lambda|");
  if (report.k == 1)
    report.notes.push_back(
        "k = 1: with |lambda| realized as the intersection number of two "
        "transversally embedded spheres, the same conclusion holds in the "
        "geometric setting");
  return report;
}

inline json to_json(const PairReport& r) {
  return json{{"n", r.n},
              {"m", r.m},
              {"nm", r.nm},
              {"k", r.k},
              {"lambda", detail::int_to_json(r.lambda)},
              {"lambda_over_k", detail::int_to_json(r.lambda_over_k)},
              {"base", to_json(r.base)},
              {"statement", r.statement},
              {"excluded_primes", detail::excluded_to_json(r.excluded_primes)},
              {"hypotheses_used", detail::strings_to_json(r.hypotheses_used)},
              {"notes", detail::strings_to_json(r.notes)}};
}

inline std::string to_text(const PairReport& r) {
  std::string out;
  out += "spherical pair: m=" + std::to_string(r.m) +
         " n-m=" + std::to_string(r.nm) + " n=" + std::to_string(r.n) + "\n";
  out += "lambda = " + r.lambda.str() + ", k = " + std::to_string(r.k) +
         ", lambda/k = " + r.lambda_over_k.str() + "\n";
  out += "excluded primes: " + detail::excluded_to_text(r.excluded_primes) +
         "\n";
  for (const auto& e : r.excluded_primes)
    out += "  " + std::to_string(e.p) + ": " + e.rule + "\n";
  out += "statement: " + r.statement + "\n";
  out += "hypotheses:\n";
  for (const auto& h : r.hypotheses_used) out += "  - " + h + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

inline CohomologyRingInput ring_from_json(const json& j) {
  if (!j.is_object())
    throw validation_error("cohomology ring input must be a JSON object");
  CohomologyRingInput ring;
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key))
      throw validation_error(std::string("cohomology ring input: missing \"") +
                             key + "\"");
    return j.at(key);
  };
  ring.n = need("n").get<int>();
  for (const auto& cls : need("basis")) {
    RingClass c;
    c.name = cls.at("name").get<std::string>();
    c.degree = cls.at("degree").get<int>();
    ring.basis.push_back(std::move(c));
  }
  if (j.contains("products"))
    for (const auto& p : j.at("products")) {
      RingProduct rp;
      rp.left = p.at("left").get<std::string>();
      rp.right = p.at("right").get<std::string>();
      for (const auto& term : p.at("result")) {
        if (!term.is_array() || term.size() != 2)
          throw validation_error(
              "cohomology ring input: product result terms must be "
              "[coefficient, name] pairs");
        rp.result.emplace_back(detail::int_from_json(term.at(0)),
                               term.at(1).get<std::string>());
      }
      ring.products.push_back(std::move(rp));
    }
  ring.fundamental_class = need("fundamental_class").get<std::string>();
  ring.a = need("a").get<std::string>();
  ring.b = need("b").get<std::string>();
  ring.spherical_witnesses_asserted =
      j.value("spherical_witnesses_asserted", false);
  ring.skeleton_coH_asserted = j.value("skeleton_coH_asserted", false);
  ring.divisibility_k = need("divisibility_k").get<long long>();
  return ring;
}

/* ----- skeleton reconstruction from homology data ----- */

struct HomologyDegreeEntry {
  int i = 0;
  long long d = 0;
  std::vector<Int> torsion_orders;  // orders of the cyclic summands, >= 2
};

struct HomologyDataInput {
  enum class Variant { mp, wp, generic };
  int l = 2;
  int n = 0;
  int m = 0;
  std::vector<HomologyDegreeEntry> entries;
  long long k = 1;
  Variant variant = Variant::mp;
};

struct SkeletonReport {
  HomologyDataInput input;
  SpaceExpr c = SpaceExpr::point();
  std::vector<ExcludedPrime> excluded_primes;
  std::vector<std::string> hypotheses_used;
  std::vector<std::string> notes;
};

inline std::string variant_name(HomologyDataInput::Variant v) {
  switch (v) {
    case HomologyDataInput::Variant::mp: return "Mp";
    case HomologyDataInput::Variant::wp: return "Wp";
    default: return "generic";
  }
}

inline SkeletonReport skeleton_from_homology(const HomologyDataInput& hd) {
  using Variant = HomologyDataInput::Variant;
  const int l = hd.l, n = hd.n, m = hd.m;
  const int nm = n - m;

  if (hd.variant == Variant::mp) {
    if (l < 3)
      throw validation_error(
          "skeleton_from_homology (Mp): connectivity hypothesis l >= 3 "
          "fails (l = " + std::to_string(l) + ")");
    if (n > 3 * l - 2)
      throw validation_error(
          "skeleton_from_homology (Mp): dimension hypothesis n <= 3l-2 "
          "fails (n = " + std::to_string(n) + ", 3l-2 = " +
          std::to_string(3 * l - 2) + ")");
  } else if (hd.variant == Variant::wp) {
    if (l < 2)
      throw validation_error(
          "skeleton_from_homology (Wp): connectivity hypothesis l >= 2 "
          "fails (l = " + std::to_string(l) + ")");
    if (n > 3 * l - 1)
      throw validation_error(
          "skeleton_from_homology (Wp): dimension hypothesis n <= 3l-1 "
          "fails (n = " + std::to_string(n) + ", 3l-1 = " +
          std::to_string(3 * l - 1) + ")");
  } else {
    if (l < 2)
      throw validation_error(
          "skeleton_from_homology: the space must be simply connected "
          "(l >= 2)");
  }
  if (m < l || m > n - l)
    throw validation_error(
        "skeleton_from_homology: need l <= m <= n-l (m = " +
        std::to_string(m) + ")");

  std::map<int, const HomologyDegreeEntry*> by_degree;
  for (const auto& e : hd.entries) {
    if (e.i < l || e.i > n - l)
      throw validation_error(
          "skeleton_from_homology: entry degree " + std::to_string(e.i) +
          " lies outside [l, n-l] = [" + std::to_string(l) + ", " +
          std::to_string(n - l) + "]");
    if (e.d < 0)
      throw validation_error("skeleton_from_homology: d_i must be >= 0");
    for (const auto& q : e.torsion_orders)
      if (q < 2)
        throw validation_error(
            "skeleton_from_homology: torsion orders must be >= 2");
    if (!by_degree.emplace(e.i, &e).second)
      throw validation_error("skeleton_from_homology: duplicate entry for "
                             "degree " + std::to_string(e.i));
  }

  auto betti = [&](int i) -> long long {
    auto it = by_degree.find(i);
    return it == by_degree.end() ? 0 : it->second->d;
  };
  if (m == nm) {
    if (betti(m) < 2)
      throw validation_error(
          "skeleton_from_homology: with m = n-m the pair consumes two S^" +
          std::to_string(m) + " summands, so d_m >= 2 is required (d_m = " +
          std::to_string(betti(m)) + ")");
  } else if (betti(m) < 1 || betti(nm) < 1) {
    throw validation_error(
        "skeleton_from_homology: the pair needs d_m >= 1 and d_{n-m} >= 1 "
        "(d_" + std::to_string(m) + " = " + std::to_string(betti(m)) +
        ", d_" + std::to_string(nm) + " = " + std::to_string(betti(nm)) +
        ")");
  }

  SkeletonReport report;
  report.input = hd;

  int moore_low = hd.variant == Variant::generic ? 3 : l + 1;
  std::vector<SpaceExpr> spheres, moores;
  for (const auto& [i, entry] : by_degree) {
    long long copies = entry->d - (i == m ? 1 : 0) - (i == nm ? 1 : 0);
    for (long long c = 0; c < copies; ++c)
      spheres.push_back(SpaceExpr::sphere(i));
    if (entry->torsion_orders.empty()) continue;
    if (hd.variant == Variant::wp) {
      for (const auto& q : entry->torsion_orders)
        for (const auto& pp : factorize(detail::order_to_ll(q)))
          detail::add_excluded(
              report.excluded_primes, pp.p,
              "p-torsion present in the input homology is discarded after "
              "localization (Wp)");
      continue;
    }
    if (i < moore_low)
      throw validation_error(
          "skeleton_from_homology: torsion T_" + std::to_string(i) +
          " lies below the Moore range [" + std::to_string(moore_low) + ", " +
          std::to_string(hd.variant == Variant::generic ? n - 1 : n - l) +
          "] and cannot be realized");
    std::vector<PrimePower> torsion;
    for (const auto& q : entry->torsion_orders)
      for (const auto& pp : torsion_of_order(detail::order_to_ll(q)))
        torsion.push_back(pp);
    sort_torsion(torsion);
    moores.push_back(SpaceExpr::moore_group(i, torsion));
  }

  if (hd.variant != Variant::generic) {
    long long bound = std::max(m, nm) + 4;
    detail::add_small_primes(report.excluded_primes, bound,
                             "2p < max(m, n-m) + 4 = " +
                                 std::to_string(bound));
  }

  std::vector<SpaceExpr> kids = spheres;
  kids.insert(kids.end(), moores.begin(), moores.end());
  if (kids.empty())
    report.c = SpaceExpr::point();
  else if (kids.size() == 1)
    report.c = kids[0];
  else
    report.c = SpaceExpr::wedge(kids);

  std::string pair_hypothesis =
      "a cohomology pair (a, b) in degrees (" + std::to_string(m) + ", " +
      std::to_string(nm) + ") with a^2 = 0, b^2 = 0 and <a u b, [M]> = +-1 "
      "exists (asserted via the variant choice)";
  switch (hd.variant) {
    case Variant::mp:
      report.hypotheses_used = {
          "M is an (l-1)-connected Poincare duality complex with l >= 3 and "
          "n <= 3l-2",
          pair_hypothesis,
          "statement holds after localization away from the excluded primes"};
      break;
    case Variant::wp:
      report.hypotheses_used = {
          "M is an (l-1)-connected Poincare duality complex with l >= 2 and "
          "n <= 3l-1",
          pair_hypothesis,
          "all torsion in the input homology is discarded (its primes join "
          "the excluded set)",
          "statement holds after localization away from the excluded primes"};
      break;
    case Variant::generic:
      report.hypotheses_used = {
          "the (n-1)-skeleton is a wedge of simply connected spheres and "
          "Moore spaces (asserted via the variant choice)",
          "integral statement; no localization required"};
      break;
  }
  report.notes.push_back("complement C for the capped complex X_{M,k} with "
                         "k = " + std::to_string(hd.k) +
                         "; wedge S^" + std::to_string(m) + " v S^" +
                         std::to_string(nm) + " v C rebuilds the skeleton");
  return report;
}

inline json to_json(const SkeletonReport& r) {
  json entries = json::array();
  for (const auto& e : r.input.entries) {
    json torsion = json::array();
    for (const auto& q : e.torsion_orders)
      torsion.push_back(detail::int_to_json(q));
    entries.push_back({{"i", e.i}, {"d", e.d}, {"torsion", torsion}});
  }
  return json{{"variant", variant_name(r.input.variant)},
              {"l", r.input.l},
              {"n", r.input.n},
              {"m", r.input.m},
              {"k", r.input.k},
              {"entries", entries},
              {"c", to_json(r.c)},
              {"excluded_primes", detail::excluded_to_json(r.excluded_primes)},
              {"hypotheses_used", detail::strings_to_json(r.hypotheses_used)},
              {"notes", detail::strings_to_json(r.notes)}};
}

inline std::string to_text(const SkeletonReport& r) {
  std::string out;
  out += "variant " + variant_name(r.input.variant) +
         ": l=" + std::to_string(r.input.l) +
         " n=" + std::to_string(r.input.n) +
         " m=" + std::to_string(r.input.m) +
         " k=" + std::to_string(r.input.k) + "\n";
  out += "C = " + to_text(r.c) + "\n";
  out += "excluded primes: " + detail::excluded_to_text(r.excluded_primes) +
         "\n";
  for (const auto& e : r.excluded_primes)
    out += "  " + std::to_string(e.p) + ": " + e.rule + "\n";
  out += "hypotheses:\n";
  for (const auto& h : r.hypotheses_used) out += "  - " + h + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

inline HomologyDataInput homology_data_from_json(const json& j) {
  if (!j.is_object())
    throw validation_error("homology data input must be a JSON object");
  HomologyDataInput hd;
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key))
      throw validation_error(std::string("homology data input: missing \"") +
                             key + "\"");
    return j.at(key);
  };
  hd.l = need("l").get<int>();
  hd.n = need("n").get<int>();
  hd.m = need("m").get<int>();
  hd.k = need("k").get<long long>();
  std::string variant = need("variant").get<std::string>();
  if (variant == "Mp" || variant == "mp")
    hd.variant = HomologyDataInput::Variant::mp;
  else if (variant == "Wp" || variant == "wp")
    hd.variant = HomologyDataInput::Variant::wp;
  else if (variant == "generic")
    hd.variant = HomologyDataInput::Variant::generic;
  else
    throw validation_error(
        "homology data input: variant must be Mp, Wp, or generic; got \"" +
        variant + "\"");
  for (const auto& e : need("entries")) {
    HomologyDegreeEntry entry;
    entry.i = e.at("i").get<int>();
    entry.d = e.value("d", 0LL);
    if (e.contains("torsion"))
      for (const auto& q : e.at("torsion"))
        entry.torsion_orders.push_back(detail::int_from_json(q));
    hd.entries.push_back(std::move(entry));
  }
  return hd;
}

/* ----- verdict tables ----- */

struct InertnessVerdict {
  long long k = 0;
  bool inert = false;
  std::vector<long long> non_inert_primes;
  std::vector<std::string> notes;
};

inline InertnessVerdict inertness_verdict(long long k) {
  InertnessVerdict v;
  v.k = k;
  v.inert = (k == 1 || k == -1);
  if (v.inert) {
    v.notes.push_back(
        "k = +-1: the top-cell attaching map is inert (the loop projection "
        "admits a right homotopy inverse)");
  } else if (k == 0) {
    v.notes.push_back(
        "k = 0: the top cell splits off (the cofibration splits), and the "
        "attaching map is not inert");
  } else {
    for (const auto& pp : factorize(k < 0 ? -k : k))
      v.non_inert_primes.push_back(pp.p);
    v.notes.push_back(
        "|k| >= 2: not inert; not locally inert after localization at any "
        "prime dividing k");
  }
  return v;
}

struct TorsionClaim {
  long long p = 0;
  int r = 1;
  friend auto operator<=>(const TorsionClaim&, const TorsionClaim&) = default;
};

struct HyperbolicityVerdict {
  long long k = 0;
  bool rational_hyperbolic = false;
  bool all_prime_powers = false;  // k = 0: Z/p^r-hyperbolic for all p, r
  std::vector<TorsionClaim> torsion_claims;
  bool cokernel_rational = false;
  bool cokernel_all_prime_powers = false;
  std::vector<TorsionClaim> cokernel_claims;
  std::vector<std::string> notes;
};

inline HyperbolicityVerdict hyperbolicity_verdict(long long k) {
  HyperbolicityVerdict v;
  v.k = k;
  if (k == 0) {
    v.rational_hyperbolic = true;
    v.all_prime_powers = true;
    v.cokernel_rational = true;
    v.cokernel_all_prime_powers = true;
    v.notes.push_back(
        "k = 0: rationally hyperbolic and Z/p^r-hyperbolic for all primes p "
        "and all r >= 1; the skeleton-inclusion cokernel carries Q-summands "
        "and Z/p^r-summands growing exponentially");
    return v;
  }
  if (k == 1 || k == -1) {
    v.notes.push_back(
        "k = +-1: the table makes no hyperbolicity claim (the top cell is "
        "inert)");
    return v;
  }
  long long a = k < 0 ? -k : k;
  for (const auto& pp : factorize(a)) {
    int max_r;
    if (pp.p % 2 == 1) {
      max_r = pp.r + 1;  // Z/p^r and Z/p^{r+1} for every p^r | k
    } else if (pp.r >= 2) {
      max_r = pp.r + 1;  // 4 | k: Z/2^r and Z/2^{r+1} for every 2^r | k
    } else {
      max_r = 3;  // 2 || k: Z/2, Z/4, Z/8
    }
    for (int r = 1; r <= max_r; ++r)
      v.torsion_claims.push_back({pp.p, r});
  }
  std::sort(v.torsion_claims.begin(), v.torsion_claims.end());
  v.cokernel_claims = v.torsion_claims;
  v.notes.push_back(
      "claims transcribe the hyperbolicity case table for k = " +
      std::to_string(k) +
      "; the cokernel of the skeleton inclusion on homotopy groups carries "
      "the same torsion summands with exponentially growing counts");
  return v;
}

inline json to_json(const InertnessVerdict& v) {
  json primes = json::array();
  for (long long p : v.non_inert_primes) primes.push_back(p);
  return json{{"k", v.k},
              {"inert", v.inert},
              {"non_inert_primes", primes},
              {"notes", detail::strings_to_json(v.notes)}};
}

inline std::string to_text(const InertnessVerdict& v) {
  std::string out = "k = " + std::to_string(v.k) + ": " +
                    (v.inert ? "inert" : "not inert") + "\n";
  if (!v.non_inert_primes.empty()) {
    out += "not locally inert at:";
    for (long long p : v.non_inert_primes) out += " " + std::to_string(p);
    out += "\n";
  }
  for (const auto& n : v.notes) out += "note: " + n + "\n";
  return out;
}

namespace detail {

inline json claims_to_json(const std::vector<TorsionClaim>& claims) {
  json out = json::array();
  for (const auto& c : claims) out.push_back(json::array({c.p, c.r}));
  return out;
}

inline std::string claims_to_text(const std::vector<TorsionClaim>& claims) {
  if (claims.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (i) out += ", ";
    out += "Z/" + std::to_string(PrimePower{claims[i].p, claims[i].r}.value());
  }
  return out;
}

}  // namespace detail

inline json to_json(const HyperbolicityVerdict& v) {
  return json{{"k", v.k},
              {"rational_hyperbolic", v.rational_hyperbolic},
              {"all_prime_powers", v.all_prime_powers},
              {"torsion_claims", detail::claims_to_json(v.torsion_claims)},
              {"cokernel",
               json{{"rational", v.cokernel_rational},
                    {"all_prime_powers", v.cokernel_all_prime_powers},
                    {"claims", detail::claims_to_json(v.cokernel_claims)}}},
              {"notes", detail::strings_to_json(v.notes)}};
}

inline std::string to_text(const HyperbolicityVerdict& v) {
  std::string out = "k = " + std::to_string(v.k) + "\n";
  out += "rationally hyperbolic: ";
  out += v.rational_hyperbolic ? "yes" : "no";
  out += "\n";
  if (v.all_prime_powers)
    out += "Z/p^r-hyperbolic for all primes p and all r >= 1\n";
  else
    out += "hyperbolic at: " + detail::claims_to_text(v.torsion_claims) + "\n";
  if (v.cokernel_all_prime_powers)
    out += "cokernel claims: all Z/p^r" +
           std::string(v.cokernel_rational ? " and Q" : "") + "\n";
  else
    out += "cokernel claims: " + detail::claims_to_text(v.cokernel_claims) +
           "\n";
  for (const auto& n : v.notes) out += "note: " + n + "\n";
  return out;
}

/* ----- X_{M,k} builder ----- */

inline CappedComplexSpec build_xmk(const SpaceExpr& skeleton, int n,
                                   long long k, int m) {
  SpaceExpr w = normalize(skeleton);
  std::vector<SpaceExpr> pieces;
  if (w.is(SpaceExpr::Kind::wedge))
    pieces = w.kids;
  else if (!w.is(SpaceExpr::Kind::point))
    pieces.push_back(w);

  int nm = n - m;
  auto take = [&](int degree) {
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].is(SpaceExpr::Kind::sphere) && pieces[i].n == degree) {
        pieces.erase(pieces.begin() + static_cast<long>(i));
        return;
      }
    throw validation_error(
        "build_xmk: the skeleton has no S^" + std::to_string(degree) +
        " wedge summand left to carry the Whitehead pair");
  };
  take(m);
  take(nm);

  CappedComplexSpec spec;
  spec.n = n;
  spec.m = m;
  spec.k = k;
  if (pieces.empty())
    spec.c = SpaceExpr::point();
  else if (pieces.size() == 1)
    spec.c = pieces[0];
  else
    spec.c = SpaceExpr::wedge(pieces);
  spec.whitehead_component_asserted = true;
  spec.validate();
  return spec;
}

}  // namespace loopspace
