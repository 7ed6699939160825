#pragma once

/*
 * Exact graded-abelian-group bookkeeping.
 *
 * A GradedGroup is a finitely generated graded abelian group known up to a
 * truncation degree: per degree a free rank plus a multiset of prime-power
 * torsion factors Z/p^r.  Torsion is factored on construction, so tensor and
 * Tor computations reduce to gcd arithmetic on prime powers:
 *   Z/p^r (x) Z/q^s = Tor(Z/p^r, Z/q^s) = Z/gcd = Z/p^min(r,s) if p == q,
 *   and 0 otherwise.
 *
 * PowerSeries is a truncated integer power series; all series arithmetic is
 * exact (arbitrary-precision coefficients, reciprocal only of units).
 */

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopspace/arith.hpp"
#include "loopspace/errors.hpp"

namespace loopspace {

using json = nlohmann::ordered_json;

/* ----- coefficient rings ----- */

struct CoefficientRing {
  enum class Kind { integers, rationals, prime_field, localized_integers };

  Kind kind = Kind::integers;
  long long p = 0;                    // prime_field only
  std::vector<long long> inverted;    // localized_integers only, sorted

  static CoefficientRing integers() { return {}; }
  static CoefficientRing rationals() {
    CoefficientRing r;
    r.kind = Kind::rationals;
    return r;
  }
  static CoefficientRing prime_field(long long p) {
    if (!is_prime(p))
      throw validation_error("prime_field: " + std::to_string(p) +
                             " is not prime");
    CoefficientRing r;
    r.kind = Kind::prime_field;
    r.p = p;
    return r;
  }
  static CoefficientRing localized_integers(std::vector<long long> away) {
    for (long long q : away)
      if (!is_prime(q))
        throw validation_error("localized_integers: " + std::to_string(q) +
                               " is not prime");
    std::sort(away.begin(), away.end());
    away.erase(std::unique(away.begin(), away.end()), away.end());
    CoefficientRing r;
    r.kind = Kind::localized_integers;
    r.inverted = std::move(away);
    return r;
  }

  bool is_field() const {
    return kind == Kind::rationals || kind == Kind::prime_field;
  }

  /* machine token, also the CLI --field syntax */
  std::string token() const {
    switch (kind) {
      case Kind::integers:
        return "z";
      case Kind::rationals:
        return "q";
      case Kind::prime_field:
        return "fp:" + std::to_string(p);
      case Kind::localized_integers: {
        std::string s = "z-away:";
        for (std::size_t i = 0; i < inverted.size(); ++i)
          s += (i ? "," : "") + std::to_string(inverted[i]);
        return s;
      }
    }
    return "z";
  }

  std::string pretty() const {
    switch (kind) {
      case Kind::integers:
        return "Z";
      case Kind::rationals:
        return "Q";
      case Kind::prime_field:
        return "F_" + std::to_string(p);
      case Kind::localized_integers: {
        std::string s = "Z away from {";
        for (std::size_t i = 0; i < inverted.size(); ++i)
          s += (i ? "," : "") + std::to_string(inverted[i]);
        return s + "}";
      }
    }
    return "Z";
  }

  static CoefficientRing parse(const std::string& text) {
    if (text == "z") return integers();
    if (text == "q") return rationals();
    if (text.rfind("fp:", 0) == 0) {
      try {
        return prime_field(std::stoll(text.substr(3)));
      } catch (const std::invalid_argument&) {
        throw validation_error("bad field token: " + text);
      } catch (const std::out_of_range&) {
        throw validation_error("bad field token: " + text);
      }
    }
    if (text.rfind("z-away:", 0) == 0) {
      std::vector<long long> away;
      std::stringstream ss(text.substr(7));
      std::string item;
      while (std::getline(ss, item, ','))
        try {
          away.push_back(std::stoll(item));
        } catch (...) {
          throw validation_error("bad field token: " + text);
        }
      return localized_integers(std::move(away));
    }
    throw validation_error("unknown field token: " + text +
                           " (expected z, q, fp:<p>, or z-away:<p,...>)");
  }

  friend bool operator==(const CoefficientRing&,
                         const CoefficientRing&) = default;
};

/* ----- graded groups ----- */

struct GradedGroup {
  struct Entry {
    long long free_rank = 0;
    std::vector<PrimePower> torsion;  // sorted (p, r) ascending

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  int trunc = 0;
  std::map<int, Entry> entries;  // only nontrivial entries, degrees within trunc

  explicit GradedGroup(int trunc_degree = 0) : trunc(trunc_degree) {
    if (trunc < 0) throw validation_error("GradedGroup: trunc must be >= 0");
  }

  void add_free(int degree, long long rank) {
    if (rank < 0) throw validation_error("GradedGroup: negative rank");
    if (degree < 0 || degree > trunc || rank == 0) return;
    entries[degree].free_rank += rank;
  }

  void add_torsion(int degree, PrimePower q) {
    if (degree < 0 || degree > trunc) return;
    auto& t = entries[degree].torsion;
    t.insert(std::upper_bound(t.begin(), t.end(), q), q);
  }

  void add_torsion(int degree, const std::vector<PrimePower>& qs) {
    for (const auto& q : qs) add_torsion(degree, q);
  }

  long long free_rank(int degree) const {
    auto it = entries.find(degree);
    return it == entries.end() ? 0 : it->second.free_rank;
  }

  const std::vector<PrimePower>& torsion_at(int degree) const {
    static const std::vector<PrimePower> none;
    auto it = entries.find(degree);
    return it == entries.end() ? none : it->second.torsion;
  }

  void prune() {
    for (auto it = entries.begin(); it != entries.end();)
      it = it->second.trivial() ? entries.erase(it) : std::next(it);
  }

  friend bool operator==(const GradedGroup& a, const GradedGroup& b) {
    if (a.trunc != b.trunc) return false;
    auto ap = a;
    auto bp = b;
    ap.prune();
    bp.prune();
    return ap.entries == bp.entries;
  }
};

/* Degreewise direct sum; truncation is the minimum of the two. */
inline GradedGroup direct_sum(const GradedGroup& a, const GradedGroup& b) {
  GradedGroup out(std::min(a.trunc, b.trunc));
  for (const auto& g : {a, b})
    for (const auto& [d, e] : g.entries) {
      out.add_free(d, e.free_rank);
      out.add_torsion(d, e.torsion);
    }
  return out;
}

/* Tensor of two entries, accumulated into out at the given degree. */
namespace detail {

inline void accumulate_tensor(GradedGroup& out, int degree,
                              const GradedGroup::Entry& x,
                              const GradedGroup::Entry& y) {
  out.add_free(degree, x.free_rank * y.free_rank);
  for (const auto& q : y.torsion)
    for (long long i = 0; i < x.free_rank; ++i) out.add_torsion(degree, q);
  for (const auto& q : x.torsion)
    for (long long i = 0; i < y.free_rank; ++i) out.add_torsion(degree, q);
  for (const auto& qx : x.torsion)
    for (const auto& qy : y.torsion)
      if (qx.p == qy.p)
        out.add_torsion(degree, {qx.p, std::min(qx.r, qy.r)});
}

inline void accumulate_tor(GradedGroup& out, int degree,
                           const GradedGroup::Entry& x,
                           const GradedGroup::Entry& y) {
  for (const auto& qx : x.torsion)
    for (const auto& qy : y.torsion)
      if (qx.p == qy.p)
        out.add_torsion(degree, {qx.p, std::min(qx.r, qy.r)});
}

}  // namespace detail

/* Graded tensor product with Tor correction:
 * degree n = sum_{i+j=n} G_i (x) H_j  (+)  sum_{i+j=n-1} Tor(G_i, H_j). */
inline GradedGroup kunneth_product(const GradedGroup& a, const GradedGroup& b,
                                   int trunc) {
  if (a.trunc < trunc || b.trunc < trunc)
    throw validation_error(
        "kunneth_product: operands truncated below requested degree");
  GradedGroup out(trunc);
  for (const auto& [i, x] : a.entries)
    for (const auto& [j, y] : b.entries) {
      if (i + j <= trunc) detail::accumulate_tensor(out, i + j, x, y);
      if (i + j + 1 <= trunc) detail::accumulate_tor(out, i + j + 1, x, y);
    }
  return out;
}

/* Invert the primes in `away`, deleting their torsion. */
inline GradedGroup localize(const GradedGroup& g,
                            const std::vector<long long>& away) {
  std::set<long long> kill(away.begin(), away.end());
  GradedGroup out(g.trunc);
  for (const auto& [d, e] : g.entries) {
    out.add_free(d, e.free_rank);
    for (const auto& q : e.torsion)
      if (!kill.count(q.p)) out.add_torsion(d, q);
  }
  return out;
}

inline std::string to_text(const GradedGroup& g) {
  std::string out;
  for (const auto& [d, e] : g.entries) {
    if (e.trivial()) continue;
    std::string line = std::to_string(d) + ": ";
    bool first = true;
    if (e.free_rank == 1) {
      line += "Z";
      first = false;
    } else if (e.free_rank > 1) {
      line += "Z^" + std::to_string(e.free_rank);
      first = false;
    }
    for (const auto& q : e.torsion) {
      if (!first) line += " + ";
      line += "Z/" + std::to_string(q.value());
      first = false;
    }
    if (!out.empty()) out += "\n";
    out += line;
  }
  return out.empty() ? "0" : out;
}

inline json to_json(const GradedGroup& g) {
  json entries = json::object();
  for (const auto& [d, e] : g.entries) {
    if (e.trivial()) continue;
    json torsion = json::array();
    for (const auto& q : e.torsion) torsion.push_back(q.value());
    entries[std::to_string(d)] = {{"free", e.free_rank},
                                  {"torsion", torsion}};
  }
  return json{{"trunc", g.trunc}, {"entries", entries}};
}

inline GradedGroup graded_group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("trunc") || !j.contains("entries"))
    throw validation_error("graded group JSON needs trunc and entries");
  GradedGroup g(j.at("trunc").get<int>());
  for (const auto& [key, val] : j.at("entries").items()) {
    int d = 0;
    try {
      d = std::stoi(key);
    } catch (...) {
      throw validation_error("graded group JSON: bad degree key " + key);
    }
    g.add_free(d, val.at("free").get<long long>());
    for (const auto& q : val.at("torsion"))
      g.add_torsion(d, torsion_of_order(q.get<long long>()));
  }
  return g;
}

/* ----- truncated integer power series ----- */

struct PowerSeries {
  int trunc = 0;
  std::vector<Int> c;  // c.size() == trunc + 1

  explicit PowerSeries(int trunc_degree = 0)
      : trunc(trunc_degree), c(static_cast<std::size_t>(trunc_degree) + 1, 0) {
    if (trunc < 0) throw validation_error("PowerSeries: trunc must be >= 0");
  }

  static PowerSeries one(int trunc_degree) {
    PowerSeries s(trunc_degree);
    s.c[0] = 1;
    return s;
  }

  static PowerSeries monomial(int trunc_degree, int degree, Int coef = 1) {
    PowerSeries s(trunc_degree);
    if (degree >= 0 && degree <= trunc_degree) s.c[degree] = coef;
    return s;
  }

  Int at(int d) const { return (d >= 0 && d <= trunc) ? c[d] : Int(0); }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

inline PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.trunc, b.trunc));
  for (int d = 0; d <= out.trunc; ++d) out.c[d] = a.c[d] + b.c[d];
  return out;
}

inline PowerSeries series_sub(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.trunc, b.trunc));
  for (int d = 0; d <= out.trunc; ++d) out.c[d] = a.c[d] - b.c[d];
  return out;
}

inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.trunc, b.trunc));
  for (int i = 0; i <= out.trunc; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; i + j <= out.trunc; ++j)
      if (b.c[j] != 0) out.c[i + j] += a.c[i] * b.c[j];
  }
  return out;
}

/* Multiplicative inverse; requires the constant term to be a unit of Z. */
inline PowerSeries series_reciprocal(const PowerSeries& a) {
  if (a.c[0] != 1 && a.c[0] != -1)
    throw validation_error(
        "series_reciprocal: constant term must be 1 or -1 to stay in Z");
  PowerSeries out(a.trunc);
  out.c[0] = a.c[0];  // 1/c0 == c0 for c0 = +-1
  for (int n = 1; n <= a.trunc; ++n) {
    Int acc = 0;
    for (int i = 1; i <= n; ++i) acc += a.c[i] * out.c[n - i];
    out.c[n] = -a.c[0] * acc;
  }
  return out;
}

/* 1 / (1 - g) for a series g with g(0) = 0: the generating function of a
 * free tensor algebra whose generator counts are the coefficients of g. */
inline PowerSeries tensor_algebra_series(const PowerSeries& g) {
  if (g.c[0] != 0)
    throw validation_error(
        "tensor_algebra_series: generator series must vanish in degree 0");
  return series_reciprocal(series_sub(PowerSeries::one(g.trunc), g));
}

namespace detail {

inline json int_to_json(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return json(static_cast<long long>(v));
  return json(v.str());
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw validation_error("expected an integer (number or decimal string)");
}

inline json strings_to_json(const std::vector<std::string>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

}  // namespace detail

inline json to_json(const PowerSeries& s) {
  json coeffs = json::array();
  for (const auto& v : s.c) coeffs.push_back(detail::int_to_json(v));
  return json{{"trunc", s.trunc}, {"coeffs", coeffs}};
}

inline PowerSeries series_from_json(const json& j) {
  if (!j.is_object() || !j.contains("trunc") || !j.contains("coeffs"))
    throw validation_error("series JSON needs trunc and coeffs");
  PowerSeries s(j.at("trunc").get<int>());
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || coeffs.size() != s.c.size())
    throw validation_error("series JSON: coeffs length must be trunc + 1");
  for (std::size_t i = 0; i < s.c.size(); ++i)
    s.c[i] = detail::int_from_json(coeffs[i]);
  return s;
}

inline std::string to_text(const PowerSeries& s) {
  std::string out;
  bool any = false;
  for (int d = 0; d <= s.trunc; ++d) {
    if (s.c[d] == 0) continue;
    if (any) out += " + ";
    if (d == 0)
      out += s.c[d].str();
    else if (s.c[d] == 1)
      out += "t^" + std::to_string(d);
    else
      out += s.c[d].str() + "*t^" + std::to_string(d);
    any = true;
  }
  if (!any) return "0";
  return out + " + O(t^" + std::to_string(s.trunc + 1) + ")";
}

/* ----- Poincare series of a graded group over a field ----- */

inline PowerSeries poincare_series(const GradedGroup& g,
                                   const CoefficientRing& field, int trunc) {
  if (g.trunc < trunc)
    throw validation_error(
        "poincare_series: group truncated below requested degree");
  if (!field.is_field())
    throw unsupported_error(
        "poincare_series: coefficients must be a field (Q or F_p), not " +
        field.pretty());
  PowerSeries s(trunc);
  for (const auto& [d, e] : g.entries) {
    if (d <= trunc) s.c[d] += e.free_rank;
    if (field.kind == CoefficientRing::Kind::prime_field) {
      long long count = 0;
      for (const auto& q : e.torsion)
        if (q.p == field.p) ++count;
      if (d <= trunc) s.c[d] += count;          // Z/p^r (x) F_p
      if (d + 1 <= trunc) s.c[d + 1] += count;  // Tor(Z/p^r, F_p)
    }
  }
  return s;
}

}  // namespace loopspace
