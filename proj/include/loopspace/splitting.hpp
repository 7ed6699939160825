#pragma once

/*
 * Wedge decomposition of A |x Loop(S^m x S^nm) when A is a wedge of spheres
 * and Moore spaces.
 *
 * Loops on a product of two spheres have a homology basis u^i v^j with
 * |u| = m-1, |v| = nm-1, and the half-smash splits into one suspended copy
 * of A for each basis monomial: Sigma^c A appears with multiplicity equal to
 * the number of monomials of degree c.  Summands are truncated by their
 * bottom homology degree, so tables are complete through the requested
 * truncation and no further.
 */

#include <map>
#include <tuple>

#include "loopspace/homology.hpp"

namespace loopspace {

struct SplitSummand {
  int degree = 0;  // S^degree, or P^degree(q) with H~ = Z/q in degree-1
  bool moore = false;
  PrimePower torsion;  // meaningful only when moore

  std::string text() const {
    if (!moore) return "S^" + std::to_string(degree);
    return "P^" + std::to_string(degree) + "(" +
           std::to_string(torsion.value()) + ")";
  }
};

struct SummandTable {
  int trunc = 0;   // homology degrees fully covered: 0..trunc
  int m = 0;       // loop factors S^m x S^nm
  int nm = 0;
  // degree -> summands in that degree (spheres first, then Moore by (p,r))
  std::map<int, std::vector<std::pair<SplitSummand, long long>>> rows;
};

/* Number of monomials u^i v^j with i(m-1) + j(nm-1) = c, i,j >= 0. */
inline long long shift_multiplicity(int c, int m, int nm) {
  long long total = 0;
  for (int j = 0; j * (nm - 1) <= c; ++j)
    if ((c - j * (nm - 1)) % (m - 1) == 0) ++total;
  return total;
}

inline SummandTable james_split_half_smash(const SpaceExpr& a, int m, int nm,
                                           int trunc) {
  if (m < 2 || nm < 2)
    throw validation_error("james_split_half_smash: sphere dimensions must "
                           "be >= 2 so the loop space is connected with "
                           "polynomial homology");
  if (trunc < 0)
    throw validation_error("james_split_half_smash: trunc must be >= 0");

  SpaceExpr na = normalize(a);
  std::vector<SplitSummand> base;
  std::vector<SpaceExpr> pieces;
  if (na.is(SpaceExpr::Kind::wedge))
    pieces = na.kids;
  else
    pieces.push_back(na);
  for (const auto& piece : pieces) {
    if (piece.is(SpaceExpr::Kind::point)) continue;
    if (piece.is(SpaceExpr::Kind::sphere)) {
      base.push_back({piece.n, false, {}});
    } else if (piece.is(SpaceExpr::Kind::moore_group) &&
               piece.torsion.size() == 1) {
      base.push_back({piece.n, true, piece.torsion[0]});
    } else {
      throw unsupported_error(
          "james_split_half_smash: A must normalize to a wedge of spheres "
          "and Moore spaces; got summand " +
          to_text(piece));
    }
  }

  // aggregate multiplicities across base summands and shifts
  std::map<std::tuple<int, int, long long, int>, long long> counts;
  for (const auto& s : base) {
    int bottom = s.moore ? s.degree - 1 : s.degree;
    for (int c = 0; bottom + c <= trunc; ++c) {
      long long mult = shift_multiplicity(c, m, nm);
      if (mult == 0) continue;
      counts[{s.degree + c, s.moore ? 1 : 0, s.moore ? s.torsion.p : 0,
              s.moore ? s.torsion.r : 0}] += mult;
    }
  }

  SummandTable table;
  table.trunc = trunc;
  table.m = m;
  table.nm = nm;
  for (const auto& [key, mult] : counts) {
    auto [degree, moore, p, r] = key;
    SplitSummand s;
    s.degree = degree;
    s.moore = moore != 0;
    if (s.moore) s.torsion = PrimePower{p, r};
    table.rows[degree].emplace_back(s, mult);
  }
  return table;
}

/* Wedge summand count by degree label (spheres and Moore spaces together). */
inline PowerSeries summand_counts(const SummandTable& table) {
  PowerSeries out(table.trunc + 1);
  for (const auto& [degree, row] : table.rows)
    for (const auto& [s, mult] : row) {
      (void)s;
      if (degree <= table.trunc + 1) out.c[degree] += mult;
    }
  return out;
}

/* Poincare series of the table (with basepoint unit) over a field; complete
 * through table.trunc. */
inline PowerSeries table_series(const SummandTable& table,
                                const CoefficientRing& field) {
  if (!field.is_field())
    throw unsupported_error("table_series: field coefficients only");
  PowerSeries out(table.trunc);
  out.c[0] = 1;
  for (const auto& [degree, row] : table.rows)
    for (const auto& [s, mult] : row) {
      if (!s.moore) {
        if (degree <= table.trunc) out.c[degree] += mult;
        continue;
      }
      bool visible = field.kind == CoefficientRing::Kind::prime_field &&
                     field.p == s.torsion.p;
      if (!visible) continue;
      if (degree - 1 <= table.trunc) out.c[degree - 1] += mult;
      if (degree <= table.trunc) out.c[degree] += mult;
    }
  return out;
}

inline std::string to_csv(const SummandTable& table) {
  std::string out = "degree,summand,multiplicity\n";
  for (const auto& [degree, row] : table.rows)
    for (const auto& [s, mult] : row)
      out += std::to_string(degree) + "," + s.text() + "," +
             std::to_string(mult) + "\n";
  return out;
}

inline std::string to_text(const SummandTable& table) {
  if (table.rows.empty()) return "(no summands through degree " +
                                 std::to_string(table.trunc) + ")\n";
  std::string out;
  for (const auto& [degree, row] : table.rows) {
    out += std::to_string(degree) + ":";
    for (const auto& [s, mult] : row)
      out += " " + s.text() + " x" + std::to_string(mult);
    out += "\n";
  }
  return out;
}

inline json to_json(const SummandTable& table) {
  json rows = json::array();
  for (const auto& [degree, row] : table.rows)
    for (const auto& [s, mult] : row) {
      json entry;
      entry["degree"] = degree;
      entry["kind"] = s.moore ? "moore" : "sphere";
      if (s.moore) entry["order"] = detail::int_to_json(s.torsion.value());
      entry["multiplicity"] = mult;
      rows.push_back(std::move(entry));
    }
  return json{{"trunc", table.trunc},
              {"loop_factors", json::array({table.m, table.nm})},
              {"generator_shifts", json::array({table.m - 1, table.nm - 1})},
              {"rows", rows}};
}

}  // namespace loopspace
