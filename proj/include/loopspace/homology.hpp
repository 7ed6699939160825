#pragma once

/*
 * Homology evaluation for space expressions.
 *
 * Integral path: recursion over the expression returning an exact
 * GradedGroup.  Wedge sums reduced parts, Product uses the Kunneth formula
 * with Tor, Smash the reduced Kunneth formula, HalfSmash(A, Y) requires a
 * co-H left factor (A |x Y = A v (A ^ Y)); loop homology over Z is computed
 * only for spheres and products of spheres (free in both cases).
 *
 * Field path: the same recursion on dimension vectors; no Tor terms, Moore
 * space dimensions come from universal coefficients, HalfSmash with a
 * non-co-H left factor falls back to H~(A) (x) H(Y), and Loop additionally
 * supports suspension-shaped wedges through the tensor-algebra series.
 */

#include <string>
#include <vector>

#include "loopspace/space_expr.hpp"

namespace loopspace {

namespace detail {

inline GradedGroup reduced_group(GradedGroup g) {
  auto it = g.entries.find(0);
  if (it == g.entries.end() || it->second.free_rank < 1)
    throw validation_error("reduced_group: missing base point class");
  it->second.free_rank -= 1;
  g.prune();
  return g;
}

inline GradedGroup shifted_up(const GradedGroup& g, int trunc) {
  GradedGroup out(trunc);
  for (const auto& [d, e] : g.entries) {
    out.add_free(d + 1, e.free_rank);
    out.add_torsion(d + 1, e.torsion);
  }
  return out;
}

inline GradedGroup eval_z(const SpaceExpr& e, int trunc);

inline GradedGroup unit_group(int trunc) {
  GradedGroup g(trunc);
  g.add_free(0, 1);
  return g;
}

inline GradedGroup eval_loop_z(const SpaceExpr& arg, int trunc) {
  using K = SpaceExpr::Kind;
  if (arg.is(K::point)) return unit_group(trunc);
  if (arg.is(K::sphere)) {
    GradedGroup g(trunc);
    for (int d = 0; d <= trunc; d += arg.n - 1) g.add_free(d, 1);
    return g;
  }
  if (arg.is(K::product))
    return kunneth_product(eval_loop_z(arg.kids[0], trunc),
                           eval_loop_z(arg.kids[1], trunc), trunc);
  throw unsupported_error(
      "integral loop homology is supported for spheres and products of "
      "spheres only; got Loop(" +
      to_text(arg) + ")");
}

inline GradedGroup eval_z(const SpaceExpr& e, int trunc) {
  using K = SpaceExpr::Kind;
  switch (e.kind) {
    case K::point:
      return unit_group(trunc);
    case K::sphere: {
      GradedGroup g = unit_group(trunc);
      g.add_free(e.n, 1);
      return g;
    }
    case K::moore: {
      GradedGroup g = unit_group(trunc);
      if (e.k == 0) {
        g.add_free(e.n - 1, 1);
        g.add_free(e.n, 1);
      } else if (e.k != 1 && e.k != -1) {
        g.add_torsion(e.n - 1, torsion_of_order(e.k < 0 ? -e.k : e.k));
      }
      return g;
    }
    case K::moore_group: {
      GradedGroup g = unit_group(trunc);
      g.add_torsion(e.n - 1, e.torsion);
      return g;
    }
    case K::wedge: {
      GradedGroup g = unit_group(trunc);
      for (const auto& kid : e.kids) {
        auto r = reduced_group(eval_z(kid, trunc));
        for (const auto& [d, en] : r.entries) {
          g.add_free(d, en.free_rank);
          g.add_torsion(d, en.torsion);
        }
      }
      return g;
    }
    case K::product:
      return kunneth_product(eval_z(e.kids[0], trunc),
                             eval_z(e.kids[1], trunc), trunc);
    case K::smash: {
      auto ra = reduced_group(eval_z(e.kids[0], trunc));
      auto rb = reduced_group(eval_z(e.kids[1], trunc));
      auto g = kunneth_product(ra, rb, trunc);
      g.add_free(0, 1);
      return g;
    }
    case K::half_smash: {
      if (!is_co_h(e.kids[0]))
        throw unsupported_error(
            "integral homology of a half-smash needs a co-H left factor "
            "(wedge of spheres, Moore spaces, suspensions); got " +
            to_text(e.kids[0]));
      auto ra = reduced_group(eval_z(e.kids[0], trunc));
      auto rb = reduced_group(eval_z(e.kids[1], trunc));
      auto g = kunneth_product(ra, rb, trunc);  // reduced part of A ^ Y
      for (const auto& [d, en] : ra.entries) {  // the split-off copy of A
        g.add_free(d, en.free_rank);
        g.add_torsion(d, en.torsion);
      }
      g.add_free(0, 1);
      return g;
    }
    case K::susp: {
      auto r = reduced_group(eval_z(e.kids[0], trunc));
      auto g = shifted_up(r, trunc);
      g.add_free(0, 1);
      return g;
    }
    case K::loop:
      return eval_loop_z(e.kids[0], trunc);
  }
  return unit_group(trunc);
}

/* ----- field path: dimension vectors indexed by degree ----- */

using Dims = std::vector<Int>;  // size trunc + 1

inline Dims eval_f(const SpaceExpr& e, const CoefficientRing& f, int trunc);

inline Dims unit_dims(int trunc) {
  Dims d(static_cast<std::size_t>(trunc) + 1, 0);
  d[0] = 1;
  return d;
}

inline Dims convolve(const Dims& a, const Dims& b, int trunc) {
  Dims out(static_cast<std::size_t>(trunc) + 1, 0);
  for (int i = 0; i <= trunc; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= trunc; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Dims reduced_dims(Dims d) {
  if (d.empty() || d[0] < 1)
    throw validation_error("reduced_dims: missing base point class");
  d[0] -= 1;
  return d;
}

/* Dimensions of the loop space homology of a normalized expression. */
inline Dims loop_dims(const SpaceExpr& arg, const CoefficientRing& f,
                      int trunc) {
  using K = SpaceExpr::Kind;
  if (arg.is(K::point)) return unit_dims(trunc);
  if (arg.is(K::sphere)) {
    Dims d(static_cast<std::size_t>(trunc) + 1, 0);
    for (int i = 0; i <= trunc; i += arg.n - 1) d[i] = 1;
    return d;
  }
  if (arg.is(K::product))
    return convolve(loop_dims(arg.kids[0], f, trunc),
                    loop_dims(arg.kids[1], f, trunc), trunc);
  if (is_co_h(arg)) {
    // tensor algebra on the desuspended reduced homology of the wedge
    Dims red = reduced_dims(eval_f(arg, f, trunc + 1));
    if (red[0] != 0 || red[1] != 0)
      throw unsupported_error(
          "loop series needs a simply connected suspension shape; got " +
          to_text(arg));
    PowerSeries g(trunc);
    for (int j = 0; j <= trunc; ++j) g.c[j] = red[j + 1];
    PowerSeries s = tensor_algebra_series(g);
    Dims out(static_cast<std::size_t>(trunc) + 1, 0);
    for (int d = 0; d <= trunc; ++d) out[d] = s.c[d];
    return out;
  }
  throw unsupported_error(
      "loop space unsupported for this shape (need a sphere, a product of "
      "supported factors, or a suspension-shaped wedge): Loop(" +
      to_text(arg) + ")");
}

inline Dims eval_f(const SpaceExpr& e, const CoefficientRing& f, int trunc) {
  using K = SpaceExpr::Kind;
  bool modp = f.kind == CoefficientRing::Kind::prime_field;
  switch (e.kind) {
    case K::point:
      return unit_dims(trunc);
    case K::sphere: {
      Dims d = unit_dims(trunc);
      if (e.n <= trunc) d[e.n] += 1;
      return d;
    }
    case K::moore: {
      Dims d = unit_dims(trunc);
      if (e.k == 0) {
        if (e.n - 1 <= trunc) d[e.n - 1] += 1;
        if (e.n <= trunc) d[e.n] += 1;
      } else if (e.k != 1 && e.k != -1 && modp && e.k % f.p == 0) {
        if (e.n - 1 <= trunc) d[e.n - 1] += 1;  // Z/k (x) F_p
        if (e.n <= trunc) d[e.n] += 1;          // Tor(Z/k, F_p)
      }
      return d;
    }
    case K::moore_group: {
      Dims d = unit_dims(trunc);
      if (modp) {
        long long count = 0;
        for (const auto& q : e.torsion)
          if (q.p == f.p) ++count;
        if (e.n - 1 <= trunc) d[e.n - 1] += count;
        if (e.n <= trunc) d[e.n] += count;
      }
      return d;
    }
    case K::wedge: {
      Dims d = unit_dims(trunc);
      for (const auto& kid : e.kids) {
        Dims r = reduced_dims(eval_f(kid, f, trunc));
        for (int i = 0; i <= trunc; ++i) d[i] += r[i];
      }
      return d;
    }
    case K::product:
      return convolve(eval_f(e.kids[0], f, trunc),
                      eval_f(e.kids[1], f, trunc), trunc);
    case K::smash: {
      Dims d = convolve(reduced_dims(eval_f(e.kids[0], f, trunc)),
                        reduced_dims(eval_f(e.kids[1], f, trunc)), trunc);
      d[0] += 1;
      return d;
    }
    case K::half_smash: {
      Dims ra = reduced_dims(eval_f(e.kids[0], f, trunc));
      Dims y = eval_f(e.kids[1], f, trunc);
      // H~(A |x Y) = H~(A) (x) H(Y) over a field, co-H or not
      Dims d = convolve(ra, y, trunc);
      d[0] += 1;
      return d;
    }
    case K::susp: {
      Dims r = reduced_dims(eval_f(e.kids[0], f, trunc));
      Dims d = unit_dims(trunc);
      for (int i = 0; i + 1 <= trunc; ++i) d[i + 1] += r[i];
      return d;
    }
    case K::loop:
      return loop_dims(normalize(e.kids[0]), f, trunc);
  }
  return unit_dims(trunc);
}

}  // namespace detail

/* Homology of a space expression with the given coefficients, exact up to
 * the truncation degree. */
inline GradedGroup homology(const SpaceExpr& e, const CoefficientRing& ring,
                            int trunc) {
  if (trunc < 0) throw validation_error("homology: trunc must be >= 0");
  switch (ring.kind) {
    case CoefficientRing::Kind::integers:
      return detail::eval_z(e, trunc);
    case CoefficientRing::Kind::localized_integers:
      return localize(detail::eval_z(e, trunc), ring.inverted);
    case CoefficientRing::Kind::rationals:
    case CoefficientRing::Kind::prime_field: {
      auto dims = detail::eval_f(e, ring, trunc);
      GradedGroup g(trunc);
      static const Int max_rank = std::numeric_limits<long long>::max();
      for (int d = 0; d <= trunc; ++d) {
        if (dims[d] > max_rank)
          throw resource_error("homology: rank exceeds 64-bit range");
        g.add_free(d, static_cast<long long>(dims[d]));
      }
      return g;
    }
  }
  return GradedGroup(trunc);
}

/* Reduced homology dimensions over a field, as a series-ready vector. */
inline PowerSeries reduced_poincare_series(const SpaceExpr& e,
                                           const CoefficientRing& field,
                                           int trunc) {
  if (!field.is_field())
    throw unsupported_error("reduced_poincare_series: field coefficients only");
  auto red = detail::reduced_dims(detail::eval_f(e, field, trunc));
  PowerSeries s(trunc);
  for (int d = 0; d <= trunc; ++d) s.c[d] = red[d];
  return s;
}

/*
 * Poincare series of the loop space of e over a field.
 * Supported shapes after normalization: Point, Sphere (series
 * 1/(1 - t^{n-1})), Product of supported shapes, and suspension-shaped
 * wedges (tensor algebra on the desuspended reduced homology).
 */
inline PowerSeries loop_series(const SpaceExpr& e,
                               const CoefficientRing& field, int trunc) {
  if (!field.is_field())
    throw validation_error("loop_series: coefficients must be a field");
  if (trunc < 0) throw validation_error("loop_series: trunc must be >= 0");
  auto dims = detail::loop_dims(normalize(e), field, trunc);
  PowerSeries s(trunc);
  for (int d = 0; d <= trunc; ++d) s.c[d] = dims[d];
  return s;
}

}  // namespace loopspace
