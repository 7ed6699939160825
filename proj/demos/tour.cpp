/*
 * A short tour: decompose the capped complex with n = 7, m = 3, k = 1 and
 * cap component S^3, print its loop homology presentation over Q, and run
 * the two-path series check through degree 10.
 */

#include <cstdio>

#include "loopspace/jobs.hpp"

int main() {
  using namespace loopspace;

  CappedComplexSpec spec;
  spec.n = 7;
  spec.m = 3;
  spec.k = 1;
  spec.c = SpaceExpr::sphere(3);
  spec.whitehead_component_asserted = true;

  DecompositionReport dec = decompose_capped(spec);
  std::fputs(to_text(dec).c_str(), stdout);
  std::fputs("\n", stdout);

  CoefficientRing q = CoefficientRing::rationals();
  LoopHomologyPresentation lh = loop_homology_presentation(spec, q, 10);
  std::fputs("loop homology generators:\n", stdout);
  for (const auto& g : lh.presentation.generators)
    std::printf("  %s (degree %d)\n", g.name.c_str(), g.degree);
  for (const auto& rel : lh.presentation.relations)
    std::printf("relation: %s\n", to_text(rel, lh.presentation).c_str());
  std::fputs("\n", stdout);

  VerificationReport vr = verify_decomposition_series(spec, q, 10);
  std::fputs(to_text(vr).c_str(), stdout);
  return vr.status == "PASS" ? 0 : 2;
}
