// Samples a random curvature operator, splits it, and prints the cubic Weyl invariants
// next to the dimensional constants that govern the pinching estimates.

#include <cstdio>

#include "curvlab/constants.hpp"
#include "curvlab/decomposition.hpp"
#include "curvlab/model_spaces.hpp"
#include "curvlab/products.hpp"
#include "curvlab/random.hpp"

using namespace curvlab;

int main() {
  Sampler sm(7);
  for (int n = 4; n <= 7; ++n) {
    const CurvatureDecomposition d = decompose(sm.curvature(n));
    const auto& w = d.weyl.op();
    const double wn = norm(w);
    const double sq = inner(w, square(w)) / (wn * wn * wn);
    const double sh = inner(w, sharp(w)) / (wn * wn * wn);
    const ConstantsTable t = constants(n);
    std::printf("n=%d  |W|=%.4f  <W,W^2>/|W|^3=%+.4f  <W,W#>/|W|^3=%+.4f  s_n=%.4f\n", n, wn, sq, sh, t.s_n);
  }
  const CurvaturePackage p = model_curvature(parse_model_spec("product:sphere:2:1,sphere:2:1"));
  const auto spec = decompose(p.R).weyl.op().eigenvalues();
  std::printf("S2xS2 Weyl spectrum:");
  for (int i = 0; i < spec.size(); ++i) std::printf(" %+.4f", spec(i));
  std::printf("\n");
  return 0;
}
