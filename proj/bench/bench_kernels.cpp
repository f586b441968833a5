// Times the OpenMP quadrature kernel against the serial reference on the
// default solver grid and confirms the two outputs are bit-identical.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "reflode/grid.hpp"
#include "reflode/spectral.hpp"
#include "reflode/trigpoly.hpp"

using namespace reflode;

namespace {

template <typename F>
double best_ms(F&& body, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  const EquationParams p{-3.0, 1.0};
  const FrequencyBasis basis({1.0});
  TrigPoly g(basis);
  g.add_term({Rational(1)}, 1.0, 0.0);
  g.add_term({Rational(2)}, 0.0, 0.25);

  const double T = 40.0;
  const double h = 0.005;
  const GridFunction gf = sample(g, T, h);
  const KernelSpec spec = kernel_for(p);

  std::printf("grid: T = %g, h = %g, %zu nodes\n", T, h, gf.size());

  // Warm both paths once, then take the best of five.
  GreenResult parallel = green_apply(p, gf, spec);
  GreenResult serial = green_apply_reference(p, gf, spec);

  const double ms_par = best_ms([&] { parallel = green_apply(p, gf, spec); }, 5);
  const double ms_ser =
      best_ms([&] { serial = green_apply_reference(p, gf, spec); }, 5);

  bool identical = parallel.x.size() == serial.x.size();
  for (std::size_t i = 0; identical && i < parallel.x.size(); ++i)
    identical = std::memcmp(&parallel.x[i], &serial.x[i], sizeof(double)) == 0;

  std::printf("parallel kernel: %10.3f ms\n", ms_par);
  std::printf("serial kernel:   %10.3f ms\n", ms_ser);
  std::printf("speedup:         %10.2fx\n", ms_ser / ms_par);
  std::printf("bit-identical:   %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
