// Serial reference vs OpenMP timings for the parallel kernels.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>

#include <omp.h>

#include "hoform/constructor.hpp"
#include "hoform/numeric.hpp"

using namespace hoform;

namespace {

double seconds(const std::function<void()>& body, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %10.4f ms   parallel %10.4f ms   speedup %5.2fx\n", name, 1e3 * serial, 1e3 * parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path fixtures = argc > 1 ? argv[1] : HOFORM_FIXTURE_DIR;
  std::printf("threads: %d\n", omp_get_max_threads());

  for (int g : {1, 2}) {
    const GroupProfile profile = GroupProfile::torsion_free(g, 2);
    const int t = g == 1 ? 5 : 4;
    const double s = seconds([&] {
      Constructor c(profile);
      verify_level_serial(c, t, 4);
    }, 3);
    const double p = seconds([&] {
      Constructor c(profile);
      verify_level(c, t, 4);
    }, 3);
    char name[64];
    std::snprintf(name, sizeof name, "verify_level g=%d t=%d k=4", g, t);
    row(name, s, p);
  }

  const GroupData G = load_group(fixtures / "level11.json");
  NumericOptions opt;
  const CuspForm f = load_forms(G, 2, opt).front();
  std::vector<cplx> zs;
  for (int i = 0; i < 20000; ++i) zs.emplace_back(-0.5 + i / 20000.0, 0.02 + 0.3 * ((i * 7919) % 1000) / 1000.0);
  row("eval_batch 20000 points", seconds([&] { f.eval_batch_serial(zs); }, 3), seconds([&] { f.eval_batch(zs); }, 3));

  const cplx z1(0.1, 0.05), z2(0.4, 0.9);
  const Poly one{1.0};
  row("integrate_line", seconds([&] { integrate_line_serial(f, z1, z2, one, opt); }, 3),
      seconds([&] { integrate_line(f, z1, z2, one, opt); }, 3));
  return 0;
}
