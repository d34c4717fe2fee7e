// Serial reference vs OpenMP kernel timings. Each row also checks that both
// paths return the same result.

#include "kmx/diagram.hpp"
#include "kmx/geometry.hpp"
#include "kmx/lattice.hpp"
#include "kmx/pairs.hpp"
#include "kmx/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool row(const char* name, const std::function<std::string(kmx::Exec)>& run) {
  std::string serial, parallel;
  const double ts = seconds([&] { serial = run(kmx::Exec::Serial); });
  const double tp = seconds([&] { parallel = run(kmx::Exec::Parallel); });
  const bool same = serial == parallel;
  std::printf("%-28s %10.3f %10.3f %8.2fx  %s\n", name, ts, tp, tp > 0 ? ts / tp : 0.0, same ? "same" : "DIFFERENT");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmx serial vs parallel timings"};
  bool quick = false;
  app.add_flag("--quick", quick, "small sizes (smoke run)");
  CLI11_PARSE(app, argc, argv);
  kmx::configure_threads_from_env();

  const int enum_rank = quick ? 5 : 7;
  const int root_height = quick ? 12 : 40;
  const int sweep_height = quick ? 4 : 8;

  std::printf("threads: %d\n", kmx::max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");
  bool ok = true;
  ok &= row(("enumerate rank " + std::to_string(enum_rank)).c_str(), [&](kmx::Exec e) {
    std::string s;
    for (const auto& d : kmx::enumerate_hyperbolic(enum_rank, e)) s += kmx::canonical_form(d) + ";";
    return s;
  });
  ok &= row(("E10 roots height " + std::to_string(root_height)).c_str(), [&](kmx::Exec e) {
    return std::to_string(kmx::real_roots_up_to_height(kmx::catalog_lookup("E10"), root_height, e).size());
  });
  ok &= row("facet check catalog", [](kmx::Exec e) {
    std::string s;
    for (const auto& r : kmx::facet_check_catalog(e)) s += kmx::to_pq_string(r.global_maximum) + ";";
    return s;
  });
  ok &= row(("pair sweep rank4-3 h" + std::to_string(sweep_height)).c_str(), [&](kmx::Exec e) {
    const auto s = kmx::sweep_prenilpotency(kmx::catalog_lookup("rank4-3"), sweep_height, 16,
                                            kmx::kDefaultSearchBudget, e);
    return std::to_string(s.pairs) + "/" + std::to_string(s.oracle_conclusive) + "/" +
           std::to_string(s.contradictions);
  });
  return ok ? 0 : 1;
}
