// Acceptance driver: nine top-level checks at their contracted sizes, one
// PASS/FAIL line each.  Every comparison is exact symbolic equality except
// check 9, whose float tolerance is pinned below; wall-time budgets are
// enforced where stated.  Exit status is nonzero when any line fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include <qglue/qglue.hpp>

using namespace qglue;

namespace {

constexpr std::uint64_t kSeed = 20260814ull;
constexpr double kNumericTol = 1e-10;

int failures = 0;

void criterion(int id, double budget_secs, const std::string& label,
               const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string witness;
  try {
    witness = body();
  } catch (const std::exception& e) {
    witness = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (witness.empty() && budget_secs > 0 && secs > budget_secs)
    witness = "exceeded the " + std::to_string(budget_secs) + " s budget";
  const bool pass = witness.empty();
  if (!pass) ++failures;
  std::cout << "CRITERION " << id << " (" << label << "): " << (pass ? "PASS" : "FAIL");
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  std::cout << "  [" << secs << " s]";
  if (!pass) std::cout << "\n    " << witness;
  std::cout << "\n";
}

}  // namespace

int main() {
  criterion(1, 5.0, "recursion table through q^11", [] {
    std::string w = checks::periods_recursion_display();
    if (!w.empty()) return w;
    return checks::recursion_higher_vanishing();
  });

  criterion(2, 5.0, "period column display through q^10",
            [] { return checks::periods_pi_display(); });

  criterion(3, 10.0, "bracket structure constants on the full grid", [] {
    return checks::group_witt_grid(NodeContext{8, 18}, 8);
  });

  criterion(4, 30.0, "group laws on 200 seeded random units", [] {
    const NodeContext ctx{4, 10};
    int units = 0;
    std::string w = checks::group_compose_assoc(ctx, kSeed, 20, &units);
    if (w.empty()) w = checks::group_inverse_roundtrip(ctx, kSeed + 1, 20, &units);
    if (w.empty()) w = checks::group_decompose_recompose(ctx, kSeed + 2, 20, &units);
    if (w.empty()) w = checks::group_kappa_involution(ctx, kSeed + 3, 30, &units);
    if (w.empty()) w = checks::group_iota_equivariance(ctx, kSeed + 4, 20, &units);
    if (!w.empty()) return w;
    if (units != 200)
      return "drew " + std::to_string(units) + " units instead of 200";
    return std::string();
  });

  criterion(5, 60.0, "section solver against the closed form",
            [] { return checks::periods_solver_vs_closed(); });

  criterion(6, 0.0, "graded period blocks, two routes",
            [] { return checks::periods_graded_two_route(); });

  criterion(7, 10.0, "elliptic identity suite", [] {
    std::string w = checks::elliptic_pole_lowering(10, 30);
    if (w.empty()) w = checks::elliptic_derivative_ladder(12);
    if (w.empty()) w = checks::elliptic_h1_two_route(10);
    return w;
  });

  criterion(8, 0.0, "determinant line and its invariance", [] {
    const NodeContext ctx{4, 12};
    std::string w = checks::node_det_value(ctx);
    if (w.empty()) w = checks::node_det_scaling(ctx);
    if (w.empty()) w = checks::group_det_invariance(NodeContext{4, 10}, kSeed, 50);
    return w;
  });

  criterion(9, 5.0, "numeric lattice constants",
            [] { return checks::elliptic_numeric_sanity(kNumericTol); });

  if (failures) std::cout << failures << " of 9 criteria failed\n";
  else std::cout << "all 9 criteria passed\n";
  return failures ? 1 : 0;
}
