#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hdx/verify.hpp"

using namespace hdx;

namespace {

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<void(Verifier&)> run;
};

}  // namespace

int main() {
  const std::string s = "acceptance";
  const std::vector<Criterion> criteria = {
      {1, "algebraic identities", 60, [&](Verifier& V) { verify_coboundary_identities(V, s, 1000, 1000); }},
      {2, "decomposition identity", 60, [&](Verifier& V) { verify_decomposition_identity(V, s, 500); }},
      {3, "Cheeger inequalities, exhaustive", 120, [&](Verifier& V) { verify_cheeger_exhaustive(V, s, bundled_instances(), 14); }},
      {4, "delta_1 expansion of non-local sets, exhaustive", 300, [&](Verifier& V) { verify_delta1_sweep(V, s, {6, 7, 8}, 3); }},
      {5, "star example", 1, [&](Verifier& V) { verify_star_example(V, s); }},
      {6, "hierarchy bounds", 300, [&](Verifier& V) { verify_hierarchy_bounds(V, s, 500); }},
      {7, "correction contracts", 600, [&](Verifier& V) { verify_correction_contracts(V, s, 200); }},
      {8, "oracle equivalence", 600, [&](Verifier& V) { verify_oracle_equivalence(V, s, 100); }},
      {9, "cosystolic definitions", 120, [&](Verifier& V) { verify_cosystolic_definitions(V, s); }},
      {10, "conjugation invariance", 60, [&](Verifier& V) { verify_conjugation_invariance(V, s, 500); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Verifier V(VerifyConfig{});
    const auto t0 = std::chrono::steady_clock::now();
    c.run(V);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::uint64_t checked = 0, failed = 0;
    for (const auto& t : V.tallies()) {
      checked += t.checked;
      failed += t.failed;
    }
    const bool ok = V.all_passed() && checked > 0 && secs < c.limit_seconds;
    all = all && ok;
    std::printf("%s criterion %d: %s (checked %llu, failed %llu, %.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.number,
                c.name.c_str(), static_cast<unsigned long long>(checked), static_cast<unsigned long long>(failed), secs,
                c.limit_seconds);
    for (const auto& t : V.tallies())
      if (!t.passed() && t.first_failure)
        std::printf("    %s [%s]: %s vs %s %s\n", t.claim.c_str(), t.instance.c_str(), t.first_failure->lhs.c_str(),
                    t.first_failure->rhs.c_str(), t.first_failure->witness.value_or("").c_str());
    std::fflush(stdout);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string a = run_verify(VerifyConfig{}, {"all"}).dump(2);
    const std::string b = run_verify(VerifyConfig{}, {"all"}).dump(2);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = a == b;
    all = all && ok;
    std::printf("%s criterion 11: determinism of 'verify all --seed 0' (%zu bytes, %.2f s)\n", ok ? "PASS" : "FAIL", a.size(),
                secs);
  }
  return all ? 0 : 1;
}
