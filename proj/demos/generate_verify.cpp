// Generates a pseudo-random instance from a seed given on the command line,
// prints its JSON form, and runs the full invariant sweep against it.

#include <cstdint>
#include <iostream>
#include <string>

#include "walras/walras.hpp"

using namespace walras;

int main(int argc, char** argv) {
  GenSpec spec;
  spec.m = 3;
  spec.n = 3;
  spec.max_value = 4;
  spec.mix = KindMix::Mixed;
  spec.seed = argc > 1 ? std::stoull(argv[1]) : 7;

  const Instance inst = generate_instance(spec);
  std::cout << serialize_instance(inst) << "\n";

  SelftestOptions opts;
  opts.jobs = 4;
  const SweepReport rep = selftest(inst, opts);
  std::cout << "digest " << rep.digest << ", premise "
            << (rep.premise_ok ? "holds" : "fails") << "\n";
  for (const auto& s : rep.suites)
    if (!s.skipped)
      std::cout << "  " << s.name << ": " << (s.failures ? "FAIL" : "ok") << " ("
                << s.checked << " checks)\n";

  const auto mn = min_walrasian(inst);
  const auto mx = max_walrasian(inst);
  if (mn && mx)
    std::cout << "walrasian prices span " << format_price(mn->price) << " to "
              << format_price(mx->price) << ", welfare " << max_welfare(inst).welfare << "\n";
  return rep.passed() ? 0 : 1;
}
