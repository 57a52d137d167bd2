// Solves a small planted instance and prints both supports.

#include <iostream>

#include "maxsupp/generator.hpp"
#include "maxsupp/solver.hpp"

int main() {
  using namespace maxsupp;

  const PlantedInstance inst = generate(sample_spec(10, 6, 2024));
  std::cout << "planted J      " << to_string(inst.spec.support) << '\n';

  const MaxSupportResult r = max_support(inst.L);
  std::cout << "J(L)           " << to_string(r.primal.support) << '\n';
  std::cout << "J(L^perp)      " << to_string(r.dual.support) << '\n';
  std::cout << "rescalings     " << r.total_rescales << " over " << r.outer_iterations << " outer iteration(s)\n";

  const bool ok = verify_certificate(inst.L, r.primal).passed() &&
                  verify_certificate(orthogonal_complement(inst.L), r.dual).passed();
  std::cout << "certificates   " << (ok ? "verified" : "FAILED") << '\n';
  return ok ? 0 : 1;
}
