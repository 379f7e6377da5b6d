// Samples random matrices in a profile space and prints how often the
// full-trimmed-Sylvester-rank property and the predicted minimal indices
// show up.

#include <iostream>

#include <minbasis/minbasis.hpp>

using namespace minbasis;

int main() {
  const DegreeProfile profile({0, 1, 1, 2}, 7);
  const auto batch = genericity_experiment(profile, 200, 42);
  std::cout << trial_batch_summary(batch).dump(2) << "\n";

  const auto prediction = generic_eigenstructure(profile);
  std::cout << "predicted indices:";
  for (int e : prediction.minimal_indices) std::cout << ' ' << e;
  std::cout << "\npredicted infinite divisor degrees:";
  for (int d : prediction.infinite_divisor_degrees) std::cout << ' ' << d;
  std::cout << "\n";
  return 0;
}
