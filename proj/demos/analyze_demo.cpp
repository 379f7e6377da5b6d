// Walks one matrix through the whole pipeline: eigenstructure, certificates,
// dual basis, and robustness radii.

#include <iostream>

#include <minbasis/minbasis.hpp>

using namespace minbasis;

int main() {
  // M(lambda) = [[1, 0, ., ., ., ., .],
  //              [., ., -1, l, ., ., .],
  //              [., ., ., -1, l, ., .],
  //              [., ., ., ., ., -1, l^2]],  profile (0,1,1,2), width 7.
  const DegreeProfile profile({0, 1, 1, 2}, 7);
  const auto M = make_poly_matrix<double>(
      profile, {
                   {{1, 0, 0, 0, 0, 0, 0}},
                   {{0, 0, -1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}},
                   {{0, 0, 0, -1, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0}},
                   {{0, 0, 0, 0, 0, -1, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 1}},
               });

  const EigenstructureReport rep = minimal_indices(M);
  std::cout << "analysis:\n" << to_json(rep).dump(2) << "\n\n";

  const auto dual = compute_dual(M);
  const DualityCheck check = verify_duality(M, dual.basis);
  std::cout << "dual basis (residual " << check.residual << "):\n"
            << to_json(dual).dump(2) << "\n\n";

  const RobustnessReport radii = build_robustness_report(M, make_circle_grid({0.5, 1, 2}, 64));
  std::cout << "robustness:\n" << to_json(radii).dump(2) << "\n";
  return 0;
}
