#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Randomised checks of the block-circulant identities that justify the
// Fourier-domain filter. Shared by `tdenoise self-test` and the tests.

namespace tdenoise {

struct OracleResult {
  std::string name;
  std::size_t instances = 0;
  double worst = 0.0;  // largest relative error seen
  double tolerance = 0.0;
  bool passed = false;
};

/// bcirc(P) bcirc(P)^T is block circulant.
OracleResult oracle_circulant_gram(std::size_t instances, std::uint64_t seed);
/// ||bcirc(A)||_F = sqrt(N) ||A||_F, applied to A = P_i - P_j.
OracleResult oracle_circulant_norm(std::size_t instances, std::uint64_t seed);
/// The grouping-mode Gram of bcirc(G) is N times that of G, so both give the
/// same grouping-mode factor.
OracleResult oracle_group_factor(std::size_t instances, std::uint64_t seed);
/// (F kron I) bcirc(P) (F kron I)^H = bdiag(P x_3 W).
OracleResult oracle_block_diagonalization(std::size_t instances, std::uint64_t seed);
/// Core tensor norms agree between the per-slice Fourier path and the
/// explicit block-circulant path with the induced transforms.
OracleResult oracle_core_norm(std::size_t instances, std::uint64_t seed);

std::vector<OracleResult> run_theorem_oracles(std::size_t instances = 100, std::uint64_t seed = 7,
                                              double tolerance = 1e-8);

}  // namespace tdenoise
