#pragma once

#include <cstddef>

#include "tdenoise/params.hpp"
#include "tdenoise/tensor.hpp"
#include "tdenoise/transforms.hpp"

namespace tdenoise {

/// Transform-domain coefficients of one group: ps x ps x S x K with
/// S = floor(N/2) + 1 retained Fourier slices of an N-channel group.
struct CoefficientTensor {
  ComplexTensor data;
  std::size_t n_channels = 0;
  /// Surviving coefficients, mirrored slices counted twice.
  std::size_t n_retained = 0;
};

/// Per retained slice j: C_j = U_row(j)^H * G_j * U_col(j) for every patch
/// of the channel-DFT slice G_j, then the grouping-mode transform
/// x_4 U_group^T (the same for all slices).
CoefficientTensor forward(const RealTensor& group, const GlobalBasis& gb, const GroupBasis& ub);

/// Zeroes entries with magnitude below tau and recounts n_retained.
CoefficientTensor hard_threshold(CoefficientTensor c, double tau);

/// Adjoint of forward. Unretained slices are implied by conjugate symmetry
/// and the channel inverse DFT is evaluated as a real sum. Throws
/// InvariantError if a self-conjugate slice comes back with an imaginary
/// part above 1e-9 of the output norm.
RealTensor inverse(const CoefficientTensor& c, const GlobalBasis& gb, const GroupBasis& ub);

/// Reference implementation over all N slices (bases for j > N/2 are the
/// conjugates of their mirrors). Used to check the half-spectrum path.
ComplexTensor forward_full_spectrum(const RealTensor& group, const GlobalBasis& gb,
                                    const GroupBasis& ub);
/// Returns the number of entries kept.
std::size_t hard_threshold_full_spectrum(ComplexTensor& c, double tau);
RealTensor inverse_full_spectrum(const ComplexTensor& c, const GlobalBasis& gb,
                                 const GroupBasis& ub);

/// 4D multiway transform G x1 U_row^T x2 U_col^T x3 U_color^T x4 U_group^T.
RealTensor hosvd_forward(const RealTensor& group, const HosvdBasis& basis);
RealTensor hosvd_inverse(const RealTensor& core, const HosvdBasis& basis);

/// Real hard threshold in place; returns the number of entries kept.
std::size_t hard_threshold_in_place(RealTensor& t, double tau);

}  // namespace tdenoise
