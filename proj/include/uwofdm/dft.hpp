// dft.hpp - DFT with the convention [F]_{kl} = exp(-j 2 pi k l / N)
//
// Forward transform is unnormalized, the inverse carries the 1/N factor
// (F^{-1} = F^H / N). All noise bookkeeping in this library assumes this
// convention: time-domain noise of variance s maps to per-subcarrier
// variance N*s.

#pragma once

#include "uwofdm/types.hpp"

namespace uwofdm {

/// Unnormalized forward DFT.
CVec dft_forward(const CVec& x);

/// Inverse DFT, scaled by 1/N.
CVec dft_inverse(const CVec& x);

/// Dense DFT matrix; used by construction code and as the correctness
/// reference (the transform routines must match it).
CMat dft_matrix(int n);

} // namespace uwofdm
