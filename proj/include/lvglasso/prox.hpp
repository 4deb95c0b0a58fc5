#pragma once

#include "lvglasso/matrix.hpp"

namespace lvglasso {

/// Which entries the l1 shrinkage touches.  OffDiagonal copies the
/// diagonal through unchanged.
enum class ShrinkMode { Full, OffDiagonal };

/// argmin_R (1/(2 xi)) ||R - Z||_F^2 + <R, Sigma> - log det R.
/// Computed eigen-wise on xi*Sigma - Z: each eigenvalue sigma_i maps to
/// (-sigma_i + sqrt(sigma_i^2 + 4 xi)) / 2, so the result is always
/// positive definite.
SymmetricMatrix prox_logdet(const SymmetricMatrix& z, const SymmetricMatrix& sigma_hat,
                            double xi);

/// Entrywise soft threshold at tau; thresholded entries are bit-exact 0.0.
SymmetricMatrix shrink(const SymmetricMatrix& z, double tau, ShrinkMode mode);

/// argmin_L (1/2) ||L - Z||_F^2 + theta*Tr(L) over the PSD cone:
/// eigenvalues shift down by theta and clamp at zero.
SymmetricMatrix prox_psd_trace(const SymmetricMatrix& z, double theta);

}  // namespace lvglasso
