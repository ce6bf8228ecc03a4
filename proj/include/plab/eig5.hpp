#ifndef PLAB_EIG5_HPP
#define PLAB_EIG5_HPP

#include <array>

#include "plab/types.hpp"

namespace plab {

/// Eigenpairs of a general complex 5x5 matrix, unit-norm vectors.
struct EigenModes {
    std::array<cd, 5> values;
    std::array<Vector5cd, 5> vectors;
};

EigenModes eigen_modes(const Matrix5cd& h);

/// Index of the eigenvector with the largest |<ref, v_i>|.
int best_overlap(const EigenModes& modes, const Vector5cd& ref, double* overlap);

/// Rotate the phase of v so that <ref, v> is real and positive.
void phase_align(Vector5cd& v, const Vector5cd& ref);

/// Newton iteration omega <- omega + 1/tr((H - omega I)^-1) on the
/// characteristic polynomial; polishes a solver estimate to machine
/// precision.
cd newton_polish_eigenvalue(const Matrix5cd& h, cd omega);

}  // namespace plab

#endif
