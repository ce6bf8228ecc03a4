#ifndef PLAB_MORRIS_SHORE_HPP
#define PLAB_MORRIS_SHORE_HPP

#include <vector>

#include <Eigen/Dense>

#include "plab/types.hpp"

namespace plab::ms {

/// Bipartite coupling block: n_a "A" variables linked to n_b "B" variables
/// through the complex matrix v (angular-frequency units). The assembled
/// system matrix is [[0, v], [v^dag, 0]] with A indices first.
struct CouplingMatrix {
    Eigen::MatrixXcd v;

    Eigen::Index n_a() const { return v.rows(); }
    Eigen::Index n_b() const { return v.cols(); }

    /// Throws InvalidInput on empty dimensions or non-finite entries.
    void validate() const;
};

/// Result of the Morris-Shore reduction of a bipartite system.
///
/// transform: unitary basis change M, columns ordered as the bright pairs
///   (a_1, b_1, a_2, b_2, ...) followed by the unpaired directions, so that
///   M^dag H M consists of 2x2 blocks [[0, s_j], [s_j, 0]] on the diagonal
///   and a trailing zero block.
/// pair_couplings: the singular values s_j of v, descending,
///   min(n_a, n_b) of them (zeros included).
/// dark_vectors: unit null vectors of H drawn from the larger set
///   (the A set on ties), so for n_a >= n_b they carry exact zeros on all
///   B components. Their count is |n_a - n_b| plus the number of singular
///   values below 1e-12 * s_max.
struct MsDecomposition {
    Eigen::MatrixXcd transform;
    std::vector<Eigen::VectorXcd> dark_vectors;
    std::vector<double> pair_couplings;
    int n_dark = 0;
    Eigen::Index n_a = 0;
    Eigen::Index n_b = 0;
};

/// The (n_a+n_b) x (n_a+n_b) Hermitian matrix [[0, V], [V^dag, 0]].
Eigen::MatrixXcd assemble_bipartite(const CouplingMatrix& coupling);

/// Morris-Shore decomposition via the singular value factorization of V.
/// Basis phases are fixed deterministically: the first nonzero component of
/// each A-side vector is made real and positive, and the paired B-side
/// vector carries the same phase factor so the pair couplings stay
/// nonnegative.
MsDecomposition morris_shore(const CouplingMatrix& coupling);

/// Self-test harness: true iff every dark vector with zero B components is
/// still annihilated (1e-10 relative) after adding b_diag to the B-block
/// diagonal of the assembled matrix. Holds identically because those
/// vectors never touch the B block.
bool dark_stability_under_b_diagonal(const CouplingMatrix& coupling,
                                     const Eigen::VectorXcd& b_diag);

}  // namespace plab::ms

#endif
