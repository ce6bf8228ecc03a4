#include "plab/morris_shore.hpp"

#include <algorithm>
#include <cmath>

#include "plab/errors.hpp"

namespace plab::ms {

namespace {

constexpr double kRankTol = 1e-12;

// Phase factor of unit modulus that makes the first nonzero component of
// the column real and positive.
cd leading_phase_factor(const Eigen::VectorXcd& col) {
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        const double m = std::abs(col(i));
        if (m > 1e-12) return std::conj(col(i)) / m;
    }
    return cd(1.0, 0.0);
}

Eigen::VectorXcd embed_a(const Eigen::VectorXcd& u, Eigen::Index n_b) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(u.size() + n_b);
    out.head(u.size()) = u;
    return out;
}

Eigen::VectorXcd embed_b(const Eigen::VectorXcd& w, Eigen::Index n_a) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_a + w.size());
    out.tail(w.size()) = w;
    return out;
}

}  // namespace

void CouplingMatrix::validate() const {
    if (v.rows() < 1 || v.cols() < 1)
        throw InvalidInput("coupling matrix: both dimensions must be >= 1");
    if (!v.allFinite())
        throw InvalidInput("coupling matrix: entries must be finite");
}

Eigen::MatrixXcd assemble_bipartite(const CouplingMatrix& coupling) {
    coupling.validate();
    const Eigen::Index na = coupling.n_a(), nb = coupling.n_b();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(na + nb, na + nb);
    h.topRightCorner(na, nb) = coupling.v;
    h.bottomLeftCorner(nb, na) = coupling.v.adjoint();
    return h;
}

MsDecomposition morris_shore(const CouplingMatrix& coupling) {
    coupling.validate();
    const Eigen::Index na = coupling.n_a(), nb = coupling.n_b();
    const Eigen::Index n = na + nb;
    const Eigen::Index m = std::min(na, nb);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        coupling.v, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd u = svd.matrixU();   // na x na, left singular vectors
    Eigen::MatrixXcd w = svd.matrixV();   // nb x nb, right singular vectors
    const Eigen::VectorXd s = svd.singularValues();  // descending

    const double s_max = (m > 0) ? s(0) : 0.0;
    const double tol = kRankTol * s_max;
    Eigen::Index rank = 0;
    while (rank < m && s(rank) > tol) ++rank;

    // Deterministic phases. Each bright pair is rephased by the factor of
    // its A-side vector so u^dag V w stays real nonnegative; unpaired
    // columns get their own factor.
    for (Eigen::Index j = 0; j < na; ++j) {
        const cd f = leading_phase_factor(u.col(j));
        u.col(j) *= f;
        if (j < m) w.col(j) *= f;
    }
    for (Eigen::Index j = m; j < nb; ++j) w.col(j) *= leading_phase_factor(w.col(j));

    MsDecomposition dec;
    dec.n_a = na;
    dec.n_b = nb;
    dec.pair_couplings.assign(s.data(), s.data() + m);

    dec.transform = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < m; ++j) {
        dec.transform.col(2 * j) = embed_a(u.col(j), nb);
        dec.transform.col(2 * j + 1) = embed_b(w.col(j), na);
    }
    for (Eigen::Index j = m; j < na; ++j)
        dec.transform.col(2 * m + (j - m)) = embed_a(u.col(j), nb);
    for (Eigen::Index j = m; j < nb; ++j)
        dec.transform.col(2 * m + (j - m)) = embed_b(w.col(j), na);

    // Null directions of the larger set: singular values below tolerance
    // plus the |n_a - n_b| unpaired columns. With descending singular
    // values these are the columns rank..max(n_a,n_b)-1.
    if (na >= nb) {
        for (Eigen::Index j = rank; j < na; ++j)
            dec.dark_vectors.push_back(embed_a(u.col(j), nb));
    } else {
        for (Eigen::Index j = rank; j < nb; ++j)
            dec.dark_vectors.push_back(embed_b(w.col(j), na));
    }
    dec.n_dark = static_cast<int>(dec.dark_vectors.size());
    return dec;
}

bool dark_stability_under_b_diagonal(const CouplingMatrix& coupling,
                                     const Eigen::VectorXcd& b_diag) {
    coupling.validate();
    if (b_diag.size() != coupling.n_b())
        throw InvalidInput("dark stability: b_diag length must equal n_b");
    if (!b_diag.allFinite())
        throw InvalidInput("dark stability: b_diag must be finite");

    const MsDecomposition dec = morris_shore(coupling);
    Eigen::MatrixXcd h = assemble_bipartite(coupling);
    const Eigen::Index na = coupling.n_a();
    for (Eigen::Index i = 0; i < coupling.n_b(); ++i) h(na + i, na + i) += b_diag(i);

    const double h_norm = h.norm();
    for (const auto& d : dec.dark_vectors) {
        if (d.tail(coupling.n_b()).cwiseAbs().maxCoeff() > 0.0)
            continue;  // B-side null direction, not shielded from b_diag
        const double residual = (h * d).norm();
        if (residual > 1e-10 * std::max(h_norm, 1e-300) * d.norm()) return false;
    }
    return true;
}

}  // namespace plab::ms
