#include "plab/eig5.hpp"

#include <cmath>

namespace plab {

EigenModes eigen_modes(const Matrix5cd& h) {
    Eigen::ComplexEigenSolver<Matrix5cd> es(h);
    EigenModes out;
    for (int i = 0; i < 5; ++i) {
        out.values[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        Vector5cd v = es.eigenvectors().col(i);
        v.normalize();
        out.vectors[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

int best_overlap(const EigenModes& modes, const Vector5cd& ref, double* overlap) {
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i < 5; ++i) {
        const double o = std::abs(ref.dot(modes.vectors[static_cast<std::size_t>(i)]));
        if (o > best_val) {
            best_val = o;
            best = i;
        }
    }
    if (overlap) *overlap = best_val;
    return best;
}

void phase_align(Vector5cd& v, const Vector5cd& ref) {
    const cd ov = ref.dot(v);
    const double m = std::abs(ov);
    if (m > 1e-300) v *= std::conj(ov) / m;
}

cd newton_polish_eigenvalue(const Matrix5cd& h, cd omega) {
    for (int it = 0; it < 4; ++it) {
        const Matrix5cd shifted = h - omega * Matrix5cd::Identity();
        const Eigen::PartialPivLU<Matrix5cd> lu(shifted);
        const Matrix5cd inv = lu.solve(Matrix5cd::Identity());
        const cd tr = inv.trace();
        if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag())) break;
        if (std::abs(tr) == 0.0) break;
        const cd delta = 1.0 / tr;
        if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
        omega += delta;
        if (std::abs(delta) < 1e-17 * std::fmax(1.0, std::abs(omega))) break;
    }
    return omega;
}

}  // namespace plab
