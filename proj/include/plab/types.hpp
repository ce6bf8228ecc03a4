#ifndef PLAB_TYPES_HPP
#define PLAB_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace plab {

using cd = std::complex<double>;

using Matrix5cd = Eigen::Matrix<cd, 5, 5>;
using Vector5cd = Eigen::Matrix<cd, 5, 1>;

}  // namespace plab

#endif
