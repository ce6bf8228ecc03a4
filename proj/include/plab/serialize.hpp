#ifndef PLAB_SERIALIZE_HPP
#define PLAB_SERIALIZE_HPP

#include <string>

#include <Eigen/Dense>

#include "json.hpp"
#include "plab/morris_shore.hpp"
#include "plab/types.hpp"

namespace plab {

using json = nlohmann::ordered_json;

/// [re, im] pair.
json complex_json(cd v);
/// Row-major array of [re, im] pairs plus dimensions.
json matrix_json(const Eigen::MatrixXcd& m);
json vector_json(const Eigen::VectorXcd& v);

json to_json(const ms::MsDecomposition& dec);

/// Full-precision (17 significant digits) number for CSV cells.
std::string csv_number(double v);

}  // namespace plab

#endif
