#include "plab/serialize.hpp"

#include <cstdio>

namespace plab {

json complex_json(cd v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            data.push_back(complex_json(m(r, c)));
    json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["data"] = std::move(data);  // row-major [re, im] pairs
    return out;
}

json vector_json(const Eigen::VectorXcd& v) {
    json data = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_json(v(i)));
    return data;
}

json to_json(const ms::MsDecomposition& dec) {
    json out;
    out["n_a"] = dec.n_a;
    out["n_b"] = dec.n_b;
    out["n_dark"] = dec.n_dark;
    out["pair_couplings"] = dec.pair_couplings;
    out["transform"] = matrix_json(dec.transform);
    json darks = json::array();
    for (const auto& d : dec.dark_vectors) darks.push_back(vector_json(d));
    out["dark_vectors"] = std::move(darks);
    return out;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace plab
