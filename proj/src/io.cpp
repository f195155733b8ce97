// Copyright 2026 The Bures-VQA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bures/io.hpp"

#include <fstream>

namespace bures::io {

json density_matrix_to_json(const DensityMatrix &rho) {
    const auto &m = rho.matrix();
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
        throw Error("density matrix JSON needs 'dim', 're' and 'im'");
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    if (!is_power_of_two(dim)) {
        throw Error("density matrix 'dim' must be a power of two");
    }
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != dim ||
        static_cast<Eigen::Index>(im.size()) != dim) {
        throw Error("density matrix 're' and 'im' must have 'dim' rows");
    }
    CMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto &rr = re.at(static_cast<std::size_t>(r));
        const auto &ir = im.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(rr.size()) != dim ||
            static_cast<Eigen::Index>(ir.size()) != dim) {
            throw Error("density matrix rows must have 'dim' entries");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = Complex(rr.at(static_cast<std::size_t>(c)).get<double>(),
                              ir.at(static_cast<std::size_t>(c)).get<double>());
        }
    }
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix load_density_matrix(const std::string &path) {
    return density_matrix_from_json(read_json_file(path));
}

json vector_to_json(const CVector &v) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return {{"re", std::move(re)}, {"im", std::move(im)}};
}

json ensemble_to_json(const SeparableEnsemble &ensemble,
                      const std::vector<std::vector<int>> &parts) {
    json comps = json::array();
    for (const auto &per_j : ensemble.components) {
        json row = json::array();
        for (const auto &v : per_j) {
            row.push_back(vector_to_json(v));
        }
        comps.push_back(std::move(row));
    }
    return {{"probabilities", ensemble.probabilities}, {"parts", parts}, {"components", comps}};
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace bures::io
