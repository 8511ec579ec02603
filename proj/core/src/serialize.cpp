// Copyright 2026 The unilearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unilearn/serialize.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "unilearn/error.hpp"
#include "unilearn/random.hpp"

namespace unilearn {

Json matrix_to_json(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("matrix serialization expects a square matrix");
    }
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
    }
    return Json{{"dim", m.rows()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("data")) {
        throw ValidationError("matrix JSON needs fields 'dim' and 'data'");
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (dim <= 0 || !data.is_array() || static_cast<Eigen::Index>(data.size()) != dim * dim) {
        throw ValidationError("matrix JSON 'data' must hold dim*dim entries");
    }
    ComplexMatrix m(dim, dim);
    for (Eigen::Index k = 0; k < dim * dim; ++k) {
        const Json& entry = data[static_cast<std::size_t>(k)];
        if (!entry.is_array() || entry.size() != 2) {
            throw ValidationError("matrix JSON entries must be [re, im] pairs");
        }
        m(k / dim, k % dim) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    if (!all_finite(m)) {
        throw ValidationError("matrix JSON has non-finite entries");
    }
    return m;
}

std::string matrix_hash(const ComplexMatrix& m) {
    std::string bytes;
    bytes.reserve(static_cast<std::size_t>(m.size()) * 16);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::array<char, 16> buf{};
            const double parts[2] = {m(i, j).real(), m(i, j).imag()};
            std::memcpy(buf.data(), parts, sizeof(parts));
            bytes.append(buf.data(), buf.size());
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return hex;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out << contents;
        if (!out.flush()) {
            throw Error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

} // namespace unilearn
