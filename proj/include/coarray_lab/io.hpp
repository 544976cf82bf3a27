// SPDX-License-Identifier: Apache-2.0
//
// coarray-lab: sparse sensor array design and Tx-Rx beampattern synthesis
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COARRAY_LAB_IO_HPP
#define COARRAY_LAB_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarray_lab/beamform.hpp"
#include "coarray_lab/coarray.hpp"
#include "coarray_lab/geometry.hpp"
#include "coarray_lab/manifold.hpp"
#include "coarray_lab/mra_search.hpp"
#include "coarray_lab/rational.hpp"

namespace calab {

using json = nlohmann::json;

// Complex values are serialized as {re, im} objects, never as 2-arrays.
inline json to_json(const Complex &z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const json &j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw invalid_parameter("expected complex value as {re, im} object");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline json to_json(const Eigen::VectorXcd &v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(to_json(v(i)));
    return arr;
}

inline Eigen::VectorXcd complex_vector_from_json(const json &j) {
    if (!j.is_array())
        throw invalid_parameter("expected array of complex values");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

// Geometry files: {"tx": [...], "rx": [...]} with optional free-form "meta".
inline json to_json(const ActiveArrayPair &pair, const json &meta = json()) {
    json j;
    j["tx"] = pair.tx.positions();
    j["rx"] = pair.rx.positions();
    if (!meta.is_null())
        j["meta"] = meta;
    return j;
}

inline ActiveArrayPair pair_from_json(const json &j) {
    if (!j.contains("tx") || !j.contains("rx"))
        throw invalid_parameter("geometry file needs \"tx\" and \"rx\" position arrays");
    return {ArrayConfig(j.at("tx").get<std::vector<Position>>()),
            ArrayConfig(j.at("rx").get<std::vector<Position>>())};
}

inline json to_json(const CoArraySummary &summary,
                    const std::optional<Rational> &redundancy_value = std::nullopt,
                    const std::string &reason = "") {
    json j;
    j["kind"] = summary.kind == CoArrayKind::sum ? "sum" : "difference";
    j["positions"] = summary.positions;
    j["multiplicities"] = summary.multiplicities;
    j["contiguous"] = summary.contiguous;
    j["contiguous_prefix_len"] = summary.contiguous_prefix_len;
    if (redundancy_value)
        j["redundancy"] = json{{"num", redundancy_value->num}, {"den", redundancy_value->den}};
    else {
        j["redundancy"] = nullptr;
        if (!reason.empty())
            j["redundancy_reason"] = reason;
    }
    return j;
}

inline json to_json(const MraSolution &sol) {
    json j;
    j["n"] = sol.n_sensors;
    j["aperture"] = sol.aperture;
    j["coarray_size"] = sol.coarray_size;
    json configs = json::array();
    for (const auto &c : sol.configs)
        configs.push_back(c.positions());
    j["configs"] = configs;
    if (!sol.pairs.empty()) {
        json pairs = json::array();
        for (const auto &p : sol.pairs)
            pairs.push_back(json{{"tx", p.tx.positions()}, {"rx", p.rx.positions()}});
        j["pairs"] = pairs;
    }
    j["complete"] = sol.complete;
    j["stats"] = json{{"nodes", sol.stats.nodes}, {"wall_ms", sol.stats.wall_ms}};
    return j;
}

// Scene files: {"scatterers": [{"theta_rad": ..., "gamma": {re, im}}]}.
inline json to_json(const Scene &scene) {
    json arr = json::array();
    for (std::size_t k = 0; k < scene.size(); ++k)
        arr.push_back(json{{"theta_rad", scene.theta[k]}, {"gamma", to_json(scene.gamma[k])}});
    return json{{"scatterers", arr}};
}

inline Scene scene_from_json(const json &j) {
    if (!j.contains("scatterers") || !j.at("scatterers").is_array())
        throw invalid_parameter("scene file needs a \"scatterers\" array");
    std::vector<double> theta;
    std::vector<Complex> gamma;
    for (const auto &s : j.at("scatterers")) {
        theta.push_back(s.at("theta_rad").get<double>());
        gamma.push_back(complex_from_json(s.at("gamma")));
    }
    return Scene(std::move(theta), std::move(gamma));
}

// Physical weights: {"w_tx": [{re,im}...], "w_rx": [...], "w_s": [...]}.
inline json to_json(const BeamWeights &w) {
    json j;
    j["w_tx"] = to_json(w.w_tx);
    j["w_rx"] = to_json(w.w_rx);
    if (w.w_s.size() > 0)
        j["w_s"] = to_json(w.w_s);
    return j;
}

inline BeamWeights beam_weights_from_json(const json &j) {
    BeamWeights w;
    if (!j.contains("w_tx") || !j.contains("w_rx"))
        throw invalid_parameter("weights file needs \"w_tx\" and \"w_rx\" arrays");
    w.w_tx = complex_vector_from_json(j.at("w_tx"));
    w.w_rx = complex_vector_from_json(j.at("w_rx"));
    if (j.contains("w_s"))
        w.w_s = complex_vector_from_json(j.at("w_s"));
    return w;
}

// Requested co-array weights: {"w_sigma": [{re,im}...]}.
inline json coarray_target_to_json(const Eigen::VectorXcd &w) { return json{{"w_sigma", to_json(w)}}; }

inline Eigen::VectorXcd coarray_target_from_json(const json &j) {
    if (!j.contains("w_sigma"))
        throw invalid_parameter("target file needs a \"w_sigma\" array");
    return complex_vector_from_json(j.at("w_sigma"));
}

inline json to_json(const ComponentSet &c) {
    json arr = json::array();
    for (Eigen::Index q = 0; q < c.q(); ++q)
        arr.push_back(json{{"w_tx", to_json(Eigen::VectorXcd(c.w_tx.col(q)))},
                           {"w_rx", to_json(Eigen::VectorXcd(c.w_rx.col(q)))}});
    return arr;
}

inline ComponentSet components_from_json(const json &j, Eigen::Index n_tx, Eigen::Index n_rx) {
    if (!j.is_array())
        throw invalid_parameter("components must be an array of {w_tx, w_rx} objects");
    ComponentSet c;
    c.w_tx.resize(n_tx, static_cast<Eigen::Index>(j.size()));
    c.w_rx.resize(n_rx, static_cast<Eigen::Index>(j.size()));
    for (std::size_t q = 0; q < j.size(); ++q) {
        const Eigen::VectorXcd t = complex_vector_from_json(j[q].at("w_tx"));
        const Eigen::VectorXcd r = complex_vector_from_json(j[q].at("w_rx"));
        if (t.size() != n_tx || r.size() != n_rx)
            throw invalid_parameter("component weight length differs from sensor count");
        c.w_tx.col(static_cast<Eigen::Index>(q)) = t;
        c.w_rx.col(static_cast<Eigen::Index>(q)) = r;
    }
    return c;
}

inline json to_json(const SynthesisResult &r) {
    json j;
    j["method"] = to_string(r.method);
    j["q"] = r.components.q();
    j["residual"] = r.residual;
    j["achieved_w_sigma"] = to_json(r.achieved);
    j["components"] = to_json(r.components);
    return j;
}

// Measurement dump: column-major interleaved re/im with a header carrying
// the dimensions and the noise/seed bookkeeping.
inline json to_json(const MeasurementBatch &batch) {
    json j;
    j["n_rx"] = batch.Y.rows();
    j["t"] = batch.Y.cols();
    j["sigma2"] = batch.sigma2;
    j["seed"] = batch.seed;
    j["stream"] = batch.stream;
    json data = json::array();
    for (Eigen::Index c = 0; c < batch.Y.cols(); ++c)
        for (Eigen::Index r = 0; r < batch.Y.rows(); ++r) {
            data.push_back(batch.Y(r, c).real());
            data.push_back(batch.Y(r, c).imag());
        }
    j["y"] = data;
    return j;
}

inline MeasurementBatch measurement_from_json(const json &j) {
    MeasurementBatch b;
    const auto n_rx = j.at("n_rx").get<Eigen::Index>();
    const auto t = j.at("t").get<Eigen::Index>();
    b.sigma2 = j.at("sigma2").get<double>();
    b.seed = j.at("seed").get<std::uint64_t>();
    b.stream = j.value("stream", std::uint64_t{0});
    const auto &data = j.at("y");
    if (static_cast<Eigen::Index>(data.size()) != 2 * n_rx * t)
        throw invalid_parameter("measurement data length differs from 2 * n_rx * t");
    b.Y.resize(n_rx, t);
    std::size_t i = 0;
    for (Eigen::Index c = 0; c < t; ++c)
        for (Eigen::Index r = 0; r < n_rx; ++r) {
            const double re = data[i++].get<double>();
            const double im = data[i++].get<double>();
            b.Y(r, c) = Complex(re, im);
        }
    return b;
}

/// Beampattern CSV rows over a sin-theta grid.
inline std::string beampattern_csv(const std::vector<double> &u, const Eigen::VectorXcd &h) {
    if (u.size() != static_cast<std::size_t>(h.size()))
        throw invalid_parameter("beampattern_csv: grid and pattern sizes differ");
    std::ostringstream out;
    out.precision(17);
    out << "u,re,im,mag2\n";
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Complex z = h(static_cast<Eigen::Index>(i));
        out << u[i] << ',' << z.real() << ',' << z.imag() << ',' << std::norm(z) << '\n';
    }
    return out.str();
}

inline json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw invalid_parameter("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

inline void save_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out)
        throw invalid_parameter("cannot write file: " + path);
    out << text;
}

inline void save_json(const std::string &path, const json &j) { save_text(path, j.dump(2) + "\n"); }

} // namespace calab

#endif
