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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <coarray_lab/coarray.hpp>
#include <coarray_lab/geometry.hpp>
#include <coarray_lab/manifold.hpp>

#include "oracles.hpp"

using namespace calab;

namespace {

std::vector<double> random_angles(oracle::Draw &draw, std::size_t count) {
    std::vector<double> out(count);
    for (auto &a : out)
        a = (draw.unit() - 0.5) * M_PI;
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

TEST_CASE("steering phases at a thirty-degree angle") {
    const Eigen::VectorXcd a = steering_vector(ArrayConfig({0, 1, 2}), M_PI / 6.0);
    REQUIRE(a.size() == 3);
    CHECK(std::abs(a(0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(a(1) - Complex(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(a(2) - Complex(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("steering at broadside is all ones") {
    const Eigen::VectorXcd a = steering_vector(ula(7), 0.0);
    CHECK((a - Eigen::VectorXcd::Ones(7)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("steering entries have unit modulus") {
    oracle::Draw draw(3);
    const ArrayConfig c(draw.positions(6, 40));
    const SteeringSet s = steering(c, random_angles(draw, 16));
    CHECK((s.A.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    CHECK(s.A.rows() == 6);
    CHECK(s.A.cols() == 16);
}

TEST_CASE("angles outside the front half-space are rejected") {
    CHECK_THROWS_AS(steering_vector(ula(3), M_PI / 2.0), invalid_parameter);
    CHECK_THROWS_AS(steering_vector(ula(3), -M_PI / 2.0 - 1e-9), invalid_parameter);
    CHECK_NOTHROW(steering_vector(ula(3), -M_PI / 2.0));
    CHECK_THROWS_AS(steering_vector(ula(3), std::nan("")), invalid_parameter);
}

TEST_CASE("opposite angles give conjugate steering vectors") {
    const ArrayConfig c({0, 2, 5});
    for (double th : {0.1, 0.7, 1.2}) {
        const Eigen::VectorXcd fwd = steering_vector(c, th);
        const Eigen::VectorXcd bwd = steering_vector(c, -th);
        CHECK((fwd.conjugate() - bwd).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("physical pair manifold factors through the sum co-array manifold") {
    oracle::Draw draw(11);
    const std::vector<double> angles = random_angles(draw, 32);
    CHECK(coarray_identity_residual(ActiveArrayPair{ArrayConfig({0, 1})}, angles) < 1e-12);
    for (int rep = 0; rep < 25; ++rep) {
        const ArrayConfig tx(draw.positions(2 + draw.upto(5), 25));
        const ArrayConfig rx(draw.positions(2 + draw.upto(5), 25));
        CHECK(coarray_identity_residual({tx, rx}, random_angles(draw, 32)) < 1e-12);
    }
}

TEST_CASE("waveform presets") {
    const ArrayConfig tx({0, 1, 3, 4});
    const WaveformMatrix phased = phased_waveform(tx, 16, 0.0);
    CHECK(phased.samples() == 16);
    CHECK(phased.n_tx() == 4);
    // broadside steering makes every Tx element radiate identically
    CHECK((phased.covariance() - Eigen::MatrixXcd::Ones(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(phased.power() == Catch::Approx(4.0).margin(1e-12));
    CHECK(numerical_rank(phased.S) == 1);

    const WaveformMatrix orth = orthogonal_waveform(4, 16);
    CHECK((orth.covariance() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(orth.power() == Catch::Approx(4.0).margin(1e-12));
    CHECK(numerical_rank(orth.S) == 4);

    CHECK_THROWS_AS(orthogonal_waveform(5, 4), invalid_parameter);
    CHECK_THROWS_AS(phased_waveform(tx, 0, 0.0), invalid_parameter);
}

TEST_CASE("numerical rank of degenerate matrices") {
    CHECK(numerical_rank(Eigen::MatrixXcd::Zero(3, 5)) == 0);
    CHECK(numerical_rank(Eigen::MatrixXcd::Identity(4, 4)) == 4);
    Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(6, 3);
    CHECK(numerical_rank(ones) == 1);
}

TEST_CASE("simulation without scatterers or noise is silent") {
    const ActiveArrayPair pair{ArrayConfig({0, 1, 3})};
    const MeasurementBatch b = simulate(pair, Scene{}, orthogonal_waveform(3, 8), 0.0, 1);
    CHECK(b.Y.rows() == 3);
    CHECK(b.Y.cols() == 8);
    CHECK(b.Y.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("noiseless response to a single scatterer under a matched transmission") {
    const ActiveArrayPair pair{ArrayConfig({0, 2, 5}), ArrayConfig({0, 1, 4, 6})};
    const double theta0 = 0.3;
    const Scene scene({theta0}, {Complex(1.0, 0.0)});
    const Eigen::Index t_len = 10;
    const WaveformMatrix w = phased_waveform(pair.tx, t_len, theta0);
    const MeasurementBatch b = simulate(pair, scene, w, 0.0, 0);
    // S^T a_tx = sqrt(T)^-1 * n_tx * ones, so Y = n_tx * a_rx * u^T
    const Eigen::VectorXcd a_rx = steering_vector(pair.rx, theta0);
    const Eigen::MatrixXcd want =
        3.0 * a_rx * Eigen::RowVectorXcd::Constant(t_len, Complex(1.0 / std::sqrt(10.0), 0.0));
    CHECK((b.Y - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("vectorized noiseless measurement equals the compressed co-array model") {
    oracle::Draw draw(23);
    for (int rep = 0; rep < 10; ++rep) {
        const ArrayConfig tx(draw.positions(3, 12));
        const ArrayConfig rx(draw.positions(4, 12));
        const ActiveArrayPair pair{tx, rx};
        const std::vector<double> theta = random_angles(draw, 3);
        std::vector<Complex> gamma;
        for (int k = 0; k < 3; ++k)
            gamma.emplace_back(draw.unit() - 0.5, draw.unit() - 0.5);
        const Scene scene(theta, gamma);
        const WaveformMatrix w = orthogonal_waveform(tx.size(), 6);

        const Eigen::VectorXcd y = vectorize_measurement(simulate(pair, scene, w, 0.0, 0));

        Eigen::VectorXcd g(3);
        for (int k = 0; k < 3; ++k)
            g(k) = gamma[static_cast<std::size_t>(k)];

        // via the Kronecker-structured direct model
        const Eigen::MatrixXcd kr = khatri_rao(steering(tx, theta).A, steering(rx, theta).A);
        const Eigen::MatrixXcd big = kron(w.S, Eigen::MatrixXcd::Identity(4, 4));
        CHECK((y - big * kr * g).cwiseAbs().maxCoeff() < 1e-12);

        // via the compressed sum co-array model
        const RedundancyPattern pattern = redundancy_pattern(pair);
        const Eigen::MatrixXcd c = compression_operator(pair, w);
        const Eigen::VectorXcd virt = steering(pattern.coarray, theta).A * g;
        CHECK((y - c * virt).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("vectorization is column major") {
    MeasurementBatch b;
    b.Y.resize(2, 2);
    b.Y << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
    const Eigen::VectorXcd y = vectorize_measurement(b);
    REQUIRE(y.size() == 4);
    CHECK(y(0) == Complex(1, 0));
    CHECK(y(1) == Complex(3, 0));
    CHECK(y(2) == Complex(2, 0));
    CHECK(y(3) == Complex(4, 0));
}

TEST_CASE("khatri-rao of known columns") {
    Eigen::MatrixXcd a(2, 1), b(3, 1);
    a << Complex(1, 0), Complex(2, 0);
    b << Complex(3, 0), Complex(4, 0), Complex(5, 0);
    const Eigen::MatrixXcd kr = khatri_rao(a, b);
    REQUIRE(kr.rows() == 6);
    Eigen::MatrixXcd want(6, 1);
    want << Complex(3, 0), Complex(4, 0), Complex(5, 0), Complex(6, 0), Complex(8, 0),
        Complex(10, 0);
    CHECK((kr - want).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(khatri_rao(Eigen::MatrixXcd::Ones(2, 2), Eigen::MatrixXcd::Ones(2, 3)),
                    invalid_parameter);
}

TEST_CASE("simulation validates inputs") {
    const ActiveArrayPair pair{ArrayConfig({0, 1, 3})};
    CHECK_THROWS_AS(simulate(pair, Scene{}, orthogonal_waveform(2, 8), 0.0, 1),
                    invalid_parameter);
    CHECK_THROWS_AS(simulate(pair, Scene{}, orthogonal_waveform(3, 8), -1.0, 1),
                    invalid_parameter);
    CHECK_THROWS_AS(Scene({0.1, 0.1}, {Complex(1, 0), Complex(1, 0)}), invalid_parameter);
    CHECK_THROWS_AS(Scene({0.1}, {}), invalid_parameter);
}

TEST_CASE("same seed and stream reproduce the measurement exactly") {
    const ActiveArrayPair pair{ArrayConfig({0, 1, 3, 4})};
    const Scene scene({0.2, -0.4}, {Complex(1, 0), Complex(0, 1)});
    const WaveformMatrix w = orthogonal_waveform(4, 8);
    const MeasurementBatch a = simulate(pair, scene, w, 0.5, 42, 7);
    const MeasurementBatch b = simulate(pair, scene, w, 0.5, 42, 7);
    CHECK(a.Y == b.Y);
    CHECK(a.seed == 42);
    CHECK(a.stream == 7);
    CHECK(a.sigma2 == 0.5);
    const MeasurementBatch c = simulate(pair, scene, w, 0.5, 42, 8);
    CHECK((a.Y - c.Y).cwiseAbs().maxCoeff() > 0.0);
    const MeasurementBatch d = simulate(pair, scene, w, 0.5, 43, 7);
    CHECK((a.Y - d.Y).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("noise statistics match the requested variance") {
    const ActiveArrayPair pair{ula(10)};
    const double sigma2 = 1.0;
    const MeasurementBatch b = simulate(pair, Scene{}, orthogonal_waveform(10, 10000), sigma2, 5);
    const Eigen::VectorXcd z = vectorize_measurement(b);
    const auto n = static_cast<double>(z.size());
    REQUIRE(z.size() == 100000);
    const Complex mean = z.sum() / n;
    CHECK(std::abs(mean) < 0.02);
    const double var = z.squaredNorm() / n;
    CHECK(var == Catch::Approx(sigma2).epsilon(0.03));
    // circular symmetry: real and imaginary parts carry half the power each
    const double re_var = z.real().squaredNorm() / n;
    const double im_var = z.imag().squaredNorm() / n;
    CHECK(re_var == Catch::Approx(sigma2 / 2).epsilon(0.05));
    CHECK(im_var == Catch::Approx(sigma2 / 2).epsilon(0.05));
}

TEST_CASE("compression operator rank is capped by waveform rank and co-array size") {
    const ActiveArrayPair pair{ArrayConfig({0, 1})};

    // full-rank probing of a redundant pair: rank equals the co-array size
    const Eigen::MatrixXcd c_full = compression_operator(pair, orthogonal_waveform(2, 2));
    CHECK(c_full.rows() == 4);
    CHECK(c_full.cols() == 3);
    CHECK(numerical_rank(c_full) == 3);

    // rank-1 probing collapses to at most n_rx dimensions
    const Eigen::MatrixXcd c_rank1 = compression_operator(pair, phased_waveform(pair.tx, 4, 0.3));
    CHECK(numerical_rank(c_rank1) <= 2);

    WaveformMatrix zero;
    zero.S = Eigen::MatrixXcd::Zero(4, 2);
    CHECK(compression_operator(pair, zero).cwiseAbs().maxCoeff() == 0.0);

    oracle::Draw draw(31);
    for (int rep = 0; rep < 10; ++rep) {
        const ArrayConfig tx(draw.positions(3, 10));
        const ArrayConfig rx(draw.positions(3, 10));
        const ActiveArrayPair p{tx, rx};
        const WaveformMatrix w = orthogonal_waveform(3, 5);
        const RedundancyPattern pat = redundancy_pattern(p);
        const Eigen::Index bound =
            std::min<Eigen::Index>(numerical_rank(w.S) * 3, static_cast<Eigen::Index>(pat.rows()));
        CHECK(numerical_rank(compression_operator(p, w)) <= bound);
    }
}
