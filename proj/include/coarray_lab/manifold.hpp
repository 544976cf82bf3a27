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

#ifndef COARRAY_LAB_MANIFOLD_HPP
#define COARRAY_LAB_MANIFOLD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "coarray_lab/coarray.hpp"
#include "coarray_lab/geometry.hpp"
#include "coarray_lab/rng.hpp"

namespace calab {

using Complex = std::complex<double>;

/// Steering matrix on a set of grid positions: A[n, k] = exp(i pi d[n] sin
/// theta_k). Positions are in half-wavelength units, so no carrier frequency
/// parameter appears anywhere.
struct SteeringSet {
    std::vector<Position> positions;
    std::vector<double> angles; // radians, in [-pi/2, pi/2)
    Eigen::MatrixXcd A;         // positions x angles
};

namespace detail {

inline void check_angles(const std::vector<double> &angles) {
    for (double th : angles)
        if (!(th >= -M_PI / 2 && th < M_PI / 2))
            throw invalid_parameter("angle outside [-pi/2, pi/2)");
}

} // namespace detail

inline SteeringSet steering(const std::vector<Position> &positions,
                            const std::vector<double> &angles) {
    detail::check_angles(angles);
    SteeringSet s;
    s.positions = positions;
    s.angles = angles;
    s.A.resize(static_cast<Eigen::Index>(positions.size()),
               static_cast<Eigen::Index>(angles.size()));
    for (std::size_t k = 0; k < angles.size(); ++k) {
        const double u = std::sin(angles[k]);
        for (std::size_t n = 0; n < positions.size(); ++n)
            s.A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
                std::polar(1.0, M_PI * static_cast<double>(positions[n]) * u);
    }
    return s;
}

inline SteeringSet steering(const ArrayConfig &config, const std::vector<double> &angles) {
    return steering(config.positions(), angles);
}

/// Steering vector at a single angle.
inline Eigen::VectorXcd steering_vector(const std::vector<Position> &positions, double angle) {
    return steering(positions, std::vector<double>{angle}).A.col(0);
}

inline Eigen::VectorXcd steering_vector(const ArrayConfig &config, double angle) {
    return steering_vector(config.positions(), angle);
}

/// Point scatterers: unique angles with complex reflection coefficients.
struct Scene {
    std::vector<double> theta;
    std::vector<Complex> gamma;

    Scene() = default;
    Scene(std::vector<double> angles, std::vector<Complex> coeffs)
        : theta(std::move(angles)), gamma(std::move(coeffs)) {
        if (theta.size() != gamma.size())
            throw invalid_parameter("Scene: angle/coefficient count mismatch");
        detail::check_angles(theta);
        for (std::size_t i = 0; i < theta.size(); ++i)
            for (std::size_t j = i + 1; j < theta.size(); ++j)
                if (theta[i] == theta[j])
                    throw invalid_parameter("Scene: scatterer angles must be unique");
    }

    std::size_t size() const { return theta.size(); }
};

/// Spatio-temporal transmit waveform, one column per Tx sensor, one row per
/// time sample. The spatial covariance R_tx = S^H S decides the transmit
/// beampattern; its rank decides how many independent spatial probes the
/// transmission carries.
struct WaveformMatrix {
    Eigen::MatrixXcd S; // T x n_tx

    Eigen::Index samples() const { return S.rows(); }
    Eigen::Index n_tx() const { return S.cols(); }
    Eigen::MatrixXcd covariance() const { return S.adjoint() * S; }
    double power() const { return S.squaredNorm(); }
};

/// Count singular values above max(rows, cols) * eps * sigma_max.
inline Eigen::Index numerical_rank(const Eigen::MatrixXcd &m) {
    if (m.size() == 0)
        return 0;
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0)
        return 0;
    const double thresh = static_cast<double>(std::max(m.rows(), m.cols())) *
                          std::numeric_limits<double>::epsilon() * sv(0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh)
            ++r;
    return r;
}

/// Rank-1 waveform pointing every sample at angle phi: S = u a_tx*(phi)^T
/// with u the constant unit-norm temporal vector. Total power equals n_tx,
/// matching the orthogonal preset.
inline WaveformMatrix phased_waveform(const ArrayConfig &tx, Eigen::Index samples, double phi) {
    if (samples < 1)
        throw invalid_parameter("phased_waveform: need at least one sample");
    detail::check_angles({phi});
    const Eigen::VectorXcd a = steering_vector(tx, phi);
    const Eigen::VectorXcd u =
        Eigen::VectorXcd::Constant(samples, Complex(1.0 / std::sqrt(static_cast<double>(samples)), 0.0));
    WaveformMatrix w;
    w.S = u * a.conjugate().transpose();
    return w;
}

/// Orthogonal waveform from the first n_tx DFT-basis columns: S^H S = I,
/// total power n_tx.
inline WaveformMatrix orthogonal_waveform(std::size_t n_tx, Eigen::Index samples) {
    if (samples < static_cast<Eigen::Index>(n_tx))
        throw invalid_parameter("orthogonal_waveform: need samples >= n_tx");
    WaveformMatrix w;
    w.S.resize(samples, static_cast<Eigen::Index>(n_tx));
    const double t_d = static_cast<double>(samples);
    for (Eigen::Index t = 0; t < samples; ++t)
        for (Eigen::Index n = 0; n < static_cast<Eigen::Index>(n_tx); ++n)
            w.S(t, n) = std::polar(1.0 / std::sqrt(t_d),
                                   -2.0 * M_PI * static_cast<double>(t) * static_cast<double>(n) / t_d);
    return w;
}

/// One received data record: Y = A_rx diag(gamma) A_tx^T S^T + N with
/// N entries i.i.d. circularly symmetric complex Gaussian of variance
/// sigma2, filled in column-major order from the (seed, stream) engine.
struct MeasurementBatch {
    Eigen::MatrixXcd Y; // n_rx x T
    double sigma2 = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

inline MeasurementBatch simulate(const ActiveArrayPair &pair, const Scene &scene,
                                 const WaveformMatrix &waveform, double sigma2,
                                 std::uint64_t seed, std::uint64_t stream = 0) {
    if (waveform.n_tx() != static_cast<Eigen::Index>(pair.tx.size()))
        throw invalid_parameter("simulate: waveform column count differs from n_tx");
    if (sigma2 < 0.0)
        throw invalid_parameter("simulate: negative noise variance");
    const Eigen::Index n_rx = static_cast<Eigen::Index>(pair.rx.size());
    const Eigen::Index t_len = waveform.samples();
    const SteeringSet a_tx = steering(pair.tx, scene.theta);
    const SteeringSet a_rx = steering(pair.rx, scene.theta);
    Eigen::VectorXcd g(static_cast<Eigen::Index>(scene.gamma.size()));
    for (std::size_t k = 0; k < scene.gamma.size(); ++k)
        g(static_cast<Eigen::Index>(k)) = scene.gamma[k];

    MeasurementBatch batch;
    batch.sigma2 = sigma2;
    batch.seed = seed;
    batch.stream = stream;
    batch.Y = a_rx.A * g.asDiagonal() * a_tx.A.transpose() * waveform.S.transpose();
    if (batch.Y.size() == 0)
        batch.Y = Eigen::MatrixXcd::Zero(n_rx, t_len);
    if (sigma2 > 0.0) {
        NormalSampler normal(seed, stream);
        for (Eigen::Index c = 0; c < batch.Y.cols(); ++c)
            for (Eigen::Index r = 0; r < batch.Y.rows(); ++r)
                batch.Y(r, c) += normal.complex_normal(sigma2);
    }
    return batch;
}

/// Column-stacked measurement vector, y = vec(Y).
inline Eigen::VectorXcd vectorize_measurement(const MeasurementBatch &batch) {
    return Eigen::Map<const Eigen::VectorXcd>(batch.Y.data(), batch.Y.size());
}

/// Columnwise Kronecker (Khatri-Rao) product of equal-column-count matrices.
inline Eigen::MatrixXcd khatri_rao(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.cols() != b.cols())
        throw invalid_parameter("khatri_rao: column count mismatch");
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols());
    for (Eigen::Index k = 0; k < a.cols(); ++k)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), k, b.rows(), 1) = a(i, k) * b.col(k);
    return out;
}

/// Max-norm residual of the factorization A_tx (KR) A_rx = Upsilon^T A_sum
/// over the given angles. Ties the physical two-array manifold to the
/// virtual sum co-array manifold.
inline double coarray_identity_residual(const ActiveArrayPair &pair,
                                        const std::vector<double> &angles) {
    const SteeringSet a_tx = steering(pair.tx, angles);
    const SteeringSet a_rx = steering(pair.rx, angles);
    const Eigen::MatrixXcd lhs = khatri_rao(a_tx.A, a_rx.A);
    const RedundancyPattern pattern = redundancy_pattern(pair);
    const SteeringSet a_sum = steering(pattern.coarray, angles);
    Eigen::MatrixXcd rhs(lhs.rows(), lhs.cols());
    for (Eigen::Index k = 0; k < rhs.cols(); ++k) {
        const Eigen::VectorXcd col = a_sum.A.col(k);
        rhs.col(k) = pattern.apply_transpose<Eigen::VectorXcd>(col);
    }
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

/// Compression from virtual sensor outputs to stacked measurements:
/// C = (S kron I_rx) Upsilon^T, so vec(Y) = C A_sum gamma + n. Built
/// column by column from the pattern, never materializing the Kronecker.
inline Eigen::MatrixXcd compression_operator(const ActiveArrayPair &pair,
                                             const WaveformMatrix &waveform) {
    if (waveform.n_tx() != static_cast<Eigen::Index>(pair.tx.size()))
        throw invalid_parameter("compression_operator: waveform column count differs from n_tx");
    const RedundancyPattern pattern = redundancy_pattern(pair);
    const Eigen::Index n_rx = static_cast<Eigen::Index>(pair.rx.size());
    const Eigen::Index t_len = waveform.samples();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(t_len * n_rx, static_cast<Eigen::Index>(pattern.rows()));
    for (std::size_t col = 0; col < pattern.cols(); ++col) {
        const auto tx_i = static_cast<Eigen::Index>(col / pattern.n_rx);
        const auto rx_i = static_cast<Eigen::Index>(col % pattern.n_rx);
        const auto sigma_row = static_cast<Eigen::Index>(pattern.row_of_col[col]);
        for (Eigen::Index t = 0; t < t_len; ++t)
            c(t * n_rx + rx_i, sigma_row) += waveform.S(t, tx_i);
    }
    return c;
}

} // namespace calab

#endif
