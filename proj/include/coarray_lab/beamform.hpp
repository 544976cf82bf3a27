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

#ifndef COARRAY_LAB_BEAMFORM_HPP
#define COARRAY_LAB_BEAMFORM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coarray_lab/coarray.hpp"
#include "coarray_lab/errors.hpp"
#include "coarray_lab/manifold.hpp"
#include "coarray_lab/rng.hpp"

namespace calab {

/// Physical beamforming weights for one Tx-Rx component. w_s is the
/// temporal combiner; leave it empty where only spatial patterns matter.
struct BeamWeights {
    Eigen::VectorXcd w_tx;
    Eigen::VectorXcd w_rx;
    Eigen::VectorXcd w_s;
};

/// Per-component Tx and Rx weight columns of a weight matrix factorization
/// W = W_rx W_tx^T. Q = 0 is the empty factorization of the zero matrix.
struct ComponentSet {
    Eigen::MatrixXcd w_tx; // n_tx x Q
    Eigen::MatrixXcd w_rx; // n_rx x Q

    Eigen::Index q() const { return w_tx.cols(); }
    Eigen::MatrixXcd weight_matrix() const { return w_rx * w_tx.transpose(); }
};

enum class SynthesisMethod { least_squares, min_rank };

inline std::string to_string(SynthesisMethod m) {
    return m == SynthesisMethod::least_squares ? "ls" : "min-rank";
}

struct SynthesisResult {
    ComponentSet components;
    Eigen::VectorXcd achieved; // co-array weights realized by the components
    double residual = 0.0;     // max-norm against the requested weights
    SynthesisMethod method = SynthesisMethod::least_squares;
};

/// Uniform grid in u = sin(theta) over [-1, 1), the natural variable for
/// patterns on a half-wavelength grid.
inline std::vector<double> uniform_u_grid(std::size_t points) {
    if (points < 1)
        throw invalid_parameter("uniform_u_grid: need at least one point");
    std::vector<double> u(points);
    for (std::size_t i = 0; i < points; ++i)
        u[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points);
    return u;
}

inline std::vector<double> angles_from_u(const std::vector<double> &u) {
    std::vector<double> th(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] >= -1.0 && u[i] < 1.0))
            throw invalid_parameter("angles_from_u: u outside [-1, 1)");
        th[i] = std::asin(u[i]);
    }
    return th;
}

/// H_rx(theta) = w_rx^H a_rx(theta), one value per angle.
inline Eigen::VectorXcd rx_beampattern(const Eigen::VectorXcd &w_rx, const ArrayConfig &config,
                                       const std::vector<double> &angles) {
    if (w_rx.size() != static_cast<Eigen::Index>(config.size()))
        throw invalid_parameter("rx_beampattern: weight length differs from sensor count");
    const SteeringSet s = steering(config, angles);
    return (w_rx.adjoint() * s.A).transpose();
}

/// B_tx(theta) = a_tx^H(theta) R_tx a_tx(theta) >= 0: the transmitted power
/// density over angle, for a Hermitian PSD spatial covariance R_tx.
inline Eigen::VectorXd tx_beampattern_power(const Eigen::MatrixXcd &r_tx,
                                            const ArrayConfig &config,
                                            const std::vector<double> &angles) {
    const auto n = static_cast<Eigen::Index>(config.size());
    if (r_tx.rows() != n || r_tx.cols() != n)
        throw invalid_parameter("tx_beampattern_power: covariance size differs from sensor count");
    const double scale = std::max(1.0, r_tx.cwiseAbs().maxCoeff());
    if ((r_tx - r_tx.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw invalid_parameter("tx_beampattern_power: covariance is not Hermitian");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r_tx, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
        throw invalid_parameter("tx_beampattern_power: covariance is not positive semidefinite");
    const SteeringSet s = steering(config, angles);
    Eigen::VectorXd b(s.A.cols());
    for (Eigen::Index k = 0; k < s.A.cols(); ++k) {
        const Eigen::VectorXcd a = s.A.col(k);
        b(k) = std::max(0.0, (a.adjoint() * r_tx * a).value().real());
    }
    return b;
}

/// H_txrx(theta) = H_tx(theta) H_rx(theta).
inline Eigen::VectorXcd txrx_beampattern(const BeamWeights &weights, const ActiveArrayPair &pair,
                                         const std::vector<double> &angles) {
    if (weights.w_tx.size() != static_cast<Eigen::Index>(pair.tx.size()) ||
        weights.w_rx.size() != static_cast<Eigen::Index>(pair.rx.size()))
        throw invalid_parameter("txrx_beampattern: weight lengths differ from sensor counts");
    const Eigen::VectorXcd h_tx = rx_beampattern(weights.w_tx, pair.tx, angles);
    const Eigen::VectorXcd h_rx = rx_beampattern(weights.w_rx, pair.rx, angles);
    return h_tx.cwiseProduct(h_rx);
}

/// Sum co-array weights realized by physical weights: w_sum = Upsilon
/// (w_tx kron w_rx). Equals the position-aligned convolution of the Tx and
/// Rx weight sequences.
inline Eigen::VectorXcd physical_to_coarray_weights(const Eigen::VectorXcd &w_tx,
                                                    const Eigen::VectorXcd &w_rx,
                                                    const RedundancyPattern &pattern) {
    if (w_tx.size() != static_cast<Eigen::Index>(pattern.n_tx) ||
        w_rx.size() != static_cast<Eigen::Index>(pattern.n_rx))
        throw invalid_parameter("physical_to_coarray_weights: weight lengths differ from pattern");
    Eigen::VectorXcd kron(static_cast<Eigen::Index>(pattern.cols()));
    for (std::size_t c = 0; c < pattern.n_tx; ++c)
        for (std::size_t r = 0; r < pattern.n_rx; ++r)
            kron(static_cast<Eigen::Index>(c * pattern.n_rx + r)) =
                w_tx(static_cast<Eigen::Index>(c)) * w_rx(static_cast<Eigen::Index>(r));
    return pattern.apply<Eigen::VectorXcd>(kron);
}

inline Eigen::VectorXcd physical_to_coarray_weights(const BeamWeights &weights,
                                                    const ActiveArrayPair &pair) {
    return physical_to_coarray_weights(weights.w_tx, weights.w_rx, redundancy_pattern(pair));
}

/// Co-array weights realized by a whole component set (sum over components).
inline Eigen::VectorXcd coarray_weights_of_components(const ComponentSet &components,
                                                      const RedundancyPattern &pattern) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pattern.rows()));
    for (Eigen::Index q = 0; q < components.q(); ++q)
        w += physical_to_coarray_weights(components.w_tx.col(q), components.w_rx.col(q), pattern);
    return w;
}

/// SVD factorization of a weight matrix into components: W_tx = V*,
/// W_rx = U Sigma, truncated at the numerical rank.
inline ComponentSet factorize_components(const Eigen::MatrixXcd &w) {
    ComponentSet c;
    if (w.size() == 0) {
        c.w_rx.resize(w.rows(), 0);
        c.w_tx.resize(w.cols(), 0);
        return c;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto sv = svd.singularValues();
    Eigen::Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double thresh = static_cast<double>(std::max(w.rows(), w.cols())) *
                              std::numeric_limits<double>::epsilon() * sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > thresh)
                ++rank;
    }
    c.w_rx = svd.matrixU().leftCols(rank) * sv.head(rank).asDiagonal();
    c.w_tx = svd.matrixV().conjugate().leftCols(rank);
    return c;
}

/// Distribute each requested co-array weight equally over the sensor pairs
/// that hit that virtual position: vec(W) = Upsilon^T (Upsilon Upsilon^T)^-1
/// w_sum. Always consistent because Upsilon Upsilon^T is a positive diagonal.
inline SynthesisResult ls_synthesis(const Eigen::VectorXcd &target,
                                    const RedundancyPattern &pattern) {
    if (target.size() != static_cast<Eigen::Index>(pattern.rows()))
        throw invalid_parameter("ls_synthesis: target length differs from co-array size");
    Eigen::MatrixXcd w(static_cast<Eigen::Index>(pattern.n_rx),
                       static_cast<Eigen::Index>(pattern.n_tx));
    for (std::size_t i = 0; i < pattern.cols(); ++i) {
        const auto row = pattern.row_of_col[i];
        w(static_cast<Eigen::Index>(i % pattern.n_rx), static_cast<Eigen::Index>(i / pattern.n_rx)) =
            target(static_cast<Eigen::Index>(row)) /
            static_cast<double>(pattern.multiplicities[row]);
    }
    SynthesisResult res;
    res.method = SynthesisMethod::least_squares;
    res.components = factorize_components(w);
    res.achieved = coarray_weights_of_components(res.components, pattern);
    res.residual = (res.achieved - target).cwiseAbs().maxCoeff();
    return res;
}

namespace detail {

// One alternating half-step: given the fixed factor, the free factor's
// entries solve a linear least-squares system whose rows are the co-array
// positions. Entry (r, q) of W_rx contributes W_tx(c, q) to co-array row
// sigma(c, r); the tx update is symmetric.
inline Eigen::MatrixXcd solve_rx_factor(const Eigen::MatrixXcd &w_tx,
                                        const RedundancyPattern &pattern,
                                        const Eigen::VectorXcd &target) {
    const auto n_rx = static_cast<Eigen::Index>(pattern.n_rx);
    const Eigen::Index q = w_tx.cols();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(pattern.rows()), n_rx * q);
    for (std::size_t i = 0; i < pattern.cols(); ++i) {
        const auto row = static_cast<Eigen::Index>(pattern.row_of_col[i]);
        const auto c = static_cast<Eigen::Index>(i / pattern.n_rx);
        const auto r = static_cast<Eigen::Index>(i % pattern.n_rx);
        for (Eigen::Index k = 0; k < q; ++k)
            m(row, k * n_rx + r) += w_tx(c, k);
    }
    const Eigen::VectorXcd x = m.completeOrthogonalDecomposition().solve(target);
    return Eigen::Map<const Eigen::MatrixXcd>(x.data(), n_rx, q);
}

inline Eigen::MatrixXcd solve_tx_factor(const Eigen::MatrixXcd &w_rx,
                                        const RedundancyPattern &pattern,
                                        const Eigen::VectorXcd &target) {
    const auto n_tx = static_cast<Eigen::Index>(pattern.n_tx);
    const Eigen::Index q = w_rx.cols();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(pattern.rows()), n_tx * q);
    for (std::size_t i = 0; i < pattern.cols(); ++i) {
        const auto row = static_cast<Eigen::Index>(pattern.row_of_col[i]);
        const auto c = static_cast<Eigen::Index>(i / pattern.n_rx);
        const auto r = static_cast<Eigen::Index>(i % pattern.n_rx);
        for (Eigen::Index k = 0; k < q; ++k)
            m(row, k * n_tx + c) += w_rx(r, k);
    }
    const Eigen::VectorXcd x = m.completeOrthogonalDecomposition().solve(target);
    return Eigen::Map<const Eigen::MatrixXcd>(x.data(), n_tx, q);
}

inline double coarray_max_residual(const Eigen::MatrixXcd &w_tx, const Eigen::MatrixXcd &w_rx,
                                   const RedundancyPattern &pattern,
                                   const Eigen::VectorXcd &target) {
    Eigen::VectorXcd achieved = Eigen::VectorXcd::Zero(target.size());
    const Eigen::MatrixXcd w = w_rx * w_tx.transpose();
    for (std::size_t i = 0; i < pattern.cols(); ++i)
        achieved(static_cast<Eigen::Index>(pattern.row_of_col[i])) +=
            w(static_cast<Eigen::Index>(i % pattern.n_rx), static_cast<Eigen::Index>(i / pattern.n_rx));
    return (achieved - target).cwiseAbs().maxCoeff();
}

} // namespace detail

/// Find the smallest component count Q whose factors reproduce the target
/// co-array weights to max-norm `tol`, scanning Q upward. Per Q, several
/// alternating least-squares runs: run 0 warm-starts from the best factors
/// of Q-1 padded with a zero column (so the best residual can never get
/// worse as Q grows), run 1 starts from the rank-Q truncated SVD of the
/// equal-split exact-fit matrix (random starts converge only sublinearly
/// when the optimum itself is rank deficient, so a spectral start is needed
/// to reach tight tolerances), run 2 perturbs the warm start with a fresh
/// random column, and the rest draw fully random starts from substream
/// (Q << 16) + run of the seed. Throws synthesis_failure with the per-Q
/// best residuals if every Q misses the tolerance.
inline SynthesisResult min_rank_synthesis(const Eigen::VectorXcd &target,
                                          const RedundancyPattern &pattern, double tol = 1e-9,
                                          int restarts = 5, int max_iters = 500,
                                          std::uint64_t seed = 0) {
    if (target.size() != static_cast<Eigen::Index>(pattern.rows()))
        throw invalid_parameter("min_rank_synthesis: target length differs from co-array size");
    if (!(tol > 0.0))
        throw invalid_parameter("min_rank_synthesis: tolerance must be positive");
    if (restarts < 1 || max_iters < 1)
        throw invalid_parameter("min_rank_synthesis: budget must be positive");

    const auto n_tx = static_cast<Eigen::Index>(pattern.n_tx);
    const auto n_rx = static_cast<Eigen::Index>(pattern.n_rx);

    SynthesisResult res;
    res.method = SynthesisMethod::min_rank;
    if (target.cwiseAbs().maxCoeff() <= tol) {
        res.components.w_tx.resize(n_tx, 0);
        res.components.w_rx.resize(n_rx, 0);
        res.achieved = Eigen::VectorXcd::Zero(target.size());
        res.residual = target.cwiseAbs().maxCoeff();
        return res;
    }

    // Equal-split exact-fit matrix; its truncated SVD seeds run 1 per rank.
    Eigen::MatrixXcd w_ls(n_rx, n_tx);
    for (std::size_t i = 0; i < pattern.cols(); ++i)
        w_ls(static_cast<Eigen::Index>(i % pattern.n_rx),
             static_cast<Eigen::Index>(i / pattern.n_rx)) =
            target(static_cast<Eigen::Index>(pattern.row_of_col[i])) /
            static_cast<double>(pattern.multiplicities[pattern.row_of_col[i]]);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w_ls,
                                                 Eigen::ComputeThinU | Eigen::ComputeThinV);

    const Eigen::Index q_max = std::min(n_tx, n_rx);
    std::vector<double> best_per_q;
    Eigen::MatrixXcd prev_tx, prev_rx;
    bool have_prev = false;

    for (Eigen::Index q = 1; q <= q_max; ++q) {
        double best_res = std::numeric_limits<double>::infinity();
        Eigen::MatrixXcd best_tx, best_rx;
        for (int run = 0; run < restarts; ++run) {
            Eigen::MatrixXcd w_tx(n_tx, q), w_rx(n_rx, q);
            NormalSampler normal(seed, (static_cast<std::uint64_t>(q) << 16) +
                                           static_cast<std::uint64_t>(run));
            const bool warm = have_prev && (run == 0 || run == 2);
            if (run == 1) {
                w_tx = svd.matrixV().leftCols(q).conjugate() *
                       svd.singularValues().head(q).cast<Complex>().asDiagonal();
                w_rx = svd.matrixU().leftCols(q);
            } else if (warm) {
                w_tx.leftCols(q - 1) = prev_tx;
                w_rx.leftCols(q - 1) = prev_rx;
                w_tx.col(q - 1).setZero();
                w_rx.col(q - 1).setZero();
                if (run == 2) {
                    for (Eigen::Index i = 0; i < n_tx; ++i)
                        w_tx(i, q - 1) = normal.complex_normal();
                    for (Eigen::Index i = 0; i < n_rx; ++i)
                        w_rx(i, q - 1) = normal.complex_normal();
                }
            } else {
                for (Eigen::Index j = 0; j < q; ++j) {
                    for (Eigen::Index i = 0; i < n_tx; ++i)
                        w_tx(i, j) = normal.complex_normal();
                    for (Eigen::Index i = 0; i < n_rx; ++i)
                        w_rx(i, j) = normal.complex_normal();
                }
            }
            double r = detail::coarray_max_residual(w_tx, w_rx, pattern, target);
            if (r < best_res) {
                best_res = r;
                best_tx = w_tx;
                best_rx = w_rx;
            }
            for (int it = 0; it < max_iters && best_res > tol; ++it) {
                w_rx = detail::solve_rx_factor(w_tx, pattern, target);
                w_tx = detail::solve_tx_factor(w_rx, pattern, target);
                r = detail::coarray_max_residual(w_tx, w_rx, pattern, target);
                if (r < best_res) {
                    best_res = r;
                    best_tx = w_tx;
                    best_rx = w_rx;
                }
            }
            if (best_res <= tol)
                break;
        }
        best_per_q.push_back(best_res);
        prev_tx = best_tx;
        prev_rx = best_rx;
        have_prev = true;
        if (best_res <= tol) {
            res.components.w_tx = best_tx;
            res.components.w_rx = best_rx;
            res.achieved = coarray_weights_of_components(res.components, pattern);
            res.residual = (res.achieved - target).cwiseAbs().maxCoeff();
            return res;
        }
    }
    throw synthesis_failure("min_rank_synthesis: no rank met the tolerance within budget",
                            best_per_q);
}

/// Synthesized joint pattern: sum of the per-component Tx-Rx products.
inline Eigen::VectorXcd synthesized_beampattern(const ComponentSet &components,
                                                const ActiveArrayPair &pair,
                                                const std::vector<double> &angles) {
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(angles.size()));
    for (Eigen::Index q = 0; q < components.q(); ++q) {
        BeamWeights w;
        w.w_tx = components.w_tx.col(q);
        w.w_rx = components.w_rx.col(q);
        h += txrx_beampattern(w, pair, angles);
    }
    return h;
}

struct ImageAdditionResult {
    Complex total{0.0, 0.0};
    std::vector<Complex> per_component;
};

/// Run one simulated transmission per component and add the beamformer
/// outputs. Component q transmits the rank-1 waveform S[q] = u w_tx[q]^H
/// (u the constant unit-norm temporal vector) and combines with the
/// temporal matched filter w_s[q] = u, so S[q]^H w_s[q] = w_tx[q]: the
/// effective Tx weights are exactly the component's. Noise per component is
/// drawn from substream q, making per-component records independent and the
/// whole output reproducible from the seed alone.
inline ImageAdditionResult image_addition_output(const ActiveArrayPair &pair, const Scene &scene,
                                                 const ComponentSet &components,
                                                 Eigen::Index samples, double sigma2,
                                                 std::uint64_t seed) {
    if (components.q() > 0 &&
        (components.w_tx.rows() != static_cast<Eigen::Index>(pair.tx.size()) ||
         components.w_rx.rows() != static_cast<Eigen::Index>(pair.rx.size())))
        throw invalid_parameter("image_addition_output: component sizes differ from pair");
    if (samples < 1)
        throw invalid_parameter("image_addition_output: need at least one sample");
    const Eigen::VectorXcd u = Eigen::VectorXcd::Constant(
        samples, Complex(1.0 / std::sqrt(static_cast<double>(samples)), 0.0));
    ImageAdditionResult out;
    for (Eigen::Index q = 0; q < components.q(); ++q) {
        WaveformMatrix wf;
        wf.S = u * components.w_tx.col(q).adjoint();
        const MeasurementBatch batch =
            simulate(pair, scene, wf, sigma2, seed, static_cast<std::uint64_t>(q));
        const Complex y =
            (components.w_rx.col(q).adjoint() * batch.Y * u.conjugate()).value();
        out.per_component.push_back(y);
        out.total += y;
    }
    return out;
}

} // namespace calab

#endif
