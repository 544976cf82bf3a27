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

#ifndef COARRAY_LAB_ERRORS_HPP
#define COARRAY_LAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace calab {

// Bad argument values or inconsistent dimensions.
class invalid_parameter : public std::invalid_argument {
  public:
    explicit invalid_parameter(const std::string &msg) : std::invalid_argument(msg) {}
};

// Requested quantity is undefined for this configuration (e.g. redundancy of
// a non-contiguous sum co-array).
class unsupported_configuration : public std::runtime_error {
  public:
    explicit unsupported_configuration(const std::string &msg) : std::runtime_error(msg) {}
};

// Constraint set of a search problem admits no solution.
class no_solution : public std::runtime_error {
  public:
    explicit no_solution(const std::string &msg) : std::runtime_error(msg) {}
};

// Rank-minimizing weight synthesis missed the tolerance at every candidate
// rank within its budget. Carries the best residual reached per rank
// (index 0 is rank 1) so callers can report how close each attempt came.
class synthesis_failure : public std::runtime_error {
  public:
    synthesis_failure(const std::string &msg, std::vector<double> residuals)
        : std::runtime_error(msg), best_residual_per_rank(std::move(residuals)) {}

    std::vector<double> best_residual_per_rank;
};

} // namespace calab

#endif
