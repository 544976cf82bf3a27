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

#ifndef COARRAY_LAB_COARRAY_LAB_HPP
#define COARRAY_LAB_COARRAY_LAB_HPP

#include "coarray_lab/beamform.hpp"
#include "coarray_lab/coarray.hpp"
#include "coarray_lab/errors.hpp"
#include "coarray_lab/geometry.hpp"
#include "coarray_lab/io.hpp"
#include "coarray_lab/manifold.hpp"
#include "coarray_lab/mra_search.hpp"
#include "coarray_lab/rational.hpp"
#include "coarray_lab/rng.hpp"

#endif
