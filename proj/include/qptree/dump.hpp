// Copyright 2026 The qptree Authors
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

#pragma once

#include "json.hpp"

#include "qptree/bell_test.hpp"
#include "qptree/info_channel.hpp"
#include "qptree/probability_tree.hpp"

/// JSON documents. Complex matrices are flat row-major lists of [re, im]
/// pairs; probabilities carry 12 significant digits (magnitudes below 1e-12
/// are written as 0) and angles 6 decimals.
namespace qptree::dump {

using Json = nlohmann::ordered_json;

double probability_digits(double value);
double angle_digits(double value);

Json complex_vector(const ComplexVector &v);
Json complex_matrix(const ComplexMatrix &m);
Json domain(const SpaceTimeDomain &d);
Json law(const ProbabilityLaw &law);
Json channel(const ChannelMatrix &channel);
Json probabilities(const bell::Probabilities &p);

/// {trunk: {label, system_dim, state, domain}, branches: [{class, observables,
/// outcomes, law, domain, channel}]}.
Json tree(const ProbabilityTree &tree);

}  // namespace qptree::dump
