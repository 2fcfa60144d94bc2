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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qptree/probability_tree.hpp"

namespace qptree {

/// Zero-memory source: independent emissions from a fixed law over its alphabet.
struct InformationSource {
    std::string label;
    ProbabilityLaw law;
    /// Hilbert dimension for quantum-backed sources.
    std::optional<std::size_t> system_dim;

    const std::vector<std::string> &alphabet() const { return law.labels(); }
};

/// Row-stochastic table of P[output | input].
class ChannelMatrix {
   public:
    /// Throws std::invalid_argument on shape mismatch, duplicate symbols,
    /// negative entries, or a row whose sum is farther than 1e-12 from 1.
    ChannelMatrix(std::vector<std::string> input_alphabet, std::vector<std::string> output_alphabet,
                  std::vector<std::vector<double>> rows);

    static ChannelMatrix identity(const std::vector<std::string> &alphabet);

    const std::vector<std::string> &input_alphabet() const { return input_; }
    const std::vector<std::string> &output_alphabet() const { return output_; }
    const std::vector<std::vector<double>> &rows() const { return rows_; }
    double at(std::size_t in, std::size_t out) const { return rows_[in][out]; }

    /// Diagnostic only: every row is a point mass.
    bool is_noiseless() const;

   private:
    std::vector<std::string> input_;
    std::vector<std::string> output_;
    std::vector<std::vector<double>> rows_;
};

/// Output law P(b) = sum_a P(a) M(b|a). Throws std::invalid_argument when the
/// source alphabet and channel input alphabet differ.
ProbabilityLaw attach(const InformationSource &source, const ChannelMatrix &channel);

/// Source emitting the output of `source` through `channel`.
InformationSource cascade(const InformationSource &source, const ChannelMatrix &channel, std::string label = {});

/// Matrix product C1 C2. Throws std::invalid_argument when C1's output
/// alphabet differs from C2's input alphabet.
ChannelMatrix compose(const ChannelMatrix &first, const ChannelMatrix &second);

/// Symbol emitted by the one-symbol source of a preparation.
inline constexpr const char *kPreparedSymbol = "|Psi>";

/// One-symbol source for the prepared state plus the one-row channel holding
/// the Born law of `measurement`. Throws JointSourceRuleError when the class
/// does not act on the preparation's dimension.
std::pair<InformationSource, ChannelMatrix> quantum_channel(const PreparationOp &prep,
                                                            const MeasurementClass &measurement);

struct InformationSystem {
    InformationSource source;
    ChannelMatrix channel;
    ProbabilityLaw output_law;
};

InformationSystem connect(InformationSource source, ChannelMatrix channel);

}  // namespace qptree
