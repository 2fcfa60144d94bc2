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

#include "qptree/info_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qptree {

namespace {

void require_distinct(const std::vector<std::string> &symbols, const char *what) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        for (std::size_t j = i + 1; j < symbols.size(); ++j) {
            if (symbols[i] == symbols[j]) {
                throw std::invalid_argument(std::string("ChannelMatrix: duplicate ") + what + " symbol " +
                                            symbols[i]);
            }
        }
    }
}

}  // namespace

ChannelMatrix::ChannelMatrix(std::vector<std::string> input_alphabet, std::vector<std::string> output_alphabet,
                             std::vector<std::vector<double>> rows)
    : input_(std::move(input_alphabet)), output_(std::move(output_alphabet)), rows_(std::move(rows)) {
    if (input_.empty() || output_.empty()) {
        throw std::invalid_argument("ChannelMatrix: alphabets must be nonempty");
    }
    require_distinct(input_, "input");
    require_distinct(output_, "output");
    if (rows_.size() != input_.size()) {
        throw std::invalid_argument("ChannelMatrix: need one row per input symbol");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != output_.size()) {
            throw std::invalid_argument("ChannelMatrix: row " + std::to_string(i) + " has wrong length");
        }
        double sum = 0.0;
        for (double p : rows_[i]) {
            if (!std::isfinite(p) || p < 0.0) {
                throw std::invalid_argument("ChannelMatrix: invalid entry in row " + std::to_string(i));
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol::kLawTotal) {
            throw std::invalid_argument("ChannelMatrix: row " + std::to_string(i) + " sums to " +
                                        std::to_string(sum));
        }
    }
}

ChannelMatrix ChannelMatrix::identity(const std::vector<std::string> &alphabet) {
    std::vector<std::vector<double>> rows(alphabet.size(), std::vector<double>(alphabet.size(), 0.0));
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        rows[i][i] = 1.0;
    }
    return ChannelMatrix(alphabet, alphabet, std::move(rows));
}

bool ChannelMatrix::is_noiseless() const {
    for (const auto &row : rows_) {
        std::size_t support = 0;
        for (double p : row) {
            support += p > 0.0 ? 1 : 0;
        }
        if (support != 1) {
            return false;
        }
    }
    return true;
}

ProbabilityLaw attach(const InformationSource &source, const ChannelMatrix &channel) {
    if (source.alphabet() != channel.input_alphabet()) {
        throw std::invalid_argument("attach: source '" + source.label +
                                    "' alphabet differs from the channel input alphabet");
    }
    const auto &p_in = source.law.probabilities();
    std::vector<double> p_out(channel.output_alphabet().size(), 0.0);
    for (std::size_t b = 0; b < p_out.size(); ++b) {
        for (std::size_t a = 0; a < p_in.size(); ++a) {
            p_out[b] += p_in[a] * channel.at(a, b);
        }
    }
    return ProbabilityLaw(channel.output_alphabet(), std::move(p_out));
}

InformationSource cascade(const InformationSource &source, const ChannelMatrix &channel, std::string label) {
    if (label.empty()) {
        label = source.label + "->out";
    }
    return InformationSource{std::move(label), attach(source, channel), std::nullopt};
}

ChannelMatrix compose(const ChannelMatrix &first, const ChannelMatrix &second) {
    if (first.output_alphabet() != second.input_alphabet()) {
        throw std::invalid_argument("compose: output alphabet of the first channel differs from the input "
                                    "alphabet of the second");
    }
    const std::size_t n_in = first.input_alphabet().size();
    const std::size_t n_mid = second.input_alphabet().size();
    const std::size_t n_out = second.output_alphabet().size();
    std::vector<std::vector<double>> rows(n_in, std::vector<double>(n_out, 0.0));
    for (std::size_t i = 0; i < n_in; ++i) {
        for (std::size_t k = 0; k < n_out; ++k) {
            for (std::size_t j = 0; j < n_mid; ++j) {
                rows[i][k] += first.at(i, j) * second.at(j, k);
            }
        }
    }
    return ChannelMatrix(first.input_alphabet(), second.output_alphabet(), std::move(rows));
}

std::pair<InformationSource, ChannelMatrix> quantum_channel(const PreparationOp &prep,
                                                            const MeasurementClass &measurement) {
    if (measurement.dim() != prep.system_dim()) {
        throw JointSourceRuleError(measurement.dim(), prep.system_dim(), measurement.label());
    }
    const auto chain = formal_chain(prep.state(), measurement);
    InformationSource source{prep.label(), ProbabilityLaw({kPreparedSymbol}, {1.0}), prep.system_dim()};
    ChannelMatrix channel({kPreparedSymbol}, chain.law.labels(), {chain.law.probabilities()});
    return {std::move(source), std::move(channel)};
}

InformationSystem connect(InformationSource source, ChannelMatrix channel) {
    auto law = attach(source, channel);
    return InformationSystem{std::move(source), std::move(channel), std::move(law)};
}

}  // namespace qptree
