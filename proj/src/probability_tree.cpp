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

#include "qptree/probability_tree.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace qptree {

namespace {

std::string eigenvalue_label(double value) {
    if (std::abs(value - 1.0) < tol::kEigenvalueMerge) {
        return "+";
    }
    if (std::abs(value + 1.0) < tol::kEigenvalueMerge) {
        return "-";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

std::string tuple_label(const std::vector<double> &values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += eigenvalue_label(values[i]);
    }
    return out + ")";
}

void require_acts_on(const MeasurementClass &measurement, std::size_t system_dim) {
    if (measurement.dim() != system_dim) {
        throw JointSourceRuleError(measurement.dim(), system_dim, measurement.label());
    }
}

}  // namespace

JointSourceRuleError::JointSourceRuleError(std::size_t class_dim, std::size_t system_dim,
                                           const std::string &class_label)
    : std::invalid_argument("measurement class '" + class_label + "' acts on dimension " +
                            std::to_string(class_dim) + " but the prepared source has dimension " +
                            std::to_string(system_dim) +
                            "; the measurement M_1^a and M_2^a are meaningless here: single-particle "
                            "channels act only on single-particle sources, never on the joint source"),
      class_dim_(class_dim),
      system_dim_(system_dim) {}

void SpaceTimeDomain::validate() const {
    if (!(std::isfinite(delta_x) && delta_x > 0.0 && std::isfinite(delta_t) && delta_t > 0.0)) {
        throw std::invalid_argument("SpaceTimeDomain: extents must be finite and strictly positive");
    }
}

PreparationOp::PreparationOp(std::string label, StateVector state, std::size_t system_dim, SpaceTimeDomain domain)
    : label_(std::move(label)), state_(std::move(state)), system_dim_(system_dim), domain_(domain) {
    if (state_.dim() != system_dim_) {
        throw std::invalid_argument("PreparationOp: state dimension " + std::to_string(state_.dim()) +
                                    " differs from declared system dimension " + std::to_string(system_dim_));
    }
    domain_.validate();
}

PreparationOp PreparationOp::singlet(std::string label) { return PreparationOp(std::move(label), singlet_state(), 4); }

MeasurementClass::MeasurementClass(std::string label, std::vector<Observable> observables)
    : label_(std::move(label)), observables_(std::move(observables)) {
    if (observables_.empty()) {
        throw std::invalid_argument("MeasurementClass '" + label_ + "': no observables");
    }
    dim_ = observables_.front().dim();
    for (const auto &o : observables_) {
        if (o.dim() != dim_) {
            throw std::invalid_argument("MeasurementClass '" + label_ + "': observables of differing dimension");
        }
    }
    for (std::size_t i = 0; i < observables_.size(); ++i) {
        for (std::size_t j = i + 1; j < observables_.size(); ++j) {
            if (commutator_norm(observables_[i].matrix(), observables_[j].matrix()) >= tol::kCommutator) {
                throw std::invalid_argument("MeasurementClass '" + label_ + "': observables " + std::to_string(i) +
                                            " and " + std::to_string(j) + " do not commute");
            }
        }
    }

    const auto d = static_cast<Eigen::Index>(dim_);
    std::vector<std::pair<std::vector<double>, ComplexMatrix>> joint{{{}, ComplexMatrix::Identity(d, d)}};
    for (const auto &o : observables_) {
        const auto decomposition = eigendecompose(o);
        std::vector<std::pair<std::vector<double>, ComplexMatrix>> next;
        for (const auto &[values, projector] : joint) {
            for (const auto &space : decomposition.spaces) {
                ComplexMatrix product = projector * space.projector;
                if (product.norm() < 1e-8) {
                    continue;
                }
                auto extended = values;
                extended.push_back(space.eigenvalue);
                next.emplace_back(std::move(extended), 0.5 * (product + product.adjoint()));
            }
        }
        joint = std::move(next);
    }

    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (auto &[values, projector] : joint) {
        total += projector;
        NeedlePosition position{tuple_label(values), values};
        for (const auto &existing : outcomes_) {
            if (existing.label == position.label) {
                throw std::invalid_argument("MeasurementClass '" + label_ + "': duplicate outcome label " +
                                            position.label);
            }
        }
        outcomes_.push_back(std::move(position));
        projectors_.push_back(std::move(projector));
    }
    if ((total - ComplexMatrix::Identity(d, d)).norm() > tol::kProjector) {
        throw std::invalid_argument("MeasurementClass '" + label_ + "': joint projectors do not resolve identity");
    }
}

MeasurementClass MeasurementClass::joint_spin(std::string label, const UnitVector &first, const UnitVector &second) {
    const auto id = Observable::identity(2);
    return MeasurementClass(std::move(label), {tensor(spin_operator(first), id), tensor(id, spin_operator(second))});
}

MeasurementClass MeasurementClass::single_spin(std::string label, const UnitVector &n) {
    return MeasurementClass(std::move(label), {spin_operator(n)});
}

MeasurementClass MeasurementClass::particle_spin(std::string label, int particle, const UnitVector &n) {
    const auto id = Observable::identity(2);
    if (particle == 1) {
        return MeasurementClass(std::move(label), {tensor(spin_operator(n), id)});
    }
    if (particle == 2) {
        return MeasurementClass(std::move(label), {tensor(id, spin_operator(n))});
    }
    throw std::invalid_argument("particle_spin: particle must be 1 or 2");
}

std::vector<std::string> MeasurementClass::outcome_labels() const {
    std::vector<std::string> out;
    out.reserve(outcomes_.size());
    for (const auto &o : outcomes_) {
        out.push_back(o.label);
    }
    return out;
}

std::optional<std::size_t> MeasurementClass::outcome_index(const std::string &label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

MeasurementClass merge(const MeasurementClass &first, const MeasurementClass &second) {
    auto observables = first.observables();
    for (const auto &candidate : second.observables()) {
        bool duplicate = false;
        for (const auto &kept : observables) {
            if ((kept.matrix() - candidate.matrix()).norm() < tol::kCommutator) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            observables.push_back(candidate);
        }
    }
    return MeasurementClass(first.label() + "&" + second.label(), std::move(observables));
}

bool compatible(const MeasurementClass &first, const MeasurementClass &second) {
    if (first.dim() != second.dim()) {
        throw std::invalid_argument("compatible: classes act on dimensions " + std::to_string(first.dim()) +
                                    " and " + std::to_string(second.dim()));
    }
    for (const auto &a : first.observables()) {
        for (const auto &b : second.observables()) {
            if (commutator_norm(a.matrix(), b.matrix()) >= tol::kCommutator) {
                return false;
            }
        }
    }
    return true;
}

ProbabilityLaw::ProbabilityLaw(std::vector<std::string> labels, std::vector<double> probabilities)
    : labels_(std::move(labels)), probabilities_(std::move(probabilities)) {
    if (labels_.size() != probabilities_.size() || labels_.empty()) {
        throw std::invalid_argument("ProbabilityLaw: need one probability per label and at least one label");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw std::invalid_argument("ProbabilityLaw: duplicate label " + labels_[i]);
            }
        }
        if (!std::isfinite(probabilities_[i]) || probabilities_[i] < 0.0) {
            throw std::invalid_argument("ProbabilityLaw: invalid probability for " + labels_[i]);
        }
    }
    if (std::abs(total() - 1.0) > tol::kLawTotal) {
        throw std::invalid_argument("ProbabilityLaw: total " + std::to_string(total()) + " differs from 1");
    }
}

double ProbabilityLaw::probability(const std::string &label) const {
    const auto i = index_of(label);
    if (!i) {
        throw std::out_of_range("ProbabilityLaw: unknown outcome " + label);
    }
    return probabilities_[*i];
}

std::optional<std::size_t> ProbabilityLaw::index_of(const std::string &label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

double ProbabilityLaw::total() const {
    double sum = 0.0;
    for (double p : probabilities_) {
        sum += p;
    }
    return sum;
}

bool OutcomeAlgebra::contains(const std::string &label) const {
    for (const auto &a : atoms) {
        if (a == label) {
            return true;
        }
    }
    return false;
}

double event_probability(const ProbabilityLaw &law, const Event &event) {
    for (const auto &label : event) {
        if (!law.index_of(label)) {
            throw std::out_of_range("event_probability: unknown outcome " + label);
        }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) {
        if (event.contains(law.labels()[i])) {
            sum += law.probabilities()[i];
        }
    }
    return sum;
}

FormalChain formal_chain(const StateVector &state, const MeasurementClass &measurement) {
    if (state.dim() != measurement.dim()) {
        throw std::invalid_argument("formal_chain: state dimension " + std::to_string(state.dim()) +
                                    " differs from class dimension " + std::to_string(measurement.dim()));
    }
    std::vector<double> probabilities;
    std::vector<std::vector<double>> spectrum;
    for (std::size_t k = 0; k < measurement.outcomes().size(); ++k) {
        probabilities.push_back(born_probability(state, measurement.projectors()[k]));
        spectrum.push_back(measurement.outcomes()[k].eigenvalues);
    }
    auto labels = measurement.outcome_labels();
    OutcomeAlgebra algebra{labels};
    ProbabilityLaw law(std::move(labels), std::move(probabilities));
    return FormalChain{state, measurement, std::move(spectrum), std::move(algebra), std::move(law)};
}

FactualChain sample_factual_chain(const PreparationOp &prep, const MeasurementClass &measurement, std::size_t n,
                                  std::uint64_t seed, Execution execution) {
    require_acts_on(measurement, prep.system_dim());
    if (n == 0) {
        throw std::invalid_argument("sample_factual_chain: n must be at least 1");
    }
    const auto chain = formal_chain(prep.state(), measurement);
    const auto &law = chain.law.probabilities();

    std::vector<sampling::Outcome> record(n);
    if (execution == Execution::kSerial) {
        sampling::draw_outcomes_serial(law, seed, record);
    } else {
        sampling::draw_outcomes_parallel(law, seed, record);
    }
    auto counts = sampling::count_outcomes(record, law.size());

    std::vector<double> frequencies;
    frequencies.reserve(counts.size());
    for (std::size_t c : counts) {
        frequencies.push_back(static_cast<double>(c) / static_cast<double>(n));
    }
    ProbabilityLaw empirical(measurement.outcome_labels(), std::move(frequencies));
    return FactualChain{prep, measurement, std::move(record), std::move(counts), std::move(empirical)};
}

ProbabilityTree build_tree(const PreparationOp &prep, const std::vector<MeasurementClass> &classes) {
    std::vector<MeasurementClass> groups;
    for (const auto &c : classes) {
        require_acts_on(c, prep.system_dim());
        bool merged = false;
        for (auto &g : groups) {
            if (compatible(g, c)) {
                g = merge(g, c);
                merged = true;
                break;
            }
        }
        if (!merged) {
            groups.push_back(c);
        }
    }
    ProbabilityTree tree{prep, {}};
    for (auto &g : groups) {
        auto law = formal_chain(prep.state(), g).law;
        tree.branches.push_back(Branch{std::move(g), std::move(law), SpaceTimeDomain{}});
    }
    return tree;
}

}  // namespace qptree
