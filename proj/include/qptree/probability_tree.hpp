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
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qptree/sampling.hpp"
#include "qptree/spin_core.hpp"

namespace qptree {

/// Raised when a measurement class is attached to a preparation whose system
/// dimension it does not act on: single-particle measurements are undefined on
/// the joint two-particle source.
class JointSourceRuleError : public std::invalid_argument {
   public:
    JointSourceRuleError(std::size_t class_dim, std::size_t system_dim, const std::string &class_label);
    std::size_t class_dim() const { return class_dim_; }
    std::size_t system_dim() const { return system_dim_; }

   private:
    std::size_t class_dim_;
    std::size_t system_dim_;
};

/// Inert space-time extent carried on trunks and branches.
struct SpaceTimeDomain {
    double delta_x = 1.0;
    double delta_t = 1.0;

    /// Throws std::invalid_argument unless both extents are finite and positive.
    void validate() const;
};

class PreparationOp {
   public:
    PreparationOp(std::string label, StateVector state, std::size_t system_dim, SpaceTimeDomain domain = {});
    /// Preparation of the two-particle spin singlet.
    static PreparationOp singlet(std::string label = "P_singlet");

    const std::string &label() const { return label_; }
    const StateVector &state() const { return state_; }
    std::size_t system_dim() const { return system_dim_; }
    const SpaceTimeDomain &domain() const { return domain_; }

   private:
    std::string label_;
    StateVector state_;
    std::size_t system_dim_;
    SpaceTimeDomain domain_;
};

/// Registered outcome of a measurement class.
struct NeedlePosition {
    std::string label;
    std::vector<double> eigenvalues;
};

/// A named set of mutually commuting observables realized by one measurement.
///
/// Outcomes enumerate the nonzero joint eigenspaces, ordered lexicographically
/// by descending eigenvalue of each observable in turn. For two spin
/// observables this gives (+,+), (+,-), (-,+), (-,-).
class MeasurementClass {
   public:
    /// Throws std::invalid_argument when the list is empty, dimensions differ,
    /// any pair fails to commute, or outcome labels collide.
    MeasurementClass(std::string label, std::vector<Observable> observables);

    /// {sigma.first (x) I, I (x) sigma.second}.
    static MeasurementClass joint_spin(std::string label, const UnitVector &first, const UnitVector &second);
    /// {sigma.n} on one particle.
    static MeasurementClass single_spin(std::string label, const UnitVector &n);
    /// One particle of a pair: {sigma.n (x) I} for particle 1, {I (x) sigma.n} for particle 2.
    static MeasurementClass particle_spin(std::string label, int particle, const UnitVector &n);

    const std::string &label() const { return label_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Observable> &observables() const { return observables_; }
    const std::vector<NeedlePosition> &outcomes() const { return outcomes_; }
    const std::vector<ComplexMatrix> &projectors() const { return projectors_; }
    std::vector<std::string> outcome_labels() const;
    std::optional<std::size_t> outcome_index(const std::string &label) const;

   private:
    std::string label_;
    std::size_t dim_;
    std::vector<Observable> observables_;
    std::vector<NeedlePosition> outcomes_;
    std::vector<ComplexMatrix> projectors_;
};

/// Union of two compatible classes; observables equal within 1e-10 appear once.
MeasurementClass merge(const MeasurementClass &first, const MeasurementClass &second);

/// True iff every observable of one class commutes with every observable of
/// the other. Throws std::invalid_argument on a dimension mismatch.
bool compatible(const MeasurementClass &first, const MeasurementClass &second);

/// Ordered map from outcome label to probability.
class ProbabilityLaw {
   public:
    /// Throws std::invalid_argument on duplicate labels, negative or
    /// non-finite entries, or a total farther than 1e-12 from 1.
    ProbabilityLaw(std::vector<std::string> labels, std::vector<double> probabilities);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<double> &probabilities() const { return probabilities_; }
    /// Throws std::out_of_range for an unknown label.
    double probability(const std::string &label) const;
    std::optional<std::size_t> index_of(const std::string &label) const;
    double total() const;

   private:
    std::vector<std::string> labels_;
    std::vector<double> probabilities_;
};

/// Atoms of the total algebra; events are subsets passed by label.
struct OutcomeAlgebra {
    std::vector<std::string> atoms;

    bool contains(const std::string &label) const;
};

using Event = std::set<std::string>;

/// Sum of the atom probabilities in `event`, accumulated in atom order.
/// Throws std::out_of_range for a label that is not an atom of `law`.
double event_probability(const ProbabilityLaw &law, const Event &event);

/// Theoretical chain: state and class to spectrum, algebra and Born law.
struct FormalChain {
    StateVector state;
    MeasurementClass measurement;
    std::vector<std::vector<double>> spectrum;
    OutcomeAlgebra algebra;
    ProbabilityLaw law;
};

FormalChain formal_chain(const StateVector &state, const MeasurementClass &measurement);

/// Registered record of repeated preparation and measurement.
struct FactualChain {
    PreparationOp prep;
    MeasurementClass measurement;
    std::vector<sampling::Outcome> registered;
    std::vector<std::size_t> counts;
    std::optional<ProbabilityLaw> empirical_law;

    const NeedlePosition &registered_position(std::size_t i) const {
        return measurement.outcomes().at(registered.at(i));
    }
};

enum class Execution { kSerial, kParallel };

/// Draws n outcomes from the formal law of `measurement` on the prepared
/// state. Identical (seed, n) give identical records for either execution mode.
FactualChain sample_factual_chain(const PreparationOp &prep, const MeasurementClass &measurement,
                                  std::size_t n, std::uint64_t seed, Execution execution = Execution::kParallel);

struct Branch {
    MeasurementClass measurement;
    ProbabilityLaw law;
    SpaceTimeDomain domain;
};

struct ProbabilityTree {
    PreparationOp trunk;
    std::vector<Branch> branches;
};

/// One branch per class after merging compatible classes into the earliest
/// compatible branch. Throws JointSourceRuleError when a class does not act on
/// the trunk's system dimension.
ProbabilityTree build_tree(const PreparationOp &prep, const std::vector<MeasurementClass> &classes);

}  // namespace qptree
