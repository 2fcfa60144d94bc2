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

#include "qptree/dump.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qptree::dump {

namespace {

double reparse(const char *fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    const double out = std::strtod(buf, nullptr);
    // No negative zeros in documents.
    return out == 0.0 ? 0.0 : out;
}

}  // namespace

double probability_digits(double value) {
    // Below the 12-digit resolution of a unit-scale probability.
    if (std::abs(value) < 1e-12) {
        return 0.0;
    }
    return reparse("%.12g", value);
}

double angle_digits(double value) { return reparse("%.6f", value); }

Json complex_vector(const ComplexVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back({probability_digits(v(i).real()), probability_digits(v(i).imag())});
    }
    return out;
}

Json complex_matrix(const ComplexMatrix &m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out.push_back({probability_digits(m(i, j).real()), probability_digits(m(i, j).imag())});
        }
    }
    return out;
}

Json domain(const SpaceTimeDomain &d) { return Json{{"delta_x", d.delta_x}, {"delta_t", d.delta_t}}; }

Json law(const ProbabilityLaw &law) {
    Json out = Json::array();
    for (double p : law.probabilities()) {
        out.push_back(probability_digits(p));
    }
    return out;
}

Json channel(const ChannelMatrix &channel) {
    Json rows = Json::array();
    for (const auto &row : channel.rows()) {
        Json r = Json::array();
        for (double p : row) {
            r.push_back(probability_digits(p));
        }
        rows.push_back(std::move(r));
    }
    return Json{{"input_alphabet", channel.input_alphabet()},
                {"output_alphabet", channel.output_alphabet()},
                {"rows", std::move(rows)},
                {"noiseless", channel.is_noiseless()}};
}

Json probabilities(const bell::Probabilities &p) {
    return Json{{"p_ab", probability_digits(p.p_ab)},
                {"p_ac", probability_digits(p.p_ac)},
                {"p_cb", probability_digits(p.p_cb)},
                {"margin", probability_digits(p.margin)},
                {"verdict", std::string(bell::to_string(bell::check_inequality(p)))}};
}

Json tree(const ProbabilityTree &tree) {
    Json trunk{{"label", tree.trunk.label()},
               {"system_dim", tree.trunk.system_dim()},
               {"state", complex_vector(tree.trunk.state().amplitudes())},
               {"domain", domain(tree.trunk.domain())}};
    Json branches = Json::array();
    for (const auto &b : tree.branches) {
        Json observables = Json::array();
        for (const auto &o : b.measurement.observables()) {
            observables.push_back(complex_matrix(o.matrix()));
        }
        ChannelMatrix row({kPreparedSymbol}, b.law.labels(), {b.law.probabilities()});
        branches.push_back(Json{{"class", b.measurement.label()},
                                {"observables", std::move(observables)},
                                {"outcomes", b.measurement.outcome_labels()},
                                {"law", law(b.law)},
                                {"domain", domain(b.domain)},
                                {"channel", channel(row)}});
    }
    return Json{{"trunk", std::move(trunk)}, {"branches", std::move(branches)}};
}

}  // namespace qptree::dump
