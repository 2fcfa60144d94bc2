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

#include "gtest/gtest.h"

using namespace qptree;

TEST(Digits, rounding) {
    EXPECT_EQ(dump::probability_digits(0.1 + 0.2), 0.3);
    EXPECT_EQ(dump::probability_digits(-1e-17), 0.0);
    EXPECT_FALSE(std::signbit(dump::probability_digits(-0.0)));
    EXPECT_EQ(dump::angle_digits(45.0000000001), 45.0);
    EXPECT_EQ(dump::angle_digits(1.23456789), 1.234568);
}

TEST(ComplexMatrix, row_major_pairs) {
    const auto j = dump::complex_matrix(Observable::pauli_y().matrix());
    ASSERT_EQ(j.size(), 4u);
    EXPECT_EQ(j[1], dump::Json::array({0.0, -1.0}));
    EXPECT_EQ(j[2], dump::Json::array({0.0, 1.0}));
}

TEST(TreeDump, schema_field_names) {
    const UnitVector z(0, 0, 1);
    const auto tree = build_tree(PreparationOp::singlet(), {MeasurementClass::joint_spin("M12_a", z, z)});
    const auto doc = dump::tree(tree);
    ASSERT_TRUE(doc.contains("trunk"));
    ASSERT_TRUE(doc.contains("branches"));
    const auto &trunk = doc["trunk"];
    EXPECT_EQ(trunk["label"], "P_singlet");
    EXPECT_EQ(trunk["system_dim"], 4);
    ASSERT_EQ(trunk["state"].size(), 4u);
    EXPECT_EQ(trunk["state"][1][0], 0.707106781187);
    EXPECT_EQ(trunk["domain"]["delta_x"], 1.0);

    const auto &branch = doc["branches"][0];
    EXPECT_EQ(branch["class"], "M12_a");
    EXPECT_EQ(branch["outcomes"], dump::Json::array({"(+,+)", "(+,-)", "(-,+)", "(-,-)"}));
    EXPECT_EQ(branch["law"], dump::Json::array({0.0, 0.5, 0.5, 0.0}));
    ASSERT_EQ(branch["observables"].size(), 2u);
    EXPECT_EQ(branch["observables"][0].size(), 16u);
    EXPECT_EQ(branch["channel"]["input_alphabet"], dump::Json::array({"|Psi>"}));
    EXPECT_EQ(branch["channel"]["rows"].size(), 1u);
}

TEST(ChannelDump, fields) {
    const ChannelMatrix c({"x", "y"}, {"u", "v"}, {{0.9, 0.1}, {0.2, 0.8}});
    const auto j = dump::channel(c);
    EXPECT_EQ(j["input_alphabet"], dump::Json::array({"x", "y"}));
    EXPECT_EQ(j["output_alphabet"], dump::Json::array({"u", "v"}));
    EXPECT_EQ(j["rows"][1][1], 0.8);
    EXPECT_EQ(j["noiseless"], false);
}

TEST(ProbabilitiesDump, verdict_string) {
    const auto j = dump::probabilities(bell::quantum_bell(bell::Scenario::coplanar_bisecting(45.0)));
    EXPECT_EQ(j["verdict"], "violated");
    EXPECT_EQ(j["p_ab"], 0.25);
}
