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

#include "qptree/bell_test.hpp"

#include <array>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace qptree;
using namespace qptree::bell;

namespace {

double half_sin_sq(double deg) { return oracle::singlet_plus_plus(deg * oracle::kDeg); }

/// Enumerates the deterministic assignment directly from its label.
Probabilities enumerate_label(std::string_view label) {
    const bool a_plus = label[0] == '+';
    const bool b_plus = label[1] == '+';
    const bool c_plus = label[2] == '+';
    // Particle 2 along y reads the opposite of particle 1's value along y.
    return Probabilities::from_triple(a_plus && !b_plus ? 1.0 : 0.0, a_plus && !c_plus ? 1.0 : 0.0,
                                      c_plus && !b_plus ? 1.0 : 0.0);
}

UnitVector rotate(const std::array<std::array<double, 3>, 3> &r, const UnitVector &n) {
    return UnitVector::normalized(r[0][0] * n.x() + r[0][1] * n.y() + r[0][2] * n.z(),
                                  r[1][0] * n.x() + r[1][1] * n.y() + r[1][2] * n.z(),
                                  r[2][0] * n.x() + r[2][1] * n.y() + r[2][2] * n.z());
}

}  // namespace

TEST(QuantumBell, forty_five_degree_family) {
    const auto p = quantum_bell(Scenario::coplanar_bisecting(45.0));
    EXPECT_NEAR(p.p_ab, 0.25, 1e-12);
    EXPECT_NEAR(p.p_ac, half_sin_sq(45.0), 1e-12);
    EXPECT_NEAR(p.p_cb, half_sin_sq(45.0), 1e-12);
    EXPECT_NEAR(p.p_ac, 0.0732233047, 1e-9);
    EXPECT_NEAR(p.margin, -0.1035533906, 1e-9);
    EXPECT_EQ(check_inequality(p), Verdict::kViolated);
}

TEST(QuantumBell, sixty_degree_family) {
    const auto p = quantum_bell(Scenario::coplanar_bisecting(60.0));
    EXPECT_NEAR(p.p_ab, 0.375, 1e-12);
    EXPECT_NEAR(p.p_ac, 0.125, 1e-12);
    EXPECT_NEAR(p.p_cb, 0.125, 1e-12);
    EXPECT_NEAR(p.margin, -0.125, 1e-12);
}

TEST(QuantumBell, equal_a_b_holds_trivially) {
    const UnitVector z(0, 0, 1);
    const auto p = quantum_bell(Scenario{z, z, UnitVector::in_xz_plane_deg(70.0)});
    EXPECT_NEAR(p.p_ab, 0.0, 1e-15);
    EXPECT_EQ(check_inequality(p), Verdict::kHolds);
}

TEST(QuantumBell, frame_invariance) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Scenario s{UnitVector::normalized(g(rng), g(rng), g(rng)),
                         UnitVector::normalized(g(rng), g(rng), g(rng)),
                         UnitVector::normalized(g(rng), g(rng), g(rng))};
        const auto r = oracle::random_rotation(rng);
        const auto p0 = quantum_bell(s);
        const auto p1 = quantum_bell(Scenario{rotate(r, s.a), rotate(r, s.b), rotate(r, s.c)});
        EXPECT_NEAR(p0.p_ab, p1.p_ab, 1e-10);
        EXPECT_NEAR(p0.p_ac, p1.p_ac, 1e-10);
        EXPECT_NEAR(p0.p_cb, p1.p_cb, 1e-10);
        // Closed form in the pairwise angles.
        EXPECT_NEAR(p0.p_ab, 0.5 * std::pow(std::sin(s.a.angle_to(s.b) / 2), 2), 1e-10);
    }
}

TEST(ClassicalBell, uniform_and_corners) {
    const auto u = classical_bell(HiddenVariableModel::uniform());
    EXPECT_DOUBLE_EQ(u.p_ab, 0.25);
    EXPECT_DOUBLE_EQ(u.p_ac, 0.25);
    EXPECT_DOUBLE_EQ(u.p_cb, 0.25);
    EXPECT_DOUBLE_EQ(u.margin, 0.25);

    const auto pm = classical_bell(HiddenVariableModel::point_mass(HiddenVariableModel::index_of("+-+")));
    EXPECT_EQ(pm.p_ab, 1.0);
    EXPECT_EQ(pm.p_ac, 0.0);
    EXPECT_EQ(pm.p_cb, 1.0);
    EXPECT_EQ(pm.margin, 0.0);
    EXPECT_EQ(check_inequality(pm), Verdict::kHolds);
}

TEST(ClassicalBell, every_corner_matches_enumeration) {
    for (std::size_t i = 0; i < 8; ++i) {
        const auto got = classical_bell(HiddenVariableModel::point_mass(i));
        const auto want = enumerate_label(HiddenVariableModel::kLabels[i]);
        EXPECT_EQ(got.p_ab, want.p_ab) << i;
        EXPECT_EQ(got.p_ac, want.p_ac) << i;
        EXPECT_EQ(got.p_cb, want.p_cb) << i;
        EXPECT_GE(got.margin, 0.0);
    }
}

TEST(ClassicalBell, soundness_over_random_models) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto p = classical_bell(HiddenVariableModel(oracle::random_simplex<8>(rng)));
        ASSERT_GE(p.margin, -1e-12);
        // Set inclusion {a+,b-} subset of {a+,c-} union {c+,b-} bounds margin below by 0 pointwise.
        ASSERT_EQ(check_inequality(p), Verdict::kHolds);
    }
}

TEST(HiddenVariableModel, validation) {
    std::array<double, 8> w{};
    w[0] = 0.5;
    EXPECT_THROW(HiddenVariableModel{w}, std::invalid_argument);
    w[1] = 0.6;
    w[2] = -0.1;
    EXPECT_THROW(HiddenVariableModel{w}, std::invalid_argument);
    EXPECT_THROW(HiddenVariableModel::index_of("++"), std::invalid_argument);
    EXPECT_THROW(HiddenVariableModel::point_mass(8), std::invalid_argument);
}

TEST(CheckInequality, boundary) {
    EXPECT_EQ(check_inequality(Probabilities::from_triple(0.0, 0.125, 0.125)), Verdict::kHolds);
    EXPECT_EQ(check_inequality(Probabilities::from_triple(0.5, 0.25, 0.25)), Verdict::kHolds);
    EXPECT_EQ(check_inequality(Probabilities{0, 0, 0, -0.103553}), Verdict::kViolated);
    EXPECT_EQ(check_inequality(Probabilities{0, 0, 0, -1e-13}), Verdict::kHolds);
    EXPECT_EQ(check_inequality(Probabilities{0, 0, 0, -2e-12}), Verdict::kViolated);
}

TEST(ViolationScan, rows_and_errors) {
    const std::vector<double> grid{45.0, 90.0, 120.0};
    const auto rows = violation_scan(grid);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[0].p.margin, -0.1035533906, 1e-9);
    EXPECT_EQ(rows[0].verdict, Verdict::kViolated);
    EXPECT_NEAR(rows[1].p.p_ab, 0.5, 1e-12);
    EXPECT_NEAR(rows[1].p.p_ac + rows[1].p.p_cb, 0.5, 1e-12);
    EXPECT_NEAR(rows[1].p.margin, 0.0, 1e-10);
    EXPECT_EQ(rows[1].verdict, Verdict::kHolds);
    EXPECT_NEAR(rows[2].p.p_ab, 0.375, 1e-12);
    EXPECT_NEAR(rows[2].p.p_ac + rows[2].p.p_cb, 0.75, 1e-12);
    EXPECT_NEAR(rows[2].p.margin, 0.375, 1e-12);

    EXPECT_THROW(violation_scan(std::vector<double>{0.0}), std::invalid_argument);
    EXPECT_THROW(violation_scan(std::vector<double>{180.0}), std::invalid_argument);
}

TEST(ViolationScan, parallel_matches_serial) {
    std::vector<double> grid;
    for (int i = 1; i < 180; ++i) {
        grid.push_back(i);
    }
    const auto par = violation_scan(grid, Execution::kParallel);
    const auto ser = violation_scan(grid, Execution::kSerial);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(par[i].theta_deg, ser[i].theta_deg);
        EXPECT_EQ(par[i].p.margin, ser[i].p.margin);
        // Closed-form margin: 2 half_sin_sq(t) - half_sin_sq(2t).
        EXPECT_NEAR(par[i].p.margin, 2 * half_sin_sq(grid[i]) - half_sin_sq(2 * grid[i]), 1e-10);
        EXPECT_EQ(par[i].verdict == Verdict::kViolated, grid[i] < 90.0) << grid[i];
    }
}

TEST(MonteCarloBell, ninety_degree_pair) {
    const Scenario s{UnitVector(0, 0, 1), UnitVector(1, 0, 0), UnitVector::in_xz_plane_deg(45)};
    const auto mc = monte_carlo_bell(s, 1'000'000, 0);
    EXPECT_LE(std::abs(mc.estimate.p_ab - 0.25), 3 * std::sqrt(0.25 * 0.75 / 1e6));
    EXPECT_GT(mc.se_ab, 0.0);
}

TEST(MonteCarloBell, equal_directions_never_draw_plus_plus) {
    const UnitVector z(0, 0, 1);
    const auto mc = monte_carlo_bell(Scenario{z, z, UnitVector(1, 0, 0)}, 1'000'000, 3);
    EXPECT_EQ(mc.estimate.p_ab, 0.0);
    EXPECT_EQ(mc.se_ab, 0.0);
}

TEST(MonteCarloBell, deterministic_per_seed) {
    const auto s = Scenario::coplanar_bisecting(30.0);
    const auto a = monte_carlo_bell(s, 200'000, 77);
    const auto b = monte_carlo_bell(s, 200'000, 77, Execution::kSerial);
    EXPECT_EQ(a.estimate.p_ab, b.estimate.p_ab);
    EXPECT_EQ(a.estimate.p_ac, b.estimate.p_ac);
    EXPECT_EQ(a.estimate.p_cb, b.estimate.p_cb);
    const auto c = monte_carlo_bell(s, 200'000, 78);
    EXPECT_NE(a.estimate.p_ab, c.estimate.p_ab);
    EXPECT_THROW(monte_carlo_bell(s, 0, 1), std::invalid_argument);
}

TEST(ClassicalBell, cannot_reproduce_forty_five_degree_triple) {
    const auto quantum = quantum_bell(Scenario::coplanar_bisecting(45.0));
    ASSERT_LT(quantum.margin, -0.1);
    std::mt19937_64 rng(47);
    double lowest = 1.0;
    for (int trial = 0; trial < 100000; ++trial) {
        lowest = std::min(lowest, classical_bell(HiddenVariableModel(oracle::random_simplex<8>(rng))).margin);
    }
    EXPECT_GE(lowest, -1e-12);
    EXPECT_GT(lowest, quantum.margin);
}
