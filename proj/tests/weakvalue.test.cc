// Copyright 2026 The PPS Authors
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

#include "pps/weakvalue.h"

#include "gtest/gtest.h"
#include "oracles.h"
#include "pps/errors.h"
#include "pps/scenarios.h"

using namespace pps;

namespace {

CMatrix embedded(const NamedScenario &s, std::size_t observable, std::size_t block) {
    return embed_block_operator(s.problem.observables[observable].matrix, block, s.problem.space);
}

}  // namespace

TEST(weakvalue, identity_is_one) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        CVector post = oracle::random_vector(rng, 4);
        CVector pre = oracle::random_vector(rng, 4);
        EXPECT_EQ(weak_value(post, pre, CMatrix::Identity(4, 4)), Complex(1.0));
    }
}

TEST(weakvalue, example_one_reference_values) {
    auto s = example_one();
    CVector pre = s.reference->pre.flat();
    CVector post = s.reference->post.flat();
    // (observable, block) -> weak value, by direct arithmetic on the reference states
    EXPECT_NEAR(std::abs(weak_value(post, pre, embedded(s, 0, 0)) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(post, pre, embedded(s, 1, 0))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(post, pre, embedded(s, 0, 1))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(post, pre, embedded(s, 1, 1)) - 1.0), 0.0, 1e-12);
}

TEST(weakvalue, orthogonal_selection_throws) {
    CVector post = CVector::Zero(2);
    post[0] = 1.0;
    CVector pre = CVector::Zero(2);
    pre[1] = 1.0;
    EXPECT_THROW(weak_value(post, pre, CMatrix::Identity(2, 2)), PostSelectionOrthogonal);
    EXPECT_THROW(weak_value(post, pre, CMatrix::Identity(3, 3)), DimensionError);
}

TEST(weakvalue, verify_example_one_reference) {
    auto s = example_one();
    auto r = verify_disembodiment(*s.reference, s.problem);
    EXPECT_TRUE(r.pattern_ok);
    ASSERT_EQ(r.amplitudes.size(), 2u);
    EXPECT_LE(std::abs(r.amplitudes[0] - 1.0), 1e-12);
    EXPECT_LE(std::abs(r.amplitudes[1] - 1.0), 1e-12);
    EXPECT_LE(std::abs(r.overlap - 0.5), 1e-15);
    EXPECT_TRUE(r.offending.empty());
    EXPECT_TRUE(r.complex_targets.empty());
}

TEST(weakvalue, verify_example_two_reference_fails) {
    auto s = example_two();
    auto r = verify_disembodiment(*s.reference, s.problem);
    EXPECT_FALSE(r.pattern_ok);
    // brute force: all 16 bilinear values on the reference states
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            Complex b = oracle::bilinear(
                s.reference->post.component(i), s.problem.observables[j].matrix, s.reference->pre.component(i));
            EXPECT_LE(std::abs(r.bilinear[j][i] - b), 1e-12);
        }
    }
    EXPECT_EQ(r.bilinear[1][0], Complex(2.0));
    EXPECT_LE(std::abs(r.weak[1][0] - 0.5), 1e-12);
    bool listed = false;
    for (const auto &e : r.offending) {
        listed = listed || (e.observable == 1 && e.block == 0);
    }
    EXPECT_TRUE(listed);
}

TEST(weakvalue, random_states_break_the_pattern) {
    auto s = example_one();
    std::mt19937_64 rng(42);
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto sel = make_selection(s.problem.space, oracle::random_vector(rng, 4), oracle::random_vector(rng, 4));
        failures += verify_disembodiment(sel, s.problem).pattern_ok ? 0 : 1;
    }
    EXPECT_EQ(failures, 50);
}

TEST(weakvalue, entangled_solution_has_opposite_polarization_signs) {
    auto s = entangled(true);
    auto sol = solve_problem(s.problem, SearchConfig{});
    ASSERT_TRUE(sol.selection.has_value());
    auto r = verify_disembodiment(*sol.selection, s.problem);
    EXPECT_TRUE(r.pattern_ok);
    // sigma1A was targeted at +1 and sigma4B at -1
    double a = r.weak[4][0].real();
    double b = r.weak[7][0].real();
    EXPECT_GT(a, 0.0);
    EXPECT_LT(b, 0.0);
    EXPECT_NEAR(a, -b, 1e-9);
}

TEST(weakvalue, normalization_invariance) {
    std::mt19937_64 rng(43);
    CMatrix O = oracle::random_matrix(rng, 4, 4);
    CVector post = oracle::random_vector(rng, 4);
    CVector pre = oracle::random_vector(rng, 4);
    Complex w = weak_value(post, pre, O);
    for (int trial = 0; trial < 100; ++trial) {
        Complex c1 = oracle::random_complex(rng);
        Complex c2 = oracle::random_complex(rng);
        Complex ws = weak_value(CVector(c1 * post), CVector(c2 * pre), O);
        EXPECT_LE(std::abs(ws - w), 1e-12 * std::max(1.0, std::abs(w)));
    }
}

TEST(weakvalue, linear_in_the_operator) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        CMatrix O1 = oracle::random_matrix(rng, 3, 3);
        CMatrix O2 = oracle::random_matrix(rng, 3, 3);
        CVector post = oracle::random_vector(rng, 3);
        CVector pre = oracle::random_vector(rng, 3);
        Complex a = oracle::random_complex(rng);
        Complex b = oracle::random_complex(rng);
        Complex lhs = weak_value(post, pre, CMatrix(a * O1 + b * O2));
        Complex rhs = a * weak_value(post, pre, O1) + b * weak_value(post, pre, O2);
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST(weakvalue, every_solved_output_verifies) {
    std::vector<NamedScenario> cases = {example_one(), entangled(true)};
    for (std::uint64_t seed = 300; seed < 340; ++seed) {
        cases.push_back(random_scenario(seed, {}, true));
    }
    for (const auto &s : cases) {
        auto sol = solve_problem(s.problem, SearchConfig{});
        ASSERT_TRUE(sol.selection.has_value()) << s.problem.name;
        EXPECT_TRUE(verify_disembodiment(*sol.selection, s.problem, 1e-7).pattern_ok) << s.problem.name;
    }
}

TEST(weakvalue, identity_calibration_leaves_selection_unchanged) {
    auto s = example_one();
    auto out = apply_calibration(*s.reference, CalibrationMap::identity(4));
    EXPECT_EQ(out.pre.flat(), s.reference->pre.flat());
    EXPECT_EQ(out.post.flat(), s.reference->post.flat());
}

TEST(weakvalue, calibration_round_trip) {
    std::mt19937_64 rng(45);
    auto s = example_one();
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix A = oracle::random_matrix(rng, 4, 4) + 4.0 * CMatrix::Identity(4, 4);
        CMatrix B = oracle::random_matrix(rng, 4, 4) + 4.0 * CMatrix::Identity(4, 4);
        CalibrationMap map(A, B);
        auto there = apply_calibration(*s.reference, map);
        auto back = apply_calibration(there, map.inverse());
        EXPECT_LE((back.pre.flat() - s.reference->pre.flat()).norm(), 1e-12);
        EXPECT_LE((back.post.flat() - s.reference->post.flat()).norm(), 1e-12);
    }
}

TEST(weakvalue, phase_calibration_keeps_diagonal_weak_values) {
    auto s = example_one();
    CVector phases(4);
    for (Eigen::Index k = 0; k < 4; ++k) {
        phases[k] = std::polar(1.0, 0.3 + 0.7 * static_cast<double>(k));
    }
    CMatrix D = phases.asDiagonal();
    CMatrix Dinv = phases.conjugate().asDiagonal();
    auto shifted = apply_calibration(*s.reference, CalibrationMap(D, Dinv));
    auto before = verify_disembodiment(*s.reference, s.problem);
    auto after = verify_disembodiment(shifted, s.problem);
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < 2; ++i) {
            EXPECT_LE(std::abs(before.weak[j][i] - after.weak[j][i]), 1e-12);
        }
    }
    EXPECT_TRUE(after.pattern_ok);
}

TEST(weakvalue, singular_calibration_is_rejected) {
    CMatrix singular = ops::diag({1, 0});
    EXPECT_THROW(CalibrationMap(singular, CMatrix::Identity(2, 2)), SingularTransform);
    EXPECT_THROW(CalibrationMap(CMatrix::Identity(2, 2), singular), SingularTransform);
    EXPECT_THROW(CalibrationMap(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), DimensionError);
}
