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

#include "pps/scenarios.h"

#include "gtest/gtest.h"
#include "oracles.h"
#include "pps/criterion.h"
#include "pps/factorize.h"
#include "pps/weakvalue.h"

using namespace pps;

namespace {

constexpr double kTol = 1e-12;

void expect_expectations(const NamedScenario &s) {
    SCOPED_TRACE(s.problem.name);
    const auto &e = s.expected;
    auto M = build_M(s.problem.observables);
    auto compressed = M.compressed();

    if (e.rank) {
        EXPECT_EQ(rank(M.m), *e.rank);
    }
    if (e.compressed_M) {
        ASSERT_EQ(compressed.m.rows(), e.compressed_M->rows());
        ASSERT_EQ(compressed.m.cols(), e.compressed_M->cols());
        EXPECT_LT((compressed.m - *e.compressed_M).norm(), kTol);
    }
    if (e.determinant) {
        EXPECT_LT(std::abs(determinant(compressed.m) - *e.determinant), kTol);
    }
    for (const auto &c : e.row_dependencies) {
        CVector combo = M.m.transpose() * c;
        // small integer entries, so the combination cancels exactly
        EXPECT_EQ(combo.cwiseAbs().maxCoeff(), 0.0);
    }

    auto verdicts = solve_all_blocks(s.problem);
    for (std::size_t b = 0; b < e.unique_solutions.size(); ++b) {
        ASSERT_TRUE(verdicts[b].solution);
        EXPECT_TRUE(verdicts[b].solution->nullspace.empty());
        EXPECT_LT((verdicts[b].solution->particular - e.unique_solutions[b]).norm(), 1e-10);
    }

    if (!e.statuses.empty()) {
        auto sol = solve_problem(s.problem, SearchConfig{});
        EXPECT_EQ(sol.diagnosis, e.statuses);
    }

    if (s.reference && e.reference_pattern_ok) {
        auto report = verify_disembodiment(*s.reference, s.problem);
        EXPECT_EQ(report.pattern_ok, *e.reference_pattern_ok);
        if (e.reference_weak_values) {
            const auto &want = *e.reference_weak_values;
            ASSERT_EQ(report.weak.size(), want.size());
            for (std::size_t j = 0; j < want.size(); ++j) {
                for (std::size_t i = 0; i < want[j].size(); ++i) {
                    EXPECT_LT(std::abs(report.weak[j][i] - want[j][i]), 1e-12) << j << "," << i;
                }
            }
        }
        ASSERT_EQ(report.offending.size(), e.reference_offending.size());
        for (std::size_t k = 0; k < e.reference_offending.size(); ++k) {
            EXPECT_EQ(report.offending[k].observable, e.reference_offending[k].observable);
            EXPECT_EQ(report.offending[k].block, e.reference_offending[k].block);
            EXPECT_LT(std::abs(report.offending[k].value - e.reference_offending[k].value), 1e-12);
        }
    }
}

}  // namespace

TEST(scenarios, builtins_are_valid) {
    ASSERT_EQ(builtin_names().size(), 4u);
    for (const auto &name : builtin_names()) {
        auto s = builtin(name);
        ASSERT_TRUE(s) << name;
        EXPECT_EQ(s->problem.name, name);
        EXPECT_TRUE(validate(s->problem).empty()) << name;
    }
    EXPECT_FALSE(builtin("no-such-scenario"));
}

TEST(scenarios, builtin_expectations_hold) {
    for (const auto &name : builtin_names()) {
        expect_expectations(*builtin(name));
    }
}

TEST(scenarios, cheshire_reference_states) {
    auto s = example_one();
    ASSERT_TRUE(s.reference);
    EXPECT_LT(std::abs(s.reference->overlap - Complex{0.5}), kTol);
    auto report = verify_disembodiment(*s.reference, s.problem);
    EXPECT_TRUE(report.pattern_ok);
    EXPECT_TRUE(report.complex_targets.empty());
}

TEST(scenarios, entangled_pair_differs_only_in_sign) {
    auto pair = entangled_pair();
    EXPECT_EQ(pair.minus.problem.space, pair.plus.problem.space);
    ASSERT_EQ(pair.minus.problem.target.rows.size(), 1u);
    auto a = pair.minus.problem.target.row(0);
    auto b = pair.plus.problem.target.row(0);
    EXPECT_EQ(a.head(7), b.head(7));
    EXPECT_EQ(a(7), -b(7));
}

TEST(scenarios, random_is_deterministic) {
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        auto a = random_scenario(seed, RandomShape{}, true);
        auto b = random_scenario(seed, RandomShape{}, true);
        ASSERT_EQ(a.problem.observables.size(), b.problem.observables.size());
        for (std::size_t j = 0; j < a.problem.observables.size(); ++j) {
            EXPECT_EQ(a.problem.observables[j].matrix, b.problem.observables[j].matrix);
        }
        EXPECT_EQ(a.problem.target.rows, b.problem.target.rows);
        EXPECT_TRUE(validate(a.problem).empty());
    }
    auto c = random_scenario_with_shape(5, RandomShape{2, 3, 2}, true);
    auto d = random_scenario_with_shape(6, RandomShape{2, 3, 2}, true);
    EXPECT_NE(c.problem.observables[0].matrix, d.problem.observables[0].matrix);
}

TEST(scenarios, random_shape_respects_bounds) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto s = random_scenario(seed, RandomShape{3, 3, 4}, false);
        EXPECT_GE(s.problem.space.size(), 1u);
        EXPECT_LE(s.problem.space.size(), 3u);
        EXPECT_LE(s.problem.observables.size(), 4u);
        for (std::size_t b = 0; b < s.problem.space.size(); ++b) {
            EXPECT_LE(s.problem.space.dim(b), 3u);
        }
    }
}

TEST(scenarios, planted_reference_verifies) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_scenario(seed, RandomShape{}, true);
        ASSERT_TRUE(s.reference);
        auto report = verify_disembodiment(*s.reference, s.problem);
        EXPECT_TRUE(report.pattern_ok) << seed;
    }
}

TEST(scenarios, overdetermined_unplanted_is_linearly_infeasible) {
    // q = 3 generic constraints on n^2 = 1 unknown
    int infeasible = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_scenario_with_shape(seed, RandomShape{2, 1, 3}, false);
        auto sol = solve_problem(s.problem, SearchConfig{});
        for (auto st : sol.diagnosis) {
            infeasible += st == BlockStatus::LinearInfeasible;
        }
    }
    EXPECT_EQ(infeasible, 40);
}
