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

#include "pps/problem.h"

#include "gtest/gtest.h"
#include "pps/errors.h"
#include "pps/scenarios.h"

using namespace pps;

TEST(problem, validate_builtins) {
    EXPECT_TRUE(validate(example_one().problem).empty());
    EXPECT_TRUE(validate(example_two().problem).empty());
    EXPECT_TRUE(validate(entangled(true).problem).empty());
}

TEST(problem, dimension_mismatch_is_reported) {
    auto p = example_one().problem;
    p.observables.push_back({"big", CMatrix::Identity(3, 3)});
    for (auto &row : p.target.rows) {
        row.push_back(0.0);
    }
    auto v = validate(p);
    // one violation per block the 3x3 operator is applied to
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].kind, Violation::Kind::DimensionMismatch);
    EXPECT_EQ(v[0].observable, 2);
    EXPECT_EQ(v[0].block, 0);

    SeparationProblem single{"one", BlockSpace({{"p", 2}}), {{"big", CMatrix::Identity(3, 3)}}, {{{1.0}}}};
    auto w = validate(single);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].kind, Violation::Kind::DimensionMismatch);
}

TEST(problem, degenerate_target_is_reported) {
    auto p = example_one().problem;
    for (auto &row : p.target.rows) {
        std::fill(row.begin(), row.end(), Complex{});
    }
    auto v = validate(p);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, Violation::Kind::DegenerateTarget);
    EXPECT_THROW(require_valid(p), InvalidProblem);
}

TEST(problem, target_shape_errors) {
    auto p = example_one().problem;
    p.target.rows.pop_back();
    auto v = validate(p);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].kind, Violation::Kind::TargetShape);

    auto q = example_one().problem;
    q.observables.clear();
    EXPECT_FALSE(validate(q).empty());
}

TEST(problem, validate_is_idempotent_and_stable) {
    auto p = example_one().problem;
    p.observables.push_back({"N", CMatrix::Identity(3, 3)});
    auto a = validate(p);
    auto b = validate(p);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].kind, b[i].kind);
        EXPECT_EQ(a[i].block, b[i].block);
        EXPECT_EQ(a[i].observable, b[i].observable);
        EXPECT_EQ(a[i].message, b[i].message);
    }
}

TEST(problem, delta_target_examples) {
    auto t2 = delta_target(2, {1.0, 1.0});
    EXPECT_EQ(t2.rows, (std::vector<std::vector<Complex>>{{1.0, 0.0}, {0.0, 1.0}}));

    auto t1 = delta_target(1, {Complex{2.0, 1.0}});
    EXPECT_EQ(t1.rows, (std::vector<std::vector<Complex>>{{Complex{2.0, 1.0}}}));

    EXPECT_THROW(delta_target(2, {1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(delta_target(2, {1.0}), DimensionError);
}

TEST(problem, delta_target_identity_for_every_m) {
    for (std::size_t m = 1; m <= 8; ++m) {
        auto t = delta_target(m, std::vector<Complex>(m, 1.0));
        ASSERT_EQ(t.blocks(), m);
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t j = 0; j < m; ++j) {
                EXPECT_EQ(t.rows[b][j], Complex(b == j ? 1.0 : 0.0));
            }
        }
    }
}

TEST(problem, constrained_blocks_counts_nonzero_rows) {
    auto p = example_one().problem;
    EXPECT_EQ(p.constrained_blocks(), 2u);
    p.target.rows[1] = {0.0, 0.0};
    EXPECT_EQ(p.constrained_blocks(), 1u);
}
