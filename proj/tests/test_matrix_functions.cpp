/**
 * Copyright 2026 The mbi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mbi/errors.hpp"
#include "mbi/matrix_functions.hpp"
#include "oracles.hpp"

using namespace mbi;

TEST_CASE("ryser permanent matches the naive sum")
{
    std::uint64_t seed = 1;
    for (int n = 0; n <= 8; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix a = oracle::random_matrix(n, seed++);
            const Complex fast = permanent(a);
            const Complex slow = permanent_naive(a);
            CHECK(std::abs(fast - slow) <= 1e-10 * std::max(1.0, std::abs(slow)));
        }
    }
}

TEST_CASE("permanent of known matrices")
{
    Eigen::Matrix2d a;
    a << 1, 2, 3, 4;
    CHECK(permanent(a) == doctest::Approx(10.0));
    CHECK(permanent(Eigen::MatrixXd::Ones(5, 5)) == doctest::Approx(120.0));
    CHECK(permanent(Eigen::MatrixXd::Identity(6, 6)) == doctest::Approx(1.0));
    CHECK(permanent(Eigen::MatrixXd(0, 0)) == 1.0);
    Eigen::Matrix3d b;
    b << 1, 1, 0, 0, 1, 1, 1, 0, 1; // perm = 2
    CHECK(permanent(b) == doctest::Approx(2.0));
    // expressions are accepted directly
    CHECK(permanent(2.0 * Eigen::MatrixXd::Ones(3, 3)) == doctest::Approx(48.0));
}

TEST_CASE("permanent of delta matrices is the occupation normalization")
{
    for (const PortList& outputs : {PortList{1, 1, 2}, PortList{3, 3, 3}, PortList{1, 2, 2, 2, 4}, PortList{1, 2, 3}}) {
        const auto n = static_cast<Eigen::Index>(outputs.size());
        Eigen::MatrixXd delta(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k) delta(j, k) = outputs[j] == outputs[k] ? 1.0 : 0.0;
        const auto occ = OccupationVector::from_ports(4, outputs);
        CHECK(permanent(delta) == doctest::Approx(static_cast<double>(occupation_normalization(occ))));
        CHECK(permanent_naive(delta) == doctest::Approx(static_cast<double>(occupation_normalization(occ))));
    }
}

TEST_CASE("permanent symmetries")
{
    const ComplexMatrix a = oracle::random_matrix(6, 77);
    const Complex p = permanent(a);
    CHECK(std::abs(permanent(ComplexMatrix(a.transpose())) - p) < 1e-10 * std::abs(p));
    ComplexMatrix swapped = a;
    swapped.row(0).swap(swapped.row(4));
    swapped.col(1).swap(swapped.col(2));
    CHECK(std::abs(permanent(swapped) - p) < 1e-10 * std::abs(p));
    ComplexMatrix scaled = a;
    scaled.row(2) *= Complex(0.5, -2.0);
    CHECK(std::abs(permanent(scaled) - Complex(0.5, -2.0) * p) < 1e-10 * std::abs(p));
}

TEST_CASE("permanent size limits and shape errors")
{
    CHECK_THROWS_AS(permanent(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(permanent(Eigen::MatrixXd::Zero(31, 31)), SizeLimitError);
    CHECK_THROWS_AS(permanent_naive(Eigen::MatrixXd::Zero(10, 10)), SizeLimitError);
    CHECK_THROWS_AS(determinant(Eigen::MatrixXd::Zero(3, 2)), DimensionError);
}

TEST_CASE("LU determinant")
{
    for (int n = 1; n <= 8; ++n) {
        const ComplexMatrix a = oracle::random_matrix(n, 500 + n);
        const Complex expected = a.determinant();
        CHECK(std::abs(determinant(a) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    }
    CHECK(determinant(Eigen::MatrixXd(0, 0)) == 1.0);
    Eigen::Matrix3d singular;
    singular << 1, 2, 3, 2, 4, 6, 0, 1, 1;
    CHECK(std::abs(determinant(singular)) < 1e-14);
    // a permutation matrix has determinant equal to its sign
    for (const std::vector<int>& image : {std::vector<int>{1, 0, 2}, std::vector<int>{1, 2, 0}, std::vector<int>{3, 2, 1, 0}}) {
        const auto n = static_cast<Eigen::Index>(image.size());
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) p(image[j], j) = 1.0;
        CHECK(determinant(p) == doctest::Approx(permutation_sign(image)));
    }
    // pivoting is required: zero in the leading position
    Eigen::Matrix2d b;
    b << 0, 1, 1, 0;
    CHECK(determinant(b) == doctest::Approx(-1.0));
}

TEST_CASE("occupation vectors")
{
    const auto occ = OccupationVector::from_ports(4, {2, 4, 2});
    CHECK(occ.counts() == std::vector<int>{0, 2, 0, 1});
    CHECK(occ.particles() == 3);
    CHECK(occ.to_ports() == PortList{2, 2, 4});
    CHECK_FALSE(occ.collision_free());
    CHECK(OccupationVector::from_ports(4, {1, 3}).collision_free());
    CHECK(occupation_normalization(occ) == 2);
    CHECK(occupation_normalization(OccupationVector({3, 0, 2})) == 12);
    CHECK(OccupationVector({0, 1}) < OccupationVector({1, 0}));
    CHECK_THROWS_AS(OccupationVector({}), DimensionError);
    CHECK_THROWS_AS(OccupationVector({1, -1}), RangeError);
    CHECK_THROWS_AS(OccupationVector::from_ports(2, {3}), RangeError);
}

TEST_CASE("combinatorial helpers")
{
    CHECK(permutation_sign({0, 1, 2}) == 1);
    CHECK(permutation_sign({1, 0, 2}) == -1);
    CHECK(permutation_sign({1, 2, 0}) == 1);
    CHECK(permutation_sign({}) == 1);
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(50, 8) == 536878650.0);
    CHECK(binomial(3, 5) == 0.0);
    CHECK(binomial(7, 0) == 1.0);
}
