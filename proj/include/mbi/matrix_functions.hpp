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

#ifndef MBI_MATRIX_FUNCTIONS_HPP
#define MBI_MATRIX_FUNCTIONS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mbi/errors.hpp"
#include "mbi/tensor.hpp"

namespace mbi {

namespace detail {
template <class Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what)
{
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
}
} // namespace detail

inline constexpr int kPermanentMaxSize = 30;
inline constexpr int kNaivePermanentMaxSize = 9;

/**
 * Permanent by Ryser's inclusion-exclusion formula,
 *
 *   perm A = (-1)^n sum_{S subset [n]} (-1)^{|S|} prod_i sum_{j in S} A_ij,
 *
 * with subsets visited in Gray-code order so each step adds or removes one
 * column from the running row sums: O(2^n n). The empty matrix has
 * permanent 1.
 */
template <class Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    detail::require_square(a, "permanent");
    const auto n = static_cast<int>(a.rows());
    if (n == 0) return Scalar(1);
    if (n > kPermanentMaxSize) throw SizeLimitError("permanent: n = " + std::to_string(n) + " exceeds cap 30");

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
    Scalar total(0);
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < subsets; ++step) {
        const int col = std::countr_zero(step);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit)
            row_sums += a.col(col);
        else
            row_sums -= a.col(col);
        const Scalar product = row_sums.prod();
        // |S| parity follows the Gray-code step parity
        if (std::popcount(gray) % 2 == 1)
            total -= product;
        else
            total += product;
    }
    return (n % 2 == 0) ? total : Scalar(-total);
}

/// Direct sum over all n! permutations. Test oracle; n <= 9.
template <class Derived>
typename Derived::Scalar permanent_naive(const Eigen::MatrixBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    detail::require_square(a, "permanent_naive");
    const auto n = static_cast<int>(a.rows());
    if (n > kNaivePermanentMaxSize)
        throw SizeLimitError("permanent_naive: n = " + std::to_string(n) + " exceeds cap 9");
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Scalar total(0);
    do {
        Scalar term(1);
        for (int k = 0; k < n; ++k) term *= a(k, sigma[k]);
        total += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

/// Determinant by LU factorization with partial pivoting; each row swap
/// flips the sign. The empty matrix has determinant 1.
template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    detail::require_square(a, "determinant");
    const auto n = a.rows();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> lu = a;
    Scalar det(1);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = k;
        lu.col(k).tail(n - k).cwiseAbs().maxCoeff(&pivot);
        pivot += k;
        if (lu(pivot, k) == Scalar(0)) return Scalar(0);
        if (pivot != k) {
            lu.row(k).swap(lu.row(pivot));
            det = -det;
        }
        det *= lu(k, k);
        const auto rest = n - k - 1;
        if (rest > 0) {
            lu.col(k).tail(rest) /= lu(k, k);
            lu.bottomRightCorner(rest, rest).noalias() -= lu.col(k).tail(rest) * lu.row(k).tail(rest);
        }
    }
    return det;
}

/// Mode occupation vector: counts[k] particles in port k + 1.
class OccupationVector {
public:
    explicit OccupationVector(std::vector<int> counts);
    /// Occupation of m ports produced by a 1-based port list.
    static OccupationVector from_ports(int m, const PortList& ports);

    int modes() const noexcept { return static_cast<int>(counts_.size()); }
    int particles() const noexcept { return total_; }
    const std::vector<int>& counts() const noexcept { return counts_; }
    int operator[](std::size_t k) const { return counts_[k]; }
    /// Ascending 1-based port list with port k repeated counts[k-1] times.
    PortList to_ports() const;
    bool collision_free() const;

    friend bool operator==(const OccupationVector&, const OccupationVector&) = default;
    friend auto operator<=>(const OccupationVector& a, const OccupationVector& b)
    {
        return a.counts_ <=> b.counts_;
    }

private:
    std::vector<int> counts_;
    int total_ = 0;
};

/// prod_k M_k!  (equals perm I with I_jk = delta(o_j, o_k)).
std::uint64_t occupation_normalization(const OccupationVector& occupation);

/// Sign of a permutation of 0..n-1 given by its image.
int permutation_sign(const std::vector<int>& image);

/// Binomial coefficient as double (exact below 2^53).
double binomial(int n, int k);

} // namespace mbi

#endif
