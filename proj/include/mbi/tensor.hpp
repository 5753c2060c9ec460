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

#ifndef MBI_TENSOR_HPP
#define MBI_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mbi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// 1-based port labels as used at the public API (i_1..i_n, o_1..o_n).
using PortList = std::vector<int>;

inline constexpr double kUnitaryTolerance = 1e-10;

/// max_{kj} |(U^dag U - 1)_{kj}|
double unitarity_residual(const ComplexMatrix& u);

/**
 * An m x m unitary interferometer. Row index is the output port, column
 * index the input port: (*this)(k, j) = <e_k|U|e_j> with 0-based k, j.
 *
 * Unitarity is checked on construction against `tolerance`.
 */
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix entries, double tolerance = kUnitaryTolerance);

    int modes() const noexcept { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return entries_; }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    /// Entry addressed by 1-based (output, input) ports.
    Complex at_ports(int output, int input) const;

    double residual() const { return unitarity_residual(entries_); }

    UnitaryMatrix adjoint() const;

    friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b)
    {
        return a.entries_ == b.entries_;
    }

private:
    ComplexMatrix entries_;
};

/// Permutation pi of the m modes, stored 0-based; pi(k) = image()[k].
class ModePermutation {
public:
    /// From a 1-based image list: image[k-1] = pi(k).
    static ModePermutation from_image(const std::vector<int>& image_one_based);
    /// From cycle notation such as "(1 2)(3 4)"; unlisted ports are fixed.
    static ModePermutation from_cycles(int m, std::string_view notation);
    static ModePermutation identity(int m);
    /// Transposition of two 1-based ports.
    static ModePermutation swap(int m, int a, int b);

    int modes() const noexcept { return static_cast<int>(image_.size()); }
    /// 0-based image.
    const std::vector<int>& image() const noexcept { return image_; }
    /// pi applied to a 1-based port.
    int apply(int port) const;
    int sign() const noexcept { return sign_; }
    /// Cycles with 1-based entries, each starting at its smallest element,
    /// ordered by that element. Fixed points are cycles of length one.
    std::vector<std::vector<int>> cycles() const;
    ModePermutation inverse() const;
    /// Cycle notation of non-trivial cycles, "()" for the identity.
    std::string to_string() const;

    friend bool operator==(const ModePermutation&, const ModePermutation&) = default;

private:
    explicit ModePermutation(std::vector<int> image);
    std::vector<int> image_;
    int sign_ = 1;
};

/// n x n block of a unitary picked by output rows and input columns.
struct SubMatrix {
    PortList rows;
    PortList cols;
    ComplexMatrix entries;
};

UnitaryMatrix haar_random_unitary(int m, std::uint64_t seed);
UnitaryMatrix fourier_unitary(int m);
UnitaryMatrix balanced_beamsplitter();
UnitaryMatrix permutation_unitary(const ModePermutation& p);

/// entries(j, k) = U_{o_j i_k}. Outputs may repeat, inputs may not.
SubMatrix submatrix(const UnitaryMatrix& u, const PortList& outputs, const PortList& inputs);

namespace detail {
void check_port(int port, int m, std::string_view what);
void check_ports(const PortList& ports, int m, std::string_view what);
void check_distinct(const PortList& ports, std::string_view what);
bool has_duplicates(const PortList& ports);
} // namespace detail

} // namespace mbi

#endif
