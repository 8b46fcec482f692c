#pragma once

#include <span>
#include <string>
#include <string_view>

#include "anisodnl/model.hpp"

namespace anisodnl {

/// Parses a data expression over the box [0, L_1] x ... x [0, L_N].
///
/// An expression is a sum of terms separated by a standalone `+`:
///
///   const C               C
///   affine C0 C1 .. CN    C0 + sum_j Cj x_j
///   sine A n1 .. nN       A prod_j sin(n_j pi x_j / L_j)
///   bubble A              A prod_j x_j (L_j - x_j)
///
/// Any term may end with `*t` to multiply it by the time variable.
/// Throws DomainError on malformed input.
SpaceTimeFn parse_space_time(std::string_view text, std::span<const double> box);

/// Coefficient expressions accept every space-time term plus
///
///   tanh-u A              A tanh(u)
///
/// `lipschitz_out`, when non-null, receives the Lipschitz constant in u
/// implied by the tanh-u terms (sum of |A|).
CoefficientFn parse_coefficient(std::string_view text, std::span<const double> box,
                                double* lipschitz_out = nullptr);

}  // namespace anisodnl
