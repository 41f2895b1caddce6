#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>

namespace fh {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Coefficient vector of a derivation X = sum_i x_i e_i in a chosen Lie basis.
using DerivationVector = CVector;

inline constexpr double kDefaultTol = 1e-10;

/// True when every entry of the expression is finite (no NaN/Inf).
template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& a)
{
	return a.allFinite();
}

/// max(1, ||a||_F), the scale used by relative tolerance checks.
template <typename Derived>
double tol_scale(const Eigen::MatrixBase<Derived>& a)
{
	return std::max(1.0, a.norm());
}

} // namespace fh
