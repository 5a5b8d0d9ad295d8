#pragma once

#include <Eigen/Dense>
#include <vector>

namespace galilax {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative threshold for numerical rank: singular values above
/// kRankTol * sigma_max count. Shared by reduction and normal_form.
inline constexpr double kRankTol = 1e-10;

/// The standard symplectic matrix J = (0 I; -I 0) of size 2m.
Matrix symplectic_j(int m);

/// Number of singular values above tol * sigma_max (0 for the zero matrix).
int numerical_rank(const Matrix& a, double tol = kRankTol);

/// Singular values in descending order.
Vector singular_values(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& a);

/// ||T^T J T - J||_F.
double symplectic_defect(const Matrix& t);

/// ||A + A^T||_F, zero for antisymmetric input.
double antisymmetry_defect(const Matrix& a);

/// ||A - A^T||_F, zero for symmetric input.
double symmetry_defect(const Matrix& a);

/// Inverse of a symplectic matrix via -J T^T J.
Matrix symplectic_inverse(const Matrix& t);

/// trace(A^k) for k = 1..kMax.
std::vector<double> power_traces(const Matrix& a, int kMax);

}  // namespace galilax
