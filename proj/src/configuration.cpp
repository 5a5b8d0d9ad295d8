#include "galilax/configuration.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "galilax/errors.hpp"

namespace galilax {

MassSystem::MassSystem(std::vector<double> masses, int dimension)
    : masses_(std::move(masses)), dimension_(dimension) {
  if (masses_.size() < 2) throw InvalidInput("need at least two bodies");
  if (dimension_ < 1) throw InvalidInput("spatial dimension must be at least 1");
  for (std::size_t a = 0; a < masses_.size(); ++a) {
    if (!(masses_[a] > 0.0) || !std::isfinite(masses_[a]))
      throw InvalidInput("mass of body " + std::to_string(a) + " is not positive");
  }
}

double MassSystem::total_mass() const { return std::accumulate(masses_.begin(), masses_.end(), 0.0); }

Matrix MassSystem::mass_matrix() const {
  Matrix m = Matrix::Zero(bodies(), bodies());
  for (int a = 0; a < bodies(); ++a) m(a, a) = masses_[a];
  return m;
}

Matrix JacobiBasis::reduced_mass_matrix() const {
  Matrix m = Matrix::Zero(reduced_size(), reduced_size());
  for (int i = 0; i < reduced_size(); ++i) m(i, i) = reduced_masses[i];
  return m;
}

Matrix JacobiBasis::reduced_mass_inverse() const {
  Matrix m = Matrix::Zero(reduced_size(), reduced_size());
  for (int i = 0; i < reduced_size(); ++i) m(i, i) = 1.0 / reduced_masses[i];
  return m;
}

CenteredState::CenteredState(Matrix z) : z_(std::move(z)) {
  if (z_.cols() == 0 || z_.cols() % 2 != 0)
    throw InvalidInput("centered state needs an even, nonzero number of columns");
  if (z_.rows() == 0) throw InvalidInput("centered state needs at least one row");
}

CenteredState::CenteredState(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw InvalidInput("X and Y blocks must have the same shape");
  Matrix z(x.rows(), 2 * x.cols());
  z << x, y;
  *this = CenteredState(std::move(z));
}

double mass_inner_product(const MassSystem& sys, const Vector& u, const Vector& v) {
  if (u.size() != sys.bodies() || v.size() != sys.bodies())
    throw InvalidInput("label-space vectors must have n entries");
  double s = 0.0;
  for (int a = 0; a < sys.bodies(); ++a) s += sys.masses()[a] * u(a) * v(a);
  return s;
}

JacobiBasis build_jacobi_basis(const MassSystem& sys, bool normalized) {
  const int n = sys.bodies();
  const auto& m = sys.masses();
  Matrix t = Matrix::Zero(n, n);

  // Row k: (1/M_k, ..., 1/M_k, -1/m_{k+1}, 0, ...), whose mass-weighted
  // pairing with q is (partial center of mass) - q_{k+1}.
  double partial = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    partial += m[k];
    for (int a = 0; a <= k; ++a) t(k, a) = 1.0 / partial;
    t(k, k + 1) = -1.0 / m[k + 1];
  }
  t.row(n - 1).setOnes();

  JacobiBasis basis;
  basis.normalized = normalized;
  basis.reduced_masses.resize(n - 1);
  for (int k = 0; k < n; ++k) {
    const double norm_sq = mass_inner_product(sys, t.row(k).transpose(), t.row(k).transpose());
    // Unnormalized rows are rescaled so the Jacobi vector is exactly the
    // separation vector and the diagonal holds the classical reduced mass.
    const double scale = normalized ? 1.0 / std::sqrt(norm_sq) : (k < n - 1 ? 1.0 / norm_sq : 1.0);
    t.row(k) *= scale;
  }
  const Matrix tmt = t * sys.mass_matrix() * t.transpose();
  for (int k = 0; k < n - 1; ++k) basis.reduced_masses[k] = tmt(k, k);
  basis.last_mass = tmt(n - 1, n - 1);
  basis.t = std::move(t);
  return basis;
}

namespace {

void check_state_shape(const MassSystem& sys, const PhaseState& state) {
  const auto d = sys.dimension();
  const auto n = sys.bodies();
  if (state.q.rows() != d || state.q.cols() != n || state.p.rows() != d || state.p.cols() != n)
    throw InvalidInput("phase state must be d x n for positions and momenta");
}

void check_basis(const MassSystem& sys, const JacobiBasis& basis) {
  if (basis.t.rows() != sys.bodies() || basis.t.cols() != sys.bodies())
    throw InvalidInput("Jacobi basis does not match the number of bodies");
}

}  // namespace

PhaseState remove_center_of_mass(const MassSystem& sys, const PhaseState& state) {
  check_state_shape(sys, state);
  const double mtot = sys.total_mass();
  Vector com = Vector::Zero(sys.dimension());
  Vector ptot = Vector::Zero(sys.dimension());
  for (int a = 0; a < sys.bodies(); ++a) {
    com += sys.masses()[a] * state.q.col(a);
    ptot += state.p.col(a);
  }
  com /= mtot;
  PhaseState out = state;
  for (int a = 0; a < sys.bodies(); ++a) {
    out.q.col(a) -= com;
    out.p.col(a) -= (sys.masses()[a] / mtot) * ptot;
  }
  return out;
}

CenteredState center(const MassSystem& sys, const PhaseState& state, const JacobiBasis& basis) {
  check_basis(sys, basis);
  const PhaseState c = remove_center_of_mass(sys, state);
  const int m = sys.reduced_size();
  // q = Q T  =>  Q = q T^{-1};  conjugate momenta are p T^T.
  const Matrix q_jacobi = basis.t.transpose().partialPivLu().solve(c.q.transpose()).transpose();
  const Matrix p_jacobi = c.p * basis.t.transpose();
  return CenteredState(q_jacobi.leftCols(m), p_jacobi.leftCols(m));
}

PhaseState reconstruct(const MassSystem& sys, const JacobiBasis& basis, const CenteredState& z) {
  check_basis(sys, basis);
  const int m = sys.reduced_size();
  if (z.half_size() != m || z.dimension() != sys.dimension())
    throw InvalidInput("centered state shape does not match the mass system");
  const Matrix tt = basis.truncated();
  PhaseState out;
  out.q = z.x() * tt;
  // p T^T = (Y, 0)  =>  p = (Y, 0) T^{-T}.
  Matrix y_full = Matrix::Zero(sys.dimension(), sys.bodies());
  y_full.leftCols(m) = z.y();
  out.p = basis.t.partialPivLu().solve(y_full.transpose()).transpose();
  return out;
}

double kinetic_energy(const MassSystem& sys, const PhaseState& state) {
  check_state_shape(sys, state);
  double k = 0.0;
  for (int a = 0; a < sys.bodies(); ++a) k += state.p.col(a).squaredNorm() / sys.masses()[a];
  return 0.5 * k;
}

double kinetic_energy(const JacobiBasis& basis, const CenteredState& z) {
  const Matrix y = z.y();
  return 0.5 * (y * basis.reduced_mass_inverse() * y.transpose()).trace();
}

}  // namespace galilax
