#include "galilax/ac_bridge.hpp"

#include <cmath>

#include "galilax/errors.hpp"

namespace galilax {

Matrix BlockGram::assemble() const {
  const auto m = b.rows();
  Matrix g(2 * m, 2 * m);
  g << b, c + r, c - r, d;
  return g;
}

BlockGram split_blocks(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0) throw InvalidInput("Gram matrix must be square with even size");
  const auto m = g.rows() / 2;
  const Matrix top_right = g.topRightCorner(m, m);
  return {g.topLeftCorner(m, m), 0.5 * (top_right + top_right.transpose()), g.bottomRightCorner(m, m),
          0.5 * (top_right - top_right.transpose())};
}

Matrix nrel_rhs(const Matrix& g, const Matrix& a_reduced, const Matrix& reduced_mass) {
  const BlockGram bl = split_blocks(g);
  const Matrix& a = a_reduced;
  const Matrix minv = reduced_mass.inverse();
  const Matrix cpr = bl.c + bl.r;
  const Matrix cmr = bl.c - bl.r;
  Matrix out(g.rows(), g.cols());
  out << cpr * minv + minv * cmr, minv * bl.d - bl.b * a,  //
      bl.d * minv - a * bl.b, -a * cpr - cmr * a;
  return out;
}

Matrix lax_gram_rhs(const Matrix& g, const Matrix& a_reduced, const Matrix& reduced_mass) {
  const int m = static_cast<int>(g.rows() / 2);
  const Matrix j = symplectic_j(m);
  const Matrix p = assemble_p(a_reduced, reduced_mass).p;
  const Matrix k = j * g;
  return -j * (p * k - k * p);
}

Matrix HatState::lax_rhs() const { return p_gen * k_hat - k_hat * p_gen; }

Vector HatState::kernel_vector() const {
  Vector v(2 * w.size());
  v << w, w;
  return v;
}

Matrix HatState::r_rate() const {
  const auto n = w.size();
  const Matrix b = g_hat.topLeftCorner(n, n);
  return 0.5 * (a_hat * b - b * a_hat);
}

HatState hat_transform(const MassSystem& sys, const PhaseState& state, const Potential& pot) {
  const int n = sys.bodies();
  if (state.q.cols() != n || state.p.cols() != n || state.q.rows() != sys.dimension() ||
      state.p.rows() != sys.dimension())
    throw InvalidInput("state shape does not match the mass system");

  HatState h;
  h.w.resize(n);
  for (int a = 0; a < n; ++a) h.w(a) = std::sqrt(sys.masses()[a]);
  const Vector inv_w = h.w.cwiseInverse();

  const double scale_q = std::max(1.0, state.q.norm() * sys.total_mass());
  const double scale_p = std::max(1.0, state.p.norm());
  Vector m_vec(n);
  for (int a = 0; a < n; ++a) m_vec(a) = sys.masses()[a];
  if ((state.q * m_vec).norm() > 1e-10 * scale_q || state.p.rowwise().sum().norm() > 1e-10 * scale_p)
    throw InvalidInput("hat construction needs zero center of mass and zero total momentum");

  h.q_hat = state.q * h.w.asDiagonal();
  h.p_hat = state.p * inv_w.asDiagonal();
  const Matrix a = wintner_conley_full(sys, state.q, pot).a;
  h.a_hat = inv_w.asDiagonal() * a * inv_w.asDiagonal();

  Matrix zhat(sys.dimension(), 2 * n);
  zhat << h.q_hat, h.p_hat;
  h.g_hat = zhat.transpose() * zhat;
  const Matrix j = symplectic_j(n);
  h.k_hat = j * h.g_hat;
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n).setIdentity();
  s.bottomRightCorner(n, n) = h.a_hat;
  h.p_gen = j * s;
  return h;
}

EquivalenceReport verify_equivalence(const CenteredState& z, const ReducedProblem& problem) {
  const Matrix g = gram(z).g();
  const Matrix b = small_gram(z);
  const Matrix a = wintner_conley_reduced(problem.system, problem.basis, b, problem.potential).a;
  const Matrix mt = problem.basis.reduced_mass_matrix();

  const int m = problem.half_size();
  const Matrix j = symplectic_j(m);
  const Matrix p = lax_generator(problem, b).p;
  const Matrix k = j * g;
  const Matrix lax = -j * (p * k - k * p);
  const Matrix block = nrel_rhs(g, a, mt);

  EquivalenceReport r;
  r.residual = max_abs(lax - block);
  r.unit_mass = (mt - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-12;
  r.top_left_residual = max_abs(block.topLeftCorner(m, m) - 2.0 * split_blocks(g).c);
  r.pass = r.residual <= 1e-10;
  return r;
}

}  // namespace galilax
