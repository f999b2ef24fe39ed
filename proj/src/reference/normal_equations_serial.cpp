// Forms the dense Jacobian explicitly; the blocked OpenMP kernel must agree
// with this up to summation order.

#include "centrank/neural.hpp"

namespace centrank::kernels {

namespace reference {

NormalEquations normal_equations(const Mlp& m, const RowMatrix& x, const RowMatrix& y) {
  auto jac = jacobian(m, x, y);
  NormalEquations out;
  out.jtj = jac.J.transpose() * jac.J;
  out.jte = jac.J.transpose() * jac.e;
  out.sse = jac.e.squaredNorm();
  return out;
}

}  // namespace reference

}  // namespace centrank::kernels
