#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "../neural/backprop.hpp"
#include "centrank/error.hpp"
#include "centrank/neural.hpp"
#include "centrank/parallel.hpp"

namespace centrank::kernels {

namespace {
constexpr Eigen::Index kBlockSamples = 256;
}

NormalEquations normal_equations(const Mlp& m, const RowMatrix& x, const RowMatrix& y) {
  const Eigen::Index samples = x.rows();
  const auto outputs = static_cast<Eigen::Index>(m.output_dim());
  const auto params = static_cast<Eigen::Index>(m.parameter_count());
  if (static_cast<std::size_t>(x.cols()) != m.input_dim() || y.cols() != outputs || y.rows() != samples)
    throw InputError("batch shape does not match the network");

  const Eigen::Index blocks = (samples + kBlockSamples - 1) / kBlockSamples;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), static_cast<std::size_t>(blocks)));
  std::vector<NormalEquations> partial(workers);

#pragma omp parallel num_threads(static_cast<int>(workers))
  {
#ifdef _OPENMP
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t tid = 0;
#endif
    NormalEquations local;
    local.jtj = Eigen::MatrixXd::Zero(params, params);
    local.jte = Eigen::VectorXd::Zero(params);
    detail::Backprop pass(m);
    // One column per residual, so the rank update is J_b J_b^T.
    Eigen::MatrixXd jb(params, kBlockSamples * outputs);
    Eigen::VectorXd eb(kBlockSamples * outputs);

#pragma omp for schedule(static)
    for (Eigen::Index b = 0; b < blocks; ++b) {
      const Eigen::Index first = b * kBlockSamples;
      const Eigen::Index last = std::min(samples, first + kBlockSamples);
      Eigen::Index col = 0;
      for (Eigen::Index i = first; i < last; ++i) {
        const auto& pred = pass.forward(x.data() + i * x.cols());
        for (Eigen::Index o = 0; o < outputs; ++o, ++col) {
          pass.gradient(o, jb.col(col).data());
          eb[col] = pred[o] - y(i, o);
        }
      }
      auto jcols = jb.leftCols(col);
      auto ecols = eb.head(col);
      local.jtj.selfadjointView<Eigen::Lower>().rankUpdate(jcols);
      local.jte.noalias() += jcols * ecols;
      local.sse += ecols.squaredNorm();
    }
    partial[tid] = std::move(local);
  }

  NormalEquations total = std::move(partial[0]);
  for (std::size_t t = 1; t < workers; ++t) {
    total.jtj.triangularView<Eigen::Lower>() += partial[t].jtj;
    total.jte += partial[t].jte;
    total.sse += partial[t].sse;
  }
  return total;
}

}  // namespace centrank::kernels
