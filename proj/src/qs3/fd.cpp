// Copyright 2026 The qs3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qs3/fd.hpp"

#include <algorithm>
#include <cmath>

namespace qs3 {

namespace {

Eigen::VectorXd shifted(const Eigen::VectorXd& p, int k, double h) {
  Eigen::VectorXd q = p;
  q[k] += h;
  return q;
}

double mabs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Eigen::MatrixXd metric_values(const ChartedManifold& m, const Eigen::VectorXd& p) {
  JetVec u(m.dim);
  for (int i = 0; i < m.dim; ++i) u[i] = jet_const(p[i], 0);
  return m.g(u).values();
}

std::vector<Eigen::MatrixXd> fd_christoffel(const ChartedManifold& m, const Eigen::VectorXd& p,
                                            double h) {
  const int d = m.dim;
  if (h <= 0.0) throw Error(Errc::invalid_argument, "fd_christoffel: step must be positive");

  std::vector<Eigen::MatrixXd> dg(d);
  for (int k = 0; k < d; ++k)
    dg[k] = (metric_values(m, shifted(p, k, h)) - metric_values(m, shifted(p, k, -h))) / (2.0 * h);

  const Eigen::MatrixXd g = metric_values(m, p);
  const Eigen::MatrixXd g_inv = g.llt().solve(Eigen::MatrixXd::Identity(d, d));
  std::vector<Eigen::MatrixXd> gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += g_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
        gamma[k](j, i) = gamma[k](i, j);
      }
  return gamma;
}

Tensor4 fd_riemann(const ChartedManifold& m, const Eigen::VectorXd& p, double h) {
  const int d = m.dim;
  if (h <= 0.0) throw Error(Errc::invalid_argument, "fd_riemann: step must be positive");

  // Connection values at the stencil points come from jets, so the only
  // approximation is the outer derivative.
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(d);
  for (int mm = 0; mm < d; ++mm) {
    const ChristoffelAt plus = christoffel_at(m, shifted(p, mm, h));
    const ChristoffelAt minus = christoffel_at(m, shifted(p, mm, -h));
    dgamma[mm].resize(d);
    for (int k = 0; k < d; ++k) dgamma[mm][k] = (plus.gamma[k] - minus.gamma[k]) / (2.0 * h);
  }

  const ChristoffelAt at = christoffel_at(m, p);
  Tensor4 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int mm = 0; mm < d; ++mm)
            s += at.gamma[l](i, mm) * at.gamma[mm](j, k) - at.gamma[l](j, mm) * at.gamma[mm](i, k);
          out.at(i, j, k, l) = s;
          out.at(j, i, k, l) = -s;
        }
  return out;
}

ResidualStat fd_christoffel_residual(const ChartedManifold& m, const Eigen::VectorXd& p,
                                     double h) {
  const std::vector<Eigen::MatrixXd> fd = fd_christoffel(m, p, h);
  const ChristoffelAt at = christoffel_at(m, p);
  ResidualStat r;
  for (int k = 0; k < m.dim; ++k)
    r.add(mabs(fd[k] - at.gamma[k]), std::max(mabs(fd[k]), mabs(at.gamma[k])));
  return r;
}

ResidualStat fd_riemann_residual(const ChartedManifold& m, const Eigen::VectorXd& p, double h) {
  const Tensor4 fd = fd_riemann(m, p, h);
  const Tensor4 jet = riemann_at(m, p).riem_up;
  double diff = 0.0;
  for (size_t i = 0; i < fd.a.size(); ++i) diff = std::max(diff, std::abs(fd.a[i] - jet.a[i]));
  ResidualStat r;
  r.add(diff, std::max(fd.max_abs(), jet.max_abs()));
  return r;
}

ResidualStat metric_compatibility_residual(const ChartedManifold& m, const Eigen::VectorXd& p) {
  const Mat1 g = to_mat1(m.g(chart_vars(m, p)));
  const ChristoffelAt at = christoffel_at(m, p);
  const int d = m.dim;
  ResidualStat r;
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int mm = 0; mm < d; ++mm)
          s += at.gamma[mm](k, i) * g.v(mm, j) + at.gamma[mm](k, j) * g.v(i, mm);
        lower(i, j) = s;
      }
    r.add(mabs(g.partial[k] - lower), std::max(mabs(g.partial[k]), mabs(lower)));
  }
  return r;
}

}  // namespace qs3
