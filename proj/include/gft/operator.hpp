// Copyright 2026 The gftransport Authors
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

// Split of a single-excitation Hamiltonian into site energies and sparse
// hopping, plus the boundary-leakage monitor used by every engine.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gft/errors.hpp"
#include "gft/lattice.hpp"

namespace gft {

using SparseHopping = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

struct SplitHamiltonian {
  RealVector site_energy;  // H_nn
  SparseHopping hopping;   // H with the diagonal removed
  double max_row_sum = 0.0;

  Eigen::Index size() const { return site_energy.size(); }

  ComplexVector apply(const ComplexVector& psi) const {
    ComplexVector out = hopping * psi;
    out += site_energy.cwiseProduct(psi);
    return out;
  }
};

inline SplitHamiltonian split_hamiltonian(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() < 1) {
    throw ValidationError("Hamiltonian must be a non-empty square matrix");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("Hamiltonian is not Hermitian");
  }
  SplitHamiltonian out;
  const Eigen::Index n = h.rows();
  out.site_energy = h.diagonal().real();
  std::vector<Eigen::Triplet<std::complex<double>>> entries;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      row += std::abs(h(i, j));
      if (i != j && h(i, j) != 0.0) entries.emplace_back(i, j, h(i, j));
    }
    out.max_row_sum = std::max(out.max_row_sum, row);
  }
  out.hopping.resize(n, n);
  out.hopping.setFromTriplets(entries.begin(), entries.end());
  out.hopping.makeCompressed();
  return out;
}

/// Largest absolute row sum of the hopping part alone.
inline double hopping_row_sum(const SplitHamiltonian& h) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < h.hopping.outerSize(); ++i) {
    double row = 0.0;
    for (SparseHopping::InnerIterator it(h.hopping, i); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

/// Number of sites treated as the boundary region: the top 10%, at least one.
inline Eigen::Index boundary_width(Eigen::Index num_sites) {
  return std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(0.1 * static_cast<double>(num_sites))));
}

/// Population in the boundary region of a population vector.
template <class Populations>
double boundary_population(const Populations& p) {
  const Eigen::Index n = p.size();
  const Eigen::Index w = boundary_width(n);
  double sum = 0.0;
  for (Eigen::Index i = n - w; i < n; ++i) sum += p[i];
  return sum;
}

/// Leakage above which results are flagged as truncation-limited.
inline constexpr double kLeakageWarning = 1e-6;

}  // namespace gft
