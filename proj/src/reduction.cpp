// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace tresca {

CondensedBoundarySystem schur_reduce(const Eigen::SparseMatrix<double>& K,
                                     const Eigen::VectorXd& l,
                                     const std::vector<int>& contact_dofs) {
  const int n = static_cast<int>(K.rows());
  if (K.cols() != n || l.size() != n) {
    throw std::invalid_argument("schur_reduce: inconsistent system dimensions");
  }
  if (contact_dofs.empty()) {
    throw std::invalid_argument("schur_reduce: contact DOF set is empty");
  }

  std::vector<int> group(static_cast<size_t>(n), -1);  // position within its partition
  std::vector<char> is_contact(static_cast<size_t>(n), 0);
  for (size_t k = 0; k < contact_dofs.size(); ++k) {
    const int d = contact_dofs[k];
    if (d < 0 || d >= n || is_contact[static_cast<size_t>(d)]) {
      throw std::invalid_argument("schur_reduce: invalid or duplicate contact DOF");
    }
    is_contact[static_cast<size_t>(d)] = 1;
    group[static_cast<size_t>(d)] = static_cast<int>(k);
  }
  const int nc = static_cast<int>(contact_dofs.size());
  if (nc == n) {
    throw std::invalid_argument("schur_reduce: contact DOFs must be a proper subset");
  }

  CondensedBoundarySystem cbs;
  cbs.contact_dofs = contact_dofs;
  cbs.interior_dofs.reserve(static_cast<size_t>(n - nc));
  for (int d = 0; d < n; ++d) {
    if (!is_contact[static_cast<size_t>(d)]) {
      group[static_cast<size_t>(d)] = static_cast<int>(cbs.interior_dofs.size());
      cbs.interior_dofs.push_back(d);
    }
  }
  const int ni = n - nc;

  std::vector<Eigen::Triplet<double>> t_ii, t_ic;
  t_ii.reserve(static_cast<size_t>(K.nonZeros()));
  Eigen::MatrixXd k_cc = Eigen::MatrixXd::Zero(nc, nc);
  for (int col = 0; col < K.outerSize(); ++col) {
    const bool col_contact = is_contact[static_cast<size_t>(col)] != 0;
    const int cj = group[static_cast<size_t>(col)];
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      const bool row_contact = is_contact[static_cast<size_t>(it.row())] != 0;
      const int ri = group[static_cast<size_t>(it.row())];
      if (!row_contact && !col_contact) {
        t_ii.emplace_back(ri, cj, it.value());
      } else if (!row_contact && col_contact) {
        t_ic.emplace_back(ri, cj, it.value());
      } else if (row_contact && col_contact) {
        k_cc(ri, cj) += it.value();
      }
      // row_contact && !col_contact is the transpose of K_IC; K is symmetric.
    }
  }

  Eigen::SparseMatrix<double> k_ii(ni, ni);
  k_ii.setFromTriplets(t_ii.begin(), t_ii.end());
  cbs.K_IC.resize(ni, nc);
  cbs.K_IC.setFromTriplets(t_ic.begin(), t_ic.end());

  cbs.l_I.resize(ni);
  Eigen::VectorXd l_c(nc);
  for (int d = 0; d < n; ++d) {
    if (is_contact[static_cast<size_t>(d)]) {
      l_c(group[static_cast<size_t>(d)]) = l(d);
    } else {
      cbs.l_I(group[static_cast<size_t>(d)]) = l(d);
    }
  }

  auto factor = std::make_shared<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
  factor->compute(k_ii);
  if (factor->info() != Eigen::Success) {
    throw std::runtime_error("schur_reduce: Cholesky factorization of K_II failed");
  }
  cbs.interior_factor = factor;

  // Schur complement in column chunks: A_tilde = K_CC - K_IC' (K_II^-1 K_IC).
  cbs.A_tilde = k_cc;
  const int chunk = 256;
  for (int c0 = 0; c0 < nc; c0 += chunk) {
    const int m = std::min(chunk, nc - c0);
    const Eigen::MatrixXd rhs = cbs.K_IC.middleCols(c0, m);
    const Eigen::MatrixXd w = factor->solve(rhs);
    cbs.A_tilde.middleCols(c0, m).noalias() -= cbs.K_IC.transpose() * w;
  }
  cbs.A_tilde = 0.5 * (cbs.A_tilde + cbs.A_tilde.transpose()).eval();

  cbs.b_tilde = l_c - cbs.K_IC.transpose() * factor->solve(cbs.l_I);
  return cbs;
}

CondensedBoundarySystem schur_reduce(const GlobalSystem& sys, const HexMesh& mesh) {
  return schur_reduce(sys.K, sys.l, contact_dof_indices(sys, mesh));
}

namespace {

ReducedContactSystem expand_blocks_impl(const CondensedBoundarySystem& cbs,
                                        const Eigen::VectorXd& gap,
                                        const Eigen::VectorXd& phi) {
  const int dim = static_cast<int>(cbs.A_tilde.rows());
  if (dim % 3 != 0 || cbs.b_tilde.size() != dim) {
    throw std::invalid_argument("expand_blocks: boundary system is not 3p-dimensional");
  }
  const int p = dim / 3;
  if (gap.size() != p || phi.size() != p) {
    throw std::invalid_argument("expand_blocks: gap/phi size must equal p");
  }
  if ((gap.array() < 0.0).any() || (phi.array() < 0.0).any()) {
    throw std::invalid_argument("expand_blocks: gap and phi must be nonnegative");
  }

  ReducedContactSystem sys;
  sys.p = p;
  sys.phi = phi;
  sys.gap = gap;
  sys.A = Eigen::MatrixXd::Zero(4 * p, 4 * p);
  sys.b = Eigen::VectorXd::Zero(4 * p);

  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      sys.A.block<3, 3>(4 * i, 4 * j) = cbs.A_tilde.block<3, 3>(3 * i, 3 * j);
    }
    sys.A(4 * i + 2, 4 * i + 3) = -1.0;  // f3 couples -lambda
    sys.A(4 * i + 3, 4 * i + 2) = +1.0;  // f4 reads u_nu
    sys.b.segment<3>(4 * i) = cbs.b_tilde.segment<3>(3 * i);
    sys.b(4 * i + 3) = -gap(i);
  }
  return sys;
}

}  // namespace

ReducedContactSystem expand_blocks(const CondensedBoundarySystem& cbs,
                                   const Eigen::VectorXd& gap, double phi) {
  const int p = static_cast<int>(gap.size());
  return expand_blocks_impl(cbs, gap, Eigen::VectorXd::Constant(p, phi));
}

ReducedContactSystem expand_blocks(const CondensedBoundarySystem& cbs,
                                   const Eigen::VectorXd& gap,
                                   const Eigen::VectorXd& phi) {
  return expand_blocks_impl(cbs, gap, phi);
}

void nondimensionalize(CondensedBoundarySystem& cbs, double stiffness_scale) {
  if (!(stiffness_scale > 0.0)) {
    throw std::invalid_argument("nondimensionalize: scale must be positive");
  }
  cbs.A_tilde /= stiffness_scale;
  cbs.b_tilde /= stiffness_scale;
}

Eigen::VectorXd recover_interior(const CondensedBoundarySystem& cbs,
                                 const Eigen::VectorXd& u_contact) {
  if (!cbs.interior_factor) {
    throw std::logic_error("recover_interior: no retained factor");
  }
  if (u_contact.size() != cbs.K_IC.cols()) {
    throw std::invalid_argument("recover_interior: contact vector has wrong size");
  }
  return cbs.interior_factor->solve(cbs.l_I - cbs.K_IC * u_contact);
}

}  // namespace tresca
