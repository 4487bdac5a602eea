#pragma once

#include "harmcanon/forms.hpp"
#include "harmcanon/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace harmcanon {

using SparseOperator = Eigen::SparseMatrix<double>;

/// Exterior derivative on 0-forms, edges x vertices. For the canonical edge
/// i -> j (i < j): (d0 u)_e = u_j - u_i. Entries are exactly +-1.
SparseOperator d0(const TriangleMesh& mesh);

/// Exterior derivative on 1-forms, faces x edges: signed sum over the three
/// boundary edges, +1 where the canonical edge orientation agrees with the
/// face's counterclockwise traversal. d1 * d0 is exactly zero.
SparseOperator d1(const TriangleMesh& mesh);

/// Diagonal 0-form Hodge star: barycentric dual areas (one third of the
/// incident face areas). Strictly positive; trace equals the total area.
SparseOperator star0(const TriangleMesh& mesh);

/// Diagonal 1-form Hodge star: the cotan weights (cot a + cot b)/2 of the two
/// angles opposite each edge, from intrinsic lengths. Entries can be negative
/// on non-Delaunay edges; that is reported as a warning, not an error. This is
/// the conformally invariant middle-dimensional star: it depends only on
/// angles, never on the global scale.
SparseOperator star1(const TriangleMesh& mesh);

/// Diagonal 2-form Hodge star: 1/area per face.
SparseOperator star2(const TriangleMesh& mesh);

/// Diagonals of the stars as plain vectors (same values, fixed assembly order).
Eigen::VectorXd star0_diagonal(const TriangleMesh& mesh);
Eigen::VectorXd star1_diagonal(const TriangleMesh& mesh);
Eigen::VectorXd star2_diagonal(const TriangleMesh& mesh);

/// L2 pairing of 0-forms, u^T star0 v, accumulated in ascending vertex order.
double inner_product_0(const TriangleMesh& mesh, const DiscreteForm& a, const DiscreteForm& b);

/// L2 pairing of 1-forms, a^T star1 b, accumulated in ascending edge order.
double inner_product_1(const TriangleMesh& mesh, const DiscreteForm& a, const DiscreteForm& b);

/// Weak-form 0-Laplacian d0^T star1 d0: symmetric positive semidefinite with
/// the constants in its kernel. This is the matrix used for linear solves.
SparseOperator laplacian0(const TriangleMesh& mesh);

/// Codifferential of a 1-form: star0^{-1} d0^T star1 a. Adjoint to d0:
/// <delta a, u>_0 = <a, d0 u>_1.
DiscreteForm codifferential1(const TriangleMesh& mesh, const DiscreteForm& a);

} // namespace harmcanon
