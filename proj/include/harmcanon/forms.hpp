#pragma once

#include "harmcanon/mesh.hpp"

#include <Eigen/Core>

namespace harmcanon {

/// Degree-k cochain: values on vertices (k=0), canonically oriented edges
/// (k=1, the integral of the smooth form along the oriented edge), or faces
/// (k=2, the integral over the oriented face).
struct DiscreteForm {
    int degree = 0;
    Eigen::VectorXd values;
};

/// Validated constructor: size must match the k-cell count, values finite.
DiscreteForm make_form(const TriangleMesh& mesh, int degree, Eigen::VectorXd values);

/// Zero cochain of the given degree.
DiscreteForm zero_form(const TriangleMesh& mesh, int degree);

} // namespace harmcanon
