#pragma once

#include <stdexcept>
#include <string>

namespace harmcanon {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (OFF/OBJ/JSON syntax, bad counts, bad indices).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Mesh is not a closed, oriented, connected 2-manifold.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// Degenerate metric data: nonpositive lengths, violated triangle inequality.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Operand sizes do not match the mesh's cell counts.
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// The genus-0 case: the pipeline's hypothesis H^1(M) != 0 fails.
class AssumptionError : public Error {
public:
    using Error::Error;
};

/// Linear solver breakdown or residual above tolerance.
class SolverError : public Error {
public:
    using Error::Error;
};

/// A documented operation precondition was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Numerically dependent inputs to orthonormalization.
class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

/// integral_f <= 0; signals corrupted upstream data.
class DegenerateClassError : public Error {
public:
    using Error::Error;
};

/// A conformal factor field does not satisfy the unit-volume constraint.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// A conformal factor field has an entry <= 0.
class NonPositiveRhoError : public Error {
public:
    using Error::Error;
};

/// Filesystem / stream failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace harmcanon
