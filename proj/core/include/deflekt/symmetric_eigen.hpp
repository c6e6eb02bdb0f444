#pragma once

#include "deflekt/vec.hpp"

namespace deflekt::linalg {

struct SymmetricEigen {
    Vec3 values = Vec3::Zero();    // ascending
    Mat3 vectors = Mat3::Identity();  // unit eigenvectors as columns, same order
    bool jacobi = false;           // the closed form was rejected
};

/// Closed-form eigendecomposition of a symmetric 3x3 matrix (trigonometric
/// solution of the characteristic cubic, eigenvectors from row cross products).
/// Falls back to cyclic Jacobi when eigenvalues nearly coincide or the residual
/// check fails.
SymmetricEigen symmetric_eigen(const Mat3& m);

/// Cyclic Jacobi rotations until the off-diagonal mass is below 1e-13 of the norm.
SymmetricEigen jacobi_eigen(const Mat3& m);

}  // namespace deflekt::linalg
