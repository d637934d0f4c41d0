#pragma once

#include <complex>

#include <Eigen/Dense>

#include "causalc/layout.hpp"

namespace causalc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Square complex matrix over the tensor space described by `layout`.
/// Entries are read row-major when serialized; the basis index convention is
/// the layout's mixed radix (first slot most significant).
struct DenseOperator {
    SpaceLayout layout;
    Matrix entries;

    DenseOperator() = default;
    DenseOperator(SpaceLayout l, Matrix m);

    Index dim() const noexcept { return layout.total_dim(); }
    DenseOperator adjoint() const { return {layout, entries.adjoint()}; }

    static DenseOperator identity(SpaceLayout l);

    /// Throws DimensionError / Error when the square-shape or finiteness
    /// invariants are violated.
    void validate() const;
};

/// Complex vector over the tensor space described by `layout`.
struct StateVector {
    SpaceLayout layout;
    Vector amplitudes;

    StateVector() = default;
    StateVector(SpaceLayout l, Vector v);

    Index dim() const noexcept { return layout.total_dim(); }
    double norm() const { return amplitudes.norm(); }
    bool is_normalized(double tol = 1e-9) const { return std::abs(norm() - 1.0) <= tol; }

    /// The basis state with the given digit per slot position.
    static StateVector basis(SpaceLayout l, std::span<const Index> digits);

    void validate() const;
};

/// Trace-one positive operator; used for reduced states in the causality
/// checks. validate() enforces hermiticity, unit trace and positivity up to
/// the stated tolerances.
struct DensityMatrix {
    SpaceLayout layout;
    Matrix entries;

    DensityMatrix() = default;
    DensityMatrix(SpaceLayout l, Matrix m);

    Index dim() const noexcept { return layout.total_dim(); }
    void validate(double tol = 1e-9) const;
};

/// Largest absolute entry, the norm used by every residual in this library.
/// Accepts any Eigen matrix or vector expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.size() == 0 ? 0.0 : m.derived().cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix &m);
bool all_finite(const Vector &v);

} // namespace causalc
