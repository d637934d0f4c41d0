#include "causalc/dense.hpp"

#include <cmath>

namespace causalc {

DenseOperator::DenseOperator(SpaceLayout l, Matrix m) : layout(std::move(l)), entries(std::move(m)) {
    if (entries.rows() != entries.cols() || entries.rows() != layout.total_dim())
        throw DimensionError("operator entries must be square with side = layout total dimension");
}

DenseOperator DenseOperator::identity(SpaceLayout l) {
    const Index n = l.total_dim();
    return {std::move(l), Matrix::Identity(n, n)};
}

void DenseOperator::validate() const {
    if (entries.rows() != entries.cols() || entries.rows() != layout.total_dim())
        throw DimensionError("operator entries must be square with side = layout total dimension");
    if (!all_finite(entries))
        throw Error("operator contains non-finite entries");
}

StateVector::StateVector(SpaceLayout l, Vector v) : layout(std::move(l)), amplitudes(std::move(v)) {
    if (amplitudes.size() != layout.total_dim())
        throw DimensionError("state length must equal layout total dimension");
}

StateVector StateVector::basis(SpaceLayout l, std::span<const Index> digits) {
    Vector v = Vector::Zero(l.total_dim());
    v[l.compose(digits)] = Complex(1.0, 0.0);
    return {std::move(l), std::move(v)};
}

void StateVector::validate() const {
    if (amplitudes.size() != layout.total_dim())
        throw DimensionError("state length must equal layout total dimension");
    if (!all_finite(amplitudes))
        throw Error("state contains non-finite amplitudes");
}

DensityMatrix::DensityMatrix(SpaceLayout l, Matrix m) : layout(std::move(l)), entries(std::move(m)) {
    if (entries.rows() != entries.cols() || entries.rows() != layout.total_dim())
        throw DimensionError("density matrix must be square with side = layout total dimension");
}

void DensityMatrix::validate(double tol) const {
    if (!all_finite(entries))
        throw Error("density matrix contains non-finite entries");
    if (max_abs(Matrix(entries - entries.adjoint())) > tol)
        throw Error("density matrix is not Hermitian within tolerance");
    if (std::abs(entries.trace() - Complex(1.0, 0.0)) > tol)
        throw Error("density matrix trace differs from one beyond tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw Error("density matrix has an eigenvalue below -tolerance");
}

bool all_finite(const Matrix &m) { return m.allFinite(); }

bool all_finite(const Vector &v) { return v.allFinite(); }

} // namespace causalc
