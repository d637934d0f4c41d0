#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "causalc/dense.hpp"

namespace causalc {

/// Result of a residual-style check: pass/fail plus the measured residual.
struct CheckResult {
    bool passed = false;
    double residual = 0.0;
};

/// Embeds `local` (acting on `support` in canonical slot order) into
/// `full_layout`, acting as the identity on every other slot.
DenseOperator embed(const DenseOperator &local, const Support &support,
                    const SpaceLayout &full_layout);

/// Traces out every slot not in `keep`. The result lives on the sub-layout of
/// `keep` and has the same trace as `op`.
DenseOperator partial_trace(const DenseOperator &op, const Support &keep);

/// Reduced density matrix of a pure state: the partial trace of |psi><psi|
/// onto `keep`, computed directly from the amplitudes.
DensityMatrix reduced_density(const StateVector &state, const Support &keep);

/// Commutant localization test: `op` counts as localized on `region` iff it
/// commutes (max-entry norm <= tol) with every matrix unit embedded on every
/// single slot outside `region`. The matrix units generate the full matrix
/// algebra of each complement slot, so this is exact, not a heuristic.
/// Returns the worst commutator norm found as the residual.
CheckResult is_localized(const DenseOperator &op, const Support &region, double tol);

/// Applies `gate` to the `support` slots of `state` without materializing the
/// embedded matrix.
StateVector apply_on_support(const StateVector &state, const DenseOperator &gate,
                             const Support &support);

/// A global operator presented as its action on state vectors.
using ApplyOracle = std::function<StateVector(const StateVector &)>;

/// Materializes the local block A on `support` of a global operator known to
/// be of the form embed(A, support), column by column: the oracle is applied
/// to basis vectors that are quiescent off-support, and each output column is
/// checked to have weight only on basis states agreeing with the quiescent
/// fill off-support. `quiescent_by_node[n]` is the fill digit used for every
/// slot of node n.
///
/// Throws LocalizationViolation when the off-support weight of any column
/// exceeds tol (the operator was not localized on `support` after all).
/// When `off_support_residual` is given, the worst off-support weight is
/// written there even on success.
DenseOperator extract_local_block(const ApplyOracle &apply, const Support &support,
                                  const SpaceLayout &full_layout,
                                  std::span<const Index> quiescent_by_node, double tol,
                                  double *off_support_residual = nullptr);

/// Residual = max-entry norm of op^dagger * op - identity.
CheckResult check_unitary(const DenseOperator &op, double tol);

/// Haar-style unitary: orthonormalizes a seeded complex Gaussian matrix via
/// QR and fixes the R-diagonal phases. Deterministic for a fixed seed.
Matrix random_unitary_matrix(Index dim, std::uint64_t seed);
DenseOperator random_unitary(SpaceLayout layout, std::uint64_t seed);

/// Normalized complex Gaussian state, deterministic for a fixed seed.
StateVector random_state(SpaceLayout layout, std::uint64_t seed);
Vector random_state_vector(Index dim, std::mt19937_64 &rng);

/// The matrix unit |i><j| in dimension d.
Matrix matrix_unit(Index d, Index i, Index j);

/// Reindexes `block` (over `from` slot order) to the layout whose slots are
/// `to[k]` carrying the k-th factor of `from`; `to` must be a relabeling with
/// identical dims, and the result is expressed in canonical order of the new
/// slots. Used to translate gates across a torus and to place tiling blocks.
DenseOperator relabel_slots(const DenseOperator &block, std::span<const Slot> to);

/// Deterministic stream splitting so that per-(node, sample) draws do not
/// depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

} // namespace causalc
