#include "causalc/tensor_ops.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "causalc/errors.hpp"

namespace causalc {

DenseOperator embed(const DenseOperator &local, const Support &support,
                    const SpaceLayout &full_layout) {
    const SupportIndexer idx(full_layout, support);
    if (local.dim() != idx.sub_dim) {
        throw DimensionError("embed: block dimension " + std::to_string(local.dim()) +
                             " does not match support dimension " +
                             std::to_string(idx.sub_dim));
    }
    const Index n = full_layout.total_dim();
    Matrix out = Matrix::Zero(n, n);
    for (Index base : idx.bases) {
        for (Index r = 0; r < idx.sub_dim; ++r) {
            const Index row = base + idx.offsets[static_cast<std::size_t>(r)];
            for (Index c = 0; c < idx.sub_dim; ++c) {
                const Complex v = local.entries(r, c);
                if (v != Complex(0.0, 0.0)) {
                    out(row, base + idx.offsets[static_cast<std::size_t>(c)]) = v;
                }
            }
        }
    }
    return DenseOperator(full_layout, std::move(out));
}

DenseOperator partial_trace(const DenseOperator &op, const Support &keep) {
    const SupportIndexer idx(op.layout, keep);
    Matrix out = Matrix::Zero(idx.sub_dim, idx.sub_dim);
    for (Index base : idx.bases) {
        for (Index r = 0; r < idx.sub_dim; ++r) {
            const Index row = base + idx.offsets[static_cast<std::size_t>(r)];
            for (Index c = 0; c < idx.sub_dim; ++c) {
                out(r, c) += op.entries(row, base + idx.offsets[static_cast<std::size_t>(c)]);
            }
        }
    }
    return DenseOperator(op.layout.sub_layout(keep), std::move(out));
}

DensityMatrix reduced_density(const StateVector &state, const Support &keep) {
    const SupportIndexer idx(state.layout, keep);
    Matrix out = Matrix::Zero(idx.sub_dim, idx.sub_dim);
    for (Index base : idx.bases) {
        for (Index r = 0; r < idx.sub_dim; ++r) {
            const Complex ar = state.amplitudes(base + idx.offsets[static_cast<std::size_t>(r)]);
            if (ar == Complex(0.0, 0.0)) continue;
            for (Index c = 0; c < idx.sub_dim; ++c) {
                const Complex ac =
                    state.amplitudes(base + idx.offsets[static_cast<std::size_t>(c)]);
                out(r, c) += ar * std::conj(ac);
            }
        }
    }
    return DensityMatrix(state.layout.sub_layout(keep), std::move(out));
}

namespace {

/// Max-entry norm of [op, E] where E is the matrix unit |a><b| on slot `pos`
/// of op's layout, embedded as identity elsewhere. Both products have closed
/// forms in terms of single entries of op:
///   (op * E)(I, J) = [digit_pos(J) == b] * op(I, J with digit_pos -> a)
///   (E * op)(I, J) = [digit_pos(I) == a] * op(I with digit_pos -> b, J)
/// so the commutator is evaluated entrywise in O(dim^2) without allocating E.
double unit_commutator_norm(const DenseOperator &op, int pos, Index a, Index b) {
    const SpaceLayout &L = op.layout;
    const Index n = L.total_dim();
    double worst = 0.0;
    for (Index i = 0; i < n; ++i) {
        const bool left_hits = L.digit(i, pos) == a;
        const Index i_b = left_hits ? L.with_digit(i, pos, b) : 0;
        for (Index j = 0; j < n; ++j) {
            Complex v(0.0, 0.0);
            if (L.digit(j, pos) == b) v += op.entries(i, L.with_digit(j, pos, a));
            if (left_hits) v -= op.entries(i_b, j);
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

} // namespace

CheckResult is_localized(const DenseOperator &op, const Support &region, double tol) {
    CheckResult result{true, 0.0};
    const auto &slots = op.layout.slots();
    for (int pos = 0; pos < static_cast<int>(slots.size()); ++pos) {
        if (region.contains(slots[static_cast<std::size_t>(pos)])) continue;
        const Index d = op.layout.dims()[static_cast<std::size_t>(pos)];
        for (Index a = 0; a < d; ++a) {
            for (Index b = 0; b < d; ++b) {
                result.residual =
                    std::max(result.residual, unit_commutator_norm(op, pos, a, b));
            }
        }
    }
    result.passed = result.residual <= tol;
    return result;
}

StateVector apply_on_support(const StateVector &state, const DenseOperator &gate,
                             const Support &support) {
    const SupportIndexer idx(state.layout, support);
    if (gate.dim() != idx.sub_dim) {
        throw DimensionError("apply_on_support: gate dimension " +
                             std::to_string(gate.dim()) +
                             " does not match support dimension " +
                             std::to_string(idx.sub_dim));
    }
    Vector out(state.layout.total_dim());
    Vector slice(idx.sub_dim);
    for (Index base : idx.bases) {
        for (Index k = 0; k < idx.sub_dim; ++k) {
            slice(k) = state.amplitudes(base + idx.offsets[static_cast<std::size_t>(k)]);
        }
        slice = gate.entries * slice;
        for (Index k = 0; k < idx.sub_dim; ++k) {
            out(base + idx.offsets[static_cast<std::size_t>(k)]) = slice(k);
        }
    }
    return StateVector(state.layout, std::move(out));
}

DenseOperator extract_local_block(const ApplyOracle &apply, const Support &support,
                                  const SpaceLayout &full_layout,
                                  std::span<const Index> quiescent_by_node, double tol,
                                  double *off_support_residual) {
    const SupportIndexer idx(full_layout, support);
    const auto &slots = full_layout.slots();

    // One representative full-space basis index per support basis state: the
    // off-support slots are pinned to their node's quiescent digit.
    std::vector<Index> fill(slots.size(), 0);
    for (std::size_t p = 0; p < slots.size(); ++p) {
        const auto node = static_cast<std::size_t>(slots[p].node);
        if (node >= quiescent_by_node.size()) {
            throw DimensionError("extract_local_block: node " + std::to_string(slots[p].node) +
                                 " has no quiescent digit");
        }
        fill[p] = quiescent_by_node[node];
        if (fill[p] < 0 || fill[p] >= full_layout.dims()[p]) {
            throw DimensionError("extract_local_block: quiescent digit out of range at node " +
                                 std::to_string(slots[p].node));
        }
    }
    const Index base = SupportIndexer::fill_base(full_layout, support, fill);

    Matrix block(idx.sub_dim, idx.sub_dim);
    double worst_off = 0.0;
    for (Index c = 0; c < idx.sub_dim; ++c) {
        Vector in = Vector::Zero(full_layout.total_dim());
        in(base + idx.offsets[static_cast<std::size_t>(c)]) = Complex(1.0, 0.0);
        const StateVector out = apply(StateVector(full_layout, std::move(in)));

        double on_block = 0.0;
        for (Index r = 0; r < idx.sub_dim; ++r) {
            const Complex v = out.amplitudes(base + idx.offsets[static_cast<std::size_t>(r)]);
            block(r, c) = v;
            on_block += std::norm(v);
        }
        const double total = out.amplitudes.squaredNorm();
        worst_off = std::max(worst_off, std::sqrt(std::max(0.0, total - on_block)));
    }
    if (off_support_residual) *off_support_residual = worst_off;
    if (worst_off > tol) {
        throw LocalizationViolation(worst_off);
    }
    return DenseOperator(full_layout.sub_layout(support), std::move(block));
}

CheckResult check_unitary(const DenseOperator &op, double tol) {
    const Matrix gram = op.entries.adjoint() * op.entries;
    const Matrix delta = gram - Matrix::Identity(op.dim(), op.dim());
    CheckResult result;
    result.residual = max_abs(delta);
    result.passed = result.residual <= tol;
    return result;
}

Matrix random_unitary_matrix(Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < dim; ++k) {
        const Complex rkk = r(k, k);
        const double mag = std::abs(rkk);
        q.col(k) *= (mag > 0.0) ? rkk / mag : Complex(1.0, 0.0);
    }
    return q;
}

DenseOperator random_unitary(SpaceLayout layout, std::uint64_t seed) {
    Matrix q = random_unitary_matrix(layout.total_dim(), seed);
    return DenseOperator(std::move(layout), std::move(q));
}

Vector random_state_vector(Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (Index k = 0; k < dim; ++k) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(k) = Complex(re, im);
    }
    const double n = v.norm();
    if (n == 0.0) {
        v(0) = Complex(1.0, 0.0);
        return v;
    }
    return v / n;
}

StateVector random_state(SpaceLayout layout, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vector v = random_state_vector(layout.total_dim(), rng);
    return StateVector(std::move(layout), std::move(v));
}

Matrix matrix_unit(Index d, Index i, Index j) {
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = Complex(1.0, 0.0);
    return m;
}

DenseOperator relabel_slots(const DenseOperator &block, std::span<const Slot> to) {
    const auto &old_slots = block.layout.slots();
    if (to.size() != old_slots.size()) {
        throw DimensionError("relabel_slots: slot count mismatch");
    }
    std::vector<std::pair<Slot, Index>> labeled;
    labeled.reserve(to.size());
    for (std::size_t k = 0; k < to.size(); ++k) {
        labeled.emplace_back(to[k], block.layout.dims()[k]);
    }
    SpaceLayout new_layout = SpaceLayout::create(labeled);

    // position of old factor k within the new canonical order
    std::vector<int> new_pos(to.size());
    for (std::size_t k = 0; k < to.size(); ++k) {
        const auto p = new_layout.find(to[k]);
        if (!p) throw DimensionError("relabel_slots: duplicate target slot");
        new_pos[k] = *p;
    }

    const Index n = block.dim();
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::vector<Index> digits(to.size());
    for (Index old_index = 0; old_index < n; ++old_index) {
        for (std::size_t k = 0; k < to.size(); ++k) {
            digits[k] = block.layout.digit(old_index, static_cast<int>(k));
        }
        Index new_index = 0;
        for (std::size_t k = 0; k < to.size(); ++k) {
            new_index += digits[k] * new_layout.strides()[static_cast<std::size_t>(new_pos[k])];
        }
        perm[static_cast<std::size_t>(old_index)] = new_index;
    }

    Matrix out(n, n);
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) {
            out(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) =
                block.entries(r, c);
        }
    }
    return DenseOperator(std::move(new_layout), std::move(out));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a simple combination; good enough to decouple
    // the per-(node, sample) streams from iteration order.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace causalc
