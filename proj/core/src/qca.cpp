#include "causalc/qca.hpp"

#include <algorithm>
#include <set>

namespace causalc {

int TorusSpec::node_count() const {
    int n = 1;
    for (int a : axes) n *= a;
    return n;
}

void TorusSpec::validate() const {
    if (axes.empty()) throw DimensionError("torus needs at least one axis");
    for (int a : axes) {
        if (a < 2) throw DimensionError("torus axis length must be at least 2");
    }
    if (cell_dim < 1) throw DimensionError("cell dimension must be positive");
    if (quiescent < 0 || quiescent >= cell_dim) {
        throw DimensionError("quiescent basis index out of range");
    }
}

int torus_node_id(const TorusSpec &spec, std::span<const int> coords) {
    if (static_cast<int>(coords.size()) != spec.dimension()) {
        throw DimensionError("coordinate count does not match torus dimension");
    }
    int id = 0;
    for (int k = 0; k < spec.dimension(); ++k) {
        const int ax = spec.axes[static_cast<std::size_t>(k)];
        const int c = ((coords[static_cast<std::size_t>(k)] % ax) + ax) % ax;
        id = id * ax + c;
    }
    return id;
}

std::vector<int> torus_coords(const TorusSpec &spec, int node) {
    std::vector<int> coords(static_cast<std::size_t>(spec.dimension()));
    for (int k = spec.dimension() - 1; k >= 0; --k) {
        const int ax = spec.axes[static_cast<std::size_t>(k)];
        coords[static_cast<std::size_t>(k)] = node % ax;
        node /= ax;
    }
    return coords;
}

int torus_translate(const TorusSpec &spec, int node, std::span<const int> delta) {
    std::vector<int> coords = torus_coords(spec, node);
    for (int k = 0; k < spec.dimension(); ++k) {
        coords[static_cast<std::size_t>(k)] += delta[static_cast<std::size_t>(k)];
    }
    return torus_node_id(spec, coords);
}

std::vector<std::vector<int>> binary_offsets(int n) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(1) << n);
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> z(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            z[static_cast<std::size_t>(k)] = (mask >> (n - 1 - k)) & 1;
        }
        out.push_back(std::move(z));
    }
    return out;
}

QuantumLabeledGraph make_torus_graph(const TorusSpec &spec) {
    spec.validate();
    const int n = spec.node_count();
    std::vector<NodeInfo> nodes(static_cast<std::size_t>(n),
                                NodeInfo{spec.cell_dim, spec.quiescent});
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x) {
        for (const auto &z : binary_offsets(spec.dimension())) {
            edges.emplace_back(x, torus_translate(spec, x, z));
        }
    }
    return QuantumLabeledGraph(std::move(nodes), std::move(edges));
}

DenseOperator make_shift_qca(const TorusSpec &spec) {
    spec.validate();
    if (spec.dimension() != 1) {
        throw DimensionError("the shift automaton is defined for one-dimensional rings");
    }
    const QuantumLabeledGraph g = make_torus_graph(spec);
    const SpaceLayout layout = g.state_layout();
    const int L = spec.axes[0];
    const Index total = layout.total_dim();
    Matrix m = Matrix::Zero(total, total);
    for (Index j = 0; j < total; ++j) {
        Index i = 0;
        for (int x = 0; x < L; ++x) {
            // output cell x receives the content of cell x-1
            const int src = ((x - 1) % L + L) % L;
            i += layout.digit(j, src) * layout.stride(x);
        }
        m(i, j) = Complex(1.0, 0.0);
    }
    return DenseOperator(layout, std::move(m));
}

namespace {

/// The cells covered by the tile anchored at `anchor`, in lexicographic
/// offset order (the factor order of the tile block).
std::vector<int> tile_cells(const TorusSpec &spec, int anchor) {
    std::vector<int> cells;
    for (const auto &w : binary_offsets(spec.dimension())) {
        cells.push_back(torus_translate(spec, anchor, w));
    }
    return cells;
}

/// All tile anchors of the stage with parity offset z: cells congruent to z
/// mod 2 on every axis. Axis lengths must be even so the tiles partition.
std::vector<int> stage_anchors(const TorusSpec &spec, std::span<const int> z) {
    std::vector<int> anchors;
    for (int x = 0; x < spec.node_count(); ++x) {
        const std::vector<int> c = torus_coords(spec, x);
        bool match = true;
        for (int k = 0; k < spec.dimension(); ++k) {
            if (c[static_cast<std::size_t>(k)] % 2 !=
                z[static_cast<std::size_t>(k)] % 2) {
                match = false;
                break;
            }
        }
        if (match) anchors.push_back(x);
    }
    return anchors;
}

/// Places a hypercube block at `anchor`: relabels its factors onto the
/// covered cells (handling wraparound reordering) and embeds into the torus.
DenseOperator place_tile(const TorusSpec &spec, const DenseOperator &block, int anchor,
                         const SpaceLayout &layout) {
    const std::vector<int> cells = tile_cells(spec, anchor);
    std::vector<Slot> target;
    target.reserve(cells.size());
    for (int c : cells) target.push_back({kComputedTape, c});
    const DenseOperator placed = relabel_slots(block, target);
    return embed(placed, placed.layout.full_support(), layout);
}

} // namespace

PartitionedQca make_partitioned_qca(const TorusSpec &spec, const DenseOperator &block,
                                    const std::vector<std::vector<int>> &offset_schedule) {
    spec.validate();
    for (int a : spec.axes) {
        if (a % 2 != 0) {
            throw DimensionError("partitioned tiling requires even axis lengths");
        }
    }
    const int tile_size = 1 << spec.dimension();
    Index tile_dim = 1;
    for (int k = 0; k < tile_size; ++k) tile_dim *= spec.cell_dim;
    if (block.dim() != tile_dim) {
        throw DimensionError("tile block dimension must be cell_dim^(2^n)");
    }
    const CheckResult unitary = check_unitary(block, 1e-9);
    if (!unitary.passed) throw NotUnitaryError(unitary.residual);
    if (offset_schedule.empty()) throw DimensionError("offset schedule is empty");

    const int n_cells = spec.node_count();
    std::vector<NodeInfo> nodes(static_cast<std::size_t>(n_cells),
                                NodeInfo{spec.cell_dim, spec.quiescent});
    const SpaceLayout layout =
        QuantumLabeledGraph(nodes, {}).state_layout();

    // The block's own layout is replaced wholesale by place_tile, so only its
    // entries matter; normalize to dummy ascending cell slots up front.
    std::vector<std::pair<Slot, Index>> dummy;
    for (int k = 0; k < tile_size; ++k) {
        dummy.emplace_back(Slot{kComputedTape, k}, spec.cell_dim);
    }
    const DenseOperator tile(SpaceLayout::create(dummy), block.entries);

    Matrix op = Matrix::Identity(layout.total_dim(), layout.total_dim());
    // Influence sets: dependencies[x] = input cells whose state can reach x.
    std::vector<std::set<int>> dependencies(static_cast<std::size_t>(n_cells));
    for (int x = 0; x < n_cells; ++x) dependencies[static_cast<std::size_t>(x)].insert(x);

    for (const auto &z : offset_schedule) {
        if (static_cast<int>(z.size()) != spec.dimension()) {
            throw DimensionError("offset vector length does not match torus dimension");
        }
        for (int anchor : stage_anchors(spec, z)) {
            const DenseOperator placed = place_tile(spec, tile, anchor, layout);
            op = placed.entries * op;

            const std::vector<int> cells = tile_cells(spec, anchor);
            std::set<int> joint;
            for (int c : cells) {
                const auto &d = dependencies[static_cast<std::size_t>(c)];
                joint.insert(d.begin(), d.end());
            }
            for (int c : cells) dependencies[static_cast<std::size_t>(c)] = joint;
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n_cells; ++x) {
        for (int y : dependencies[static_cast<std::size_t>(x)]) edges.emplace_back(x, y);
    }
    return PartitionedQca{DenseOperator(layout, std::move(op)),
                          QuantumLabeledGraph(std::move(nodes), std::move(edges))};
}

ShiftInvarianceResult verify_shift_invariance(const DenseOperator &G, const TorusSpec &spec,
                                              double tol, int step) {
    spec.validate();
    const SpaceLayout layout = G.layout;
    if (layout.total_dim() != [&] {
            Index d = 1;
            for (int k = 0; k < spec.node_count(); ++k) d *= spec.cell_dim;
            return d;
        }()) {
        throw DimensionError("operator does not live on the torus state space");
    }

    ShiftInvarianceResult result;
    const Index total = layout.total_dim();
    for (int axis = 0; axis < spec.dimension(); ++axis) {
        std::vector<int> delta(static_cast<std::size_t>(spec.dimension()), 0);
        delta[static_cast<std::size_t>(axis)] = step;

        // T|c> = |c'> with c'_x = c_{x - delta}: build the index permutation.
        std::vector<Index> perm(static_cast<std::size_t>(total));
        std::vector<Index> inv(static_cast<std::size_t>(total));
        std::vector<int> source(static_cast<std::size_t>(spec.node_count()));
        std::vector<int> neg(delta.size());
        for (std::size_t k = 0; k < delta.size(); ++k) neg[k] = -delta[k];
        for (int x = 0; x < spec.node_count(); ++x) {
            source[static_cast<std::size_t>(x)] = torus_translate(spec, x, neg);
        }
        for (Index j = 0; j < total; ++j) {
            Index i = 0;
            for (int x = 0; x < spec.node_count(); ++x) {
                i += layout.digit(j, source[static_cast<std::size_t>(x)]) * layout.stride(x);
            }
            perm[static_cast<std::size_t>(j)] = i;
            inv[static_cast<std::size_t>(i)] = j;
        }

        // [G, T] entrywise: (G T)(i,j) = G(i, perm^-1... ) — with T(k, j) =
        // [k == perm[j]], (G T)(i, j) = G(i, perm[j]) and (T G)(i, j) =
        // G(inv[i], j).
        for (Index i = 0; i < total; ++i) {
            for (Index j = 0; j < total; ++j) {
                const double d = std::abs(G.entries(i, perm[static_cast<std::size_t>(j)]) -
                                          G.entries(inv[static_cast<std::size_t>(i)], j));
                result.deviation = std::max(result.deviation, d);
            }
        }
    }
    result.passed = result.deviation <= tol;
    return result;
}

BlockRepresentation block_representation(const DenseOperator &G, const TorusSpec &spec,
                                         double tol, int num_random_states,
                                         std::uint64_t seed) {
    spec.validate();
    for (int a : spec.axes) {
        if (a % 2 != 0) {
            throw DimensionError("block representation requires even axis lengths");
        }
    }

    BlockRepresentation rep;
    rep.spec = spec;
    rep.graph = make_torus_graph(spec);
    const SpaceLayout base_layout = rep.graph.state_layout();
    if (G.layout != base_layout) {
        throw DimensionError("operator does not live on the torus state space");
    }

    // Precondition order mirrors the contract: unitary, shift-invariant,
    // quiescent-preserving, causal (the last verified by the synthesis).
    const CheckResult unitary = check_unitary(G, 1e-9);
    if (!unitary.passed) throw NotUnitaryError(unitary.residual);

    const ShiftInvarianceResult shift = verify_shift_invariance(G, spec, tol);
    rep.shift_invariance_deviation = shift.deviation;
    if (!shift.passed) throw ShiftInvarianceViolation(shift.deviation);

    // The doubled automaton agrees with E.G on encoded states only when G
    // fixes the all-quiescent configuration (the residue on the computed
    // tape is G^dagger applied to it).
    const StateVector q = StateVector::basis(base_layout, rep.graph.quiescent_digits());
    rep.quiescent_deviation = (G.entries * q.amplitudes - q.amplitudes).norm();
    if (rep.quiescent_deviation > tol) throw QuiescentViolation(rep.quiescent_deviation);

    // One layer per parity class of cell coordinates, all-even first, in
    // lexicographic offset order.
    std::vector<std::vector<int>> layer_nodes;
    for (const auto &z : binary_offsets(spec.dimension())) {
        layer_nodes.push_back(stage_anchors(spec, z));
    }
    rep.circuit = assemble(G, rep.graph, tol, &layer_nodes, "torus-offsets");

    // Every K_x must be the translate of the representative K_0.
    const LocalGate *k0 = rep.circuit.find_gate(0);
    rep.k_block = k0->block;
    for (int x = 0; x < rep.graph.node_count(); ++x) {
        const LocalGate *kx = rep.circuit.find_gate(x);
        const std::vector<int> t = torus_coords(spec, x);
        std::vector<Slot> target;
        target.reserve(k0->block.layout.slots().size());
        for (const Slot &s : k0->block.layout.slots()) {
            target.push_back({s.tape, torus_translate(spec, s.node, t)});
        }
        const DenseOperator translated = relabel_slots(k0->block, target);
        if (translated.layout != kx->block.layout) {
            throw ShiftInvarianceViolation(1.0, "derived K block support");
        }
        rep.block_translation_deviation =
            std::max(rep.block_translation_deviation,
                     max_abs(Matrix(translated.entries - kx->block.entries)));
    }
    if (rep.block_translation_deviation > tol) {
        throw ShiftInvarianceViolation(rep.block_translation_deviation, "derived K block");
    }

    // The decoding stage must equal the explicit per-cell swap product (the
    // tensor power of S); probe on a handful of random doubled states.
    for (int s = 0; s < 3; ++s) {
        const StateVector probe =
            random_state(rep.circuit.doubled.layout, mix_seed(seed, 7000, static_cast<std::uint64_t>(s)));
        StateVector swapped = probe;
        for (int x = 0; x < rep.graph.node_count(); ++x) {
            const DenseOperator sx = build_swap_x(rep.circuit.doubled, x);
            swapped = apply_on_support(swapped, sx, sx.layout.full_support());
        }
        const StateVector direct = tape_swap(rep.circuit.doubled, probe);
        rep.s_stage_deviation = std::max(
            rep.s_stage_deviation, (swapped.amplitudes - direct.amplitudes).norm());
    }

    // H E|psi> vs E G|psi> on every basis state plus seeded random states.
    std::string worst_input = "none";
    const auto compare = [&](const StateVector &input, const std::string &label) {
        const StateVector lhs = rep.circuit.run(input);
        const StateVector rhs =
            encode(rep.circuit.doubled, StateVector(base_layout, G.entries * input.amplitudes));
        const double deviation = (lhs.amplitudes - rhs.amplitudes).norm();
        if (deviation > rep.he_eg_deviation) {
            rep.he_eg_deviation = deviation;
            worst_input = label;
        }
    };
    for (Index k = 0; k < base_layout.total_dim(); ++k) {
        Vector v = Vector::Zero(base_layout.total_dim());
        v(k) = Complex(1.0, 0.0);
        compare(StateVector(base_layout, std::move(v)), "basis " + std::to_string(k));
    }
    for (int s = 0; s < num_random_states; ++s) {
        compare(random_state(base_layout, mix_seed(seed, 7100, static_cast<std::uint64_t>(s))),
                "random " + std::to_string(s));
    }
    if (rep.he_eg_deviation > tol) {
        throw VerificationFailure(rep.he_eg_deviation, worst_input);
    }
    return rep;
}

} // namespace causalc
