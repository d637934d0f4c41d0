#include "causalc/localizer.hpp"

#include <algorithm>

namespace causalc {

DoubledLayout DoubledLayout::create(const QuantumLabeledGraph &g) {
    std::vector<std::pair<Slot, Index>> slot_dims;
    slot_dims.reserve(2 * static_cast<std::size_t>(g.node_count()));
    for (int x = 0; x < g.node_count(); ++x) {
        slot_dims.emplace_back(Slot{kComputedTape, x}, g.node(x).dim);
        slot_dims.emplace_back(Slot{kUncomputedTape, x}, g.node(x).dim);
    }
    return DoubledLayout{g, SpaceLayout::create(std::move(slot_dims))};
}

Support DoubledLayout::tape_support(int tape) const {
    std::vector<Slot> slots;
    slots.reserve(static_cast<std::size_t>(base.node_count()));
    for (int x = 0; x < base.node_count(); ++x) slots.push_back({tape, x});
    return Support(std::move(slots));
}

std::vector<Index> DoubledLayout::quiescent_by_node() const { return base.quiescent_digits(); }

StateVector tensor_pair(const DoubledLayout &dl, const StateVector &computed,
                        const StateVector &uncomputed) {
    const SpaceLayout base_layout = dl.base.state_layout();
    if (computed.layout != base_layout || uncomputed.layout != base_layout) {
        throw DimensionError("tensor_pair: factors must live on the graph's state space");
    }
    const int n = dl.base.node_count();
    // Offset contributed to the doubled index by each tape's base index: the
    // computed-tape slots of the doubled layout reproduce the base layout's
    // slot order, so base digits translate stride by stride.
    std::vector<Index> computed_stride(static_cast<std::size_t>(n));
    std::vector<Index> uncomputed_stride(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        computed_stride[static_cast<std::size_t>(x)] =
            dl.layout.stride(*dl.layout.find({kComputedTape, x}));
        uncomputed_stride[static_cast<std::size_t>(x)] =
            dl.layout.stride(*dl.layout.find({kUncomputedTape, x}));
    }
    const auto offset_of = [&](Index base_index, const std::vector<Index> &strides) {
        Index off = 0;
        for (int x = 0; x < n; ++x) {
            off += base_layout.digit(base_index, x) * strides[static_cast<std::size_t>(x)];
        }
        return off;
    };

    const Index nb = base_layout.total_dim();
    std::vector<Index> c_off(static_cast<std::size_t>(nb));
    std::vector<Index> u_off(static_cast<std::size_t>(nb));
    for (Index k = 0; k < nb; ++k) {
        c_off[static_cast<std::size_t>(k)] = offset_of(k, computed_stride);
        u_off[static_cast<std::size_t>(k)] = offset_of(k, uncomputed_stride);
    }

    Vector out = Vector::Zero(dl.layout.total_dim());
    for (Index c = 0; c < nb; ++c) {
        const Complex a = computed.amplitudes(c);
        if (a == Complex(0.0, 0.0)) continue;
        for (Index u = 0; u < nb; ++u) {
            out(c_off[static_cast<std::size_t>(c)] + u_off[static_cast<std::size_t>(u)]) =
                a * uncomputed.amplitudes(u);
        }
    }
    return StateVector(dl.layout, std::move(out));
}

StateVector encode(const DoubledLayout &dl, const StateVector &input) {
    const SpaceLayout base_layout = dl.base.state_layout();
    const std::vector<Index> q = dl.base.quiescent_digits();
    return tensor_pair(dl, StateVector::basis(base_layout, q), input);
}

StateVector tape_swap(const DoubledLayout &dl, const StateVector &state) {
    if (state.layout != dl.layout) {
        throw DimensionError("tape_swap: state does not live on the doubled layout");
    }
    const int n = dl.base.node_count();
    std::vector<std::pair<int, int>> pos(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        pos[static_cast<std::size_t>(x)] = {*dl.layout.find({kComputedTape, x}),
                                            *dl.layout.find({kUncomputedTape, x})};
    }
    const Index total = dl.layout.total_dim();
    Vector out(total);
    for (Index i = 0; i < total; ++i) {
        Index j = i;
        for (const auto &[pc, pu] : pos) {
            const Index dc = dl.layout.digit(i, pc);
            const Index du = dl.layout.digit(i, pu);
            j += (du - dc) * dl.layout.stride(pc) + (dc - du) * dl.layout.stride(pu);
        }
        out(j) = state.amplitudes(i);
    }
    return StateVector(dl.layout, std::move(out));
}

DenseOperator build_swap_x(const DoubledLayout &dl, int x) {
    const Index d = dl.base.node(x).dim;
    const SpaceLayout sub = dl.layout.sub_layout(
        Support({Slot{kComputedTape, x}, Slot{kUncomputedTape, x}}));
    Matrix m = Matrix::Zero(d * d, d * d);
    for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) {
            m(b * d + a, a * d + b) = Complex(1.0, 0.0);
        }
    }
    return DenseOperator(sub, std::move(m));
}

namespace {

Support k_support(const QuantumLabeledGraph &g, int x) {
    std::vector<Slot> slots;
    for (int y : g.in_neighborhood(x)) slots.push_back({kComputedTape, y});
    slots.push_back({kUncomputedTape, x});
    return Support(std::move(slots));
}

} // namespace

LocalGate synthesize_k(const DenseOperator &U, const QuantumLabeledGraph &g, int x, double tol) {
    const DoubledLayout dl = DoubledLayout::create(g);
    const Support computed = dl.tape_support(kComputedTape);
    const DenseOperator swap_x = build_swap_x(dl, x);
    const Support swap_support = swap_x.layout.full_support();
    const DenseOperator u_dag = U.adjoint();

    const ApplyOracle oracle = [&](const StateVector &v) {
        StateVector w = apply_on_support(v, u_dag, computed);
        w = apply_on_support(w, swap_x, swap_support);
        return apply_on_support(w, U, computed);
    };

    LocalGate gate;
    gate.origin_node = x;
    gate.support = k_support(g, x);
    const std::vector<Index> fill = dl.quiescent_by_node();
    try {
        gate.block = extract_local_block(oracle, gate.support, dl.layout, fill, tol,
                                         &gate.localization_residual);
    } catch (const LocalizationViolation &e) {
        throw LocalizationViolation(e.residual(), x);
    }
    const CheckResult unitary = check_unitary(gate.block, tol);
    gate.unitarity_residual = unitary.residual;
    if (!unitary.passed) {
        throw NonUnitaryBlock(unitary.residual, x);
    }
    return gate;
}

double check_commutation(std::span<const LocalGate> gates, const SpaceLayout &doubled) {
    double worst = 0.0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        for (std::size_t j = i + 1; j < gates.size(); ++j) {
            if (!gates[i].support.intersects(gates[j].support)) continue;
            const Support joint = Support::unite(gates[i].support, gates[j].support);
            const SpaceLayout sub = doubled.sub_layout(joint);
            const DenseOperator a = embed(gates[i].block, gates[i].support, sub);
            const DenseOperator b = embed(gates[j].block, gates[j].support, sub);
            worst = std::max(worst,
                             max_abs(Matrix(a.entries * b.entries - b.entries * a.entries)));
        }
    }
    return worst;
}

int Circuit::gate_count() const {
    int n = 0;
    for (const auto &layer : layers) n += static_cast<int>(layer.size());
    return n;
}

const LocalGate *Circuit::find_gate(int origin_node) const {
    for (const auto &layer : layers) {
        for (const auto &gate : layer) {
            if (gate.origin_node == origin_node) return &gate;
        }
    }
    return nullptr;
}

StateVector Circuit::run(const StateVector &input) const {
    StateVector state = encode(doubled, input);
    for (const auto &layer : layers) {
        for (const auto &gate : layer) {
            state = apply_on_support(state, gate.block, gate.support);
        }
    }
    return tape_swap(doubled, state);
}

namespace {

void validate_layering(const std::vector<std::vector<LocalGate>> &layers, int node_count) {
    std::vector<int> seen(static_cast<std::size_t>(node_count), 0);
    for (const auto &layer : layers) {
        for (std::size_t i = 0; i < layer.size(); ++i) {
            seen[static_cast<std::size_t>(layer[i].origin_node)] += 1;
            for (std::size_t j = i + 1; j < layer.size(); ++j) {
                if (layer[i].support.intersects(layer[j].support)) {
                    throw Error("scheduled layer contains gates with overlapping supports "
                                "(origin nodes " + std::to_string(layer[i].origin_node) +
                                " and " + std::to_string(layer[j].origin_node) + ")");
                }
            }
        }
    }
    for (int x = 0; x < node_count; ++x) {
        if (seen[static_cast<std::size_t>(x)] != 1) {
            throw Error("layering must place the gate of node " + std::to_string(x) +
                        " exactly once");
        }
    }
}

} // namespace

Circuit assemble(const DenseOperator &U, const QuantumLabeledGraph &g, double tol,
                 const std::vector<std::vector<int>> *forced_layers,
                 std::string schedule_name) {
    const CheckResult unitary = check_unitary(U, tol);
    if (!unitary.passed) {
        throw NotUnitaryError(unitary.residual);
    }

    Circuit circuit;
    circuit.graph = g;
    circuit.doubled = DoubledLayout::create(g);
    circuit.schedule = std::move(schedule_name);

    std::vector<LocalGate> gates;
    gates.reserve(static_cast<std::size_t>(g.node_count()));
    for (int x = 0; x < g.node_count(); ++x) {
        gates.push_back(synthesize_k(U, g, x, tol));
        circuit.max_localization_residual =
            std::max(circuit.max_localization_residual, gates.back().localization_residual);
        circuit.max_unitarity_residual =
            std::max(circuit.max_unitarity_residual, gates.back().unitarity_residual);
    }
    circuit.max_commutator = check_commutation(gates, circuit.doubled.layout);

    std::vector<std::vector<int>> layer_nodes;
    if (forced_layers) {
        layer_nodes = *forced_layers;
    } else {
        std::vector<Support> supports;
        supports.reserve(gates.size());
        for (const auto &gate : gates) supports.push_back(gate.support);
        layer_nodes = conflict_coloring(supports).classes();
    }
    circuit.layers.resize(layer_nodes.size());
    for (std::size_t l = 0; l < layer_nodes.size(); ++l) {
        for (int x : layer_nodes[l]) {
            if (x < 0 || x >= g.node_count()) {
                throw Error("layering references unknown node " + std::to_string(x));
            }
            circuit.layers[l].push_back(gates[static_cast<std::size_t>(x)]);
        }
    }
    validate_layering(circuit.layers, g.node_count());

    // Does U fix the all-quiescent configuration? If so the decoded output's
    // computed tape is quiescent and the circuit output is exactly the
    // re-encoded U|psi>.
    const SpaceLayout base_layout = g.state_layout();
    const StateVector q = StateVector::basis(base_layout, g.quiescent_digits());
    const Vector uq = U.entries * q.amplitudes;
    circuit.decoding.tape_swap = true;
    circuit.decoding.uncompute_quiescent = (uq - q.amplitudes).norm() <= 1e-10;

    circuit.depth = static_cast<int>(circuit.layers.size()) + 2;
    return circuit;
}

VerificationReport verify_representation(const Circuit &circuit, const DenseOperator &U,
                                         int num_random_states, std::uint64_t seed, double tol,
                                         bool throw_on_failure) {
    const SpaceLayout base_layout = circuit.graph.state_layout();
    if (U.layout != base_layout) {
        throw DimensionError("verify_representation: operator does not match the circuit's graph");
    }
    const StateVector q = StateVector::basis(base_layout, circuit.graph.quiescent_digits());
    const StateVector phi(base_layout, U.entries.adjoint() * q.amplitudes);

    VerificationReport report;
    report.basis_states = static_cast<int>(base_layout.total_dim());
    report.random_states = num_random_states;

    const auto compare = [&](const StateVector &input, const std::string &label) {
        const StateVector actual = circuit.run(input);
        const StateVector expected =
            tensor_pair(circuit.doubled, phi, StateVector(base_layout, U.entries * input.amplitudes));
        const double deviation = (actual.amplitudes - expected.amplitudes).norm();
        if (deviation > report.max_deviation) {
            report.max_deviation = deviation;
            report.worst_input = label;
        }
    };

    for (Index k = 0; k < base_layout.total_dim(); ++k) {
        Vector v = Vector::Zero(base_layout.total_dim());
        v(k) = Complex(1.0, 0.0);
        compare(StateVector(base_layout, std::move(v)), "basis " + std::to_string(k));
    }
    for (int s = 0; s < num_random_states; ++s) {
        compare(random_state(base_layout, mix_seed(seed, static_cast<std::uint64_t>(s))),
                "random " + std::to_string(s));
    }

    report.passed = report.max_deviation <= tol;
    if (!report.passed && throw_on_failure) {
        throw VerificationFailure(report.max_deviation, report.worst_input);
    }
    return report;
}

} // namespace causalc
