#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "causalc/qca.hpp"
#include "causalc/zoo.hpp"

using namespace causalc;

namespace {

Matrix swap_matrix(Index d) {
    Matrix m = Matrix::Zero(d * d, d * d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            m(b * d + a, a * d + b) = 1.0;
    return m;
}

} // namespace

TEST_CASE("torus spec validation") {
    CHECK_THROWS_AS(TorusSpec{}.validate(), DimensionError); // no axes
    CHECK_THROWS_AS((TorusSpec{{1}, 2, 0}).validate(), DimensionError);
    CHECK_THROWS_AS((TorusSpec{{4}, 0, 0}).validate(), DimensionError);
    CHECK_THROWS_AS((TorusSpec{{4}, 2, 2}).validate(), DimensionError);
    CHECK_NOTHROW((TorusSpec{{2, 3}, 3, 2}).validate());
    CHECK(TorusSpec{{2, 3}, 2, 0}.node_count() == 6);
    CHECK(TorusSpec{{2, 3}, 2, 0}.dimension() == 2);
}

TEST_CASE("torus ids are row-major with wraparound") {
    const TorusSpec spec{{2, 3}, 2, 0};
    CHECK(torus_node_id(spec, std::vector<int>{1, 2}) == 5);
    CHECK(torus_node_id(spec, std::vector<int>{0, 0}) == 0);
    CHECK(torus_node_id(spec, std::vector<int>{-1, 5}) == 5); // wraps to (1, 2)
    CHECK(torus_coords(spec, 5) == std::vector<int>{1, 2});
    for (int node = 0; node < spec.node_count(); ++node)
        CHECK(torus_node_id(spec, torus_coords(spec, node)) == node);
    CHECK_THROWS_AS(torus_node_id(spec, std::vector<int>{1}), DimensionError);

    const TorusSpec ring{{4}, 2, 0};
    CHECK(torus_translate(ring, 3, std::vector<int>{1}) == 0);
    CHECK(torus_translate(ring, 0, std::vector<int>{-1}) == 3);
    CHECK(torus_translate(spec, 5, std::vector<int>{1, 1}) == 0); // (1,2)+(1,1) = (0,0)
}

TEST_CASE("binary offsets enumerate the hypercube lexicographically") {
    CHECK(binary_offsets(1) == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(binary_offsets(2) ==
          std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const auto three = binary_offsets(3);
    REQUIRE(three.size() == 8);
    CHECK(three.front() == std::vector<int>{0, 0, 0});
    CHECK(three.back() == std::vector<int>{1, 1, 1});
    CHECK(three[1] == std::vector<int>{0, 0, 1}); // last axis moves fastest
}

TEST_CASE("the radius-half graph looks forward by one along each axis") {
    const TorusSpec ring{{4}, 3, 2};
    const QuantumLabeledGraph g = make_torus_graph(ring);
    CHECK(g.node_count() == 4);
    CHECK(g.node(1).dim == 3);
    CHECK(g.node(1).quiescent == 2);
    const std::vector<std::pair<int, int>> expect{
        {0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 0}, {3, 3}};
    CHECK(g.edges() == expect);

    const TorusSpec square{{2, 2}, 2, 0};
    const QuantumLabeledGraph sq = make_torus_graph(square);
    // On a 2x2 torus the radius-half neighborhood is everything.
    for (int x = 0; x < 4; ++x)
        CHECK(sq.neighborhood(x) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("the shift automaton rotates digits one step") {
    const TorusSpec spec{{3}, 2, 0};
    const DenseOperator u = make_shift_qca(spec);
    // Independent oracle: for qubit cells the index is a 3-bit word (cell 0
    // most significant) and moving every digit one cell up the ring is a
    // rotate-right of the word.
    for (Index j = 0; j < 8; ++j) {
        const Index i = ((j & 1) << 2) | (j >> 1);
        for (Index r = 0; r < 8; ++r)
            CHECK(u.entries(r, j) == ((r == i) ? Complex(1.0) : Complex(0.0)));
    }

    // Three steps close the ring of three.
    const Matrix cubed = u.entries * u.entries * u.entries;
    CHECK(max_abs(cubed - Matrix::Identity(8, 8)) == 0.0);
    CHECK(check_unitary(u, 1e-12).passed);

    CHECK_THROWS_AS(make_shift_qca(TorusSpec{{2, 2}, 2, 0}), DimensionError);
}

TEST_CASE("right and left shifts sit on opposite sides of the radius-half graph") {
    const TorusSpec spec{{4}, 2, 0};
    const QuantumLabeledGraph half = make_torus_graph(spec);
    const DenseOperator right = make_shift_qca(spec);
    const DenseOperator left = right.adjoint();

    // The radius-half graph only looks forward: the right shift pulls data
    // from behind and fails, the left shift is certified.
    CHECK_FALSE(check_causal_heisenberg(right, half, 1e-10).overall);
    CHECK(check_causal_heisenberg(left, half, 1e-10).overall);
}

TEST_CASE("shift invariance holds for the shift and fails for a pinned gate") {
    const TorusSpec spec{{4}, 2, 0};
    const DenseOperator shift = make_shift_qca(spec);
    const ShiftInvarianceResult si = verify_shift_invariance(shift, spec, 1e-12);
    CHECK(si.passed);
    CHECK(si.deviation == 0.0);

    // A unitary acting on cell 0 only is moved by the translation.
    const SpaceLayout layout = shift.layout;
    const Support at0 = Support::single({kComputedTape, 0});
    const DenseOperator pinned =
        embed(random_unitary(layout.sub_layout(at0), 17), at0, layout);
    const ShiftInvarianceResult bad = verify_shift_invariance(pinned, spec, 1e-9);
    CHECK_FALSE(bad.passed);
    CHECK(bad.deviation > 0.1);

    CHECK_THROWS_AS(
        verify_shift_invariance(DenseOperator::identity(SpaceLayout::create({{Slot{0, 0}, 2}})),
                                spec, 1e-9),
        DimensionError);
}

TEST_CASE("partitioned tilings are invariant under even translations only") {
    const TorusSpec spec{{4}, 2, 0};
    const SpaceLayout pair_layout =
        SpaceLayout::create({{Slot{kComputedTape, 0}, 2}, {Slot{kComputedTape, 1}, 2}});
    const DenseOperator block{pair_layout, swap_matrix(2)};
    const PartitionedQca pq = make_partitioned_qca(spec, block, {{0}});

    const ShiftInvarianceResult odd = verify_shift_invariance(pq.op, spec, 1e-9, 1);
    CHECK_FALSE(odd.passed); // tiles (0,1),(2,3) move onto (1,2),(3,0)
    const ShiftInvarianceResult even = verify_shift_invariance(pq.op, spec, 1e-9, 2);
    CHECK(even.passed);
    CHECK(even.deviation == 0.0);
}

TEST_CASE("a single stage of pair swaps has the expected matrix and influence graph") {
    const TorusSpec spec{{4}, 2, 0};
    const SpaceLayout pair_layout =
        SpaceLayout::create({{Slot{kComputedTape, 0}, 2}, {Slot{kComputedTape, 1}, 2}});
    const DenseOperator block{pair_layout, swap_matrix(2)};
    const PartitionedQca pq = make_partitioned_qca(spec, block, {{0}});

    // Oracle: the permutation exchanging digits 0<->1 and 2<->3.
    const SpaceLayout layout = pq.op.layout;
    for (Index j = 0; j < 16; ++j) {
        std::vector<Index> d{layout.digit(j, 1), layout.digit(j, 0),
                             layout.digit(j, 3), layout.digit(j, 2)};
        const Index i = layout.compose(d);
        for (Index r = 0; r < 16; ++r)
            CHECK(pq.op.entries(r, j) == ((r == i) ? Complex(1.0) : Complex(0.0)));
    }

    // Influence graph: each pair is causally closed.
    CHECK(pq.graph.neighborhood(0) == std::vector<int>{0, 1});
    CHECK(pq.graph.neighborhood(1) == std::vector<int>{0, 1});
    CHECK(pq.graph.neighborhood(2) == std::vector<int>{2, 3});
    CHECK(pq.graph.neighborhood(3) == std::vector<int>{2, 3});
    CHECK(check_causal_heisenberg(pq.op, pq.graph, 1e-10).overall);
}

TEST_CASE("wraparound tiles keep their factor order") {
    const TorusSpec spec{{4}, 2, 0};
    const SpaceLayout pair_layout =
        SpaceLayout::create({{Slot{kComputedTape, 0}, 2}, {Slot{kComputedTape, 1}, 2}});
    const DenseOperator block = random_unitary(pair_layout, 13);
    const PartitionedQca pq = make_partitioned_qca(spec, block, {{1}});

    // Stage {1} anchors at cells 1 and 3; the tile at 3 wraps to cover
    // (3, 0) with cell 3 carrying the block's first factor.
    const SpaceLayout layout = pq.op.layout;
    const Matrix &b = block.entries;
    for (Index i = 0; i < 16; ++i) {
        for (Index j = 0; j < 16; ++j) {
            const Complex expect =
                b(layout.digit(i, 3) * 2 + layout.digit(i, 0),
                  layout.digit(j, 3) * 2 + layout.digit(j, 0)) *
                b(layout.digit(i, 1) * 2 + layout.digit(i, 2),
                  layout.digit(j, 1) * 2 + layout.digit(j, 2));
            CHECK(std::abs(pq.op.entries(i, j) - expect) <= 1e-15);
        }
    }
    CHECK(pq.graph.neighborhood(0) == std::vector<int>{0, 3});
    CHECK(pq.graph.neighborhood(2) == std::vector<int>{1, 2});
    CHECK(check_causal_heisenberg(pq.op, pq.graph, 1e-10).overall);
}

TEST_CASE("two staggered stages mix the whole ring of four") {
    const TorusSpec spec{{4}, 2, 0};
    const SpaceLayout pair_layout =
        SpaceLayout::create({{Slot{kComputedTape, 0}, 2}, {Slot{kComputedTape, 1}, 2}});
    const DenseOperator block = random_unitary(pair_layout, 11);
    const PartitionedQca pq = make_partitioned_qca(spec, block, {{0}, {1}});

    // After the second stage every cell depends on every cell.
    for (int x = 0; x < 4; ++x)
        CHECK(pq.graph.neighborhood(x) == std::vector<int>{0, 1, 2, 3});
    CHECK(check_unitary(pq.op, 1e-10).passed);
    CHECK(check_causal_heisenberg(pq.op, pq.graph, 1e-10).overall);
}

TEST_CASE("partitioned construction validates its inputs") {
    const TorusSpec odd{{3}, 2, 0};
    const SpaceLayout pair_layout =
        SpaceLayout::create({{Slot{kComputedTape, 0}, 2}, {Slot{kComputedTape, 1}, 2}});
    const DenseOperator block{pair_layout, swap_matrix(2)};
    CHECK_THROWS_AS(make_partitioned_qca(odd, block, {{0}}), DimensionError);

    const TorusSpec spec{{4}, 2, 0};
    const DenseOperator tiny = DenseOperator::identity(SpaceLayout::create({{Slot{0, 0}, 2}}));
    CHECK_THROWS_AS(make_partitioned_qca(spec, tiny, {{0}}), DimensionError);
    CHECK_THROWS_AS(make_partitioned_qca(spec, block, {}), DimensionError);
    CHECK_THROWS_AS(make_partitioned_qca(spec, block, {{0, 0}}), DimensionError);

    Matrix broken = Matrix::Identity(4, 4);
    broken(0, 0) = 0.5;
    CHECK_THROWS_AS(make_partitioned_qca(spec, {pair_layout, broken}, {{0}}), NotUnitaryError);
}

TEST_CASE("block representation of the identity is a swap stage per parity class") {
    const TorusSpec spec{{4}, 2, 0};
    const QuantumLabeledGraph g = make_torus_graph(spec);
    const DenseOperator id = DenseOperator::identity(g.state_layout());
    const BlockRepresentation rep = block_representation(id, spec, 1e-9, 4, 0);

    CHECK(rep.layer_count() == 2); // 2^1 parity classes
    CHECK(rep.circuit.schedule == "torus-offsets");
    CHECK(rep.circuit.depth == 4);
    CHECK(rep.doubled_alphabet_dim() == 4);
    CHECK(rep.shift_invariance_deviation == 0.0);
    CHECK(rep.quiescent_deviation == 0.0);
    CHECK(rep.block_translation_deviation == 0.0);
    CHECK(rep.s_stage_deviation <= 1e-13);
    CHECK(rep.he_eg_deviation <= 1e-13);

    // Layers follow the offset order: even anchors first.
    REQUIRE(rep.circuit.layers.size() == 2);
    REQUIRE(rep.circuit.layers[0].size() == 2);
    CHECK(rep.circuit.layers[0][0].origin_node == 0);
    CHECK(rep.circuit.layers[0][1].origin_node == 2);
    CHECK(rep.circuit.layers[1][0].origin_node == 1);
    CHECK(rep.circuit.layers[1][1].origin_node == 3);

    // For the identity, the conjugated swap IS the swap: on the support
    // {(c, x-1), (c, x), (u, x)} the block acts as swap((c,x),(u,x)).
    const LocalGate *k0 = rep.circuit.find_gate(0);
    REQUIRE(k0 != nullptr);
    CHECK(k0->support == Support({Slot{kComputedTape, 0}, Slot{kUncomputedTape, 0},
                                  Slot{kComputedTape, 3}}));
    const SpaceLayout sub = rep.circuit.doubled.layout.sub_layout(k0->support);
    const Support swap_slots({Slot{kComputedTape, 0}, Slot{kUncomputedTape, 0}});
    const DenseOperator expected =
        embed({sub.sub_layout(swap_slots), swap_matrix(2)}, swap_slots, sub);
    CHECK(max_abs(k0->block.entries - expected.entries) == 0.0);
    CHECK(max_abs(rep.k_block.entries - k0->block.entries) == 0.0);
}

TEST_CASE("block representation of the left shift crosses the tapes") {
    const TorusSpec spec{{4}, 2, 0};
    const DenseOperator left = make_shift_qca(spec).adjoint();
    const BlockRepresentation rep = block_representation(left, spec, 1e-9, 4, 1);

    CHECK(rep.layer_count() == 2);
    CHECK(rep.he_eg_deviation <= 1e-12);
    CHECK(rep.block_translation_deviation <= 1e-12);
    CHECK(rep.circuit.decoding.uncompute_quiescent);

    // Pushing the swap at x through the left shift exchanges the computed
    // digit of x-1 with the uncomputed digit of x.
    const LocalGate *k1 = rep.circuit.find_gate(1);
    REQUIRE(k1 != nullptr);
    CHECK(k1->support == Support({Slot{kComputedTape, 0}, Slot{kComputedTape, 1},
                                  Slot{kUncomputedTape, 1}}));
    const SpaceLayout sub = rep.circuit.doubled.layout.sub_layout(k1->support);
    const Support cross({Slot{kComputedTape, 0}, Slot{kUncomputedTape, 1}});
    const DenseOperator expected =
        embed({sub.sub_layout(cross), swap_matrix(2)}, cross, sub);
    CHECK(max_abs(k1->block.entries - expected.entries) <= 1e-12);
}

TEST_CASE("block representation accepts the phase automaton") {
    const auto zoo = qca_zoo();
    REQUIRE(zoo.size() >= 1);
    const QcaInstance &phase = zoo[0];
    REQUIRE(phase.name == "qca-1d-phase");
    const BlockRepresentation rep = block_representation(phase.op, phase.spec, 1e-9, 4, 0);
    CHECK(rep.layer_count() == 2);
    CHECK(rep.shift_invariance_deviation <= 1e-12);
    CHECK(rep.quiescent_deviation <= 1e-12);
    CHECK(rep.block_translation_deviation <= 1e-12);
    CHECK(rep.he_eg_deviation <= 1e-12);
    CHECK(verify_representation(rep.circuit, phase.op, 4, 3, 1e-9).passed);
}

TEST_CASE("block representation of the symmetrized 2x2 automaton") {
    const TorusSpec spec{{2, 2}, 2, 0};
    const DenseOperator g = make_symmetrized_torus_unitary(spec, 21);
    CHECK(check_unitary(g, 1e-10).passed);
    const StateVector q = StateVector::basis(g.layout, std::vector<Index>{0, 0, 0, 0});
    CHECK((g.entries * q.amplitudes - q.amplitudes).norm() <= 1e-12);
    CHECK(verify_shift_invariance(g, spec, 1e-10).passed);

    const BlockRepresentation rep = block_representation(g, spec, 1e-8, 4, 0);
    CHECK(rep.layer_count() == 4); // 2^2 parity classes
    REQUIRE(rep.circuit.layers.size() == 4);
    for (const auto &layer : rep.circuit.layers)
        CHECK(layer.size() == 1); // one anchor per class on a 2x2 torus
    CHECK(rep.block_translation_deviation <= 1e-12);
    CHECK(rep.s_stage_deviation <= 1e-12);
    CHECK(rep.he_eg_deviation <= 1e-12);
}

TEST_CASE("block representation rejects what it must") {
    const TorusSpec spec{{4}, 2, 0};
    const QuantumLabeledGraph g = make_torus_graph(spec);
    const SpaceLayout layout = g.state_layout();

    SUBCASE("odd axes") {
        const TorusSpec odd{{2, 3}, 2, 0};
        const DenseOperator id = DenseOperator::identity(
            make_torus_graph(odd).state_layout());
        CHECK_THROWS_AS(block_representation(id, odd, 1e-9, 2, 0), DimensionError);
    }

    SUBCASE("layout mismatch") {
        const DenseOperator small = DenseOperator::identity(SpaceLayout::create({{Slot{0, 0}, 2}}));
        CHECK_THROWS_AS(block_representation(small, spec, 1e-9, 2, 0), DimensionError);
    }

    SUBCASE("not shift-invariant") {
        const Support at0 = Support::single({kComputedTape, 0});
        const DenseOperator pinned =
            embed(random_unitary(layout.sub_layout(at0), 23), at0, layout);
        CHECK_THROWS_AS(block_representation(pinned, spec, 1e-9, 2, 0),
                        ShiftInvarianceViolation);
    }

    SUBCASE("quiescent not preserved") {
        Matrix h(2, 2);
        const double r = 1.0 / std::sqrt(2.0);
        h << r, r, r, -r;
        Matrix m = Matrix::Identity(16, 16);
        for (int x = 0; x < 4; ++x) {
            const Support here = Support::single({kComputedTape, x});
            m = embed({layout.sub_layout(here), h}, here, layout).entries * m;
        }
        const DenseOperator hadamards{layout, std::move(m)};
        CHECK_THROWS_AS(block_representation(hadamards, spec, 1e-9, 2, 0), QuiescentViolation);
        try {
            block_representation(hadamards, spec, 1e-9, 2, 0);
        } catch (const QuiescentViolation &v) {
            // || H^(x4) |0000> - |0000> || = sqrt(2 - 2/4)
            CHECK(v.deviation() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
        }
    }

    SUBCASE("not causal on the radius-half graph") {
        // The right shift is shift-invariant and fixes the quiescent state,
        // but pulls data from behind; synthesis of the blocks must fail.
        const DenseOperator right = make_shift_qca(spec);
        CHECK_THROWS_AS(block_representation(right, spec, 1e-9, 2, 0), LocalizationViolation);
    }

    SUBCASE("non-unitary") {
        Matrix broken = Matrix::Identity(16, 16);
        broken(0, 0) = 0.5;
        CHECK_THROWS_AS(block_representation({layout, broken}, spec, 1e-9, 2, 0),
                        NotUnitaryError);
    }
}

TEST_CASE("zoo verdicts hold under the exact certificate") {
    for (const ZooInstance &inst : causal_zoo()) {
        INFO(inst.name);
        const CausalityReport report = check_causal_heisenberg(inst.op, inst.graph, 1e-9);
        CHECK(inst.causal);
        CHECK(report.overall);
    }
    for (const ZooInstance &inst : noncausal_zoo()) {
        INFO(inst.name);
        const CausalityReport report = check_causal_heisenberg(inst.op, inst.graph, 1e-9);
        CHECK_FALSE(inst.causal);
        CHECK_FALSE(report.overall);
        CHECK_FALSE(report.failed_nodes().empty());
    }
}

TEST_CASE("the distant swap witnesses are its two endpoints") {
    const auto zoo = noncausal_zoo();
    const auto it = std::find_if(zoo.begin(), zoo.end(),
                                 [](const ZooInstance &z) { return z.name == "distant-swap"; });
    REQUIRE(it != zoo.end());
    const CausalityReport report = check_causal_heisenberg(it->op, it->graph, 1e-9);
    CHECK(report.failed_nodes() == std::vector<int>{0, 2});
}

TEST_CASE("qca zoo instances satisfy the block-representation prerequisites") {
    for (const QcaInstance &inst : qca_zoo()) {
        INFO(inst.name);
        CHECK(check_unitary(inst.op, 1e-10).passed);
        CHECK(verify_shift_invariance(inst.op, inst.spec, 1e-10).passed);
        const StateVector q = StateVector::basis(
            inst.op.layout,
            std::vector<Index>(static_cast<std::size_t>(inst.spec.node_count()),
                               inst.spec.quiescent));
        CHECK((inst.op.entries * q.amplitudes - q.amplitudes).norm() <= 1e-10);
        CHECK(check_causal_heisenberg(inst.op, make_torus_graph(inst.spec), 1e-9).overall);
    }
}
