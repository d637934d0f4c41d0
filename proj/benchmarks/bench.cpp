#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "causalc/causality.hpp"
#include "causalc/localizer.hpp"
#include "causalc/qca.hpp"

namespace {

using namespace causalc;

SpaceLayout qubits(int n) {
    std::vector<std::pair<Slot, Index>> slot_dims;
    for (int i = 0; i < n; ++i) slot_dims.push_back({Slot{kComputedTape, i}, 2});
    return SpaceLayout::create(std::move(slot_dims));
}

QuantumLabeledGraph predecessor_ring(int length) {
    std::vector<NodeInfo> nodes(static_cast<std::size_t>(length));
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < length; ++x) edges.emplace_back(x, (x + length - 1) % length);
    return QuantumLabeledGraph(nodes, edges);
}

/// Two-qubit gate applied in place on an n-qubit register.
void BM_ApplyOnSupport(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SpaceLayout layout = qubits(n);
    const Support support({Slot{kComputedTape, 0}, Slot{kComputedTape, n / 2}});
    const DenseOperator gate = random_unitary(layout.sub_layout(support), 1);
    const StateVector psi = random_state(layout, 2);
    for (auto _ : state) {
        StateVector out = apply_on_support(psi, gate, support);
        benchmark::DoNotOptimize(out.amplitudes.data());
    }
    state.SetComplexityN(layout.total_dim());
}
BENCHMARK(BM_ApplyOnSupport)->Arg(8)->Arg(10)->Arg(12)->Arg(14)->Complexity();

/// Materializing the embedded matrix instead (the dense path the apply
/// routine avoids).
void BM_EmbedOperator(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SpaceLayout layout = qubits(n);
    const Support support({Slot{kComputedTape, 0}, Slot{kComputedTape, n / 2}});
    const DenseOperator gate = random_unitary(layout.sub_layout(support), 1);
    for (auto _ : state) {
        DenseOperator full = embed(gate, support, layout);
        benchmark::DoNotOptimize(full.entries.data());
    }
}
BENCHMARK(BM_EmbedOperator)->Arg(6)->Arg(8)->Arg(10);

/// Single-node reduced state of a random pure state, the inner loop of the
/// sampled causality certifier.
void BM_ReducedDensity(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SpaceLayout layout = qubits(n);
    const StateVector psi = random_state(layout, 3);
    const Support keep({Slot{kComputedTape, 0}});
    for (auto _ : state) {
        DensityMatrix rho = reduced_density(psi, keep);
        benchmark::DoNotOptimize(rho.entries.data());
    }
}
BENCHMARK(BM_ReducedDensity)->Arg(8)->Arg(10)->Arg(12)->Arg(14);

/// Full exact certification of the ring shift (matrix units at every node).
void BM_CheckHeisenberg(benchmark::State &state) {
    const int length = static_cast<int>(state.range(0));
    const TorusSpec spec{{length}, 2, 0};
    const DenseOperator shift = make_shift_qca(spec);
    const QuantumLabeledGraph ring = predecessor_ring(length);
    for (auto _ : state) {
        CausalityReport report = check_causal_heisenberg(shift, ring, 1e-9);
        benchmark::DoNotOptimize(report.overall);
    }
}
BENCHMARK(BM_CheckHeisenberg)->Arg(4)->Arg(5)->Arg(6)->Arg(7);

/// Synthesis of one conjugated-swap gate on the doubled space.
void BM_SynthesizeK(benchmark::State &state) {
    const int length = static_cast<int>(state.range(0));
    const TorusSpec spec{{length}, 2, 0};
    const DenseOperator shift = make_shift_qca(spec);
    const QuantumLabeledGraph ring = predecessor_ring(length);
    for (auto _ : state) {
        LocalGate gate = synthesize_k(shift, ring, 0, 1e-9);
        benchmark::DoNotOptimize(gate.block.entries.data());
    }
}
BENCHMARK(BM_SynthesizeK)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Arg(7);

/// End-to-end compilation: synthesis of every gate, commutation audit,
/// conflict coloring, encoding/decoding assembly.
void BM_AssembleShift(benchmark::State &state) {
    const int length = static_cast<int>(state.range(0));
    const TorusSpec spec{{length}, 2, 0};
    const DenseOperator shift = make_shift_qca(spec);
    const QuantumLabeledGraph ring = predecessor_ring(length);
    for (auto _ : state) {
        Circuit circuit = assemble(shift, ring, 1e-9);
        benchmark::DoNotOptimize(circuit.depth);
    }
}
BENCHMARK(BM_AssembleShift)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

/// Block representation of the left shift (causal on the radius-half graph),
/// including the translation audit and the intertwining probes.
void BM_BlockRepresentation1D(benchmark::State &state) {
    const int length = static_cast<int>(state.range(0));
    const TorusSpec spec{{length}, 2, 0};
    const DenseOperator left_shift = make_shift_qca(spec).adjoint();
    for (auto _ : state) {
        BlockRepresentation rep = block_representation(left_shift, spec, 1e-9, 5, 0);
        benchmark::DoNotOptimize(rep.he_eg_deviation);
    }
}
BENCHMARK(BM_BlockRepresentation1D)->Arg(4)->Arg(6);

} // namespace

BENCHMARK_MAIN();
