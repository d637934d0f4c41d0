#pragma once

#include <cstdint>
#include <vector>

#include "causalc/localizer.hpp"

namespace causalc {

/// A finite torus of cells standing in for the infinite grid: `axes` lists
/// the period of each spatial dimension, every cell carries a system of
/// dimension `cell_dim` with quiescent basis state `quiescent`.
struct TorusSpec {
    std::vector<int> axes;
    Index cell_dim = 2;
    Index quiescent = 0;

    int dimension() const { return static_cast<int>(axes.size()); }
    int node_count() const;
    void validate() const;
};

/// Row-major node ids: the first axis is the most significant coordinate.
int torus_node_id(const TorusSpec &spec, std::span<const int> coords);
std::vector<int> torus_coords(const TorusSpec &spec, int node);
int torus_translate(const TorusSpec &spec, int node, std::span<const int> delta);

/// The 2^n binary offset vectors in lexicographic order, (0,...,0) first.
std::vector<std::vector<int>> binary_offsets(int n);

/// Radius-half neighborhood graph: edges x -> x+z for all z in {0,1}^n
/// (z = 0 included, so every node sees itself).
QuantumLabeledGraph make_torus_graph(const TorusSpec &spec);

/// The 1D shift c'_x = c_{x-1}: a basis permutation moving every cell's
/// content one step up the ring. It is causal with respect to the ring with
/// edges (x, x-1) — and deliberately NOT with respect to the radius-half
/// torus graph, which only looks forward.
DenseOperator make_shift_qca(const TorusSpec &spec);

/// A partitioned (block-stage) unitary together with the neighborhood graph
/// it is causal with respect to by construction.
struct PartitionedQca {
    DenseOperator op;
    QuantumLabeledGraph graph;
};

/// Tiles `block` (acting on a 2^n-cell hypercube of cells, factors in
/// lexicographic offset order) over the torus: one stage per entry of
/// `offset_schedule`, each stage covering the torus with disjoint tiles
/// anchored at cells congruent to the offset mod 2. The returned graph is
/// the influence graph of the staged dynamics (edges x -> every input cell
/// that can reach x), a sound causality certificate.
PartitionedQca make_partitioned_qca(const TorusSpec &spec, const DenseOperator &block,
                                    const std::vector<std::vector<int>> &offset_schedule);

struct ShiftInvarianceResult {
    bool passed = false;
    double deviation = 0.0;
};

/// Max-entry norm of [G, T] over the generator translations (one per axis,
/// each moving cell contents by `step` along that axis). Partitioned
/// unitaries are only invariant under even translations: pass step = 2.
ShiftInvarianceResult verify_shift_invariance(const DenseOperator &G, const TorusSpec &spec,
                                              double tol, int step = 1);

/// A causal shift-invariant G compiled to the doubled alphabet: 2^n layers
/// of one translated block K, followed by the per-cell tape swap stage S.
struct BlockRepresentation {
    TorusSpec spec;
    QuantumLabeledGraph graph;
    Circuit circuit; // schedule "torus-offsets", exactly 2^n K-layers

    DenseOperator k_block; // the representative block (origin cell 0)
    double shift_invariance_deviation = 0.0;
    double quiescent_deviation = 0.0;
    /// Max entrywise difference between any K_x and the translated K_0.
    double block_translation_deviation = 0.0;
    /// Max distance between the circuit's decoding stage and the explicit
    /// per-cell swap product, on probe states.
    double s_stage_deviation = 0.0;
    /// Max l2 deviation of H E|psi> from E G|psi> over basis + random states.
    double he_eg_deviation = 0.0;

    Index doubled_alphabet_dim() const { return spec.cell_dim * spec.cell_dim; }
    int layer_count() const { return static_cast<int>(circuit.layers.size()); }
};

/// Builds the block representation of G on the given torus. G must be
/// unitary, shift-invariant, quiescent-preserving and causal with respect to
/// the radius-half graph; all four are verified (causality implicitly, by
/// the synthesis of the K blocks).
///
/// Throws NotUnitaryError, ShiftInvarianceViolation, QuiescentViolation,
/// LocalizationViolation or VerificationFailure accordingly. Axis lengths
/// must be even (the offset-class tiling needs a two-coloring per axis).
BlockRepresentation block_representation(const DenseOperator &G, const TorusSpec &spec,
                                         double tol, int num_random_states = 20,
                                         std::uint64_t seed = 0);

} // namespace causalc
