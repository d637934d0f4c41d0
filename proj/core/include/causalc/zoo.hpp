#pragma once

#include <string>
#include <vector>

#include "causalc/qca.hpp"

namespace causalc {

/// A named (graph, operator) pair with its expected causality verdict.
struct ZooInstance {
    std::string name;
    QuantumLabeledGraph graph;
    DenseOperator op;
    bool causal = false;
    std::string note;
};

/// Instances certified causal by construction:
///   identity-3q          identity on three self-looped qubits
///   local-unitaries-233  independent unitaries on dims {2,3,2}, self-loops
///   shift-z3 / shift-z4  the ring shift with edges (x, x-1)
///   cz-qca-z4            nearest-neighbor controlled-phase product, radius-1 edges
///   partitioned-1d-z4    two staggered stages of a seeded two-cell block
///   torus-2x2            symmetrized random block on the 2x2 radius-half torus
std::vector<ZooInstance> causal_zoo();

/// Controls that must fail certification, each with a known witness:
///   distant-swap         swap of the path ends, path-local edges only
///   shift-against-edges  the ring shift paired with the reversed ring
///   cnot-non-edge        a CNOT between two nodes with no connecting edge
std::vector<ZooInstance> noncausal_zoo();

/// Shift-invariant, quiescent-preserving, radius-half-causal automata for
/// the block-representation pipeline.
struct QcaInstance {
    std::string name;
    TorusSpec spec;
    DenseOperator op;
    std::string note;
};

/// qca-1d-phase (tensor power of a diagonal phase), qca-1d-shift-left
/// (causal on radius half, unlike the right shift), qca-2x2-random
/// (translation-symmetrized random generator).
std::vector<QcaInstance> qca_zoo();

/// A seeded random unitary on the full 2^n-cell tile that commutes with all
/// torus translations and fixes the all-quiescent state; the 2x2 QCA zoo
/// entry and a convenient generator for shift-invariant fixtures.
DenseOperator make_symmetrized_torus_unitary(const TorusSpec &spec, std::uint64_t seed);

} // namespace causalc
