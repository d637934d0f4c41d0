#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causalc/graph.hpp"
#include "causalc/tensor_ops.hpp"

namespace causalc {

enum class Picture { heisenberg, state_sampled };

std::string to_string(Picture p);

/// Verdict for one node of a causality check. `witness` identifies the
/// probe that produced the worst residual: for the Heisenberg picture the
/// flat index i*d+j of the matrix unit |i><j| at the node, for the sampled
/// picture the sample number. -1 when no probe was recorded.
struct NodeCheck {
    int node = 0;
    bool passed = false;
    double residual = 0.0;
    int witness = -1;
};

struct CausalityReport {
    Picture picture = Picture::heisenberg;
    bool overall = false;
    double unitarity_residual = 0.0;
    std::vector<NodeCheck> per_node;

    double worst_residual() const;
    std::vector<int> failed_nodes() const;
};

/// Heisenberg evolution U^dagger * A * U of a full-space operator.
DenseOperator heisenberg_image(const DenseOperator &U, const DenseOperator &A);

/// Exact causality certificate: for every node x and every matrix unit
/// |i><j| at x, the Heisenberg image must be localized on the neighborhood
/// N(x). Matrix units span the local operator algebra, so by linearity a
/// pass certifies every operator localized at x.
///
/// Refuses non-unitary input (the equivalence with the state picture needs
/// unitarity) unless `diagnostic` is set, in which case residuals are still
/// reported.
CausalityReport check_causal_heisenberg(const DenseOperator &U, const QuantumLabeledGraph &g,
                                        double tol, bool diagnostic = false);

/// Monte-Carlo necessary-condition test of the state picture: for each node
/// x, draw a random pure state and scramble it with a random unitary
/// supported outside N(x) — the two states then agree on N(x) by
/// construction — and compare the reduced output states at x. A failure is
/// a sound counterexample; a pass is evidence only.
CausalityReport check_causal_state_sampled(const DenseOperator &U, const QuantumLabeledGraph &g,
                                           int samples, std::uint64_t seed, double tol);

/// Inverse causality: U^dagger must be causal with respect to the
/// transposed graph whenever U is causal with respect to g.
CausalityReport check_inverse_causal(const DenseOperator &U, const QuantumLabeledGraph &g,
                                     double tol);

} // namespace causalc
