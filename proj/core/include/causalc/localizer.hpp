#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causalc/causality.hpp"
#include "causalc/graph.hpp"
#include "causalc/tensor_ops.hpp"

namespace causalc {

/// The tensor space with two copies of every node: tape 0 holds the
/// "computed" register the global unitary acts on, tape 1 the "uncomputed"
/// register carrying the raw input; the two slots of a node are adjacent in
/// canonical order.
struct DoubledLayout {
    QuantumLabeledGraph base;
    SpaceLayout layout;

    static DoubledLayout create(const QuantumLabeledGraph &g);

    Support tape_support(int tape) const;
    /// Quiescent fill digit for every node (shared by both tapes).
    std::vector<Index> quiescent_by_node() const;
};

/// The encoding isometry applied to a state: computed tape initialized to
/// the all-quiescent configuration, uncomputed tape carrying the input.
StateVector encode(const DoubledLayout &dl, const StateVector &input);

/// Product state with `computed` on tape 0 and `uncomputed` on tape 1.
StateVector tensor_pair(const DoubledLayout &dl, const StateVector &computed,
                        const StateVector &uncomputed);

/// The decoding unitary: exchange the two tapes at every node.
StateVector tape_swap(const DoubledLayout &dl, const StateVector &state);

/// The swap gate exchanging node x's computed- and uncomputed-tape slots,
/// as a block on exactly those two slots.
DenseOperator build_swap_x(const DoubledLayout &dl, int x);

/// One scheduled gate of the compiled circuit: the conjugated swap
/// K_x = U Swap_x U^dagger (U acting on the computed tape), materialized as
/// its local block on support (in-neighbors of x, computed) + (x, uncomputed).
struct LocalGate {
    DenseOperator block;
    Support support;
    int origin_node = 0;
    double localization_residual = 0.0;
    double unitarity_residual = 0.0;
};

/// Synthesizes K_x by applying the conjugated-swap oracle to quiescent-filled
/// basis columns (the full doubled-space matrix is never formed).
///
/// Throws LocalizationViolation when the oracle leaks weight off the claimed
/// support — the signature of a non-causal U — and NonUnitaryBlock when the
/// extracted block fails its unitarity check.
LocalGate synthesize_k(const DenseOperator &U, const QuantumLabeledGraph &g, int x, double tol);

/// Max pairwise commutator norm over gates with intersecting supports,
/// evaluated on the union support; disjoint pairs commute exactly and are
/// skipped.
double check_commutation(std::span<const LocalGate> gates, const SpaceLayout &doubled);

struct EncodingDescriptor {
    std::string kind = "ancilla-quiescent";
};

struct DecodingDescriptor {
    bool tape_swap = true;
    /// Set when U fixes the all-quiescent configuration (within 1e-10): the
    /// computed tape of the decoded output is then back to quiescent, so the
    /// per-node uncompute of the residue state is the identity and the
    /// output is exactly the re-encoded U|psi>.
    bool uncompute_quiescent = false;
};

struct Circuit {
    QuantumLabeledGraph graph;
    DoubledLayout doubled;
    EncodingDescriptor encoding;
    std::vector<std::vector<LocalGate>> layers;
    DecodingDescriptor decoding;
    int depth = 0; // layer count + 2 (encoding and decoding stages)
    std::string schedule = "greedy";

    double max_localization_residual = 0.0;
    double max_unitarity_residual = 0.0;
    double max_commutator = 0.0;

    int gate_count() const;
    const LocalGate *find_gate(int origin_node) const;
    /// Applies encoding, every layer, and the decoding tape swap.
    StateVector run(const StateVector &input) const;
};

/// Synthesizes all K_x, schedules them into layers of pairwise-disjoint
/// supports, and attaches encoding/decoding. By default the layers come from
/// a greedy coloring of support conflicts; callers with structural knowledge
/// (the torus scheduler) may force a layering, which is validated.
Circuit assemble(const DenseOperator &U, const QuantumLabeledGraph &g, double tol,
                 const std::vector<std::vector<int>> *forced_layers = nullptr,
                 std::string schedule_name = "greedy");

class VerificationFailure : public Error {
  public:
    VerificationFailure(double deviation, std::string worst_input)
        : Error("circuit deviates from the target by " + std::to_string(deviation) +
                " (worst input: " + worst_input + ")"),
          deviation_(deviation), worst_input_(std::move(worst_input)) {}

    double deviation() const noexcept { return deviation_; }
    const std::string &worst_input() const noexcept { return worst_input_; }

  private:
    double deviation_;
    std::string worst_input_;
};

struct VerificationReport {
    bool passed = false;
    double max_deviation = 0.0;
    std::string worst_input;
    int basis_states = 0;
    int random_states = 0;
};

/// Runs the circuit on every computational basis state plus seeded random
/// states and compares, with no global-phase allowance, against
/// (residue phi on the computed tape) tensor (U|psi> on the uncomputed tape),
/// where phi = U^dagger applied to the all-quiescent configuration.
VerificationReport verify_representation(const Circuit &circuit, const DenseOperator &U,
                                         int num_random_states, std::uint64_t seed, double tol,
                                         bool throw_on_failure = false);

} // namespace causalc
