#include "causalc/causality.hpp"

#include <algorithm>

#include "causalc/errors.hpp"

namespace causalc {

std::string to_string(Picture p) {
    return p == Picture::heisenberg ? "heisenberg" : "state_sampled";
}

double CausalityReport::worst_residual() const {
    double worst = 0.0;
    for (const auto &n : per_node) worst = std::max(worst, n.residual);
    return worst;
}

std::vector<int> CausalityReport::failed_nodes() const {
    std::vector<int> out;
    for (const auto &n : per_node)
        if (!n.passed) out.push_back(n.node);
    return out;
}

DenseOperator heisenberg_image(const DenseOperator &U, const DenseOperator &A) {
    if (U.layout != A.layout) {
        throw DimensionError("heisenberg_image: operator layouts differ");
    }
    return DenseOperator(U.layout, U.entries.adjoint() * A.entries * U.entries);
}

namespace {

void require_layout_matches(const DenseOperator &U, const QuantumLabeledGraph &g) {
    if (U.layout != g.state_layout()) {
        throw DimensionError("operator layout does not match the graph's state space");
    }
}

} // namespace

CausalityReport check_causal_heisenberg(const DenseOperator &U, const QuantumLabeledGraph &g,
                                        double tol, bool diagnostic) {
    require_layout_matches(U, g);
    CausalityReport report;
    report.picture = Picture::heisenberg;
    report.unitarity_residual = check_unitary(U, tol).residual;
    if (report.unitarity_residual > tol && !diagnostic) {
        throw NotUnitaryError(report.unitarity_residual);
    }

    const SpaceLayout layout = U.layout;
    const Matrix u_adj = U.entries.adjoint();
    report.per_node.reserve(static_cast<std::size_t>(g.node_count()));
    for (int x = 0; x < g.node_count(); ++x) {
        const Support here = Support::single({kComputedTape, x});
        const Support region = Support::on_tape(g.neighborhood(x));
        const Index d = g.node(x).dim;

        NodeCheck check;
        check.node = x;
        for (Index i = 0; i < d; ++i) {
            for (Index j = 0; j < d; ++j) {
                const DenseOperator unit(layout.sub_layout(here), matrix_unit(d, i, j));
                const DenseOperator probe = embed(unit, here, layout);
                const DenseOperator image(layout, u_adj * probe.entries * U.entries);
                const CheckResult loc = is_localized(image, region, tol);
                if (loc.residual > check.residual) {
                    check.residual = loc.residual;
                    check.witness = static_cast<int>(i * d + j);
                }
            }
        }
        check.passed = check.residual <= tol;
        report.per_node.push_back(check);
    }
    report.overall = std::all_of(report.per_node.begin(), report.per_node.end(),
                                 [](const NodeCheck &n) { return n.passed; });
    return report;
}

CausalityReport check_causal_state_sampled(const DenseOperator &U, const QuantumLabeledGraph &g,
                                           int samples, std::uint64_t seed, double tol) {
    require_layout_matches(U, g);
    CausalityReport report;
    report.picture = Picture::state_sampled;
    report.unitarity_residual = check_unitary(U, tol).residual;

    const SpaceLayout layout = U.layout;
    report.per_node.reserve(static_cast<std::size_t>(g.node_count()));
    for (int x = 0; x < g.node_count(); ++x) {
        const Support here = Support::single({kComputedTape, x});
        const Support region = Support::on_tape(g.neighborhood(x));
        const Support outside = layout.complement(region);

        NodeCheck check;
        check.node = x;
        for (int s = 0; s < samples; ++s) {
            StateVector psi = random_state(layout, mix_seed(seed, static_cast<std::uint64_t>(x),
                                                            2 * static_cast<std::uint64_t>(s)));
            // A scramble supported outside N(x) leaves the input reduced
            // state on N(x) untouched, so causality demands equal outputs
            // at x. An empty complement forces psi' = psi.
            StateVector psi_prime = psi;
            if (!outside.empty()) {
                const SpaceLayout sub = layout.sub_layout(outside);
                const DenseOperator v = random_unitary(
                    sub, mix_seed(seed, static_cast<std::uint64_t>(x),
                                  2 * static_cast<std::uint64_t>(s) + 1));
                psi_prime = apply_on_support(psi, v, outside);
            }

            const StateVector out = StateVector(layout, U.entries * psi.amplitudes);
            const StateVector out_prime = StateVector(layout, U.entries * psi_prime.amplitudes);
            const DensityMatrix at_x = reduced_density(out, here);
            const DensityMatrix at_x_prime = reduced_density(out_prime, here);
            const double residual = max_abs(Matrix(at_x.entries - at_x_prime.entries));
            if (residual > check.residual) {
                check.residual = residual;
                check.witness = s;
            }
        }
        check.passed = check.residual <= tol;
        report.per_node.push_back(check);
    }
    report.overall = std::all_of(report.per_node.begin(), report.per_node.end(),
                                 [](const NodeCheck &n) { return n.passed; });
    return report;
}

CausalityReport check_inverse_causal(const DenseOperator &U, const QuantumLabeledGraph &g,
                                     double tol) {
    return check_causal_heisenberg(U.adjoint(), g.transpose(), tol);
}

} // namespace causalc
