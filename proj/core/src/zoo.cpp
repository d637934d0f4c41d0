#include "causalc/zoo.hpp"

#include <cmath>
#include <numbers>

namespace causalc {

namespace {

QuantumLabeledGraph qubit_graph(int n, std::vector<std::pair<int, int>> edges) {
    return QuantumLabeledGraph(std::vector<NodeInfo>(static_cast<std::size_t>(n), NodeInfo{2, 0}),
                               std::move(edges));
}

std::vector<std::pair<int, int>> self_loops(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x) edges.emplace_back(x, x);
    return edges;
}

QuantumLabeledGraph ring_graph(int n, int offset) {
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x) edges.emplace_back(x, ((x + offset) % n + n) % n);
    return qubit_graph(n, std::move(edges));
}

DenseOperator two_qubit_swap(const SpaceLayout &sub) {
    Matrix m = Matrix::Zero(4, 4);
    for (Index a = 0; a < 2; ++a) {
        for (Index b = 0; b < 2; ++b) m(b * 2 + a, a * 2 + b) = Complex(1.0, 0.0);
    }
    return DenseOperator(sub, std::move(m));
}

} // namespace

DenseOperator make_symmetrized_torus_unitary(const TorusSpec &spec, std::uint64_t seed) {
    spec.validate();
    const SpaceLayout layout = make_torus_graph(spec).state_layout();
    const Index total = layout.total_dim();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(total, total);
    for (Index r = 0; r < total; ++r) {
        for (Index c = 0; c < total; ++c) {
            a(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    Matrix h = (a + a.adjoint()) / 2.0;

    // Average the generator over the full translation group: the average
    // commutes with every translation, hence so does its exponential.
    std::vector<std::vector<int>> translations{{}};
    for (int axis = 0; axis < spec.dimension(); ++axis) {
        std::vector<std::vector<int>> next;
        for (const auto &t : translations) {
            for (int s = 0; s < spec.axes[static_cast<std::size_t>(axis)]; ++s) {
                auto e = t;
                e.push_back(s);
                next.push_back(std::move(e));
            }
        }
        translations = std::move(next);
    }
    Matrix averaged = Matrix::Zero(total, total);
    for (const auto &t : translations) {
        std::vector<Index> inv(static_cast<std::size_t>(total));
        std::vector<int> source(static_cast<std::size_t>(spec.node_count()));
        std::vector<int> neg(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) neg[k] = -t[k];
        for (int x = 0; x < spec.node_count(); ++x) {
            source[static_cast<std::size_t>(x)] = torus_translate(spec, x, neg);
        }
        for (Index j = 0; j < total; ++j) {
            Index i = 0;
            for (int x = 0; x < spec.node_count(); ++x) {
                i += layout.digit(j, source[static_cast<std::size_t>(x)]) * layout.stride(x);
            }
            inv[static_cast<std::size_t>(i)] = j;
        }
        for (Index r = 0; r < total; ++r) {
            for (Index c = 0; c < total; ++c) {
                averaged(r, c) += h(inv[static_cast<std::size_t>(r)],
                                    inv[static_cast<std::size_t>(c)]);
            }
        }
    }
    averaged /= static_cast<double>(translations.size());

    // Decouple the all-quiescent configuration (it is translation-fixed, so
    // zeroing its row and column keeps the symmetry): exp(i * averaged) then
    // fixes it exactly.
    std::vector<Index> q(static_cast<std::size_t>(spec.node_count()), spec.quiescent);
    const Index q_index = layout.compose(q);
    averaged.row(q_index).setZero();
    averaged.col(q_index).setZero();

    Eigen::SelfAdjointEigenSolver<Matrix> es(averaged);
    const auto &values = es.eigenvalues();
    Vector phases(total);
    for (Index k = 0; k < total; ++k) {
        phases(k) = std::exp(Complex(0.0, values(k)));
    }
    Matrix g = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return DenseOperator(layout, std::move(g));
}

std::vector<ZooInstance> causal_zoo() {
    std::vector<ZooInstance> zoo;

    {
        QuantumLabeledGraph g = qubit_graph(3, self_loops(3));
        zoo.push_back({"identity-3q", g, DenseOperator::identity(g.state_layout()), true,
                       "identity on three self-looped qubits"});
    }
    {
        std::vector<NodeInfo> nodes{{2, 0}, {3, 0}, {2, 0}};
        QuantumLabeledGraph g(nodes, self_loops(3));
        const SpaceLayout layout = g.state_layout();
        Matrix m = Matrix::Identity(layout.total_dim(), layout.total_dim());
        for (int x = 0; x < 3; ++x) {
            const Support here = Support::single({kComputedTape, x});
            const DenseOperator u = random_unitary(layout.sub_layout(here),
                                                   1000 + static_cast<std::uint64_t>(x));
            m = embed(u, here, layout).entries * m;
        }
        zoo.push_back({"local-unitaries-233", g, DenseOperator(layout, std::move(m)), true,
                       "independent per-node unitaries on dims {2,3,2}"});
    }
    for (int L : {3, 4}) {
        TorusSpec spec{std::vector<int>{L}, 2, 0};
        zoo.push_back({"shift-z" + std::to_string(L), ring_graph(L, -1), make_shift_qca(spec),
                       true, "ring shift c'_x = c_{x-1} with edges (x, x-1)"});
    }
    {
        const int L = 4;
        std::vector<std::pair<int, int>> edges;
        for (int x = 0; x < L; ++x) {
            for (int d : {-1, 0, 1}) edges.emplace_back(x, ((x + d) % L + L) % L);
        }
        QuantumLabeledGraph g = qubit_graph(L, std::move(edges));
        const SpaceLayout layout = g.state_layout();
        Matrix cz = Matrix::Identity(4, 4);
        cz(3, 3) = Complex(-1.0, 0.0);
        Matrix m = Matrix::Identity(layout.total_dim(), layout.total_dim());
        for (int x = 0; x < L; ++x) {
            const Support pair = Support::on_tape(std::vector<int>{x, (x + 1) % L});
            m = embed(DenseOperator(layout.sub_layout(pair), cz), pair, layout).entries * m;
        }
        zoo.push_back({"cz-qca-z4", g, DenseOperator(layout, std::move(m)), true,
                       "product of nearest-neighbor controlled-phase gates, radius-1 edges"});
    }
    {
        TorusSpec spec{std::vector<int>{4}, 2, 0};
        const SpaceLayout pair_layout = SpaceLayout::create(
            {{Slot{kComputedTape, 0}, 2}, {Slot{kComputedTape, 1}, 2}});
        const DenseOperator block = random_unitary(pair_layout, 11);
        PartitionedQca pq = make_partitioned_qca(spec, block, {{0}, {1}});
        zoo.push_back({"partitioned-1d-z4", pq.graph, pq.op, true,
                       "two staggered stages of a seeded two-cell block"});
    }
    {
        TorusSpec spec{std::vector<int>{2, 2}, 2, 0};
        const DenseOperator block = make_symmetrized_torus_unitary(spec, 21);
        PartitionedQca pq = make_partitioned_qca(spec, block, {{0, 0}});
        zoo.push_back({"torus-2x2", pq.graph, pq.op, true,
                       "symmetrized random block on the 2x2 radius-half torus"});
    }
    return zoo;
}

std::vector<ZooInstance> noncausal_zoo() {
    std::vector<ZooInstance> zoo;

    {
        auto edges = self_loops(3);
        edges.emplace_back(0, 1);
        edges.emplace_back(1, 0);
        edges.emplace_back(1, 2);
        edges.emplace_back(2, 1);
        QuantumLabeledGraph g = qubit_graph(3, std::move(edges));
        const SpaceLayout layout = g.state_layout();
        const Support ends = Support::on_tape(std::vector<int>{0, 2});
        const DenseOperator swap = two_qubit_swap(layout.sub_layout(ends));
        zoo.push_back({"distant-swap", g, embed(swap, ends, layout), false,
                       "swap of the path ends; information jumps across node 1"});
    }
    {
        TorusSpec spec{std::vector<int>{4}, 2, 0};
        zoo.push_back({"shift-against-edges", ring_graph(4, +1), make_shift_qca(spec), false,
                       "the shift moves content opposite to the declared edges"});
    }
    {
        QuantumLabeledGraph g = qubit_graph(2, self_loops(2));
        const SpaceLayout layout = g.state_layout();
        Matrix cnot = Matrix::Zero(4, 4);
        cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = Complex(1.0, 0.0);
        zoo.push_back({"cnot-non-edge", g, DenseOperator(layout, std::move(cnot)), false,
                       "a CNOT between nodes with no connecting edge"});
    }
    return zoo;
}

std::vector<QcaInstance> qca_zoo() {
    std::vector<QcaInstance> zoo;

    {
        TorusSpec spec{std::vector<int>{4}, 2, 0};
        const SpaceLayout layout = make_torus_graph(spec).state_layout();
        Matrix u(2, 2);
        u.setZero();
        u(0, 0) = Complex(1.0, 0.0);
        u(1, 1) = std::exp(Complex(0.0, std::numbers::pi / 4.0));
        Matrix m = Matrix::Identity(layout.total_dim(), layout.total_dim());
        for (int x = 0; x < 4; ++x) {
            const Support here = Support::single({kComputedTape, x});
            m = embed(DenseOperator(layout.sub_layout(here), u), here, layout).entries * m;
        }
        zoo.push_back({"qca-1d-phase", spec, DenseOperator(layout, std::move(m)),
                       "tensor power of a diagonal phase gate"});
    }
    {
        TorusSpec spec{std::vector<int>{4}, 2, 0};
        zoo.push_back({"qca-1d-shift-left", spec, make_shift_qca(spec).adjoint(),
                       "the left shift c'_x = c_{x+1}, causal on the radius-half ring"});
    }
    {
        TorusSpec spec{std::vector<int>{2, 2}, 2, 0};
        zoo.push_back({"qca-2x2-random", spec, make_symmetrized_torus_unitary(spec, 21),
                       "translation-symmetrized random two-dimensional automaton"});
    }
    return zoo;
}

} // namespace causalc
