#include "causalc/serialize.hpp"

#include <fstream>

namespace causalc {

ordered_json conventions_header() {
    return ordered_json{{"index_order", "node-ascending,first-most-significant"},
                        {"tapes", ordered_json::array({"computed", "uncomputed"})}};
}

namespace {

void check_conventions(const json &doc) {
    if (!doc.contains("conventions")) return; // absent header: defaults apply
    const json &c = doc.at("conventions");
    const ordered_json expected = conventions_header();
    if (c.value("index_order", "") != expected.at("index_order").get<std::string>()) {
        throw ParseError("document uses an unsupported index_order convention");
    }
    if (c.contains("tapes") && c.at("tapes") != json(expected.at("tapes"))) {
        throw ParseError("document uses an unsupported tape convention");
    }
}

void check_type(const json &doc, const std::string &expected) {
    const std::string got = doc.value("type", "");
    if (got != expected) {
        throw ParseError("expected a document of type '" + expected + "', got '" + got + "'");
    }
}

ordered_json matrix_entries(const Matrix &m) {
    ordered_json entries = ordered_json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            entries.push_back(ordered_json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return entries;
}

Matrix matrix_from_entries(const json &entries, Index side, const std::string &what) {
    if (!entries.is_array() || static_cast<Index>(entries.size()) != side * side) {
        throw ParseError(what + ": entry count must equal side*side");
    }
    Matrix m(side, side);
    Index k = 0;
    for (const json &e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError(what + ": each entry must be a [re, im] number pair");
        }
        m(k / side, k % side) = Complex(e[0].get<double>(), e[1].get<double>());
        ++k;
    }
    if (!all_finite(m)) throw ParseError(what + ": entries must be finite");
    return m;
}

} // namespace

json load_document(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw ParseError("cannot parse '" + path.string() + "': " + e.what());
    }
    return doc;
}

void save_document(const std::filesystem::path &path, const ordered_json &doc) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

ordered_json graph_to_json(const QuantumLabeledGraph &g) {
    ordered_json doc;
    doc["conventions"] = conventions_header();
    doc["type"] = "graph";
    ordered_json nodes = ordered_json::array();
    for (const NodeInfo &n : g.nodes()) {
        nodes.push_back(ordered_json{{"dim", n.dim}, {"quiescent", n.quiescent}});
    }
    doc["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const auto &[a, b] : g.edges()) {
        edges.push_back(ordered_json::array({a, b}));
    }
    doc["edges"] = std::move(edges);
    return doc;
}

QuantumLabeledGraph graph_from_json(const json &doc) {
    check_conventions(doc);
    check_type(doc, "graph");
    if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
        throw ParseError("graph document needs a 'nodes' array");
    }
    std::vector<NodeInfo> nodes;
    for (const json &n : doc.at("nodes")) {
        NodeInfo info;
        info.dim = n.value("dim", Index{0});
        info.quiescent = n.value("quiescent", Index{0});
        nodes.push_back(info);
    }
    std::vector<std::pair<int, int>> edges;
    for (const json &e : doc.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("graph edges must be [from, to] pairs");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    try {
        return QuantumLabeledGraph(std::move(nodes), std::move(edges));
    } catch (const Error &e) {
        throw ParseError(std::string("invalid graph document: ") + e.what());
    }
}

ordered_json operator_to_json(const Matrix &m) {
    ordered_json doc;
    doc["conventions"] = conventions_header();
    doc["type"] = "operator";
    doc["side"] = m.rows();
    doc["entries"] = matrix_entries(m);
    return doc;
}

Matrix operator_matrix_from_json(const json &doc) {
    check_conventions(doc);
    check_type(doc, "operator");
    const Index side = doc.value("side", Index{0});
    if (side < 1) throw ParseError("operator document needs a positive 'side'");
    return matrix_from_entries(doc.value("entries", json::array()), side, "operator");
}

DenseOperator bind_operator(const QuantumLabeledGraph &g, Matrix m) {
    const SpaceLayout layout = g.state_layout();
    if (m.rows() != layout.total_dim()) {
        throw DimensionError("operator side " + std::to_string(m.rows()) +
                             " does not match the graph's state dimension " +
                             std::to_string(layout.total_dim()));
    }
    return DenseOperator(layout, std::move(m));
}

ordered_json circuit_to_json(const Circuit &c) {
    ordered_json doc;
    doc["conventions"] = conventions_header();
    doc["type"] = "circuit";
    doc["graph"] = graph_to_json(c.graph);

    ordered_json slots = ordered_json::array();
    ordered_json dims = ordered_json::array();
    for (int p = 0; p < c.doubled.layout.slot_count(); ++p) {
        const Slot s = c.doubled.layout.slot(p);
        slots.push_back(ordered_json::array({s.tape, s.node}));
        dims.push_back(c.doubled.layout.dim(p));
    }
    doc["doubled"] = ordered_json{{"slots", std::move(slots)}, {"dims", std::move(dims)}};
    doc["encoding"] = ordered_json{{"kind", c.encoding.kind}};

    ordered_json layers = ordered_json::array();
    for (const auto &layer : c.layers) {
        ordered_json gates = ordered_json::array();
        for (const LocalGate &gate : layer) {
            ordered_json support = ordered_json::array();
            for (const Slot &s : gate.support.slots()) {
                support.push_back(ordered_json::array({s.tape, s.node}));
            }
            gates.push_back(ordered_json{
                {"origin_node", gate.origin_node},
                {"support", std::move(support)},
                {"block", ordered_json{{"side", gate.block.dim()},
                                       {"entries", matrix_entries(gate.block.entries)}}},
                {"localization_residual", gate.localization_residual},
                {"unitarity_residual", gate.unitarity_residual}});
        }
        layers.push_back(std::move(gates));
    }
    doc["layers"] = std::move(layers);
    doc["decoding"] = ordered_json{{"tape_swap", c.decoding.tape_swap},
                                   {"uncompute_quiescent", c.decoding.uncompute_quiescent}};
    doc["depth"] = c.depth;
    doc["schedule"] = c.schedule;
    doc["synthesis"] = ordered_json{{"max_localization_residual", c.max_localization_residual},
                                    {"max_unitarity_residual", c.max_unitarity_residual},
                                    {"max_commutator", c.max_commutator}};
    return doc;
}

Circuit circuit_from_json(const json &doc) {
    check_conventions(doc);
    check_type(doc, "circuit");

    Circuit c;
    c.graph = graph_from_json(doc.at("graph"));
    c.doubled = DoubledLayout::create(c.graph);

    // The serialized doubled layout is redundant with the graph; verify it
    // instead of trusting it.
    const json &doubled = doc.at("doubled");
    const json &slots = doubled.at("slots");
    if (static_cast<int>(slots.size()) != c.doubled.layout.slot_count()) {
        throw ParseError("circuit doubled layout does not match its graph");
    }
    for (int p = 0; p < c.doubled.layout.slot_count(); ++p) {
        const Slot expected = c.doubled.layout.slot(p);
        if (slots[static_cast<std::size_t>(p)][0].get<int>() != expected.tape ||
            slots[static_cast<std::size_t>(p)][1].get<int>() != expected.node ||
            doubled.at("dims")[static_cast<std::size_t>(p)].get<Index>() !=
                c.doubled.layout.dim(p)) {
            throw ParseError("circuit doubled layout does not match its graph");
        }
    }

    c.encoding.kind = doc.at("encoding").value("kind", "ancilla-quiescent");
    for (const json &layer : doc.at("layers")) {
        std::vector<LocalGate> gates;
        for (const json &g : layer) {
            LocalGate gate;
            gate.origin_node = g.at("origin_node").get<int>();
            std::vector<Slot> support_slots;
            for (const json &s : g.at("support")) {
                support_slots.push_back({s[0].get<int>(), s[1].get<int>()});
            }
            gate.support = Support(std::move(support_slots));
            const json &block = g.at("block");
            const Index side = block.value("side", Index{0});
            Matrix entries =
                matrix_from_entries(block.at("entries"), side, "circuit gate block");
            try {
                gate.block =
                    DenseOperator(c.doubled.layout.sub_layout(gate.support), std::move(entries));
            } catch (const Error &e) {
                throw ParseError(std::string("invalid circuit gate: ") + e.what());
            }
            gate.localization_residual = g.value("localization_residual", 0.0);
            gate.unitarity_residual = g.value("unitarity_residual", 0.0);
            gates.push_back(std::move(gate));
        }
        c.layers.push_back(std::move(gates));
    }

    const json &decoding = doc.at("decoding");
    c.decoding.tape_swap = decoding.value("tape_swap", true);
    c.decoding.uncompute_quiescent = decoding.value("uncompute_quiescent", false);
    c.depth = doc.value("depth", static_cast<int>(c.layers.size()) + 2);
    c.schedule = doc.value("schedule", "greedy");
    if (doc.contains("synthesis")) {
        const json &s = doc.at("synthesis");
        c.max_localization_residual = s.value("max_localization_residual", 0.0);
        c.max_unitarity_residual = s.value("max_unitarity_residual", 0.0);
        c.max_commutator = s.value("max_commutator", 0.0);
    }
    return c;
}

} // namespace causalc
