#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "causalc/qca.hpp"
#include "causalc/serialize.hpp"

using namespace causalc;

namespace {

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("causalc-test-" + name);
}

struct FileGuard {
    std::filesystem::path path;
    ~FileGuard() { std::filesystem::remove(path); }
};

QuantumLabeledGraph sample_graph() {
    return QuantumLabeledGraph({{2, 0}, {3, 2}, {2, 1}},
                               {{0, 0}, {0, 1}, {1, 2}, {2, 0}});
}

DenseOperator shift_on_ring(int length) {
    return make_shift_qca(TorusSpec{{length}, 2, 0});
}

} // namespace

TEST_CASE("the conventions header pins the index order") {
    const ordered_json header = conventions_header();
    CHECK(header.at("index_order") == "node-ascending,first-most-significant");
    CHECK(header.at("tapes") == ordered_json::array({"computed", "uncomputed"}));
}

TEST_CASE("graph documents round-trip exactly") {
    const QuantumLabeledGraph g = sample_graph();
    const ordered_json doc = graph_to_json(g);
    CHECK(doc.at("type") == "graph");
    CHECK(doc.contains("conventions"));
    CHECK(doc.at("nodes").size() == 3);
    CHECK(doc.at("nodes")[1].at("dim") == 3);
    CHECK(doc.at("nodes")[1].at("quiescent") == 2);
    CHECK(doc.at("edges").size() == 4);

    const QuantumLabeledGraph back = graph_from_json(json(doc));
    CHECK(back == g);
    // Serializing the round-tripped graph is byte-identical.
    CHECK(graph_to_json(back).dump(2) == doc.dump(2));
}

TEST_CASE("graph parsing accepts a missing header and rejects a wrong one") {
    json doc = json(graph_to_json(sample_graph()));
    doc.erase("conventions");
    CHECK(graph_from_json(doc) == sample_graph());

    doc["conventions"] = {{"index_order", "column-major"}};
    CHECK_THROWS_AS(graph_from_json(doc), ParseError);

    json bad_tapes = json(graph_to_json(sample_graph()));
    bad_tapes["conventions"]["tapes"] = {"uncomputed", "computed"};
    CHECK_THROWS_AS(graph_from_json(bad_tapes), ParseError);
}

TEST_CASE("graph parsing rejects malformed documents") {
    CHECK_THROWS_AS(graph_from_json(json{{"type", "operator"}}), ParseError);
    CHECK_THROWS_AS(graph_from_json(json{{"type", "graph"}}), ParseError); // no nodes
    CHECK_THROWS_AS(
        graph_from_json(json{{"type", "graph"}, {"nodes", json::array()}, {"edges", {{0}}}}),
        ParseError);
    // Structurally valid JSON but an invalid graph (edge out of range).
    json doc = json(graph_to_json(sample_graph()));
    doc["edges"].push_back({0, 9});
    CHECK_THROWS_AS(graph_from_json(doc), ParseError);
    // Node with a broken quiescent index.
    json bad_node = json(graph_to_json(sample_graph()));
    bad_node["nodes"][0]["quiescent"] = 5;
    CHECK_THROWS_AS(graph_from_json(bad_node), ParseError);
}

TEST_CASE("operator documents round-trip bitwise") {
    const DenseOperator u = random_unitary(sample_graph().state_layout(), 77);
    const ordered_json doc = operator_to_json(u.entries);
    CHECK(doc.at("type") == "operator");
    CHECK(doc.at("side") == 12);
    CHECK(doc.at("entries").size() == 144);

    const Matrix back = operator_matrix_from_json(json(doc));
    CHECK(max_abs(back - u.entries) == 0.0);
    CHECK(operator_to_json(back).dump(2) == doc.dump(2));
}

TEST_CASE("operator parsing rejects malformed documents") {
    CHECK_THROWS_AS(operator_matrix_from_json(json{{"type", "operator"}}), ParseError);
    CHECK_THROWS_AS(
        operator_matrix_from_json(json{{"type", "operator"}, {"side", 2}, {"entries", {1, 2}}}),
        ParseError);
    json wrong_count = json(operator_to_json(Matrix::Identity(2, 2)));
    wrong_count["entries"].erase(3);
    CHECK_THROWS_AS(operator_matrix_from_json(wrong_count), ParseError);
    json bad_pair = json(operator_to_json(Matrix::Identity(2, 2)));
    bad_pair["entries"][0] = {1.0};
    CHECK_THROWS_AS(operator_matrix_from_json(bad_pair), ParseError);
    json not_number = json(operator_to_json(Matrix::Identity(2, 2)));
    not_number["entries"][0] = {"one", 0.0};
    CHECK_THROWS_AS(operator_matrix_from_json(not_number), ParseError);
}

TEST_CASE("binding an operator validates the graph dimension") {
    const QuantumLabeledGraph g = sample_graph(); // total dim 12
    CHECK_NOTHROW(bind_operator(g, Matrix::Identity(12, 12)));
    CHECK_THROWS_AS(bind_operator(g, Matrix::Identity(8, 8)), DimensionError);
    const DenseOperator bound = bind_operator(g, Matrix::Identity(12, 12));
    CHECK(bound.layout == g.state_layout());
}

TEST_CASE("documents survive a disk round-trip") {
    const FileGuard guard{temp_file("graph.json")};
    const QuantumLabeledGraph g = sample_graph();
    save_document(guard.path, graph_to_json(g));
    const json loaded = load_document(guard.path);
    CHECK(graph_from_json(loaded) == g);

    // The file ends with exactly one newline.
    std::ifstream in(guard.path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE_FALSE(text.empty());
    CHECK(text.back() == '\n');
    CHECK(text[text.size() - 2] != '\n');
}

TEST_CASE("loading rejects missing and malformed files") {
    CHECK_THROWS_AS(load_document(temp_file("does-not-exist.json")), ParseError);
    const FileGuard guard{temp_file("broken.json")};
    std::ofstream(guard.path) << "{ not json";
    CHECK_THROWS_AS(load_document(guard.path), ParseError);
}

TEST_CASE("circuit documents round-trip through json and disk") {
    const int length = 4;
    std::vector<NodeInfo> nodes(static_cast<std::size_t>(length));
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < length; ++x)
        edges.emplace_back(x, (x + length - 1) % length);
    const QuantumLabeledGraph g(nodes, edges);
    const DenseOperator u = shift_on_ring(length);
    const Circuit circuit = assemble(u, g, 1e-9);

    const ordered_json doc = circuit_to_json(circuit);
    CHECK(doc.at("type") == "circuit");
    CHECK(doc.at("schedule") == "greedy");
    CHECK(doc.at("depth") == 3);
    CHECK(doc.at("encoding").at("kind") == "ancilla-quiescent");
    CHECK(doc.at("decoding").at("tape_swap") == true);
    CHECK(doc.at("decoding").at("uncompute_quiescent") == true);
    CHECK(doc.at("layers").size() == 1);
    CHECK(doc.at("layers")[0].size() == 4);
    CHECK(doc.at("doubled").at("slots").size() == 8);

    const Circuit back = circuit_from_json(json(doc));
    CHECK(back.graph == circuit.graph);
    CHECK(back.depth == circuit.depth);
    CHECK(back.schedule == circuit.schedule);
    CHECK(back.decoding.uncompute_quiescent == circuit.decoding.uncompute_quiescent);
    REQUIRE(back.gate_count() == circuit.gate_count());
    for (int x = 0; x < length; ++x) {
        const LocalGate *a = circuit.find_gate(x);
        const LocalGate *b = back.find_gate(x);
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        CHECK(a->support == b->support);
        CHECK(max_abs(a->block.entries - b->block.entries) == 0.0);
        CHECK(a->localization_residual == b->localization_residual);
        CHECK(a->unitarity_residual == b->unitarity_residual);
    }
    CHECK(back.max_localization_residual == circuit.max_localization_residual);
    CHECK(back.max_unitarity_residual == circuit.max_unitarity_residual);
    CHECK(back.max_commutator == circuit.max_commutator);

    // Byte stability: serialize(parse(serialize(c))) == serialize(c).
    CHECK(circuit_to_json(back).dump(2) == doc.dump(2));

    // The parsed circuit still runs and verifies.
    CHECK(verify_representation(back, u, 4, 9, 1e-9).passed);

    // Disk round-trip.
    const FileGuard guard{temp_file("circuit.json")};
    save_document(guard.path, doc);
    const Circuit from_disk = circuit_from_json(load_document(guard.path));
    CHECK(circuit_to_json(from_disk).dump(2) == doc.dump(2));
}

TEST_CASE("circuit parsing rejects tampered documents") {
    const int length = 2;
    std::vector<NodeInfo> nodes(static_cast<std::size_t>(length));
    const QuantumLabeledGraph g(nodes, {{0, 0}, {1, 1}});
    const Circuit circuit = assemble(DenseOperator::identity(g.state_layout()), g, 1e-9);
    const ordered_json doc = circuit_to_json(circuit);

    SUBCASE("wrong type") {
        json bad = json(doc);
        bad["type"] = "graph";
        CHECK_THROWS_AS(circuit_from_json(bad), ParseError);
    }
    SUBCASE("doubled layout disagrees with the graph") {
        json bad = json(doc);
        bad["doubled"]["dims"][0] = 7;
        CHECK_THROWS_AS(circuit_from_json(bad), ParseError);
    }
    SUBCASE("missing slots") {
        json bad = json(doc);
        bad["doubled"]["slots"].erase(0);
        CHECK_THROWS_AS(circuit_from_json(bad), ParseError);
    }
    SUBCASE("gate block side disagrees with its support") {
        json bad = json(doc);
        bad["layers"][0][0]["block"]["side"] = 2;
        CHECK_THROWS_AS(circuit_from_json(bad), ParseError);
    }
    SUBCASE("gate support referencing unknown slots") {
        json bad = json(doc);
        bad["layers"][0][0]["support"][0] = {0, 99};
        CHECK_THROWS_AS(circuit_from_json(bad), ParseError);
    }
}
