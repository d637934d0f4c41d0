#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "causalc/localizer.hpp"

namespace causalc {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Every document carries this header so the index conventions travel with
/// the data: slots ascend by (node, tape), the first slot is the most
/// significant mixed-radix digit, and tape 0/1 are computed/uncomputed.
ordered_json conventions_header();

/// Parses a document from disk; throws ParseError on malformed input.
json load_document(const std::filesystem::path &path);
void save_document(const std::filesystem::path &path, const ordered_json &doc);

ordered_json graph_to_json(const QuantumLabeledGraph &g);
QuantumLabeledGraph graph_from_json(const json &doc);

/// Operator documents carry only the matrix (side + flat row-major [re, im]
/// pairs); the tensor layout is supplied by the graph they are paired with.
ordered_json operator_to_json(const Matrix &m);
Matrix operator_matrix_from_json(const json &doc);

/// Binds a parsed matrix to a graph's state space, validating that the
/// dimensions multiply out to the matrix side.
DenseOperator bind_operator(const QuantumLabeledGraph &g, Matrix m);

ordered_json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const json &doc);

} // namespace causalc
