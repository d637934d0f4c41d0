// causalc: certify causality of a unitary over a quantum labeled graph and
// compile it into a local circuit on the doubled (computed/uncomputed) space.
//
// Exit codes: 0 success / property holds, 1 certification or verification
// failure, 2 malformed input or usage error.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <optional>

#include "causalc/serialize.hpp"
#include "causalc/zoo.hpp"

namespace {

using namespace causalc;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

ordered_json report_for(const std::string &command) {
    ordered_json report;
    report["tool"] = "causalc";
    report["command"] = command;
    return report;
}

void emit(const ordered_json &report, const std::string &report_path) {
    if (report_path.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        save_document(report_path, report);
    }
}

ordered_json node_checks_to_json(const CausalityReport &r) {
    ordered_json out;
    out["overall"] = r.overall;
    out["unitarity_residual"] = r.unitarity_residual;
    out["worst_residual"] = r.worst_residual();
    ordered_json per_node = ordered_json::array();
    for (const NodeCheck &n : r.per_node) {
        per_node.push_back(ordered_json{{"node", n.node},
                                        {"passed", n.passed},
                                        {"residual", n.residual},
                                        {"witness", n.witness}});
    }
    out["per_node"] = std::move(per_node);
    return out;
}

struct CheckOptions {
    std::string graph_path;
    std::string operator_path;
    std::string report_path;
    double tol = 1e-9;
    int samples = 20;
    std::uint64_t seed = 0;
    bool inverse = false;
};

int run_check(const CheckOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    ordered_json report = report_for("check");
    report["inputs"] = ordered_json{{"graph", opt.graph_path}, {"operator", opt.operator_path}};
    report["parameters"] = ordered_json{
        {"tol", opt.tol}, {"samples", opt.samples}, {"seed", opt.seed}, {"inverse", opt.inverse}};

    try {
        const QuantumLabeledGraph g = graph_from_json(load_document(opt.graph_path));
        const DenseOperator u =
            bind_operator(g, operator_matrix_from_json(load_document(opt.operator_path)));

        const CheckResult unitary = check_unitary(u, opt.tol);
        report["unitarity_residual"] = unitary.residual;
        if (!unitary.passed) {
            report["verdict"] = "not-unitary";
            report["timing_ms"] = elapsed_ms(start);
            emit(report, opt.report_path);
            std::cerr << "operator is not unitary (residual " << unitary.residual << ")\n";
            return 2;
        }

        const CausalityReport heisenberg = check_causal_heisenberg(u, g, opt.tol);
        const CausalityReport sampled =
            check_causal_state_sampled(u, g, opt.samples, opt.seed, opt.tol);
        report["heisenberg"] = node_checks_to_json(heisenberg);
        report["state_sampled"] = node_checks_to_json(sampled);

        bool causal = heisenberg.overall;
        if (opt.inverse) {
            const CausalityReport inverse = check_inverse_causal(u, g, opt.tol);
            report["inverse"] = node_checks_to_json(inverse);
            causal = causal && inverse.overall;
        }
        report["verdict"] = causal ? "causal" : "not-causal";
        report["timing_ms"] = elapsed_ms(start);
        emit(report, opt.report_path);

        if (!causal) {
            std::cerr << "certification failed; witness nodes:";
            for (int x : heisenberg.failed_nodes()) std::cerr << ' ' << x;
            std::cerr << '\n';
            return 1;
        }
        std::cout << "causal (worst residual " << heisenberg.worst_residual() << ")\n";
        return 0;
    } catch (const ParseError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    }
}

struct DecomposeOptions {
    std::string graph_path;
    std::string operator_path;
    std::string circuit_path;
    std::string report_path;
    double tol = 1e-9;
    std::string schedule = "greedy";
    std::string torus_dims;
};

std::vector<int> parse_dims(const std::string &csv) {
    std::vector<int> dims;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        dims.push_back(std::stoi(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return dims;
}

int run_decompose(const DecomposeOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    ordered_json report = report_for("decompose");
    report["inputs"] = ordered_json{{"graph", opt.graph_path}, {"operator", opt.operator_path}};
    report["parameters"] =
        ordered_json{{"tol", opt.tol}, {"schedule", opt.schedule}, {"torus_dims", opt.torus_dims}};

    try {
        const QuantumLabeledGraph g = graph_from_json(load_document(opt.graph_path));
        const DenseOperator u =
            bind_operator(g, operator_matrix_from_json(load_document(opt.operator_path)));

        std::optional<std::vector<std::vector<int>>> forced;
        if (opt.schedule == "torus-offsets") {
            if (opt.torus_dims.empty()) {
                std::cerr << "--schedule torus-offsets requires --torus-dims\n";
                return 2;
            }
            TorusSpec spec;
            spec.axes = parse_dims(opt.torus_dims);
            spec.cell_dim = g.node_count() > 0 ? g.node(0).dim : 2;
            spec.quiescent = g.node_count() > 0 ? g.node(0).quiescent : 0;
            spec.validate();
            if (spec.node_count() != g.node_count()) {
                std::cerr << "torus dims do not multiply out to the graph's node count\n";
                return 2;
            }
            std::vector<std::vector<int>> layers;
            for (const auto &z : binary_offsets(spec.dimension())) {
                std::vector<int> klass;
                for (int x = 0; x < spec.node_count(); ++x) {
                    const std::vector<int> c = torus_coords(spec, x);
                    bool match = true;
                    for (int k = 0; k < spec.dimension(); ++k) {
                        if (c[static_cast<std::size_t>(k)] % 2 != z[static_cast<std::size_t>(k)]) {
                            match = false;
                            break;
                        }
                    }
                    if (match) klass.push_back(x);
                }
                layers.push_back(std::move(klass));
            }
            forced = std::move(layers);
        }

        const Circuit circuit =
            assemble(u, g, opt.tol, forced ? &*forced : nullptr, opt.schedule);
        save_document(opt.circuit_path, circuit_to_json(circuit));

        const DegreeStats stats = degree_stats(g);
        const int bound = stats.max_in_closed * stats.max_in_closed;
        report["degree_stats"] = ordered_json{{"max_out", stats.max_out},
                                              {"max_in", stats.max_in},
                                              {"max_in_closed", stats.max_in_closed}};
        report["layer_count"] = static_cast<int>(circuit.layers.size());
        report["depth"] = circuit.depth;
        report["depth_bound"] = ordered_json{
            {"layer_bound", bound},
            {"depth_bound", bound + 2},
            {"within_bound", static_cast<int>(circuit.layers.size()) <= bound}};
        report["synthesis"] =
            ordered_json{{"max_localization_residual", circuit.max_localization_residual},
                         {"max_unitarity_residual", circuit.max_unitarity_residual},
                         {"max_commutator", circuit.max_commutator}};
        report["decoding"] = ordered_json{
            {"tape_swap", circuit.decoding.tape_swap},
            {"uncompute_quiescent", circuit.decoding.uncompute_quiescent}};
        ordered_json layers = ordered_json::array();
        for (const auto &layer : circuit.layers) {
            ordered_json nodes = ordered_json::array();
            for (const LocalGate &gate : layer) nodes.push_back(gate.origin_node);
            layers.push_back(std::move(nodes));
        }
        report["layers"] = std::move(layers);
        report["output_circuit"] = opt.circuit_path;
        report["verdict"] = "decomposed";
        report["timing_ms"] = elapsed_ms(start);
        emit(report, opt.report_path);

        std::cout << "decomposed: " << circuit.layers.size() << " gate layers, depth "
                  << circuit.depth << " (bound " << bound + 2 << "), degrees out/in/closed "
                  << stats.max_out << '/' << stats.max_in << '/' << stats.max_in_closed << '\n';
        return 0;
    } catch (const LocalizationViolation &e) {
        report["verdict"] = "not-causal";
        report["violation"] =
            ordered_json{{"node", e.node()}, {"residual", e.residual()}, {"message", e.what()}};
        report["timing_ms"] = elapsed_ms(start);
        emit(report, opt.report_path);
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const NotUnitaryError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    }
}

struct VerifyOptions {
    std::string circuit_path;
    std::string operator_path;
    std::string report_path;
    double verify_tol = 1e-8;
    int samples = 20;
    std::uint64_t seed = 0;
};

int run_verify(const VerifyOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    ordered_json report = report_for("verify");
    report["inputs"] =
        ordered_json{{"circuit", opt.circuit_path}, {"operator", opt.operator_path}};
    report["parameters"] = ordered_json{
        {"verify_tol", opt.verify_tol}, {"samples", opt.samples}, {"seed", opt.seed}};

    try {
        const Circuit circuit = circuit_from_json(load_document(opt.circuit_path));
        const DenseOperator u = bind_operator(
            circuit.graph, operator_matrix_from_json(load_document(opt.operator_path)));

        const VerificationReport result =
            verify_representation(circuit, u, opt.samples, opt.seed, opt.verify_tol);
        report["max_deviation"] = result.max_deviation;
        report["worst_input"] = result.worst_input;
        report["basis_states"] = result.basis_states;
        report["random_states"] = result.random_states;
        report["verdict"] = result.passed ? "verified" : "mismatch";
        report["timing_ms"] = elapsed_ms(start);
        emit(report, opt.report_path);

        if (!result.passed) {
            std::cerr << "circuit does not reproduce the operator: deviation "
                      << result.max_deviation << " at " << result.worst_input << '\n';
            return 1;
        }
        std::cout << "verified (max deviation " << result.max_deviation << ")\n";
        return 0;
    } catch (const ParseError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    }
}

const ZooInstance *find_instance(const std::vector<ZooInstance> &zoo, const std::string &name) {
    for (const auto &inst : zoo) {
        if (inst.name == name) return &inst;
    }
    return nullptr;
}

int demo_pipeline(const ZooInstance &inst) {
    std::cout << "[" << inst.name << "] " << inst.note << '\n';
    const CausalityReport cert = check_causal_heisenberg(inst.op, inst.graph, 1e-9);
    std::cout << "  causality: " << (cert.overall ? "pass" : "fail") << " (worst residual "
              << cert.worst_residual() << ")\n";
    if (!cert.overall) return 1;
    const Circuit circuit = assemble(inst.op, inst.graph, 1e-9);
    std::cout << "  decomposed into " << circuit.layers.size() << " gate layers, depth "
              << circuit.depth << '\n';
    const VerificationReport v = verify_representation(circuit, inst.op, 20, 0, 1e-8);
    std::cout << "  verification: " << (v.passed ? "pass" : "fail") << " (max deviation "
              << v.max_deviation << ")\n";
    return v.passed ? 0 : 1;
}

int demo_block_representation(const QcaInstance &inst) {
    std::cout << "[" << inst.name << "] " << inst.note << '\n';
    const BlockRepresentation rep = block_representation(inst.op, inst.spec, 1e-8);
    std::cout << "  " << rep.layer_count() << " block layers on alphabet dimension "
              << rep.doubled_alphabet_dim() << ", K-translation deviation "
              << rep.block_translation_deviation << '\n';
    std::cout << "  automaton/encoding intertwining deviation " << rep.he_eg_deviation << '\n';
    return 0;
}

int run_demo(const std::string &name) {
    const auto causal = causal_zoo();
    const auto noncausal = noncausal_zoo();
    const auto qca = qca_zoo();

    try {
        if (name == "shift") {
            return demo_pipeline(*find_instance(causal, "shift-z4"));
        }
        if (name == "local-unitary") {
            return demo_block_representation(qca[0]);
        }
        if (name == "partitioned-1d") {
            return demo_pipeline(*find_instance(causal, "partitioned-1d-z4"));
        }
        if (name == "partitioned-2d") {
            return demo_block_representation(qca[2]);
        }
        if (name == "counterexample") {
            const ZooInstance &inst = *find_instance(noncausal, "distant-swap");
            std::cout << "[" << inst.name << "] " << inst.note << '\n';
            const CausalityReport cert = check_causal_heisenberg(inst.op, inst.graph, 1e-9);
            std::cout << "  causality: " << (cert.overall ? "pass" : "fail")
                      << ", witness nodes:";
            for (int x : cert.failed_nodes()) std::cout << ' ' << x;
            std::cout << '\n';
            if (cert.overall) return 1; // the counterexample must fail
            try {
                synthesize_k(inst.op, inst.graph, cert.failed_nodes().front(), 1e-9);
                std::cout << "  synthesis unexpectedly succeeded\n";
                return 1;
            } catch (const LocalizationViolation &e) {
                std::cout << "  synthesis rejected as expected: " << e.what() << '\n';
                return 0;
            }
        }
    } catch (const Error &e) {
        std::cerr << "demo failed: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "unknown demo '" << name
              << "' (available: shift, local-unitary, partitioned-1d, partitioned-2d, "
                 "counterexample)\n";
    return 2;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"certify causal unitaries and compile them into local circuits"};
    app.require_subcommand(1);

    CheckOptions check_opt;
    CLI::App *check = app.add_subcommand("check", "certify causality of an operator");
    check->add_option("graph", check_opt.graph_path, "graph document")->required();
    check->add_option("operator", check_opt.operator_path, "operator document")->required();
    check->add_option("--tol", check_opt.tol, "certification tolerance");
    check->add_option("--samples", check_opt.samples, "state samples per node");
    check->add_option("--seed", check_opt.seed, "random seed");
    check->add_flag("--inverse", check_opt.inverse,
                    "also certify the adjoint against the transposed graph");
    check->add_option("--report", check_opt.report_path, "write the JSON report here");

    DecomposeOptions dec_opt;
    CLI::App *dec = app.add_subcommand("decompose", "compile a causal operator into a circuit");
    dec->add_option("graph", dec_opt.graph_path, "graph document")->required();
    dec->add_option("operator", dec_opt.operator_path, "operator document")->required();
    dec->add_option("circuit", dec_opt.circuit_path, "output circuit document")->required();
    dec->add_option("--tol", dec_opt.tol, "synthesis tolerance");
    dec->add_option("--schedule", dec_opt.schedule, "layer schedule: greedy or torus-offsets")
        ->check(CLI::IsMember({"greedy", "torus-offsets"}));
    dec->add_option("--torus-dims", dec_opt.torus_dims,
                    "comma-separated axis lengths (row-major node ids); required by "
                    "torus-offsets");
    dec->add_option("--report", dec_opt.report_path, "write the JSON report here");

    VerifyOptions ver_opt;
    CLI::App *ver = app.add_subcommand("verify", "check a circuit against an operator");
    ver->add_option("circuit", ver_opt.circuit_path, "circuit document")->required();
    ver->add_option("operator", ver_opt.operator_path, "operator document")->required();
    ver->add_option("--verify-tol", ver_opt.verify_tol, "end-to-end equality tolerance");
    ver->add_option("--samples", ver_opt.samples, "random states beyond the basis sweep");
    ver->add_option("--seed", ver_opt.seed, "random seed");
    ver->add_option("--report", ver_opt.report_path, "write the JSON report here");

    std::string demo_name;
    CLI::App *demo = app.add_subcommand("demo", "run a named end-to-end demonstration");
    demo->add_option("name", demo_name,
                     "shift | local-unitary | partitioned-1d | partitioned-2d | counterexample")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return run_check(check_opt);
        if (dec->parsed()) return run_decompose(dec_opt);
        if (ver->parsed()) return run_verify(ver_opt);
        if (demo->parsed()) return run_demo(demo_name);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
