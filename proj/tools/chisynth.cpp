// chisynth: exact synthesis of qutrit Clifford+R circuits and an explorer for
// the underlying tree of self-dual lattice classes.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "chisynth/building.hpp"
#include "chisynth/synthesis.hpp"
#include "chisynth/wire.hpp"

using namespace chisynth;

namespace {

constexpr int kExitVerifyMismatch = 1;
constexpr int kExitNotUnitary = 2;
constexpr int kExitParse = 3;
constexpr int kExitDescentStuck = 4;
constexpr int kExitBoundExceeded = 5;
constexpr int kExitSelfTest = 6;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

int default_max_depth() {
    if (const char* env = std::getenv("CHISYNTH_MAX_DEPTH")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed CHISYNTH_MAX_DEPTH\n";
        }
    }
    return 8;
}

int cmd_synth(const std::string& in_path, const std::string& out_path) {
    MatrixDocument doc = parse_matrix_document(read_file(in_path));
    SynthesisResult r = exact_synthesize(doc.matrix);
    emit(out_path, write_word_file(r.word, sde(doc.matrix), r.steps));
    std::cerr << "synthesized " << r.word.size() << " gates in " << r.steps
              << " descent steps (initial l " << r.initial_l << ")\n";
    if (!r.decrements.empty()) {
        std::map<long, long> dist;
        for (long d : r.decrements) ++dist[d];
        std::cerr << "l decrements:";
        for (const auto& [d, count] : dist) std::cerr << " " << d << "x" << count;
        std::cerr << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& word_path, const std::string& matrix_path) {
    GateWord w = parse_word_file(read_file(word_path));
    MatrixDocument doc = parse_matrix_document(read_file(matrix_path));
    if (verify(w, doc.matrix)) return 0;
    std::cerr << "word does not evaluate to the matrix\n";
    return kExitVerifyMismatch;
}

int cmd_explore(int depth, const std::string& format, const std::string& out_path, int max_depth) {
    if (depth < 0) throw Error("depth must be nonnegative");
    if (depth > max_depth)
        throw BoundExceeded("depth " + std::to_string(depth) + " exceeds the bound " +
                            std::to_string(max_depth));
    BuildingGraph g = bfs_explore(depth);
    emit(out_path, format == "json" ? export_json(g) : export_dot(g));
    std::cerr << "explored " << g.nodes.size() << " vertices, " << g.edge_count() << " edges\n";
    return 0;
}

int cmd_random(std::size_t length, std::uint64_t seed, const std::string& out_prefix) {
    auto [w, u] = random_unitary(length, seed);
    MatrixDocument doc{u, "eval of a seeded random word (length " + std::to_string(length) +
                              ", seed " + std::to_string(seed) + ")"};
    write_file(out_prefix + ".word", write_word_file(w, sde(u), 0));
    write_file(out_prefix + ".json", write_matrix_document(doc));
    std::cerr << "wrote " << out_prefix << ".word and " << out_prefix << ".json\n";
    return 0;
}

int cmd_selftest() {
    bool ok = true;
    auto line = [&](const std::string& name, long measured, long claimed, bool internal_ok) {
        std::cout << name << ": " << measured << " (claimed: " << claimed << ")"
                  << (measured == claimed ? "" : "  [differs from claim]")
                  << (internal_ok ? "" : "  INTERNAL FAILURE") << "\n";
        ok = ok && internal_ok;
    };

    // counting lemmas, brute force
    long iso_count = -1;
    bool iso_uniform = true;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    for (int e = 0; e < 3; ++e)
                        for (int f = 0; f < 3; ++f) {
                            F3Mat m;
                            m.m = {{{static_cast<F3>(a), static_cast<F3>(b), static_cast<F3>(c)},
                                    {static_cast<F3>(b), static_cast<F3>(d), static_cast<F3>(e)},
                                    {static_cast<F3>(c), static_cast<F3>(e), static_cast<F3>(f)}}};
                            if (f3_det(m) == 0) continue;
                            long n = static_cast<long>(isotropic_lines(m).size());
                            if (iso_count < 0) iso_count = n;
                            if (n != iso_count) iso_uniform = false;
                        }
    line("isotropic lines per symmetric form", iso_count, 4, iso_uniform && iso_count == 4);

    long plane_count = -1;
    bool plane_uniform = true;
    for (F3 a = 0; a < 3; ++a)
        for (F3 b = 0; b < 3; ++b) {
            if (a == 0 && b == 0) continue;
            F3Mat m;
            m.m = {{{0, a, b}, {f3_neg(a), 0, 0}, {f3_neg(b), 0, 0}}};
            long n = static_cast<long>(self_dual_planes(m).size());
            if (plane_count < 0) plane_count = n;
            if (n != plane_count) plane_uniform = false;
        }
    line("self-dual planes per antisymmetric form", plane_count, 2, plane_uniform);

    // monomial group and its word table
    auto monomials = enumerate_monomials();
    line("monomial group order", static_cast<long>(monomials.size()), 1296,
         monomials.size() == 1296);
    const MonomialTable& table = MonomialTable::instance();
    long covered = 0;
    for (const Monomial& m : monomials)
        if (eval_word(table.word_for(m)) == m.to_matrix()) ++covered;
    line("word table coverage", covered, 1296, covered == 1296);

    // building ball: degrees, bipartiteness, tree shape
    BuildingGraph g = bfs_explore(4);
    long pure_deg = -1, alt_deg = -1;
    bool degrees_uniform = true, bipartite = true;
    for (const auto& n : g.nodes) {
        if (n.depth >= 4) continue;
        long d = static_cast<long>(n.adj.size());
        long& slot = n.vertex.is_pure() ? pure_deg : alt_deg;
        if (slot < 0) slot = d;
        if (slot != d) degrees_uniform = false;
    }
    for (const auto& [u, v] : g.edges)
        if (g.nodes[static_cast<std::size_t>(u)].vertex.is_pure() ==
            g.nodes[static_cast<std::size_t>(v)].vertex.is_pure())
            bipartite = false;
    bool tree = g.edge_count() == g.nodes.size() - 1;
    line("pure vertex degree", pure_deg, 4, degrees_uniform && pure_deg == 4);
    line("alternating vertex degree", alt_deg, 2, degrees_uniform && alt_deg > 0);
    std::cout << "ball(4) bipartite: " << (bipartite ? "yes" : "NO")
              << ", tree: " << (tree ? "yes" : "NO") << "\n";
    ok = ok && bipartite && tree;

    // the distance of the H vertex and the orbit computation
    long dist = graph_distance(origin_vertex(), apply(gate_matrix(Gate::H), origin_vertex()));
    long metric = tilde_d(Matrix3::identity(), gate_matrix(Gate::H));
    line("distance(origin, H origin)", dist, 4, dist == metric);
    OrbitReport orbit = orbit_stabilizer_of_H_vertex();
    line("orbit of H vertex under monomials", static_cast<long>(orbit.orbit_size), 12, true);
    line("stabilizer of H vertex", static_cast<long>(orbit.stabilizer_order), 108, true);
    line("orbit x stabilizer", static_cast<long>(orbit.product), 1296, orbit.product == 1296);

    std::cout << (ok ? "selftest: all internal consistency checks passed"
                     : "selftest: INTERNAL INCONSISTENCY")
              << "\n";
    return ok ? 0 : kExitSelfTest;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact synthesis for the qutrit Clifford+R gate set"};
    app.require_subcommand(1);

    std::string in_path, out_path, word_path, matrix_path;
    std::string format = "dot";
    int depth = 6;
    int max_depth_flag = -1;
    std::size_t length = 10;
    std::uint64_t seed = 0;

    CLI::App* synth = app.add_subcommand("synth", "synthesize a gate word for a matrix document");
    synth->add_option("--in", in_path, "input MatrixDocument (json)")->required();
    synth->add_option("--out", out_path, "output word file (stdout if omitted)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check a word against a matrix document");
    verify_cmd->add_option("word", word_path, "word file")->required();
    verify_cmd->add_option("matrix", matrix_path, "MatrixDocument (json)")->required();

    CLI::App* explore = app.add_subcommand("explore", "export the ball around the origin vertex");
    explore->add_option("--depth", depth, "ball radius (default 6)");
    explore->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    explore->add_option("--out", out_path, "output path (stdout if omitted)");
    explore->add_option("--max-depth", max_depth_flag,
                        "exploration bound (default 8; env CHISYNTH_MAX_DEPTH)");

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the finite checks against the classical claimed counts");

    CLI::App* random_cmd = app.add_subcommand("random", "write a seeded random word/matrix pair");
    random_cmd->add_option("--length", length, "word length");
    random_cmd->add_option("--seed", seed, "seed");
    random_cmd->add_option("--out", out_path, "output prefix")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(in_path, out_path);
        if (verify_cmd->parsed()) return cmd_verify(word_path, matrix_path);
        if (explore->parsed()) {
            int max_depth = max_depth_flag >= 0 ? max_depth_flag : default_max_depth();
            return cmd_explore(depth, format, out_path, max_depth);
        }
        if (selftest->parsed()) return cmd_selftest();
        if (random_cmd->parsed()) return cmd_random(length, seed, out_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NotUnitary& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotUnitary;
    } catch (const NotInRing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotUnitary;
    } catch (const DescentStuck& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDescentStuck;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBoundExceeded;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 10;
    }
    return 0;
}
