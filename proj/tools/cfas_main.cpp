// cfas: forest feedback arc sets in tournaments.
//
// Subcommands: reduce, encode, decode, solve, stats, dic, omega,
// magic-verify.  Exit codes: 0 success / yes, 1 validation failure / no,
// 2 parse or usage error.

#include <omp.h>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cfas/assignment.hpp"
#include "cfas/core.hpp"
#include "cfas/io.hpp"
#include "cfas/magic.hpp"
#include "cfas/reduction.hpp"
#include "cfas/solver.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

void apply_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int run_reduce(const std::string& cnf_path, const std::string& out_path,
               const std::string& order_path, const std::string& roles_path) {
    auto instance = cfas::io::parse_dimacs(cfas::io::read_file(cnf_path));
    auto reduced = cfas::reduction::reduce(instance);
    cfas::io::write_file(out_path, cfas::io::write_tournament(reduced.tournament));
    if (!order_path.empty())
        cfas::io::write_file(order_path,
                             cfas::io::write_ordering(reduced.star_order));
    if (!roles_path.empty())
        cfas::io::write_file(roles_path, cfas::io::write_roles(reduced));
    return kExitYes;
}

int run_encode(const std::string& cnf_path, const std::string& assignment_path,
               const std::string& out_path) {
    auto instance = cfas::io::parse_dimacs(cfas::io::read_file(cnf_path));
    auto nu = cfas::io::read_assignment(cfas::io::read_file(assignment_path),
                                        instance.num_vars);
    auto reduced = cfas::reduction::reduce(instance);
    auto ordering = cfas::assignment::encode(reduced, nu);
    cfas::io::write_file(out_path, cfas::io::write_ordering(ordering));
    return kExitYes;
}

int run_decode(const std::string& cnf_path, const std::string& ordering_path) {
    auto instance = cfas::io::parse_dimacs(cfas::io::read_file(cnf_path));
    auto reduced = cfas::reduction::reduce(instance);
    auto ordering = cfas::io::read_ordering(cfas::io::read_file(ordering_path),
                                            reduced.tournament);
    auto nu = cfas::assignment::decode(reduced, ordering);
    for (int v = 1; v <= nu.num_vars; ++v)
        std::cout << "v" << v << "=" << (nu.value(v) ? "true" : "false")
                  << "\n";
    return kExitYes;
}

int run_solve(const std::string& tournament_path, const std::string& cls,
              bool oracle, const std::string& witness_path, int threads) {
    apply_threads(threads);
    auto pred = cfas::solver::ClassPredicate::parse(cls);
    if (!pred) {
        std::cerr << "error: unknown class '" << cls
                  << "' (use forest, tree, bipartite or clique<k>)\n";
        return kExitError;
    }
    auto t = cfas::io::read_tournament(cfas::io::read_file(tournament_path));
    auto outcome = oracle ? cfas::solver::exhaustive_oracle(t, *pred)
                          : cfas::solver::find_class_ordering(t, *pred);
    std::cout << (outcome.decision ? "yes" : "no") << "\n"
              << "nodes " << outcome.stats.nodes << " prunes "
              << outcome.stats.prunes << "\n";
    if (outcome.decision && !witness_path.empty())
        cfas::io::write_file(witness_path,
                             cfas::io::write_ordering(*outcome.witness));
    return outcome.decision ? kExitYes : kExitNo;
}

int run_stats(const std::string& tournament_path) {
    auto t = cfas::io::read_tournament(cfas::io::read_file(tournament_path));
    std::cout << "n " << t.size() << "\n"
              << "arcs " << t.arc_count() << "\n";
    return kExitYes;
}

int run_dic(const std::string& tournament_path) {
    auto t = cfas::io::read_tournament(cfas::io::read_file(tournament_path));
    std::cout << cfas::solver::dichromatic_number(t) << "\n";
    return kExitYes;
}

int run_omega(const std::string& tournament_path) {
    auto t = cfas::io::read_tournament(cfas::io::read_file(tournament_path));
    std::cout << cfas::solver::clique_number(t) << "\n";
    return kExitYes;
}

int run_magic_verify(int threads) {
    apply_threads(threads);
    auto report = cfas::magic::verify_lemma_2_2();
    std::cout << report.to_string();
    return report.pass() ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forest feedback arc sets in tournaments"};
    app.require_subcommand(1);

    std::string cnf_path, out_path, order_path, roles_path;
    auto* reduce = app.add_subcommand(
        "reduce", "compile a 3-SAT instance into a tournament");
    reduce->add_option("--cnf", cnf_path, "DIMACS CNF input")->required();
    reduce->add_option("--out", out_path, "tournament output file")->required();
    reduce->add_option("--emit-order", order_path,
                       "also write the construction ordering");
    reduce->add_option("--emit-roles", roles_path,
                       "also write the vertex role table");

    std::string enc_cnf, enc_assignment, enc_out;
    auto* encode = app.add_subcommand(
        "encode", "turn a satisfying assignment into a forest-ordering");
    encode->add_option("--cnf", enc_cnf, "DIMACS CNF input")->required();
    encode->add_option("--assignment", enc_assignment, "assignment file")
        ->required();
    encode->add_option("--out", enc_out, "ordering output file")->required();

    std::string dec_cnf, dec_ordering;
    auto* decode = app.add_subcommand(
        "decode", "read an assignment off a forest-ordering");
    decode->add_option("--cnf", dec_cnf, "DIMACS CNF input")->required();
    decode->add_option("--ordering", dec_ordering, "ordering file")->required();

    std::string solve_tournament, solve_class, solve_witness;
    bool solve_oracle = false;
    int solve_threads = 0;
    auto* solve = app.add_subcommand(
        "solve", "decide whether a tournament has a C-FAS");
    solve->add_option("--tournament", solve_tournament, "tournament file")
        ->required();
    solve->add_option("--class", solve_class,
                      "forest | tree | bipartite | clique<k>")
        ->required();
    solve->add_flag("--oracle", solve_oracle,
                    "use the exhaustive oracle (<= 10 vertices)");
    solve->add_option("--witness", solve_witness,
                      "write the witness ordering here on yes");
    solve->add_option("--threads", solve_threads,
                      "worker count (0 = runtime default)");

    std::string stats_tournament;
    auto* stats = app.add_subcommand("stats", "print tournament size facts");
    stats->add_option("--tournament", stats_tournament, "tournament file")
        ->required();

    std::string dic_tournament;
    auto* dic = app.add_subcommand(
        "dic", "dichromatic number by brute force (<= 8 vertices)");
    dic->add_option("--tournament", dic_tournament, "tournament file")
        ->required();

    std::string omega_tournament;
    auto* omega = app.add_subcommand(
        "omega", "tournament clique number by brute force (<= 8 vertices)");
    omega->add_option("--tournament", omega_tournament, "tournament file")
        ->required();

    int magic_threads = 0;
    auto* magic = app.add_subcommand(
        "magic-verify", "check the unique-forest-ordering tournament");
    magic->add_option("--threads", magic_threads,
                      "worker count (0 = runtime default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (reduce->parsed())
            return run_reduce(cnf_path, out_path, order_path, roles_path);
        if (encode->parsed()) return run_encode(enc_cnf, enc_assignment, enc_out);
        if (decode->parsed()) return run_decode(dec_cnf, dec_ordering);
        if (solve->parsed())
            return run_solve(solve_tournament, solve_class, solve_oracle,
                             solve_witness, solve_threads);
        if (stats->parsed()) return run_stats(stats_tournament);
        if (dic->parsed()) return run_dic(dic_tournament);
        if (omega->parsed()) return run_omega(omega_tournament);
        if (magic->parsed()) return run_magic_verify(magic_threads);
    } catch (const cfas::ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kExitNo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
