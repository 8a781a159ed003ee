#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <omp.h>

#include <algorithm>

#include "cfas/magic.hpp"
#include "cfas/solver.hpp"
#include "doctest.h"
#include "support/reference.hpp"

using namespace cfas;
using namespace cfas::solver;

namespace {

Tournament three_cycle() {
    TournamentBuilder b(3);
    b.set_arc(0, 1);
    b.set_arc(1, 2);
    b.set_arc(2, 0);
    return b.finalize();
}

// Quadratic-residue tournament on 7 vertices; the smallest tournament
// needing three transitive parts, hence without bipartite or forest FAS.
Tournament paley7() {
    TournamentBuilder b(7);
    for (int u = 0; u < 7; ++u)
        for (int v = 0; v < 7; ++v) {
            const int d = (v - u + 7) % 7;
            if (d == 1 || d == 2 || d == 4) b.set_arc(u, v);
        }
    return b.finalize();
}

bool same_outcome(const SearchOutcome& a, const SearchOutcome& b) {
    return a.decision == b.decision && a.stats == b.stats &&
           ((!a.witness && !b.witness) ||
            (a.witness && b.witness && *a.witness == *b.witness));
}

}  // namespace

TEST_CASE("predicate parsing") {
    CHECK(ClassPredicate::parse("forest").has_value());
    CHECK(ClassPredicate::parse("clique3")->clique_bound() == 3);
    CHECK(ClassPredicate::parse("clique3")->name() == "clique3");
    CHECK_FALSE(ClassPredicate::parse("clique").has_value());
    CHECK_FALSE(ClassPredicate::parse("pathwidth2").has_value());
}

TEST_CASE("magic tournament: unique witness is the identity") {
    SearchOutcome out =
        find_class_ordering(magic::magic_tournament(), ClassPredicate::forest());
    REQUIRE(out.decision);
    CHECK(*out.witness == Ordering::identity(8));
    CHECK(is_forest_ordering(magic::magic_tournament(), *out.witness));
}

TEST_CASE("transitive tournaments: witness is the topological order") {
    for (int n : {0, 1, 2, 5, 9}) {
        auto [t, ord] = transitive(n);
        SearchOutcome out = find_class_ordering(t, ClassPredicate::forest());
        REQUIRE(out.decision);
        CHECK(*out.witness == ord);
    }
}

TEST_CASE("paley-7 has no forest ordering") {
    SearchOutcome pruned =
        find_class_ordering(paley7(), ClassPredicate::forest());
    CHECK_FALSE(pruned.decision);
    SearchOutcome oracle =
        exhaustive_oracle(paley7(), ClassPredicate::forest());
    CHECK_FALSE(oracle.decision);
    CHECK(oracle.stats.nodes == 5040);  // the full sweep, nothing accepted
}

TEST_CASE("pruned search agrees with the oracle on all 5-vertex"
          " tournaments") {
    for (int bits = 0; bits < (1 << 10); ++bits) {
        Tournament t = testing::tournament_from_bits(5, bits);
        for (auto pred : {ClassPredicate::forest(), ClassPredicate::tree()}) {
            SearchOutcome fast = find_class_ordering_serial(t, pred);
            SearchOutcome oracle = exhaustive_oracle_serial(t, pred);
            CHECK(fast.decision == oracle.decision);
            if (fast.decision) {
                CHECK(*fast.witness == *oracle.witness);  // both lex-least
                CHECK(pred.full_check(backedge_graph(t, *fast.witness)));
            }
        }
    }
}

TEST_CASE("serial and parallel searches are byte-for-byte identical") {
    testing::Rng rng(1234);
    for (int round = 0; round < 60; ++round) {
        const int n = 1 + static_cast<int>(rng.below(8));
        Tournament t = testing::random_tournament(n, rng);
        std::vector<ClassPredicate> preds = {ClassPredicate::forest(),
                                             ClassPredicate::tree()};
        if (n <= 6) {  // the unpruned predicates walk the whole tree
            preds.push_back(ClassPredicate::bipartite());
            preds.push_back(ClassPredicate::clique_at_most(2));
        }
        for (const auto& pred : preds) {
            SearchOutcome serial = find_class_ordering_serial(t, pred);
            SearchOutcome parallel = find_class_ordering(t, pred);
            CHECK(same_outcome(serial, parallel));
        }
    }
}

TEST_CASE("worker count does not change any outcome") {
    testing::Rng rng(4321);
    Tournament t = testing::random_tournament(8, rng);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    SearchOutcome one = find_class_ordering(t, ClassPredicate::forest());
    SearchOutcome one_oracle = exhaustive_oracle(t, ClassPredicate::forest());
    omp_set_num_threads(saved > 1 ? saved : 4);
    SearchOutcome many = find_class_ordering(t, ClassPredicate::forest());
    SearchOutcome many_oracle = exhaustive_oracle(t, ClassPredicate::forest());
    omp_set_num_threads(saved);
    CHECK(same_outcome(one, many));
    CHECK(same_outcome(one_oracle, many_oracle));
}

TEST_CASE("oracle: serial equals parallel") {
    testing::Rng rng(88);
    for (int round = 0; round < 20; ++round) {
        Tournament t = testing::random_tournament(7, rng);
        SearchOutcome serial =
            exhaustive_oracle_serial(t, ClassPredicate::forest());
        SearchOutcome parallel = exhaustive_oracle(t, ClassPredicate::forest());
        CHECK(same_outcome(serial, parallel));
    }
}

TEST_CASE("tree predicate on the directed 3-cycle") {
    // Frozen from enumerating the six orderings: (0,2,1) is the first
    // whose two back edges form a spanning path.
    SearchOutcome out = exhaustive_oracle(three_cycle(), ClassPredicate::tree());
    REQUIRE(out.decision);
    CHECK(out.witness->sequence() == std::vector<int>{0, 2, 1});
    SearchOutcome pruned =
        find_class_ordering(three_cycle(), ClassPredicate::tree());
    REQUIRE(pruned.decision);
    CHECK(*pruned.witness == *out.witness);
}

TEST_CASE("forest and tree decisions coincide") {
    testing::Rng rng(5150);
    for (int round = 0; round < 40; ++round) {
        Tournament t = testing::random_tournament(7, rng);
        SearchOutcome forest = find_class_ordering(t, ClassPredicate::forest());
        SearchOutcome tree = find_class_ordering(t, ClassPredicate::tree());
        CHECK(forest.decision == tree.decision);
        if (forest.decision) {
            Ordering converted = forest_to_tree(t, *forest.witness);
            CHECK(is_tree_ordering(t, converted));
        }
    }
}

TEST_CASE("pruning changes node counts, never decisions") {
    testing::Rng rng(31337);
    bool some_pruning_happened = false;
    for (int round = 0; round < 25; ++round) {
        Tournament t = testing::random_tournament(7, rng);
        SearchOutcome pruned =
            find_class_ordering_serial(t, ClassPredicate::forest());
        SearchOutcome unpruned =
            exhaustive_oracle_serial(t, ClassPredicate::forest());
        CHECK(pruned.decision == unpruned.decision);
        if (pruned.stats.prunes > 0) some_pruning_happened = true;
    }
    CHECK(some_pruning_happened);
}

TEST_CASE("clique-1 backedge graphs single out transitive tournaments") {
    auto [t4, o4] = transitive(4);
    CHECK(find_class_ordering(t4, ClassPredicate::clique_at_most(1)).decision);
    CHECK_FALSE(find_class_ordering(three_cycle(),
                                    ClassPredicate::clique_at_most(1))
                    .decision);
}

TEST_CASE("bipartite predicate matches the two-part dichromatic bound") {
    testing::Rng rng(2718);
    int positives = 0, negatives = 0;
    for (int round = 0; round < 30; ++round) {
        const int n = 4 + static_cast<int>(rng.below(4));
        Tournament t = testing::random_tournament(n, rng);
        const bool two_partition = dichromatic_via_partitions(t) <= 2;
        const bool bipartite_fas =
            find_class_ordering(t, ClassPredicate::bipartite()).decision;
        CHECK(two_partition == bipartite_fas);
        (bipartite_fas ? positives : negatives)++;
    }
    CHECK(positives > 0);
    CHECK_FALSE(find_class_ordering(paley7(), ClassPredicate::bipartite())
                    .decision);  // dic(paley7) = 3
}

TEST_CASE("dichromatic number") {
    auto [t6, o6] = transitive(6);
    CHECK(dichromatic_number(t6) == 1);
    CHECK(dichromatic_number(three_cycle()) == 2);
    CHECK(dichromatic_number(paley7()) == 3);  // frozen from the oracle
    CHECK(dichromatic_number(transitive(0).first) == 0);
}

TEST_CASE("dichromatic routes agree on every 5-vertex tournament") {
    bool all_agree = true;
#pragma omp parallel for schedule(dynamic, 16) reduction(&& : all_agree)
    for (int bits = 0; bits < (1 << 10); ++bits) {
        Tournament t = testing::tournament_from_bits(5, bits);
        all_agree = all_agree && (dichromatic_via_orderings(t) ==
                                  dichromatic_via_partitions(t));
    }
    CHECK(all_agree);
}

TEST_CASE("tournament clique number") {
    auto [t5, o5] = transitive(5);
    CHECK(clique_number(t5) == 1);
    CHECK(clique_number(three_cycle()) == 2);
}

TEST_CASE("clique number at most two iff a triangle-free FAS exists") {
    testing::Rng rng(161803);
    for (int round = 0; round < 25; ++round) {
        const int n = 4 + static_cast<int>(rng.below(3));
        Tournament t = testing::random_tournament(n, rng);
        const bool small_clique = clique_number(t) <= 2;
        const bool predicate =
            find_class_ordering(t, ClassPredicate::clique_at_most(2)).decision;
        CHECK(small_clique == predicate);
    }
}

TEST_CASE("brute-force guards are hard errors") {
    auto [t11, o11] = transitive(11);
    CHECK_THROWS_AS(exhaustive_oracle(t11, ClassPredicate::forest()),
                    std::invalid_argument);
    auto [t9, o9] = transitive(9);
    CHECK_THROWS_AS(dichromatic_number(t9), std::invalid_argument);
    CHECK_THROWS_AS(clique_number(t9), std::invalid_argument);
}
