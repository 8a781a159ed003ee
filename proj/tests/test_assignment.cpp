#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "cfas/assignment.hpp"
#include "cfas/magic.hpp"
#include "doctest.h"
#include "support/reference.hpp"

using namespace cfas;
using namespace cfas::assignment;
using reduction::BlockLayout;
using reduction::CnfInstance;
using reduction::Literal;
using reduction::ReducedTournament;

namespace {

CnfInstance single_clause_123() {
    CnfInstance i;
    i.num_vars = 3;
    i.clauses.push_back(
        {Literal{1, false}, Literal{2, false}, Literal{3, false}});
    return i;
}

Assignment from_bits(const std::vector<bool>& bits) {
    Assignment a = Assignment::all_false(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i)
        a.set(static_cast<int>(i) + 1, bits[i]);
    return a;
}

const std::vector<std::pair<int, int>> kMagicTreeRanks = {
    {0, 3}, {0, 4}, {0, 5}, {0, 7}, {1, 6}, {1, 7}, {2, 5}};

// Exact edge set the encode ordering must induce: per block the magic tree
// plus a Y-star (left) or an N-star with the owner-ell edge (right), plus
// the recorded matching and clause back-arcs.
std::set<std::pair<int, int>> expected_encode_layers(
    const ReducedTournament& r, const SideLabels& labels) {
    std::set<std::pair<int, int>> expected;
    auto put = [&](VertexId a, VertexId b) {
        expected.insert({std::min(a, b), std::max(a, b)});
    };
    for (int b = 0; b < r.block_count(); ++b) {
        const BlockLayout& block = r.blocks[b];
        for (auto [ra, rb] : kMagicTreeRanks)
            put(block.magic[ra], block.magic[rb]);
        if (labels.at(b) == Side::left) {
            for (VertexId y : block.y_vertices()) put(block.owner, y);
        } else {
            for (VertexId n : block.n_vertices()) put(block.owner, n);
            put(block.owner, block.ell());
        }
    }
    for (const Arc& a : r.layers.matching_arcs) put(a.from, a.to);
    for (const Arc& a : r.layers.clause_arcs) put(a.from, a.to);
    return expected;
}

}  // namespace

TEST_CASE("satisfies") {
    CnfInstance i = single_clause_123();
    CHECK(satisfies(i, from_bits({true, true, true})));
    CHECK_FALSE(satisfies(i, from_bits({false, false, false})));
}

TEST_CASE("satisfies agrees with the exhaustive sweep") {
    testing::Rng rng(31);
    for (int round = 0; round < 30; ++round) {
        CnfInstance i = testing::random_cnf(10, 8, rng);
        auto oracle = testing::satisfying_assignments(i);
        std::set<std::vector<bool>> oracle_set(oracle.begin(), oracle.end());
        for (std::uint64_t bits = 0; bits < (1ull << i.num_vars); ++bits) {
            std::vector<bool> values(i.num_vars);
            for (int v = 0; v < i.num_vars; ++v) values[v] = bits >> v & 1;
            CHECK(satisfies(i, from_bits(values)) ==
                  (oracle_set.count(values) > 0));
        }
    }
}

TEST_CASE("side labels of the construction order are all left") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    SideLabels labels = side_labels(r, r.star_order);
    for (int b = 0; b < r.block_count(); ++b)
        CHECK(labels.at(b) == Side::left);
}

TEST_CASE("encode output labels follow the assignment") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    Assignment nu = from_bits({true, false, true});
    Ordering ord = encode(r, nu);
    SideLabels labels = side_labels(r, ord);
    for (int b = 0; b < r.block_count(); ++b) {
        const bool truthy = nu.evaluates(r.blocks[b].literal);
        CHECK(labels.at(b) == (truthy ? Side::left : Side::right));
        // A vertex moved right after its Y set now follows its ell vertex.
        if (!truthy)
            CHECK(ord.precedes(r.blocks[b].ell(), r.blocks[b].owner));
    }
}

TEST_CASE("coherence") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    Assignment nu = from_bits({false, true, false});
    CHECK(check_coherence(side_labels(r, encode(r, nu)), r.instance));

    SideLabels all_left, all_right;
    all_left.by_block.assign(r.block_count(), Side::left);
    all_right.by_block.assign(r.block_count(), Side::right);
    CHECK_FALSE(check_coherence(all_left, r.instance));
    CHECK_FALSE(check_coherence(all_right, r.instance));
}

TEST_CASE("encode rejects a non-satisfying assignment") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    CHECK_THROWS_AS(encode(r, from_bits({false, false, false})),
                    ValidationError);
    CHECK_THROWS_AS(encode(r, Assignment::all_false(2)),
                    std::invalid_argument);
}

TEST_CASE("decode rejects a non-forest ordering") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    CHECK_THROWS_AS(decode(r, r.star_order.reversed()), ValidationError);
    CHECK_THROWS_AS(decode(r, Ordering::identity(3)), std::invalid_argument);
}

TEST_CASE("round trip over random satisfiable instances") {
    testing::Rng rng(77);
    int instances_used = 0, trips = 0;
    while (instances_used < 25) {
        CnfInstance i = testing::random_cnf(6, 10, rng);
        auto sat = testing::satisfying_assignments(i);
        if (sat.empty()) continue;
        ++instances_used;
        ReducedTournament r = reduction::reduce(i);
        for (const auto& bits : sat) {
            Assignment nu = from_bits(bits);
            Ordering ord = encode(r, nu);
            CHECK(is_forest_ordering(r.tournament, ord));
            CHECK(decode(r, ord) == nu);
            ++trips;

            auto edges = backedge_graph(r.tournament, ord).edges();
            CHECK(std::set<std::pair<int, int>>(edges.begin(), edges.end()) ==
                  expected_encode_layers(r, side_labels(r, ord)));
        }
    }
    CHECK(trips > 50);
}

TEST_CASE("gadget sets stay block-monotone in encode outputs") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    Ordering ord = encode(r, from_bits({false, true, false}));
    for (int a = 0; a < r.block_count(); ++a)
        for (int b = a + 1; b < r.block_count(); ++b) {
            CHECK(ord.precedes(r.blocks[a].owner, r.blocks[b].owner));
            CHECK(ord.precedes(r.blocks[a].n_vertices().back(),
                               r.blocks[b].n_vertices().front()));
            CHECK(ord.precedes(r.blocks[a].y_vertices().back(),
                               r.blocks[b].y_vertices().front()));
        }
}

TEST_CASE("right-labelled blocks induce a tree on B_w and N_w") {
    testing::Rng rng(555);
    for (int round = 0; round < 5; ++round) {
        CnfInstance i = testing::random_cnf(4, 6, rng);
        auto sat = testing::satisfying_assignments(i);
        if (sat.empty()) continue;
        ReducedTournament r = reduction::reduce(i);
        Ordering ord = encode(r, from_bits(sat.front()));
        SideLabels labels = side_labels(r, ord);
        BackedgeGraph g = backedge_graph(r.tournament, ord);
        for (int b = 0; b < r.block_count(); ++b) {
            if (labels.at(b) != Side::right) continue;
            const BlockLayout& block = r.blocks[b];
            std::vector<VertexId> verts{block.owner};
            verts.insert(verts.end(), block.magic.begin(), block.magic.end());
            for (VertexId n : block.n_vertices()) verts.push_back(n);
            BackedgeGraph sub(static_cast<int>(verts.size()));
            for (std::size_t x = 0; x < verts.size(); ++x)
                for (std::size_t y = x + 1; y < verts.size(); ++y)
                    if (g.has_edge(verts[x], verts[y]))
                        sub.add_edge(static_cast<int>(x),
                                     static_cast<int>(y));
            CHECK(is_forest(sub));
            CHECK(is_connected(sub));
        }
    }
}

TEST_CASE("staged peeling certificate on encode outputs") {
    testing::Rng rng(808);
    int checked = 0;
    while (checked < 10) {
        CnfInstance i = testing::random_cnf(5, 8, rng);
        auto sat = testing::satisfying_assignments(i);
        if (sat.empty()) continue;
        ++checked;
        ReducedTournament r = reduction::reduce(i);
        Ordering ord = encode(r, from_bits(sat.front()));
        StagedPeel peel = peeling_certificate(r, ord);
        REQUIRE(peel.complete);
        CHECK(peel.stuck.empty());
        CHECK(peel_replays_legally(backedge_graph(r.tournament, ord),
                                   peel.schedule));
        REQUIRE(peel.stages.size() == 6);
        CHECK(peel.stages[0].name == "magic_interiors");
        CHECK(peel.stages[5].name == "clause_paths");

        // After the owners stage only right-side literal vertices and
        // their clause parts remain, and they form paths of at most six
        // vertices.
        SideLabels labels = side_labels(r, ord);
        std::set<VertexId> expected_tail;
        for (int b = 0; b < r.block_count(); ++b) {
            const BlockLayout& block = r.blocks[b];
            if (block.is_literal_block() && labels.at(b) == Side::right) {
                expected_tail.insert(block.owner);
                for (VertexId v : block.n_parts[1]) expected_tail.insert(v);
            }
        }
        std::set<VertexId> actual_tail(peel.stages[5].removed.begin(),
                                       peel.stages[5].removed.end());
        CHECK(actual_tail == expected_tail);

        BackedgeGraph g = backedge_graph(r.tournament, ord);
        // Components of the leftover graph are paths: check degrees and
        // acyclicity on the induced subgraph.
        std::vector<VertexId> tail(expected_tail.begin(), expected_tail.end());
        BackedgeGraph sub(static_cast<int>(tail.size()));
        for (std::size_t x = 0; x < tail.size(); ++x)
            for (std::size_t y = x + 1; y < tail.size(); ++y)
                if (g.has_edge(tail[x], tail[y]))
                    sub.add_edge(static_cast<int>(x), static_cast<int>(y));
        CHECK(is_forest(sub));
        for (int v = 0; v < sub.size(); ++v) CHECK(sub.degree(v) <= 2);
        // A path component on the six per-clause vertices at most.
        CHECK(sub.size() <= 6 * i.num_clauses());
    }
}

TEST_CASE("peeling certificate rejects non-encode orderings") {
    ReducedTournament r = reduction::reduce(single_clause_123());
    std::vector<int> seq = r.star_order.sequence();
    std::swap(seq[2], seq[3]);  // break the block layout
    CHECK_THROWS_AS(peeling_certificate(r, Ordering::of_sequence(seq)),
                    std::invalid_argument);
}

TEST_CASE("peeling certificate reports stuck vertices on a bad layout") {
    // All-right labels are incoherent, so the backedge graph keeps cycles
    // and the staged peel must get stuck rather than lie.
    CnfInstance i;
    i.num_vars = 1;
    i.clauses.push_back(
        {Literal{1, false}, Literal{1, false}, Literal{1, false}});
    ReducedTournament r = reduction::reduce(i);
    std::vector<VertexId> seq;
    for (int b = 0; b < r.block_count(); ++b) {
        const BlockLayout& block = r.blocks[b];
        for (const auto& part : block.n_parts)
            seq.insert(seq.end(), part.begin(), part.end());
        seq.push_back(block.magic[0]);
        for (const auto& part : block.y_parts)
            seq.insert(seq.end(), part.begin(), part.end());
        seq.push_back(block.owner);
        for (int rank = 1; rank < 8; ++rank) seq.push_back(block.magic[rank]);
    }
    StagedPeel peel = peeling_certificate(r, Ordering::of_sequence(seq));
    CHECK_FALSE(peel.complete);
    CHECK_FALSE(peel.stuck.empty());
}

TEST_CASE("no forest-ordering of the pinch tournament puts b before a") {
    // {a} => M => {b} with b -> a: enumerating all 10! orderings finds
    // exactly three forest-orderings (count frozen from a brute-force
    // oracle) and in each of them a precedes b.
    Tournament t = testing::pinch_tournament();
    auto found = magic::enumerate_forest_orderings(t, 1 << 20);
    CHECK(found.size() == 3);
    for (const Ordering& ord : found) CHECK(ord.precedes(0, 9));
}
