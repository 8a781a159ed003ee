#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cfas/core.hpp"

namespace cfas::solver {

// Exhaustive enumeration refuses more than 10 vertices; the dichromatic
// and clique brute forces refuse more than 8.
inline constexpr int kOracleMaxVertices = 10;
inline constexpr int kBruteForceMaxVertices = 8;

struct SearchStats {
    std::uint64_t nodes = 0;   // placements reached
    std::uint64_t prunes = 0;  // placements rejected by the incremental check
    friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SearchOutcome {
    bool decision = false;
    std::optional<Ordering> witness;
    SearchStats stats;
};

// A named graph-class membership test.  The forest and tree predicates
// carry the incremental star-insertion rule: appending a vertex u adds the
// star {u,w : w placed, arc u->w}, which keeps the backedge graph a forest
// iff those w lie in pairwise distinct components.  Bipartite and bounded
// clique are checked whole at the leaves.
class ClassPredicate {
public:
    enum class Kind { forest, tree, bipartite, clique_at_most };

    static ClassPredicate forest() { return ClassPredicate(Kind::forest, 0); }
    static ClassPredicate tree() { return ClassPredicate(Kind::tree, 0); }
    static ClassPredicate bipartite() {
        return ClassPredicate(Kind::bipartite, 0);
    }
    static ClassPredicate clique_at_most(int k);
    // "forest" | "tree" | "bipartite" | "clique<k>"
    static std::optional<ClassPredicate> parse(const std::string& name);

    Kind kind() const { return kind_; }
    int clique_bound() const { return clique_bound_; }
    std::string name() const;

    bool incremental() const {
        return kind_ == Kind::forest || kind_ == Kind::tree;
    }
    bool full_check(const BackedgeGraph& g) const;

private:
    ClassPredicate(Kind kind, int bound) : kind_(kind), clique_bound_(bound) {}
    Kind kind_;
    int clique_bound_;
};

// Complete left-to-right placement search.  The witness is the
// lexicographically smallest accepted ordering and the stats follow the
// serial early-stopping semantics, so outcome, witness and stats are
// identical across runs and worker counts.
SearchOutcome find_class_ordering(const Tournament& t,
                                  const ClassPredicate& pred);
SearchOutcome find_class_ordering_serial(const Tournament& t,
                                         const ClassPredicate& pred);

// Ground truth by full enumeration of all |V|! orderings (full predicate
// check on each backedge graph, no pruning).  |V| <= kOracleMaxVertices.
SearchOutcome exhaustive_oracle(const Tournament& t,
                                const ClassPredicate& pred);
SearchOutcome exhaustive_oracle_serial(const Tournament& t,
                                       const ClassPredicate& pred);

// Exact helpers on small graphs.
int chromatic_number(const BackedgeGraph& g);
int graph_clique_number(const BackedgeGraph& g);
bool is_bipartite(const BackedgeGraph& g);

// min over all orderings of the chromatic number of the backedge graph.
int dichromatic_via_orderings(const Tournament& t);
// min number of parts in a partition of V into transitive sets.
int dichromatic_via_partitions(const Tournament& t);
// Runs both routes and demands agreement.
int dichromatic_number(const Tournament& t);

// min over all orderings of the clique number of the backedge graph.
int clique_number(const Tournament& t);

}  // namespace cfas::solver
