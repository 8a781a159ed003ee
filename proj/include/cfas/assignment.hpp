#pragma once

#include <string>
#include <vector>

#include "cfas/core.hpp"
#include "cfas/reduction.hpp"

namespace cfas::assignment {

struct Assignment {
    int num_vars = 0;
    std::vector<bool> values;  // values[i-1] for variable i

    static Assignment all_false(int n) { return {n, std::vector<bool>(n)}; }
    bool value(int var) const { return values[var - 1]; }
    void set(int var, bool v) { values[var - 1] = v; }
    bool evaluates(reduction::Literal lit) const {
        return value(lit.variable) != lit.negated;
    }
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

bool satisfies(const reduction::CnfInstance& instance, const Assignment& a);

// L means the block's vertex precedes its ell vertex; the truth-value
// carrier of the whole reduction.
enum class Side { left, right };

struct SideLabels {
    std::vector<Side> by_block;
    Side at(reduction::BlockId b) const { return by_block[b]; }
};

SideLabels side_labels(const reduction::ReducedTournament& r,
                       const Ordering& ord);

// For every variable vertex v and every x that is its complement vertex or
// an occurrence of the complement literal: exactly one of the pair carries
// L and the other R.
bool check_coherence(const SideLabels& labels,
                     const reduction::CnfInstance& instance);

// The star order with every vertex whose literal is false under nu moved
// right after its Y set.  Rejects non-satisfying assignments; the result is
// checked to be a forest-ordering before it is returned.
Ordering encode(const reduction::ReducedTournament& r, const Assignment& nu);

// Reads the assignment off a forest-ordering (variable i is true iff v_i
// precedes its ell vertex) and replays the coherence and satisfaction
// checks that hold for every genuine forest-ordering.
Assignment decode(const reduction::ReducedTournament& r, const Ordering& ord);

struct PeelStage {
    std::string name;
    std::vector<VertexId> removed;
};

// A peel of the encoded ordering's backedge graph whose stage boundaries
// mirror the construction: magic interiors, magic roots, the two gadget
// waves, the owner vertices, and the leftover per-clause paths.
struct StagedPeel {
    bool complete = false;
    std::vector<PeelStage> stages;
    PeelSchedule schedule;
    std::vector<VertexId> stuck;  // nonempty iff !complete
};

// Requires ord to be an encode output (checked structurally).
StagedPeel peeling_certificate(const reduction::ReducedTournament& r,
                               const Ordering& ord);

}  // namespace cfas::assignment
