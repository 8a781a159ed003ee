#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cfas/core.hpp"

namespace cfas::magic {

// The 8x8 orientation with a unique forest-ordering.  Row u, character v
// ('0'/'1') states whether arc u->v is present.  Vertex 0 is the leftmost
// vertex of the depicted order; the whole reduction leans on this object,
// so tests checksum it against these literals.
inline constexpr std::array<const char*, 8> kMagicRows = {
    "01100010", "00111100", "00011011", "10001111",
    "10000111", "10100011", "01000001", "11000000",
};

inline constexpr int kMagicSize = 8;

// Permutation sweeps refuse anything bigger than 10! ~ 3.6M orderings.
inline constexpr int kEnumerationMaxVertices = 10;

Tournament magic_tournament();

// All orderings whose backedge graph is a forest, lexicographically by
// sequence, truncated at cap.  Requires |V| <= kEnumerationMaxVertices.
// The parallel version partitions the permutation space by two-vertex
// prefix; results are merged in prefix order, so the output is identical
// for every worker count.
std::vector<Ordering> enumerate_forest_orderings(const Tournament& t,
                                                 std::size_t cap);
std::vector<Ordering> enumerate_forest_orderings_serial(const Tournament& t,
                                                        std::size_t cap);

struct Lemma22Report {
    std::uint64_t total_permutations = 0;
    std::uint64_t forest_count = 0;
    bool unique_forest_is_identity = false;
    std::size_t identity_backedge_count = 0;
    bool identity_is_tree = false;

    bool pass() const {
        return forest_count == 1 && unique_forest_is_identity &&
               identity_backedge_count == 7 && identity_is_tree;
    }
    std::string to_string() const;
};

// Sweeps all |V|! orderings of t and reports whether exactly one is a
// forest-ordering, whether that one is the identity, and whether its
// backedge graph is a 7-edge tree.
Lemma22Report verify_lemma_2_2(const Tournament& t);
Lemma22Report verify_lemma_2_2();

}  // namespace cfas::magic
