#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cfas/core.hpp"

namespace cfas::reduction {

struct Literal {
    int variable = 0;  // 1-based
    bool negated = false;
    Literal complement() const { return {variable, !negated}; }
    friend bool operator==(const Literal&, const Literal&) = default;
};

// A 3-SAT instance.  Clause order and in-clause literal order are
// semantically significant and preserved exactly.
struct CnfInstance {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    // 1-based global literal positions l_1 .. l_3k.
    Literal literal_at(int j) const {
        return clauses[(j - 1) / 3][(j - 1) % 3];
    }
    void validate() const;
    friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

// Number of positions j with l_j == lit, counted in clause order.  This
// fixes the i-th-occurrence indexing used by the matchings.
int occurrences(const CnfInstance& instance, Literal lit);

enum class Polarity { positive, negative };

// Blocks are indexed in their canonical order v_1, v̄_1, ..., v_n, v̄_n,
// l_1, ..., l_3k.
using BlockId = int;

struct VarVertexRole {
    int variable;  // 1-based
    Polarity polarity;
    friend bool operator==(const VarVertexRole&, const VarVertexRole&) =
        default;
};
struct LitVertexRole {
    int index;  // 1-based global literal position
    friend bool operator==(const LitVertexRole&, const LitVertexRole&) =
        default;
};
struct MagicVertexRole {
    BlockId owner;
    int rank;  // 0..7; rank 0 is the block's ell vertex
    friend bool operator==(const MagicVertexRole&, const MagicVertexRole&) =
        default;
};
enum class PartKind { comp, occ, cls };
struct GadgetVertexRole {
    BlockId owner;
    bool y_side;  // false: N part, true: Y part
    PartKind part;
    int occ_index;  // 1-based when part == occ, else 0
    int slot;       // position within the part
    friend bool operator==(const GadgetVertexRole&, const GadgetVertexRole&) =
        default;
};

using VertexRole =
    std::variant<VarVertexRole, LitVertexRole, MagicVertexRole,
                 GadgetVertexRole>;

// Per-block vertex ids.  For variable blocks, n_parts/y_parts hold the
// complement part first and then one part per occurrence of the complement
// literal; for literal blocks, n_parts holds the variable part and the
// clause part and y_parts the single unpartitioned Y set.
struct BlockLayout {
    VertexRole owner_role;
    Literal literal;  // the literal this block's vertex stands for
    VertexId owner = -1;
    std::array<VertexId, 8> magic{};  // ranks 0..7; magic[0] is ell
    std::vector<std::vector<VertexId>> n_parts;
    std::vector<std::vector<VertexId>> y_parts;

    VertexId ell() const { return magic[0]; }
    bool is_literal_block() const {
        return std::holds_alternative<LitVertexRole>(owner_role);
    }
    std::vector<VertexId> n_vertices() const;
    std::vector<VertexId> y_vertices() const;
};

// Back-arcs recorded while linking, used to check that the backedge graph
// of the construction decomposes into exactly these layers.
struct ConstructionLayers {
    std::vector<Arc> matching_arcs;
    std::vector<Arc> clause_arcs;
};

struct ReducedTournament {
    Tournament tournament;
    Ordering star_order;
    std::vector<VertexRole> roles;    // by vertex id
    std::vector<BlockLayout> blocks;  // by BlockId
    ConstructionLayers layers;
    CnfInstance instance;

    int block_count() const { return static_cast<int>(blocks.size()); }
    const std::string& label(VertexId v) const {
        return tournament.labels()[v];
    }
    VertexId vertex_by_label(const std::string& label) const;

private:
    friend class ReductionBuilder;
    std::unordered_map<std::string, VertexId> label_index_;
};

// Canonical block addressing.
inline int block_count(const CnfInstance& i) {
    return 2 * i.num_vars + 3 * i.num_clauses();
}
BlockId block_of_var(const CnfInstance& i, int variable, Polarity p);
BlockId block_of_literal_position(const CnfInstance& i, int j);
// The literal the block's vertex represents (x_i for v_i, x̄_i for v̄_i,
// the clause literal for l_j).
Literal block_literal(const CnfInstance& i, BlockId b);
std::string block_label(const CnfInstance& i, BlockId b);
std::string role_label(const CnfInstance& i, const VertexRole& role);

// Staged builder mirroring the construction: base blocks, gadgets,
// placement, inter-gadget matchings, clause arcs, forward fill.  reduce()
// runs all stages; the individual stages stay public so tests can check
// each one's contract.
class ReductionBuilder {
public:
    explicit ReductionBuilder(CnfInstance instance);

    void build_base();
    void attach_gadgets();
    void place_and_link();
    void link_gadgets();
    void add_clause_arcs();
    ReducedTournament finalize();

    // Introspection for tests.
    int created_vertices() const { return next_id_; }
    const std::vector<VertexRole>& roles() const { return roles_; }
    const std::vector<BlockLayout>& blocks() const { return blocks_; }
    const ConstructionLayers& layers() const { return layers_; }
    // Identity over created vertices until placement, the star order after.
    Ordering current_order() const;
    // Completes a copy of the partial tournament with forward arcs.
    Tournament complete_forward() const;

private:
    enum class Stage { fresh, base, gadgets, placed, linked, claused, done };
    void require_stage(Stage expected, const char* op);

    CnfInstance instance_;
    Stage stage_ = Stage::fresh;
    int total_vertices_ = 0;
    int next_id_ = 0;
    TournamentBuilder arcs_;
    std::vector<VertexRole> roles_;
    std::vector<BlockLayout> blocks_;
    std::vector<std::vector<int>> occ_positions_;  // by BlockId: positions j
    ConstructionLayers layers_;
    std::vector<VertexId> star_sequence_;
};

// Compiles a 3-SAT instance into the ordered tournament of the
// construction.  Deterministic: identical input gives identical output.
ReducedTournament reduce(const CnfInstance& instance);

}  // namespace cfas::reduction
