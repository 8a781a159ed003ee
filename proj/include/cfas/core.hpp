#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfas {

using VertexId = int;

// Thrown when an input fails a semantic check (non-forest ordering,
// non-satisfying assignment).  CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a check that is guaranteed by construction fails anyway.
// Seeing this exception means a bug, not bad input.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {
inline int word_count(int n) { return (n + 63) / 64; }
}

// A permutation of {0,...,n-1} kept in both directions: sequence maps a
// position to the vertex sitting there, position maps a vertex to its rank.
class Ordering {
public:
    Ordering() = default;

    static Ordering identity(int n);
    // Validates that `seq` is a bijection onto {0,...,n-1}.
    static Ordering of_sequence(std::vector<VertexId> seq);

    int size() const { return static_cast<int>(seq_.size()); }
    VertexId at(int pos) const { return seq_[pos]; }
    int position(VertexId v) const { return pos_[v]; }
    bool precedes(VertexId u, VertexId v) const { return pos_[u] < pos_[v]; }

    const std::vector<VertexId>& sequence() const { return seq_; }
    const std::vector<int>& positions() const { return pos_; }

    Ordering reversed() const;

    friend bool operator==(const Ordering& a, const Ordering& b) {
        return a.seq_ == b.seq_;
    }

private:
    std::vector<VertexId> seq_;
    std::vector<int> pos_;
};

// Complete orientation on n labelled vertices.  Immutable once built; use
// TournamentBuilder or the factory helpers.  Arcs are stored as one bitset
// row per vertex (bit v of row u set iff arc u->v), so adjacency tests and
// masked scans are word operations.
class Tournament {
public:
    Tournament() = default;

    int size() const { return n_; }
    std::size_t arc_count() const {
        return static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    }

    bool arc(VertexId u, VertexId v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >>
                (v & 63)) & 1u;
    }
    int out_degree(VertexId u) const;

    int words() const { return words_; }
    const std::uint64_t* out_row(VertexId u) const {
        return bits_.data() + static_cast<std::size_t>(u) * words_;
    }

    // Optional vertex labels (empty when unlabeled).
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

private:
    friend class TournamentBuilder;
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::string> labels_;
};

// Accumulates arcs one pair at a time.  Every pair may be defined exactly
// once; finalize() requires all pairs, finalize_forward() orients the
// remaining ones from earlier to later in a given ordering.
class TournamentBuilder {
public:
    explicit TournamentBuilder(int n);

    int size() const { return n_; }
    void set_arc(VertexId u, VertexId v);
    bool defined(VertexId u, VertexId v) const;
    bool arc(VertexId u, VertexId v) const;

    Tournament finalize(std::vector<std::string> labels = {}) const;
    Tournament finalize_forward(const Ordering& ord,
                                std::vector<std::string> labels = {}) const;

private:
    void check_pair(VertexId u, VertexId v) const;
    Tournament assemble(std::vector<std::string> labels) const;

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> defined_;
};

// Undirected simple graph on {0,...,n-1}; adjacency bitsets.  The main use
// is the backedge graph T^ord of an ordered tournament, but tests build
// arbitrary graphs through add_edge as well.
class BackedgeGraph {
public:
    BackedgeGraph() = default;
    explicit BackedgeGraph(int n);

    int size() const { return n_; }
    std::size_t edge_count() const { return edges_; }

    void add_edge(VertexId u, VertexId v);
    bool has_edge(VertexId u, VertexId v) const {
        return (adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >>
                (v & 63)) & 1u;
    }
    int degree(VertexId u) const;

    int words() const { return words_; }
    const std::uint64_t* row(VertexId u) const {
        return adj_.data() + static_cast<std::size_t>(u) * words_;
    }

    // All edges as (min,max) pairs in lexicographic order.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> adj_;
    std::size_t edges_ = 0;
};

// Witness that a graph is 1-degenerate: vertices in removal order, and for
// each one the single neighbour it still had when removed (-1 if isolated).
struct PeelSchedule {
    std::vector<VertexId> order;
    std::vector<VertexId> witness_neighbor;
};

// Union-find without path compression so that unions can be rolled back.
class UnionFind {
public:
    explicit UnionFind(int n = 0) { reset(n); }
    void reset(int n);

    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    // Returns false (and changes nothing) when a and b are already joined.
    bool unite(int a, int b);
    int components() const { return components_; }

    std::size_t mark() const { return log_.size(); }
    void rollback(std::size_t mark);

private:
    struct Record {
        int child;
        int parent;
        bool rank_bumped;
    };
    std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<Record> log_;
    int components_ = 0;
};

struct Arc {
    VertexId from;
    VertexId to;
    friend bool operator==(const Arc&, const Arc&) = default;
};

// Arcs installed by add_backarc_matching, split into the matched back-arcs
// src_i -> dst_i and the remaining forward cross arcs dst_j -> src_i (i != j).
struct BackarcMatching {
    std::vector<Arc> back_arcs;
    std::vector<Arc> forward_arcs;
};

// --- operations ---------------------------------------------------------

// The undirected graph with edge {u,v} whenever v precedes u and arc u->v
// exists.
BackedgeGraph backedge_graph(const Tournament& t, const Ordering& ord);

// Acyclicity via union-find.  Tests cross-check this against an independent
// depth-first search.
bool is_forest(const BackedgeGraph& g);
bool is_connected(const BackedgeGraph& g);

bool is_forest_ordering(const Tournament& t, const Ordering& ord);
// Forest plus connected with exactly n-1 edges.  The single vertex graph is
// a tree; the empty graph is not.
bool is_tree_ordering(const Tournament& t, const Ordering& ord);

// Disjoint union of t1 and t2 with every arc from t1 to t2; vertex ids of
// t2 are shifted by |V(t1)|.
Tournament compose(const Tournament& t1, const Tournament& t2);

// The unique acyclic tournament on n vertices together with its topological
// ordering.
std::pair<Tournament, Ordering> transitive(int n);

// Installs arcs {src_i -> dst_i} plus {dst_j -> src_i : i != j} into the
// builder.  Requires |src| == |dst| >= 1, all vertices distinct, both sides
// listed in increasing ord position, and dst entirely before src in ord.
// Under ord the induced back edges are then exactly the perfect matching
// {src_i, dst_i}.
BackarcMatching add_backarc_matching(TournamentBuilder& host,
                                     std::span<const VertexId> src,
                                     std::span<const VertexId> dst,
                                     const Ordering& ord);

// Turns a forest-ordering into a tree-ordering by a single left-to-right
// sweep that swaps consecutive vertices lying in distinct backedge
// components.  A swapped pair (x before y) must carry arc x->y, otherwise
// the edge {x,y} would already join the components, so each swap adds
// exactly one component-joining edge.
Ordering forest_to_tree(const Tournament& t, const Ordering& ord);

// Property-test helper: requires a => xs => b in t and b before a in ord,
// then reports whether every x in xs is adjacent to a or b in the backedge
// graph.  Always true for correct inputs; false signals a bug.
bool lemma_tool_check(const Tournament& t, const Ordering& ord, VertexId a,
                      VertexId b, std::span<const VertexId> xs);

// Iteratively removes vertices of degree <= 1 (smallest id first).
// Succeeds exactly when g is a forest.
std::optional<PeelSchedule> peel_1_degenerate(const BackedgeGraph& g);

// Replays a schedule against g: every removal must be legal (degree <= 1,
// matching witness) and the schedule must exhaust the graph.
bool peel_replays_legally(const BackedgeGraph& g, const PeelSchedule& s);

// Sub-tournament induced by the given vertices, relabelled 0..k-1 in list
// order.
Tournament induced_subtournament(const Tournament& t,
                                 std::span<const VertexId> vertices);

}  // namespace cfas
