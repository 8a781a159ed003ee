#include "cfas/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <climits>
#include <numeric>

namespace cfas::solver {

ClassPredicate ClassPredicate::clique_at_most(int k) {
    if (k < 1) throw std::invalid_argument("clique bound must be >= 1");
    return ClassPredicate(Kind::clique_at_most, k);
}

std::optional<ClassPredicate> ClassPredicate::parse(const std::string& name) {
    if (name == "forest") return forest();
    if (name == "tree") return tree();
    if (name == "bipartite") return bipartite();
    if (name.rfind("clique", 0) == 0 && name.size() > 6) {
        int k = 0;
        for (std::size_t i = 6; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9') return std::nullopt;
            k = k * 10 + (name[i] - '0');
        }
        if (k >= 1) return clique_at_most(k);
    }
    return std::nullopt;
}

std::string ClassPredicate::name() const {
    switch (kind_) {
        case Kind::forest: return "forest";
        case Kind::tree: return "tree";
        case Kind::bipartite: return "bipartite";
        case Kind::clique_at_most:
            return "clique" + std::to_string(clique_bound_);
    }
    return "?";
}

bool is_bipartite(const BackedgeGraph& g) {
    const int n = g.size();
    std::vector<int> color(n, -1);
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            const std::uint64_t* r = g.row(u);
            for (int w = 0; w < g.words(); ++w) {
                std::uint64_t m = r[w];
                while (m) {
                    int v = (w << 6) + std::countr_zero(m);
                    m &= m - 1;
                    if (color[v] == -1) {
                        color[v] = color[u] ^ 1;
                        stack.push_back(v);
                    } else if (color[v] == color[u]) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

namespace {

void masks_of(const BackedgeGraph& g, std::vector<std::uint64_t>& adj) {
    adj.assign(g.size(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= 1ull << v;
        adj[v] |= 1ull << u;
    }
}

void clique_expand(const std::vector<std::uint64_t>& adj, std::uint64_t cand,
                   int size, int& best) {
    if (size > best) best = size;
    while (cand) {
        if (size + std::popcount(cand) <= best) return;
        const int v = std::countr_zero(cand);
        cand &= cand - 1;
        clique_expand(adj, cand & adj[v], size + 1, best);
    }
}

}  // namespace

int graph_clique_number(const BackedgeGraph& g) {
    if (g.size() > 64)
        throw std::invalid_argument("clique computation limited to 64 vertices");
    if (g.size() == 0) return 0;
    std::vector<std::uint64_t> adj;
    masks_of(g, adj);
    int best = 0;
    std::uint64_t all = g.size() == 64 ? ~0ull : (1ull << g.size()) - 1;
    clique_expand(adj, all, 0, best);
    return best;
}

int chromatic_number(const BackedgeGraph& g) {
    const int n = g.size();
    if (n > 20)
        throw std::invalid_argument("chromatic DP limited to 20 vertices");
    if (n == 0) return 0;
    std::vector<std::uint32_t> adj(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    const int full = (1 << n) - 1;
    std::vector<std::uint8_t> indep(full + 1, 0);
    std::vector<std::uint8_t> dp(full + 1, 0);
    indep[0] = 1;
    for (int mask = 1; mask <= full; ++mask) {
        const int v = std::countr_zero(static_cast<unsigned>(mask));
        const int rest = mask & (mask - 1);
        indep[mask] = indep[rest] && !(adj[v] & rest);
    }
    for (int mask = 1; mask <= full; ++mask) {
        const int low = mask & -mask;
        int best = UINT8_MAX;
        for (int s = mask; s; s = (s - 1) & mask)
            if ((s & low) && indep[s]) best = std::min(best, 1 + dp[mask ^ s]);
        dp[mask] = static_cast<std::uint8_t>(best);
    }
    return dp[full];
}

bool ClassPredicate::full_check(const BackedgeGraph& g) const {
    switch (kind_) {
        case Kind::forest: return is_forest(g);
        case Kind::tree: return is_forest(g) && is_connected(g);
        case Kind::bipartite: return is_bipartite(g);
        case Kind::clique_at_most:
            return graph_clique_number(g) <= clique_bound_;
    }
    return false;
}

// --- placement search -------------------------------------------------------

namespace {

struct Searcher {
    const Tournament& t;
    const ClassPredicate& pred;
    int n;
    int words;
    std::vector<std::uint64_t> placed;
    std::vector<VertexId> seq;
    UnionFind uf;
    SearchStats stats;
    std::vector<VertexId> witness;
    bool found = false;
    // Subtrees whose fold rank is above the first successful one are
    // discarded, so they may stop early without affecting determinism.
    const std::atomic<int>* abort_below = nullptr;
    int rank = 0;

    Searcher(const Tournament& t_, const ClassPredicate& pred_)
        : t(t_),
          pred(pred_),
          n(t_.size()),
          words(t_.words()),
          placed(t_.words(), 0),
          uf(t_.size()) {
        seq.reserve(n);
    }

    bool append(VertexId u) {
        if (pred.incremental()) {
            const std::size_t mark = uf.mark();
            const std::uint64_t* row = t.out_row(u);
            for (int w = 0; w < words; ++w) {
                std::uint64_t m = row[w] & placed[w];
                while (m) {
                    const int v = (w << 6) + std::countr_zero(m);
                    m &= m - 1;
                    if (!uf.unite(u, v)) {
                        uf.rollback(mark);
                        ++stats.prunes;
                        return false;
                    }
                }
            }
        }
        placed[u >> 6] |= 1ull << (u & 63);
        seq.push_back(u);
        ++stats.nodes;
        return true;
    }

    void undo(VertexId u, std::size_t mark) {
        uf.rollback(mark);
        placed[u >> 6] &= ~(1ull << (u & 63));
        seq.pop_back();
    }

    bool leaf_accepts() {
        switch (pred.kind()) {
            case ClassPredicate::Kind::forest: return true;
            case ClassPredicate::Kind::tree:
                return n >= 1 && uf.components() == 1;
            default:
                return pred.full_check(
                    backedge_graph(t, Ordering::of_sequence(seq)));
        }
    }

    bool dfs() {
        if (static_cast<int>(seq.size()) == n) {
            if (leaf_accepts()) {
                witness = seq;
                found = true;
                return true;
            }
            return false;
        }
        if (abort_below &&
            abort_below->load(std::memory_order_relaxed) < rank)
            return false;
        for (VertexId u = 0; u < n; ++u) {
            if ((placed[u >> 6] >> (u & 63)) & 1u) continue;
            const std::size_t mark = uf.mark();
            if (!append(u)) continue;
            if (dfs()) return true;
            undo(u, mark);
        }
        return false;
    }
};

SearchOutcome outcome_of(bool found, std::vector<VertexId> witness,
                         SearchStats stats) {
    SearchOutcome out;
    out.decision = found;
    if (found) out.witness = Ordering::of_sequence(std::move(witness));
    out.stats = stats;
    return out;
}

void atomic_min(std::atomic<int>& target, int value) {
    int seen = target.load();
    while (value < seen && !target.compare_exchange_weak(seen, value)) {
    }
}

}  // namespace

SearchOutcome find_class_ordering_serial(const Tournament& t,
                                         const ClassPredicate& pred) {
    Searcher s(t, pred);
    bool found = s.dfs();
    return outcome_of(found, std::move(s.witness), s.stats);
}

SearchOutcome find_class_ordering(const Tournament& t,
                                  const ClassPredicate& pred) {
    const int n = t.size();
    if (n <= 2) return find_class_ordering_serial(t, pred);

    struct Sub {
        bool found = false;
        std::vector<VertexId> witness;
        SearchStats stats;
    };
    const int tasks = n * n;
    std::vector<Sub> subs(tasks);
    std::atomic<int> found_rank{INT_MAX};

#pragma omp parallel for schedule(dynamic, 1)
    for (int rank = 0; rank < tasks; ++rank) {
        const int a = rank / n, b = rank % n;
        if (a == b) continue;
        if (found_rank.load(std::memory_order_relaxed) < rank) continue;
        Searcher s(t, pred);
        s.rank = rank;
        s.abort_below = &found_rank;
        // The one- and two-vertex prefixes can never fail the incremental
        // check (at most one back edge); the fold counts them itself.
        if (!s.append(a) || !s.append(b))
            throw InternalInconsistency("two-vertex prefix rejected");
        s.stats = {};
        Sub& sub = subs[rank];
        sub.found = s.dfs();
        sub.witness = std::move(s.witness);
        sub.stats = s.stats;
        if (sub.found) atomic_min(found_rank, rank);
    }

    // Serial early-stopping semantics: accumulate subtrees in rank order
    // and stop at the first success.
    SearchStats total;
    for (int a = 0; a < n; ++a) {
        ++total.nodes;
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            ++total.nodes;
            Sub& sub = subs[a * n + b];
            total.nodes += sub.stats.nodes;
            total.prunes += sub.stats.prunes;
            if (sub.found)
                return outcome_of(true, std::move(sub.witness), total);
        }
    }
    return outcome_of(false, {}, total);
}

// --- exhaustive oracle --------------------------------------------------------

namespace {

void check_oracle_size(const Tournament& t) {
    if (t.size() > kOracleMaxVertices)
        throw std::invalid_argument(
            "exhaustive oracle refused: " + std::to_string(t.size()) +
            " vertices exceed the guard of " +
            std::to_string(kOracleMaxVertices));
}

struct OracleChunk {
    bool found = false;
    std::uint64_t evaluated = 0;
    std::vector<VertexId> witness;
};

// Full-check every ordering with the given prefix in lexicographic order,
// stopping at the first accepted one.
OracleChunk oracle_sweep(const Tournament& t, const ClassPredicate& pred,
                         std::span<const int> prefix,
                         const std::atomic<int>* abort_below, int rank) {
    const int n = t.size();
    std::vector<int> seq(prefix.begin(), prefix.end());
    for (int v = 0; v < n; ++v)
        if (std::find(prefix.begin(), prefix.end(), v) == prefix.end())
            seq.push_back(v);
    OracleChunk chunk;
    auto suffix = seq.begin() + prefix.size();
    do {
        if (abort_below &&
            abort_below->load(std::memory_order_relaxed) < rank)
            return chunk;
        ++chunk.evaluated;
        Ordering ord = Ordering::of_sequence(seq);
        if (pred.full_check(backedge_graph(t, ord))) {
            chunk.found = true;
            chunk.witness = seq;
            return chunk;
        }
    } while (std::next_permutation(suffix, seq.end()));
    return chunk;
}

}  // namespace

SearchOutcome exhaustive_oracle_serial(const Tournament& t,
                                       const ClassPredicate& pred) {
    check_oracle_size(t);
    OracleChunk chunk = oracle_sweep(t, pred, {}, nullptr, 0);
    return outcome_of(chunk.found, std::move(chunk.witness),
                      {chunk.evaluated, 0});
}

SearchOutcome exhaustive_oracle(const Tournament& t,
                                const ClassPredicate& pred) {
    check_oracle_size(t);
    const int n = t.size();
    if (n < 2) return exhaustive_oracle_serial(t, pred);

    const int tasks = n * n;
    std::vector<OracleChunk> chunks(tasks);
    std::atomic<int> found_rank{INT_MAX};
#pragma omp parallel for schedule(dynamic, 1)
    for (int rank = 0; rank < tasks; ++rank) {
        const int a = rank / n, b = rank % n;
        if (a == b) continue;
        if (found_rank.load(std::memory_order_relaxed) < rank) continue;
        const int prefix[2] = {a, b};
        chunks[rank] = oracle_sweep(t, pred, prefix, &found_rank, rank);
        if (chunks[rank].found) atomic_min(found_rank, rank);
    }
    SearchStats total;
    for (int rank = 0; rank < tasks; ++rank) {
        if (rank / n == rank % n) continue;
        OracleChunk& chunk = chunks[rank];
        total.nodes += chunk.evaluated;
        if (chunk.found)
            return outcome_of(true, std::move(chunk.witness), total);
    }
    return outcome_of(false, {}, total);
}

// --- dichromatic number and tournament clique number --------------------------

namespace {

void check_brute_force_size(const Tournament& t) {
    if (t.size() > kBruteForceMaxVertices)
        throw std::invalid_argument(
            "brute force refused: " + std::to_string(t.size()) +
            " vertices exceed the guard of " +
            std::to_string(kBruteForceMaxVertices));
}

// chi of a graph given as adjacency masks, n <= 8.
int chi_masks(const std::array<std::uint32_t, 8>& adj, int n) {
    const int full = (1 << n) - 1;
    std::array<std::uint8_t, 256> indep{};
    std::array<std::uint8_t, 256> dp{};
    indep[0] = 1;
    for (int mask = 1; mask <= full; ++mask) {
        const int v = std::countr_zero(static_cast<unsigned>(mask));
        const int rest = mask & (mask - 1);
        indep[mask] = indep[rest] && !(adj[v] & rest);
    }
    for (int mask = 1; mask <= full; ++mask) {
        const int low = mask & -mask;
        int best = UINT8_MAX;
        for (int s = mask; s; s = (s - 1) & mask)
            if ((s & low) && indep[s]) best = std::min(best, 1 + dp[mask ^ s]);
        dp[mask] = static_cast<std::uint8_t>(best);
    }
    return dp[full];
}

int omega_masks(const std::array<std::uint32_t, 8>& adj, int n) {
    int best = 0;
    struct Rec {
        const std::array<std::uint32_t, 8>& adj;
        int& best;
        void expand(std::uint32_t cand, int size) {
            if (size > best) best = size;
            while (cand) {
                if (size + std::popcount(cand) <= best) return;
                const int v = std::countr_zero(cand);
                cand &= cand - 1;
                expand(cand & adj[v], size + 1);
            }
        }
    } rec{adj, best};
    rec.expand((1u << n) - 1, 0);
    return best;
}

// Runs fn(adjacency masks) for the backedge graph of every ordering of t
// and returns the minimum, splitting the permutation space by first vertex.
template <typename Fn>
int min_over_orderings(const Tournament& t, Fn fn) {
    const int n = t.size();
    if (n == 0) return fn(std::array<std::uint32_t, 8>{}, 0);
    int best = INT_MAX;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
    for (int first = 0; first < n; ++first) {
        std::array<int, kBruteForceMaxVertices> seq{};
        seq[0] = first;
        int tail = 1;
        for (int v = 0; v < n; ++v)
            if (v != first) seq[tail++] = v;
        do {
            std::array<std::uint32_t, 8> adj{};
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (t.arc(seq[j], seq[i])) {
                        adj[seq[i]] |= 1u << seq[j];
                        adj[seq[j]] |= 1u << seq[i];
                    }
            best = std::min(best, fn(adj, n));
        } while (std::next_permutation(seq.begin() + 1, seq.begin() + n));
    }
    return best;
}

}  // namespace

int dichromatic_via_orderings(const Tournament& t) {
    check_brute_force_size(t);
    return min_over_orderings(
        t, [](const std::array<std::uint32_t, 8>& adj, int n) {
            return chi_masks(adj, n);
        });
}

int dichromatic_via_partitions(const Tournament& t) {
    check_brute_force_size(t);
    const int n = t.size();
    if (n == 0) return 0;
    const int full = (1 << n) - 1;
    // A set of vertices induces a transitive tournament iff the in-set
    // out-degrees are pairwise distinct.
    std::vector<std::uint8_t> is_transitive(full + 1, 0);
    is_transitive[0] = 1;
    for (int mask = 1; mask <= full; ++mask) {
        unsigned seen = 0;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            if (!(mask >> v & 1)) continue;
            std::uint32_t row = static_cast<std::uint32_t>(t.out_row(v)[0]);
            const int d = std::popcount(row & static_cast<unsigned>(mask));
            if (seen >> d & 1) ok = false;
            seen |= 1u << d;
        }
        is_transitive[mask] = ok;
    }
    std::vector<std::uint8_t> dp(full + 1, UINT8_MAX);
    dp[0] = 0;
    for (int mask = 1; mask <= full; ++mask) {
        const int low = mask & -mask;
        int best = UINT8_MAX;
        for (int s = mask; s; s = (s - 1) & mask)
            if ((s & low) && is_transitive[s])
                best = std::min(best, 1 + dp[mask ^ s]);
        dp[mask] = static_cast<std::uint8_t>(best);
    }
    return dp[full];
}

int dichromatic_number(const Tournament& t) {
    const int via_orderings = dichromatic_via_orderings(t);
    const int via_partitions = dichromatic_via_partitions(t);
    if (via_orderings != via_partitions)
        throw InternalInconsistency(
            "dichromatic routes disagree: orderings say " +
            std::to_string(via_orderings) + ", partitions say " +
            std::to_string(via_partitions));
    return via_orderings;
}

int clique_number(const Tournament& t) {
    check_brute_force_size(t);
    return min_over_orderings(
        t, [](const std::array<std::uint32_t, 8>& adj, int n) {
            return omega_masks(adj, n);
        });
}

}  // namespace cfas::solver
