#include "cfas/assignment.hpp"

#include <algorithm>
#include <bit>

namespace cfas::assignment {

using reduction::BlockId;
using reduction::BlockLayout;
using reduction::Literal;
using reduction::Polarity;
using reduction::ReducedTournament;

bool satisfies(const reduction::CnfInstance& instance, const Assignment& a) {
    if (a.num_vars != instance.num_vars)
        throw std::invalid_argument("assignment does not cover the variables");
    for (const auto& clause : instance.clauses) {
        bool sat = false;
        for (const Literal& lit : clause) sat = sat || a.evaluates(lit);
        if (!sat) return false;
    }
    return true;
}

SideLabels side_labels(const ReducedTournament& r, const Ordering& ord) {
    if (ord.size() != r.tournament.size())
        throw std::invalid_argument("ordering size does not match tournament");
    SideLabels labels;
    labels.by_block.reserve(r.blocks.size());
    for (const BlockLayout& block : r.blocks)
        labels.by_block.push_back(ord.precedes(block.owner, block.ell())
                                      ? Side::left
                                      : Side::right);
    return labels;
}

bool check_coherence(const SideLabels& labels,
                     const reduction::CnfInstance& instance) {
    auto opposed = [&](BlockId a, BlockId b) {
        return labels.at(a) != labels.at(b);
    };
    for (int v = 1; v <= instance.num_vars; ++v) {
        BlockId pos = reduction::block_of_var(instance, v, Polarity::positive);
        BlockId neg = reduction::block_of_var(instance, v, Polarity::negative);
        if (!opposed(pos, neg)) return false;
    }
    for (int j = 1; j <= 3 * instance.num_clauses(); ++j) {
        Literal p = instance.literal_at(j);
        // The occurrence must oppose the vertex of the complement literal.
        BlockId comp = reduction::block_of_var(
            instance, p.variable,
            p.negated ? Polarity::positive : Polarity::negative);
        if (!opposed(reduction::block_of_literal_position(instance, j), comp))
            return false;
    }
    return true;
}

namespace {

// The star order with the blocks in `right` laid out as
// N_w, ell_w, Y_w, w, M_w \ {ell_w} instead of w, N_w, ell_w, Y_w, rest.
Ordering layout_ordering(const ReducedTournament& r,
                         const std::vector<bool>& right) {
    std::vector<VertexId> seq;
    seq.reserve(r.tournament.size());
    for (BlockId b = 0; b < r.block_count(); ++b) {
        const BlockLayout& block = r.blocks[b];
        if (!right[b]) seq.push_back(block.owner);
        for (const auto& part : block.n_parts)
            seq.insert(seq.end(), part.begin(), part.end());
        seq.push_back(block.magic[0]);
        for (const auto& part : block.y_parts)
            seq.insert(seq.end(), part.begin(), part.end());
        if (right[b]) seq.push_back(block.owner);
        for (int rank = 1; rank < 8; ++rank) seq.push_back(block.magic[rank]);
    }
    return Ordering::of_sequence(std::move(seq));
}

std::vector<bool> right_side_of(const ReducedTournament& r,
                                const Assignment& nu) {
    std::vector<bool> right(r.block_count());
    for (BlockId b = 0; b < r.block_count(); ++b)
        right[b] = !nu.evaluates(r.blocks[b].literal);
    return right;
}

}  // namespace

Ordering encode(const ReducedTournament& r, const Assignment& nu) {
    if (nu.num_vars != r.instance.num_vars)
        throw std::invalid_argument("assignment does not cover the variables");
    if (!satisfies(r.instance, nu))
        throw ValidationError("assignment does not satisfy the instance");
    Ordering ord = layout_ordering(r, right_side_of(r, nu));
    if (!is_forest_ordering(r.tournament, ord))
        throw InternalInconsistency(
            "encoded ordering of a satisfying assignment is not a forest");
    return ord;
}

Assignment decode(const ReducedTournament& r, const Ordering& ord) {
    if (ord.size() != r.tournament.size())
        throw std::invalid_argument("ordering size does not match tournament");
    if (!is_forest_ordering(r.tournament, ord))
        throw ValidationError("ordering is not a forest-ordering");
    SideLabels labels = side_labels(r, ord);
    if (!check_coherence(labels, r.instance))
        throw InternalInconsistency(
            "forest-ordering produced incoherent side labels");
    Assignment nu = Assignment::all_false(r.instance.num_vars);
    for (int v = 1; v <= r.instance.num_vars; ++v) {
        BlockId pos =
            reduction::block_of_var(r.instance, v, Polarity::positive);
        nu.set(v, labels.at(pos) == Side::left);
    }
    if (!satisfies(r.instance, nu))
        throw InternalInconsistency(
            "assignment decoded from a forest-ordering is not satisfying");
    return nu;
}

namespace {

struct PeelRun {
    std::vector<std::uint64_t> adj;
    std::vector<int> degree;
    std::vector<bool> alive;
    int n;
    int words;

    explicit PeelRun(const BackedgeGraph& g)
        : adj(static_cast<std::size_t>(g.size()) * g.words()),
          degree(g.size()),
          alive(g.size(), true),
          n(g.size()),
          words(g.words()) {
        for (VertexId u = 0; u < n; ++u) {
            const std::uint64_t* r = g.row(u);
            std::copy(r, r + words,
                      adj.begin() + static_cast<std::size_t>(u) * words);
            degree[u] = g.degree(u);
        }
    }

    VertexId sole_neighbor(VertexId u) const {
        for (int w = 0; w < words; ++w) {
            std::uint64_t m = adj[static_cast<std::size_t>(u) * words + w];
            if (m) return (w << 6) + std::countr_zero(m);
        }
        return -1;
    }

    void remove(VertexId u) {
        alive[u] = false;
        for (int w = 0; w < words; ++w) {
            std::uint64_t m = adj[static_cast<std::size_t>(u) * words + w];
            while (m) {
                int v = (w << 6) + std::countr_zero(m);
                m &= m - 1;
                adj[static_cast<std::size_t>(v) * words + (u >> 6)] &=
                    ~(1ull << (u & 63));
                --degree[v];
            }
            adj[static_cast<std::size_t>(u) * words + w] = 0;
        }
        degree[u] = 0;
    }

    // Peels the candidate set in repeated ascending-id passes; returns the
    // candidates that could not be removed.
    std::vector<VertexId> peel_set(std::vector<VertexId> candidates,
                                   StagedPeel* out, const std::string& name) {
        PeelStage stage{name, {}};
        bool progressed = true;
        while (progressed && !candidates.empty()) {
            progressed = false;
            std::vector<VertexId> still;
            for (VertexId u : candidates) {
                if (degree[u] <= 1) {
                    out->schedule.order.push_back(u);
                    out->schedule.witness_neighbor.push_back(sole_neighbor(u));
                    stage.removed.push_back(u);
                    remove(u);
                    progressed = true;
                } else {
                    still.push_back(u);
                }
            }
            candidates = std::move(still);
        }
        out->stages.push_back(std::move(stage));
        return candidates;
    }
};

}  // namespace

StagedPeel peeling_certificate(const ReducedTournament& r,
                               const Ordering& ord) {
    if (ord.size() != r.tournament.size())
        throw std::invalid_argument("ordering size does not match tournament");
    SideLabels labels = side_labels(r, ord);
    std::vector<bool> right(r.block_count());
    for (BlockId b = 0; b < r.block_count(); ++b)
        right[b] = labels.at(b) == Side::right;
    if (!(layout_ordering(r, right) == ord))
        throw std::invalid_argument(
            "ordering is not an encode output of this reduction");

    BackedgeGraph g = backedge_graph(r.tournament, ord);
    PeelRun run(g);
    StagedPeel out;

    std::vector<VertexId> interiors, roots, wave1, wave2, owners, tails;
    for (BlockId b = 0; b < r.block_count(); ++b) {
        const BlockLayout& block = r.blocks[b];
        for (int rank = 1; rank < 8; ++rank)
            interiors.push_back(block.magic[rank]);
        roots.push_back(block.ell());
        const bool is_right = right[b];
        auto& n_sink = is_right ? wave2 : wave1;
        auto& y_sink = is_right ? wave1 : wave2;
        for (VertexId y : block.y_vertices()) y_sink.push_back(y);
        if (block.is_literal_block() && is_right) {
            // Only the variable part falls in the second wave; the clause
            // part survives into the per-clause paths.
            for (VertexId v : block.n_parts[0]) wave2.push_back(v);
            for (VertexId v : block.n_parts[1]) tails.push_back(v);
        } else {
            for (VertexId v : block.n_vertices()) n_sink.push_back(v);
        }
        if (block.is_literal_block() && is_right)
            tails.push_back(block.owner);
        else
            owners.push_back(block.owner);
    }

    std::vector<VertexId> stuck;
    auto step = [&](std::vector<VertexId> set, const char* name) {
        auto left_over = run.peel_set(std::move(set), &out, name);
        stuck.insert(stuck.end(), left_over.begin(), left_over.end());
    };
    step(std::move(interiors), "magic_interiors");
    step(std::move(roots), "magic_roots");
    step(std::move(wave1), "first_wave");
    step(std::move(wave2), "second_wave");
    step(std::move(owners), "owners");
    step(std::move(tails), "clause_paths");

    if (stuck.empty() &&
        out.schedule.order.size() ==
            static_cast<std::size_t>(r.tournament.size())) {
        out.complete = true;
    } else {
        std::sort(stuck.begin(), stuck.end());
        out.stuck = std::move(stuck);
    }
    return out;
}

}  // namespace cfas::assignment
