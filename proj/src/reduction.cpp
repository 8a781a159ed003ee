#include "cfas/reduction.hpp"

#include <algorithm>
#include <sstream>

#include "cfas/magic.hpp"

namespace cfas::reduction {

void CnfInstance::validate() const {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    for (const auto& clause : clauses)
        for (const Literal& lit : clause)
            if (lit.variable < 1 || lit.variable > num_vars)
                throw std::invalid_argument(
                    "literal variable " + std::to_string(lit.variable) +
                    " outside [1," + std::to_string(num_vars) + "]");
}

int occurrences(const CnfInstance& instance, Literal lit) {
    int count = 0;
    for (const auto& clause : instance.clauses)
        for (const Literal& l : clause)
            if (l == lit) ++count;
    return count;
}

std::vector<VertexId> BlockLayout::n_vertices() const {
    std::vector<VertexId> out;
    for (const auto& part : n_parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

std::vector<VertexId> BlockLayout::y_vertices() const {
    std::vector<VertexId> out;
    for (const auto& part : y_parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

VertexId ReducedTournament::vertex_by_label(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end())
        throw std::invalid_argument("unknown vertex label: " + label);
    return it->second;
}

BlockId block_of_var(const CnfInstance&, int variable, Polarity p) {
    return 2 * (variable - 1) + (p == Polarity::negative ? 1 : 0);
}

BlockId block_of_literal_position(const CnfInstance& i, int j) {
    return 2 * i.num_vars + j - 1;
}

Literal block_literal(const CnfInstance& i, BlockId b) {
    if (b < 2 * i.num_vars) return {b / 2 + 1, b % 2 == 1};
    return i.literal_at(b - 2 * i.num_vars + 1);
}

std::string block_label(const CnfInstance& i, BlockId b) {
    if (b < 2 * i.num_vars)
        return (b % 2 == 0 ? "v+" : "v-") + std::to_string(b / 2 + 1);
    return "l" + std::to_string(b - 2 * i.num_vars + 1);
}

namespace {

std::string part_label(PartKind part, int occ_index) {
    switch (part) {
        case PartKind::comp: return "comp";
        case PartKind::occ: return "occ" + std::to_string(occ_index);
        case PartKind::cls: return "cls";
    }
    return "?";
}

}  // namespace

std::string role_label(const CnfInstance& i, const VertexRole& role) {
    struct Visitor {
        const CnfInstance& inst;
        std::string operator()(const VarVertexRole& r) const {
            return block_label(inst, block_of_var(inst, r.variable, r.polarity));
        }
        std::string operator()(const LitVertexRole& r) const {
            return "l" + std::to_string(r.index);
        }
        std::string operator()(const MagicVertexRole& r) const {
            return "m:" + block_label(inst, r.owner) + ":" +
                   std::to_string(r.rank);
        }
        std::string operator()(const GadgetVertexRole& r) const {
            return std::string(r.y_side ? "gy" : "gn") + ":" +
                   block_label(inst, r.owner) + ":" +
                   part_label(r.part, r.occ_index) + ":" +
                   std::to_string(r.slot);
        }
    };
    return std::visit(Visitor{i}, role);
}

// --- ReductionBuilder -------------------------------------------------------

namespace {

int reduction_size(const CnfInstance& i) {
    return 32 * i.num_vars + 75 * i.num_clauses();
}

}  // namespace

ReductionBuilder::ReductionBuilder(CnfInstance instance)
    : instance_(std::move(instance)),
      total_vertices_(0),
      arcs_(0) {
    instance_.validate();
    total_vertices_ = reduction_size(instance_);
    arcs_ = TournamentBuilder(total_vertices_);
    const int nblocks = block_count(instance_);
    blocks_.resize(nblocks);
    occ_positions_.resize(nblocks);
    // For a variable block, the gadget's occ parts receive the occurrences
    // of the complement literal, in clause order.
    for (int j = 1; j <= 3 * instance_.num_clauses(); ++j) {
        Literal p = instance_.literal_at(j);
        BlockId owner_of_part =
            block_of_var(instance_, p.variable,
                         p.negated ? Polarity::positive : Polarity::negative);
        occ_positions_[owner_of_part].push_back(j);
    }
    for (BlockId b = 0; b < nblocks; ++b) {
        blocks_[b].literal = block_literal(instance_, b);
        if (b < 2 * instance_.num_vars)
            blocks_[b].owner_role = VarVertexRole{
                b / 2 + 1, b % 2 == 0 ? Polarity::positive : Polarity::negative};
        else
            blocks_[b].owner_role = LitVertexRole{b - 2 * instance_.num_vars + 1};
    }
}

void ReductionBuilder::require_stage(Stage expected, const char* op) {
    if (stage_ != expected)
        throw std::logic_error(std::string(op) + " called out of stage order");
}

void ReductionBuilder::build_base() {
    require_stage(Stage::fresh, "build_base");
    const Tournament m = magic::magic_tournament();
    for (BlockId b = 0; b < block_count(instance_); ++b) {
        BlockLayout& block = blocks_[b];
        block.owner = next_id_++;
        roles_.push_back(block.owner_role);
        for (int r = 0; r < magic::kMagicSize; ++r) {
            block.magic[r] = next_id_++;
            roles_.push_back(MagicVertexRole{b, r});
        }
        for (int r = 0; r < magic::kMagicSize; ++r) {
            arcs_.set_arc(block.owner, block.magic[r]);
            for (int s = r + 1; s < magic::kMagicSize; ++s)
                m.arc(r, s) ? arcs_.set_arc(block.magic[r], block.magic[s])
                            : arcs_.set_arc(block.magic[s], block.magic[r]);
        }
    }
    stage_ = Stage::base;
}

void ReductionBuilder::attach_gadgets() {
    require_stage(Stage::base, "attach_gadgets");
    for (BlockId b = 0; b < block_count(instance_); ++b) {
        BlockLayout& block = blocks_[b];
        std::vector<VertexId> gadget;
        auto make_part = [&](bool y_side, PartKind part, int occ_index,
                             int size) {
            std::vector<VertexId> ids;
            for (int slot = 0; slot < size; ++slot) {
                ids.push_back(next_id_++);
                roles_.push_back(
                    GadgetVertexRole{b, y_side, part, occ_index, slot});
            }
            gadget.insert(gadget.end(), ids.begin(), ids.end());
            (y_side ? block.y_parts : block.n_parts).push_back(std::move(ids));
        };
        if (block.is_literal_block()) {
            make_part(false, PartKind::comp, 0, 2);
            make_part(false, PartKind::cls, 0, 2);
            make_part(true, PartKind::comp, 0, 5);
        } else {
            const int m = static_cast<int>(occ_positions_[b].size());
            make_part(false, PartKind::comp, 0, 2);
            for (int i = 1; i <= m; ++i) make_part(false, PartKind::occ, i, 2);
            make_part(true, PartKind::comp, 0, 5);
            for (int i = 1; i <= m; ++i) make_part(true, PartKind::occ, i, 5);
        }
        // The gadget is transitive; creation order is its topological order.
        for (std::size_t i = 0; i < gadget.size(); ++i)
            for (std::size_t j = i + 1; j < gadget.size(); ++j)
                arcs_.set_arc(gadget[i], gadget[j]);
    }
    stage_ = Stage::gadgets;
}

void ReductionBuilder::place_and_link() {
    require_stage(Stage::gadgets, "place_and_link");
    star_sequence_.clear();
    star_sequence_.reserve(total_vertices_);
    for (BlockId b = 0; b < block_count(instance_); ++b) {
        BlockLayout& block = blocks_[b];
        star_sequence_.push_back(block.owner);
        for (const auto& part : block.n_parts)
            star_sequence_.insert(star_sequence_.end(), part.begin(),
                                  part.end());
        star_sequence_.push_back(block.magic[0]);
        for (const auto& part : block.y_parts)
            star_sequence_.insert(star_sequence_.end(), part.begin(),
                                  part.end());
        for (int r = 1; r < magic::kMagicSize; ++r)
            star_sequence_.push_back(block.magic[r]);

        // Arcs between the gadget and its block: forward except Y_w => w.
        for (VertexId n : block.n_vertices()) {
            arcs_.set_arc(block.owner, n);
            for (int r = 0; r < magic::kMagicSize; ++r)
                arcs_.set_arc(n, block.magic[r]);
        }
        for (VertexId y : block.y_vertices()) {
            arcs_.set_arc(y, block.owner);
            arcs_.set_arc(block.magic[0], y);
            for (int r = 1; r < magic::kMagicSize; ++r)
                arcs_.set_arc(y, block.magic[r]);
        }
    }
    stage_ = Stage::placed;
}

void ReductionBuilder::link_gadgets() {
    require_stage(Stage::placed, "link_gadgets");
    const Ordering star = current_order();
    auto install = [&](const std::vector<VertexId>& src,
                       const std::vector<VertexId>& dst) {
        if (src.size() != dst.size())
            throw InternalInconsistency(
                "matching part size mismatch: " + std::to_string(src.size()) +
                " vs " + std::to_string(dst.size()));
        BackarcMatching m = add_backarc_matching(arcs_, src, dst, star);
        layers_.matching_arcs.insert(layers_.matching_arcs.end(),
                                     m.back_arcs.begin(), m.back_arcs.end());
    };
    // The literal vertex of the i-th occurrence of a literal p is matched
    // into the gadget of the vertex standing for the complement of p.
    for (int j = 1; j <= 3 * instance_.num_clauses(); ++j) {
        const BlockLayout& lit = blocks_[block_of_literal_position(instance_, j)];
        Literal p = instance_.literal_at(j);
        BlockId tb = block_of_var(instance_, p.variable,
                                  p.negated ? Polarity::positive
                                            : Polarity::negative);
        const auto& positions = occ_positions_[tb];
        auto it = std::find(positions.begin(), positions.end(), j);
        if (it == positions.end())
            throw InternalInconsistency("occurrence index not found");
        const int i = static_cast<int>(it - positions.begin()) + 1;
        const BlockLayout& target = blocks_[tb];
        if (i >= static_cast<int>(target.n_parts.size()) ||
            i >= static_cast<int>(target.y_parts.size()))
            throw InternalInconsistency("occ part out of range");
        install(lit.n_parts[0], target.n_parts[i]);
        install(lit.y_parts[0], target.y_parts[i]);
    }
    // Complement parts of each variable pair are matched with each other.
    for (int v = 1; v <= instance_.num_vars; ++v) {
        const BlockLayout& pos =
            blocks_[block_of_var(instance_, v, Polarity::positive)];
        const BlockLayout& neg =
            blocks_[block_of_var(instance_, v, Polarity::negative)];
        install(neg.n_parts[0], pos.n_parts[0]);
        install(neg.y_parts[0], pos.y_parts[0]);
    }
    stage_ = Stage::linked;
}

void ReductionBuilder::add_clause_arcs() {
    require_stage(Stage::linked, "add_clause_arcs");
    for (int c = 0; c < instance_.num_clauses(); ++c) {
        const auto& a =
            blocks_[block_of_literal_position(instance_, 3 * c + 1)].n_parts[1];
        const auto& b =
            blocks_[block_of_literal_position(instance_, 3 * c + 2)].n_parts[1];
        const auto& cc =
            blocks_[block_of_literal_position(instance_, 3 * c + 3)].n_parts[1];
        auto back = [&](VertexId from, VertexId to) {
            arcs_.set_arc(from, to);
            layers_.clause_arcs.push_back({from, to});
        };
        back(b[0], a[1]);
        back(cc[0], b[1]);
        back(cc[1], a[0]);
    }
    stage_ = Stage::claused;
}

ReducedTournament ReductionBuilder::finalize() {
    require_stage(Stage::claused, "finalize");
    if (next_id_ != total_vertices_)
        throw InternalInconsistency("vertex count does not match size formula");
    std::vector<std::string> labels;
    labels.reserve(roles_.size());
    for (const VertexRole& role : roles_)
        labels.push_back(role_label(instance_, role));

    ReducedTournament out;
    out.star_order = current_order();
    out.tournament = arcs_.finalize_forward(out.star_order, labels);
    out.roles = roles_;
    out.blocks = blocks_;
    out.layers = layers_;
    out.instance = instance_;
    for (VertexId v = 0; v < static_cast<int>(labels.size()); ++v)
        if (!out.label_index_.emplace(labels[v], v).second)
            throw InternalInconsistency("role label collision: " + labels[v]);
    stage_ = Stage::done;
    return out;
}

Ordering ReductionBuilder::current_order() const {
    if (stage_ == Stage::placed || stage_ == Stage::linked ||
        stage_ == Stage::claused || stage_ == Stage::done)
        return Ordering::of_sequence(star_sequence_);
    return Ordering::identity(next_id_);
}

Tournament ReductionBuilder::complete_forward() const {
    TournamentBuilder sub(next_id_);
    for (VertexId u = 0; u < next_id_; ++u)
        for (VertexId v = u + 1; v < next_id_; ++v)
            if (arcs_.defined(u, v)) {
                arcs_.arc(u, v) ? sub.set_arc(u, v) : sub.set_arc(v, u);
            }
    return sub.finalize_forward(current_order());
}

ReducedTournament reduce(const CnfInstance& instance) {
    ReductionBuilder builder(instance);
    builder.build_base();
    builder.attach_gadgets();
    builder.place_and_link();
    builder.link_gadgets();
    builder.add_clause_arcs();
    return builder.finalize();
}

}  // namespace cfas::reduction
