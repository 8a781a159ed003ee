#include "cfas/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace cfas {

// --- Ordering -------------------------------------------------------------

Ordering Ordering::identity(int n) {
    Ordering o;
    o.seq_.resize(n);
    o.pos_.resize(n);
    std::iota(o.seq_.begin(), o.seq_.end(), 0);
    std::iota(o.pos_.begin(), o.pos_.end(), 0);
    return o;
}

Ordering Ordering::of_sequence(std::vector<VertexId> seq) {
    const int n = static_cast<int>(seq.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        VertexId v = seq[i];
        if (v < 0 || v >= n)
            throw std::invalid_argument("ordering: vertex " +
                                        std::to_string(v) + " out of range");
        if (pos[v] != -1)
            throw std::invalid_argument("ordering: vertex " +
                                        std::to_string(v) + " repeated");
        pos[v] = i;
    }
    Ordering o;
    o.seq_ = std::move(seq);
    o.pos_ = std::move(pos);
    return o;
}

Ordering Ordering::reversed() const {
    std::vector<VertexId> seq(seq_.rbegin(), seq_.rend());
    return of_sequence(std::move(seq));
}

// --- Tournament / TournamentBuilder ----------------------------------------

int Tournament::out_degree(VertexId u) const {
    int d = 0;
    const std::uint64_t* row = out_row(u);
    for (int w = 0; w < words_; ++w) d += std::popcount(row[w]);
    return d;
}

TournamentBuilder::TournamentBuilder(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("tournament size must be >= 0");
    words_ = detail::word_count(n);
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    defined_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void TournamentBuilder::check_pair(VertexId u, VertexId v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
        throw std::invalid_argument("bad vertex pair (" + std::to_string(u) +
                                    "," + std::to_string(v) + ")");
}

void TournamentBuilder::set_arc(VertexId u, VertexId v) {
    check_pair(u, v);
    if (defined(u, v))
        throw InternalInconsistency("arc for pair {" + std::to_string(u) +
                                    "," + std::to_string(v) +
                                    "} defined twice");
    defined_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull
                                                                 << (v & 63);
    defined_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ull
                                                                 << (u & 63);
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull << (v & 63);
}

bool TournamentBuilder::defined(VertexId u, VertexId v) const {
    return (defined_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >>
            (v & 63)) & 1u;
}

bool TournamentBuilder::arc(VertexId u, VertexId v) const {
    check_pair(u, v);
    if (!defined(u, v))
        throw std::invalid_argument("arc for pair {" + std::to_string(u) +
                                    "," + std::to_string(v) +
                                    "} not defined yet");
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >>
            (v & 63)) & 1u;
}

Tournament TournamentBuilder::assemble(std::vector<std::string> labels) const {
    if (!labels.empty() && static_cast<int>(labels.size()) != n_)
        throw std::invalid_argument("label count does not match vertex count");
    Tournament t;
    t.n_ = n_;
    t.words_ = words_;
    t.bits_ = bits_;
    t.labels_ = std::move(labels);
    return t;
}

Tournament TournamentBuilder::finalize(std::vector<std::string> labels) const {
    for (VertexId u = 0; u < n_; ++u)
        for (VertexId v = u + 1; v < n_; ++v)
            if (!defined(u, v))
                throw std::invalid_argument(
                    "pair {" + std::to_string(u) + "," + std::to_string(v) +
                    "} left undefined");
    return assemble(std::move(labels));
}

Tournament TournamentBuilder::finalize_forward(
    const Ordering& ord, std::vector<std::string> labels) const {
    if (ord.size() != n_)
        throw std::invalid_argument("ordering size does not match builder");
    TournamentBuilder filled(*this);
    for (VertexId u = 0; u < n_; ++u)
        for (VertexId v = u + 1; v < n_; ++v)
            if (!filled.defined(u, v)) {
                if (ord.precedes(u, v))
                    filled.set_arc(u, v);
                else
                    filled.set_arc(v, u);
            }
    return filled.assemble(std::move(labels));
}

// --- BackedgeGraph ----------------------------------------------------------

BackedgeGraph::BackedgeGraph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph size must be >= 0");
    words_ = detail::word_count(n);
    adj_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void BackedgeGraph::add_edge(VertexId u, VertexId v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
        throw std::invalid_argument("bad edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}");
    if (has_edge(u, v))
        throw std::invalid_argument("edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "} added twice");
    adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull << (v & 63);
    adj_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ull << (u & 63);
    ++edges_;
}

int BackedgeGraph::degree(VertexId u) const {
    int d = 0;
    const std::uint64_t* r = row(u);
    for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
    return d;
}

std::vector<std::pair<VertexId, VertexId>> BackedgeGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_);
    for (VertexId u = 0; u < n_; ++u) {
        const std::uint64_t* r = row(u);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t m = r[w];
            while (m) {
                int v = (w << 6) + std::countr_zero(m);
                m &= m - 1;
                if (v > u) out.emplace_back(u, v);
            }
        }
    }
    return out;
}

// --- UnionFind --------------------------------------------------------------

void UnionFind::reset(int n) {
    parent_.resize(n);
    rank_.assign(n, 0);
    std::iota(parent_.begin(), parent_.end(), 0);
    log_.clear();
    components_ = n;
}

bool UnionFind::unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (rank_[ra] > rank_[rb]) std::swap(ra, rb);
    bool bump = rank_[ra] == rank_[rb];
    parent_[ra] = rb;
    if (bump) ++rank_[rb];
    log_.push_back({ra, rb, bump});
    --components_;
    return true;
}

void UnionFind::rollback(std::size_t mark) {
    while (log_.size() > mark) {
        Record r = log_.back();
        log_.pop_back();
        parent_[r.child] = r.child;
        if (r.rank_bumped) --rank_[r.parent];
        ++components_;
    }
}

// --- operations -------------------------------------------------------------

BackedgeGraph backedge_graph(const Tournament& t, const Ordering& ord) {
    if (ord.size() != t.size())
        throw std::invalid_argument("ordering size does not match tournament");
    const int n = t.size();
    const int words = t.words();
    BackedgeGraph g(n);
    std::vector<std::uint64_t> placed(words, 0);
    for (int p = 0; p < n; ++p) {
        VertexId u = ord.at(p);
        const std::uint64_t* row = t.out_row(u);
        for (int w = 0; w < words; ++w) {
            std::uint64_t m = row[w] & placed[w];
            while (m) {
                int v = (w << 6) + std::countr_zero(m);
                m &= m - 1;
                g.add_edge(u, v);
            }
        }
        placed[u >> 6] |= 1ull << (u & 63);
    }
    return g;
}

bool is_forest(const BackedgeGraph& g) {
    UnionFind uf(g.size());
    for (VertexId u = 0; u < g.size(); ++u) {
        const std::uint64_t* r = g.row(u);
        for (int w = (u >> 6); w < g.words(); ++w) {
            std::uint64_t m = r[w];
            if (w == (u >> 6)) m &= ~0ull << (u & 63);
            while (m) {
                int v = (w << 6) + std::countr_zero(m);
                m &= m - 1;
                if (v > u && !uf.unite(u, v)) return false;
            }
        }
    }
    return true;
}

bool is_connected(const BackedgeGraph& g) {
    const int n = g.size();
    if (n == 0) return false;
    std::vector<std::uint64_t> seen(g.words(), 0);
    std::vector<VertexId> stack{0};
    seen[0] |= 1;
    int reached = 1;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        const std::uint64_t* r = g.row(u);
        for (int w = 0; w < g.words(); ++w) {
            std::uint64_t m = r[w] & ~seen[w];
            seen[w] |= m;
            while (m) {
                int v = (w << 6) + std::countr_zero(m);
                m &= m - 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

namespace {

// Runs the incremental star-insertion check; reports forest-ness and fills
// the union count for the tree test.
bool forest_scan(const Tournament& t, const Ordering& ord, int* unions) {
    const int n = t.size();
    const int words = t.words();
    UnionFind uf(n);
    std::vector<std::uint64_t> placed(words, 0);
    int joined = 0;
    for (int p = 0; p < n; ++p) {
        VertexId u = ord.at(p);
        const std::uint64_t* row = t.out_row(u);
        for (int w = 0; w < words; ++w) {
            std::uint64_t m = row[w] & placed[w];
            while (m) {
                int v = (w << 6) + std::countr_zero(m);
                m &= m - 1;
                if (!uf.unite(u, v)) return false;
                ++joined;
            }
        }
        placed[u >> 6] |= 1ull << (u & 63);
    }
    if (unions) *unions = joined;
    return true;
}

}  // namespace

bool is_forest_ordering(const Tournament& t, const Ordering& ord) {
    if (ord.size() != t.size())
        throw std::invalid_argument("ordering size does not match tournament");
    return forest_scan(t, ord, nullptr);
}

bool is_tree_ordering(const Tournament& t, const Ordering& ord) {
    if (ord.size() != t.size())
        throw std::invalid_argument("ordering size does not match tournament");
    int unions = 0;
    if (!forest_scan(t, ord, &unions)) return false;
    return t.size() >= 1 && unions == t.size() - 1;
}

Tournament compose(const Tournament& t1, const Tournament& t2) {
    const int n1 = t1.size(), n2 = t2.size();
    TournamentBuilder b(n1 + n2);
    for (VertexId u = 0; u < n1; ++u)
        for (VertexId v = u + 1; v < n1; ++v)
            t1.arc(u, v) ? b.set_arc(u, v) : b.set_arc(v, u);
    for (VertexId u = 0; u < n2; ++u)
        for (VertexId v = u + 1; v < n2; ++v)
            t2.arc(u, v) ? b.set_arc(n1 + u, n1 + v)
                         : b.set_arc(n1 + v, n1 + u);
    for (VertexId u = 0; u < n1; ++u)
        for (VertexId v = 0; v < n2; ++v) b.set_arc(u, n1 + v);
    return b.finalize();
}

std::pair<Tournament, Ordering> transitive(int n) {
    if (n < 0) throw std::invalid_argument("transitive size must be >= 0");
    TournamentBuilder b(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) b.set_arc(u, v);
    return {b.finalize(), Ordering::identity(n)};
}

BackarcMatching add_backarc_matching(TournamentBuilder& host,
                                     std::span<const VertexId> src,
                                     std::span<const VertexId> dst,
                                     const Ordering& ord) {
    const std::size_t m = src.size();
    if (m == 0 || dst.size() != m)
        throw std::invalid_argument("matching sides must have equal size >= 1");
    if (ord.size() != host.size())
        throw std::invalid_argument("ordering size does not match host");
    auto check_side = [&](std::span<const VertexId> side, const char* name) {
        for (std::size_t i = 0; i + 1 < side.size(); ++i)
            if (!ord.precedes(side[i], side[i + 1]))
                throw std::invalid_argument(std::string(name) +
                                            " side not in increasing order");
    };
    check_side(src, "src");
    check_side(dst, "dst");
    if (!ord.precedes(dst.back(), src.front()))
        throw std::invalid_argument("dst must entirely precede src");

    BackarcMatching result;
    for (std::size_t i = 0; i < m; ++i) {
        host.set_arc(src[i], dst[i]);
        result.back_arcs.push_back({src[i], dst[i]});
    }
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (i != j) {
                host.set_arc(dst[j], src[i]);
                result.forward_arcs.push_back({dst[j], src[i]});
            }
    return result;
}

Ordering forest_to_tree(const Tournament& t, const Ordering& ord) {
    if (!is_forest_ordering(t, ord))
        throw std::invalid_argument(
            "forest_to_tree requires a forest-ordering");
    const int n = t.size();
    std::vector<VertexId> seq = ord.sequence();
    UnionFind uf(n);
    for (auto [u, v] : backedge_graph(t, ord).edges()) uf.unite(u, v);
    for (int i = 0; i + 1 < n; ++i) {
        VertexId x = seq[i], y = seq[i + 1];
        if (uf.find(x) != uf.find(y)) {
            std::swap(seq[i], seq[i + 1]);
            uf.unite(x, y);  // the swap makes arc x->y a back-arc
        }
    }
    return Ordering::of_sequence(std::move(seq));
}

bool lemma_tool_check(const Tournament& t, const Ordering& ord, VertexId a,
                      VertexId b, std::span<const VertexId> xs) {
    const int n = t.size();
    if (ord.size() != n)
        throw std::invalid_argument("ordering size does not match tournament");
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
        throw std::invalid_argument("a and b must be distinct vertices");
    if (!ord.precedes(b, a))
        throw std::invalid_argument("requires b before a in the ordering");
    std::vector<bool> seen(n, false);
    for (VertexId x : xs) {
        if (x < 0 || x >= n || x == a || x == b || seen[x])
            throw std::invalid_argument("xs must be distinct and avoid a, b");
        seen[x] = true;
        if (!t.arc(a, x)) throw std::invalid_argument("requires a => xs");
        if (!t.arc(x, b)) throw std::invalid_argument("requires xs => b");
    }
    BackedgeGraph g = backedge_graph(t, ord);
    for (VertexId x : xs)
        if (!g.has_edge(x, a) && !g.has_edge(x, b)) return false;
    return true;
}

namespace {

struct PeelState {
    std::vector<std::uint64_t> adj;
    std::vector<int> degree;
    std::vector<bool> alive;
    int words;

    explicit PeelState(const BackedgeGraph& g)
        : adj(static_cast<std::size_t>(g.size()) * g.words()),
          degree(g.size()),
          alive(g.size(), true),
          words(g.words()) {
        for (VertexId u = 0; u < g.size(); ++u) {
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
};

}  // namespace

std::optional<PeelSchedule> peel_1_degenerate(const BackedgeGraph& g) {
    const int n = g.size();
    PeelState st(g);
    PeelSchedule sched;
    sched.order.reserve(n);
    sched.witness_neighbor.reserve(n);
    for (int step = 0; step < n; ++step) {
        VertexId pick = -1;
        for (VertexId u = 0; u < n; ++u)
            if (st.alive[u] && st.degree[u] <= 1) {
                pick = u;
                break;
            }
        if (pick == -1) return std::nullopt;
        sched.order.push_back(pick);
        sched.witness_neighbor.push_back(st.sole_neighbor(pick));
        st.remove(pick);
    }
    return sched;
}

bool peel_replays_legally(const BackedgeGraph& g, const PeelSchedule& s) {
    const int n = g.size();
    if (static_cast<int>(s.order.size()) != n ||
        s.witness_neighbor.size() != s.order.size())
        return false;
    PeelState st(g);
    for (std::size_t i = 0; i < s.order.size(); ++i) {
        VertexId u = s.order[i];
        if (u < 0 || u >= n || !st.alive[u]) return false;
        if (st.degree[u] > 1) return false;
        if (st.sole_neighbor(u) != s.witness_neighbor[i]) return false;
        st.remove(u);
    }
    return true;
}

Tournament induced_subtournament(const Tournament& t,
                                 std::span<const VertexId> vertices) {
    const int k = static_cast<int>(vertices.size());
    TournamentBuilder b(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (vertices[i] == vertices[j])
                throw std::invalid_argument("induced set has repeats");
            t.arc(vertices[i], vertices[j]) ? b.set_arc(i, j)
                                            : b.set_arc(j, i);
        }
    return b.finalize();
}

}  // namespace cfas
