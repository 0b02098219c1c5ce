#include "pincushion/classify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace pincushion {

namespace {

using Mask = std::uint64_t;

struct Key {
    Mask mask;
    int level;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        return std::hash<Mask>()(k.mask * 0x9e3779b97f4a7c15ull + static_cast<Mask>(k.level));
    }
};

// How a positive (mask, level) answer was found: either the whole subset
// already fits one level down, or a last block was split off.
struct Witness {
    bool single = true;
    Mask block = 0;
    int pin = -1;  // vertex index; -1 = appended isolated
};

class LevelSearch {
public:
    explicit LevelSearch(const SimplicialGraph& g)
        : graph_(g), adj_(g.adjacency_masks()), n_(g.vertex_count()) {}

    bool decide(int m) { return in_level(full_mask(), m); }

    ConstructionTrace certificate(int m) { return build(full_mask(), m); }

private:
    Mask full_mask() const {
        return n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    }

    // Cross edges between block and rest admit an append step iff they are
    // empty (isolated) or exactly block x {v} for one v in rest.
    std::optional<int> cross_pin(Mask block, Mask rest, bool& ok) const {
        Mask targets = 0;
        for (Mask b = block; b;) {
            Mask bit = b & (~b + 1);
            b ^= bit;
            targets |= adj_[static_cast<std::size_t>(std::countr_zero(bit))] & rest;
        }
        if (targets == 0) {
            ok = true;
            return std::nullopt;  // isolated append
        }
        if (std::popcount(targets) != 1) {
            ok = false;
            return std::nullopt;
        }
        for (Mask b = block; b;) {
            Mask bit = b & (~b + 1);
            b ^= bit;
            if ((adj_[static_cast<std::size_t>(std::countr_zero(bit))] & rest) == 0) {
                ok = false;  // pinning wires every block vertex to the target
                return std::nullopt;
            }
        }
        ok = true;
        return std::countr_zero(targets);
    }

    std::vector<Mask> components_of(Mask mask) const {
        std::vector<Mask> comps;
        Mask remaining = mask;
        while (remaining) {
            Mask seed = remaining & (~remaining + 1);
            Mask comp = seed;
            Mask frontier = seed;
            while (frontier) {
                Mask bit = frontier & (~frontier + 1);
                frontier ^= bit;
                Mask nbrs = adj_[static_cast<std::size_t>(std::countr_zero(bit))] & mask & ~comp;
                comp |= nbrs;
                frontier |= nbrs;
            }
            comps.push_back(comp);
            remaining &= ~comp;
        }
        return comps;
    }

    bool in_level(Mask mask, int m) {
        int pop = std::popcount(mask);
        if (pop <= 1) return true;
        if (m <= 0) return false;
        Key key{mask, m};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        if (in_level(mask, m - 1)) {
            memo_[key] = true;
            witness_[key] = Witness{true, 0, -1};
            return true;
        }

        // Component splits first: they always admit an isolated append.
        auto comps = components_of(mask);
        if (comps.size() >= 2) {
            for (Mask comp : comps) {
                if (in_level(comp, m - 1) && in_level(mask & ~comp, m)) {
                    memo_[key] = true;
                    witness_[key] = Witness{false, comp, -1};
                    return true;
                }
            }
        }

        // General last-block candidates by increasing size.
        std::vector<int> verts;
        for (Mask b = mask; b;) {
            Mask bit = b & (~b + 1);
            b ^= bit;
            verts.push_back(std::countr_zero(bit));
        }
        std::vector<Mask> candidates;
        for (Mask s = (mask - 1) & mask; s; s = (s - 1) & mask)
            candidates.push_back(s);
        std::sort(candidates.begin(), candidates.end(), [](Mask a, Mask b) {
            int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
        for (Mask s : candidates) {
            Mask rest = mask & ~s;
            bool ok = false;
            auto pin = cross_pin(s, rest, ok);
            if (!ok) continue;
            if (in_level(s, m - 1) && in_level(rest, m)) {
                memo_[key] = true;
                witness_[key] = Witness{false, s, pin ? *pin : -1};
                return true;
            }
        }
        memo_[key] = false;
        return false;
    }

    ConstructionTrace build(Mask mask, int m) {
        int pop = std::popcount(mask);
        if (pop == 0) return ConstructionTrace{};  // canonical empty trace
        if (pop == 1) {
            ConstructionTrace t;
            t.vertex = graph_.vertices()[static_cast<std::size_t>(std::countr_zero(mask))];
            for (int i = 0; i < m; ++i) t = lift_trace(std::move(t));
            return t;
        }
        const Witness& w = witness_.at(Key{mask, m});
        if (w.single) return lift_trace(build(mask, m - 1));
        ConstructionTrace rest = build(mask & ~w.block, m);
        ConstructionTrace block = build(w.block, m - 1);
        std::optional<Vertex> attach;
        if (w.pin >= 0) attach = graph_.vertices()[static_cast<std::size_t>(w.pin)];
        rest.steps.push_back({std::move(block), std::move(attach)});
        return rest;
    }

    const SimplicialGraph& graph_;
    const std::vector<Mask>& adj_;
    std::size_t n_;
    std::unordered_map<Key, bool, KeyHash> memo_;
    std::unordered_map<Key, Witness, KeyHash> witness_;
};

}  // namespace

std::optional<ConstructionTrace> is_in_level(const SimplicialGraph& g, int m) {
    if (m < 0) throw std::invalid_argument("level must be non-negative");
    if (g.vertex_count() > 64)
        throw std::invalid_argument("classification supports at most 64 vertices");
    if (g.empty()) return ConstructionTrace{};
    LevelSearch search(g);
    if (!search.decide(m)) return std::nullopt;
    return search.certificate(m);
}

LevelResult min_level(const SimplicialGraph& g, int max_level) {
    if (g.vertex_count() > 64)
        throw std::invalid_argument("classification supports at most 64 vertices");
    if (g.empty()) return Membership{0, ConstructionTrace{}};
    int cap = max_level >= 0 ? max_level : static_cast<int>(g.vertex_count());
    LevelSearch search(g);
    for (int m = 0; m <= cap; ++m) {
        if (search.decide(m)) return Membership{m, search.certificate(m)};
    }
    return std::nullopt;
}

bool is_pincushion(const SimplicialGraph& g, int max_level) {
    return min_level(g, max_level).has_value();
}

namespace {

// Edge sets of graphs on {0..n-1} packed into one word: pair (i,j), i<j,
// occupies bit j*(j-1)/2 + i.
int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

class ForwardEnumerator {
public:
    explicit ForwardEnumerator(int n) : n_(n) {}

    const std::set<std::uint64_t>& graphs(Mask mask, int m) {
        Key key{mask, m};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::set<std::uint64_t> out;
        if (m == 0) {
            if (std::popcount(mask) <= 1) out.insert(0);
        } else {
            out = graphs(mask, m - 1);
            for (Mask s = (mask - 1) & mask; s; s = (s - 1) & mask) {
                Mask rest = mask & ~s;
                if (!rest) continue;
                const auto& blocks = graphs(s, m - 1);
                if (blocks.empty()) continue;
                const auto rests = graphs(rest, m);  // copy: recursion may rehash
                for (std::uint64_t blk : blocks) {
                    for (std::uint64_t rst : rests) {
                        std::uint64_t base = blk | rst;
                        out.insert(base);  // appended isolated
                        for (Mask vb = rest; vb;) {
                            Mask bit = vb & (~vb + 1);
                            vb ^= bit;
                            int v = std::countr_zero(bit);
                            std::uint64_t cross = 0;
                            for (Mask ub = s; ub;) {
                                Mask ubit = ub & (~ub + 1);
                                ub ^= ubit;
                                int u = std::countr_zero(ubit);
                                cross |= std::uint64_t{1}
                                         << pair_bit(std::min(u, v), std::max(u, v));
                            }
                            out.insert(base | cross);  // appended pinned at v
                        }
                    }
                }
            }
        }
        return memo_[key] = std::move(out);
    }

private:
    int n_;
    std::unordered_map<Key, std::set<std::uint64_t>, KeyHash> memo_;
};

}  // namespace

std::vector<SimplicialGraph> enumerate_level(int n, int m) {
    if (n < 1) throw std::invalid_argument("enumerate_level requires n >= 1");
    if (n > 10) throw std::invalid_argument("enumerate_level supports at most 10 vertices");
    if (m < 0) throw std::invalid_argument("level must be non-negative");
    ForwardEnumerator fe(n);
    Mask full = (Mask{1} << n) - 1;
    std::vector<SimplicialGraph> result;
    std::vector<Vertex> verts;
    for (int i = 1; i <= n; ++i) verts.push_back(std::to_string(i));
    for (std::uint64_t edges : fe.graphs(full, m)) {
        std::vector<std::pair<Vertex, Vertex>> es;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < j; ++i)
                if ((edges >> pair_bit(i, j)) & 1)
                    es.emplace_back(std::to_string(i + 1), std::to_string(j + 1));
        result.emplace_back(verts, es);
    }
    return result;
}

}  // namespace pincushion
