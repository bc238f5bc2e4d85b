#include "ultralab/cochain.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace ultralab {

Cochain::Cochain(std::vector<FinStructure> levels, std::vector<std::map<Vertex, Vertex>> bonds,
                 Extender extender)
    : levels_(std::move(levels)), bonds_(std::move(bonds)), extender_(std::move(extender)) {
    if (levels_.empty()) throw InputError("cochain needs at least one level");
    if (bonds_.size() + 1 != levels_.size())
        throw InputError("cochain needs exactly one bond per consecutive level pair");
    for (std::size_t i = 0; i < bonds_.size(); ++i) {
        Morphism m{levels_[i + 1], levels_[i], bonds_[i]};
        if (!is_morphism(m, MorphismKind::hom))
            throw InputError("bond " + std::to_string(i + 1) + " -> " + std::to_string(i) +
                             " is not a homomorphism");
    }
}

const FinStructure& Cochain::level(int i) const {
    if (i < 0 || i > stored_depth()) throw InputError("level index out of range");
    return levels_[static_cast<std::size_t>(i)];
}

const std::map<Vertex, Vertex>& Cochain::bond(int upper) const {
    if (upper < 1 || upper > stored_depth()) throw InputError("bond index out of range");
    return bonds_[static_cast<std::size_t>(upper) - 1];
}

Vertex Cochain::project(int j, int i, Vertex v) const {
    if (i > j) throw InputError("projection goes downwards only");
    Vertex cur = v;
    for (int k = j; k > i; --k) {
        const auto& b = bond(k);
        auto it = b.find(cur);
        if (it == b.end()) throw InputError("bond undefined on vertex");
        cur = it->second;
    }
    return cur;
}

void Cochain::ensure_depth(int depth) {
    while (stored_depth() < depth) {
        if (!extender_) throw InputError("cochain truncation is too shallow and has no extender");
        Extension ext = extender_(*this);
        Morphism m{ext.level, levels_.back(), ext.bond};
        if (!is_morphism(m, MorphismKind::hom)) throw InputError("extender produced a non-bond");
        levels_.push_back(std::move(ext.level));
        bonds_.push_back(std::move(ext.bond));
    }
}

bool Cochain::bond_surjective(int upper) const {
    std::set<Vertex> hit;
    for (const auto& [from, to] : bond(upper)) {
        (void)from;
        hit.insert(to);
    }
    return hit.size() == level(upper - 1).universe().size();
}

bool Cochain::all_bonds_surjective() const {
    for (int k = 1; k <= stored_depth(); ++k)
        if (!bond_surjective(k)) return false;
    return true;
}

std::optional<Vertex> Cochain::least_preimage(int i, Vertex v) const {
    if (i + 1 > stored_depth()) throw InputError("no stored level above " + std::to_string(i));
    for (const auto& [from, to] : bond(i + 1))
        if (to == v) return from; // bond map is ordered by source vertex
    return std::nullopt;
}

std::vector<Vertex> Cochain::reachable(int i, int depth) const {
    const_cast<Cochain*>(this)->ensure_depth(depth);
    std::set<Vertex> alive(level(depth).universe().begin(), level(depth).universe().end());
    for (int k = depth; k > i; --k) {
        std::set<Vertex> next;
        for (Vertex v : alive) next.insert(project(k, k - 1, v));
        alive = std::move(next);
    }
    return std::vector<Vertex>(alive.begin(), alive.end());
}

Json Cochain::to_json() const {
    Json levels = Json::array();
    for (const auto& l : levels_) levels.push_back(structure_to_json(l));
    Json bonds = Json::array();
    for (const auto& b : bonds_) bonds.push_back(vertex_map_to_json(b));
    return Json{{"levels", levels}, {"bonds", bonds}};
}

Cochain Cochain::from_json(const Json& j) {
    try {
        std::vector<FinStructure> levels;
        for (const auto& l : j.at("levels")) levels.push_back(structure_from_json(l));
        std::vector<std::map<Vertex, Vertex>> bonds;
        for (const auto& b : j.at("bonds")) bonds.push_back(vertex_map_from_json(b));
        return Cochain(std::move(levels), std::move(bonds));
    } catch (const Json::exception& e) {
        throw InputError(std::string("bad cochain JSON: ") + e.what());
    }
}

Cochain Cochain::k2_example(int depth) {
    FinStructure k2(Signature::graph(), {0, 1});
    k2.add_tuple("rho", {0, 1});
    k2.add_tuple("rho", {1, 0});
    FinStructure empty2(Signature::graph(), {0, 1});
    std::vector<FinStructure> levels{k2};
    std::vector<std::map<Vertex, Vertex>> bonds;
    for (int i = 1; i <= std::max(depth, 1); ++i) {
        levels.push_back(empty2);
        bonds.push_back({{0, 0}, {1, 1}});
    }
    auto extender = [empty2](const Cochain&) {
        return Extension{empty2, {{0, 0}, {1, 1}}};
    };
    return Cochain(std::move(levels), std::move(bonds), extender);
}

int FiniteCochainSpace::max_depth() const {
    return cochain_.extendable() ? std::numeric_limits<int>::max() : cochain_.stored_depth();
}

Vertex FiniteCochainSpace::canonical_up(int i, Vertex v) const {
    cochain_.ensure_depth(i + 1);
    auto p = cochain_.least_preimage(i, v);
    if (!p)
        throw InputError("canonical extension impossible: bond " + std::to_string(i + 1) +
                         " misses vertex " + std::to_string(v));
    return *p;
}

bool FiniteCochainSpace::related(const std::string& rel, int i, const std::vector<Vertex>& t) const {
    cochain_.ensure_depth(i);
    return cochain_.level(i).related(rel, t);
}

namespace {

// Enumerate the per-coordinate preimage choices of a tuple.
void preimage_tuples(const Cochain& c, int upper, const Tuple& below, std::size_t idx, Tuple& cur,
                     std::vector<Tuple>& out) {
    if (idx == below.size()) {
        out.push_back(cur);
        return;
    }
    for (const auto& [from, to] : c.bond(upper)) {
        if (to != below[idx]) continue;
        cur.push_back(from);
        preimage_tuples(c, upper, below, idx + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::pair<Level, bool> rel_value_upper(const FiniteCochainSpace& space, const std::string& rel,
                                       const std::vector<Branch>& tuple, int depth) {
    if (tuple.empty()) throw InputError("empty tuple");
    space.ensure_depth(depth);
    const Cochain& c = space.cochain();
    const std::size_t n = tuple.size();

    // DP over depth-certified related tuples, tracking the first level at
    // which the candidate diverged from the argument (infinite = never).
    struct State {
        Tuple verts;
        int first_divergence; // -1 = still equal to the argument everywhere
        bool operator<(const State& o) const {
            if (verts != o.verts) return verts < o.verts;
            return first_divergence < o.first_divergence;
        }
    };
    std::set<State> states;
    {
        Tuple arg0;
        for (const auto& b : tuple) arg0.push_back(b.at(0));
        const auto& verts0 = c.level(0).universe();
        std::vector<Tuple> all;
        Tuple cur;
        // all level-0 tuples
        std::function<void(std::size_t)> gen = [&](std::size_t idx) {
            if (idx == n) { all.push_back(cur); return; }
            for (Vertex v : verts0) { cur.push_back(v); gen(idx + 1); cur.pop_back(); }
        };
        gen(0);
        for (const auto& t : all) {
            if (!c.level(0).related(rel, t)) continue;
            states.insert(State{t, t == arg0 ? -1 : 0});
        }
    }
    for (int lvl = 1; lvl <= depth && !states.empty(); ++lvl) {
        Tuple arg;
        for (const auto& b : tuple) arg.push_back(b.at(lvl));
        std::set<State> next;
        for (const auto& s : states) {
            std::vector<Tuple> lifts;
            Tuple cur;
            preimage_tuples(c, lvl, s.verts, 0, cur, lifts);
            for (const auto& t : lifts) {
                if (!c.level(lvl).related(rel, t)) continue;
                int fd = s.first_divergence;
                if (fd < 0 && t != arg) fd = lvl;
                next.insert(State{t, fd});
            }
        }
        states = std::move(next);
    }
    if (states.empty()) return {Level::val(0), true}; // certified-empty set: value 1, final
    int best = -2;                                    // -1 beats every finite level
    for (const auto& s : states) {
        if (s.first_divergence < 0) return {Level::zero(), false};
        best = std::max(best, s.first_divergence);
    }
    Level value = Level::val(static_cast<std::uint32_t>(best));
    // Deeper horizons only shrink the certified set, so the estimate can only
    // grow; it is final exactly when it already sits at the maximum.
    return {value, value == Level::val(0)};
}

StrongnessReport is_strong_at(const FiniteCochainSpace& space, int i, int depth) {
    space.ensure_depth(depth);
    const Cochain& c = space.cochain();
    auto image = c.reachable(i, depth);
    std::set<Vertex> image_set(image.begin(), image.end());
    for (const auto& rs : c.level(i).signature().relations()) {
        for (const auto& t : c.level(i).tuples(rs.name)) {
            bool inside = std::all_of(t.begin(), t.end(),
                                      [&](Vertex v) { return image_set.count(v) > 0; });
            if (!inside) continue;
            // try to lift t to a tuple of chains related through depth
            std::set<Tuple> frontier{t};
            for (int lvl = i + 1; lvl <= depth && !frontier.empty(); ++lvl) {
                std::set<Tuple> next;
                for (const auto& s : frontier) {
                    std::vector<Tuple> lifts;
                    Tuple cur;
                    preimage_tuples(c, lvl, s, 0, cur, lifts);
                    for (const auto& u : lifts)
                        if (c.level(lvl).related(rs.name, u)) next.insert(u);
                }
                frontier = std::move(next);
            }
            if (frontier.empty()) return StrongnessReport{false, rs.name, t, depth};
        }
    }
    return StrongnessReport{true, "", {}, depth};
}

std::string tree_to_dot(const Cochain& c, int depth) {
    const_cast<Cochain&>(c).ensure_depth(depth);
    std::string out = "digraph T {\n  rankdir=BT;\n";
    for (int i = 0; i <= depth; ++i) {
        for (Vertex v : c.level(i).universe()) {
            out += "  \"" + std::to_string(i) + ":" + std::to_string(v) + "\";\n";
        }
    }
    for (int i = 1; i <= depth; ++i) {
        for (const auto& [from, to] : c.bond(i)) {
            out += "  \"" + std::to_string(i) + ":" + std::to_string(from) + "\" -> \"" +
                   std::to_string(i - 1) + ":" + std::to_string(to) + "\";\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace ultralab
