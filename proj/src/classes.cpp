#include "ultralab/classes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ultralab/errors.hpp"

namespace ultralab {

ClassPresentation ClassPresentation::graphs_with_loops(int max_size) {
    ClassPresentation p(Kind::graphs_with_loops, max_size);
    return p;
}

ClassPresentation ClassPresentation::linear_orders(int max_size) {
    ClassPresentation p(Kind::linear_orders, max_size);
    return p;
}

ClassPresentation ClassPresentation::explicit_list(std::vector<FinStructure> members, int max_size) {
    if (members.empty()) throw InputError("explicit class needs at least one member");
    ClassPresentation p(Kind::explicit_list, max_size);
    p.list_ = std::move(members);
    return p;
}

ClassPresentation ClassPresentation::age_of(FinStructure gamma, int max_size) {
    if (gamma.size() == 0) throw InputError("age of the empty structure is empty");
    ClassPresentation p(Kind::age_of, max_size);
    p.gamma_ = std::move(gamma);
    return p;
}

const Signature& ClassPresentation::signature() const {
    static const Signature graph_sig = Signature::graph();
    static const Signature order_sig = Signature::linear_order();
    switch (kind_) {
        case Kind::graphs_with_loops: return graph_sig;
        case Kind::linear_orders: return order_sig;
        case Kind::explicit_list: return list_.front().signature();
        case Kind::age_of: return gamma_->signature();
    }
    throw InputError("bad class kind");
}

const FinStructure& ClassPresentation::gamma() const {
    if (!gamma_) throw InputError("class is not an age");
    return *gamma_;
}

std::string ClassPresentation::name() const {
    switch (kind_) {
        case Kind::graphs_with_loops: return "graphs";
        case Kind::linear_orders: return "linorders";
        case Kind::explicit_list: return "explicit";
        case Kind::age_of: return "age";
    }
    return "?";
}

namespace {

bool is_loop_graph(const FinStructure& a) {
    if (!(a.signature() == Signature::graph())) return false;
    for (Vertex v : a.universe())
        if (!a.related("rho", {v, v})) return false;
    for (const auto& t : a.tuples("rho"))
        if (!a.related("rho", {t[1], t[0]})) return false;
    return true;
}

bool is_reflexive_chain(const FinStructure& a) {
    if (!(a.signature() == Signature::linear_order())) return false;
    const auto& u = a.universe();
    for (Vertex x : u) {
        if (!a.related("leq", {x, x})) return false;
        for (Vertex y : u) {
            bool xy = a.related("leq", {x, y});
            bool yx = a.related("leq", {y, x});
            if (!xy && !yx) return false;              // total
            if (xy && yx && x != y) return false;      // antisymmetric
            for (Vertex z : u)
                if (xy && a.related("leq", {y, z}) && !a.related("leq", {x, z})) return false;
        }
    }
    return true;
}

// Loop-graphs on exactly n vertices up to isomorphism, grown from the
// (n-1)-vertex representatives by attaching one vertex. Shared across
// presentations: the builtin classes are stateless.
const std::vector<FinStructure>& loop_graphs_of_size(int n) {
    static std::vector<std::vector<FinStructure>> memo; // memo[n]
    if (static_cast<int>(memo.size()) > n && !memo[n].empty()) return memo[n];
    if (static_cast<int>(memo.size()) <= n) memo.resize(n + 1);
    if (n == 1) {
        FinStructure one(Signature::graph(), {0});
        one.add_tuple("rho", {0, 0});
        memo[1] = {one};
        return memo[1];
    }
    const auto& smaller = loop_graphs_of_size(n - 1);
    std::map<std::string, FinStructure> next;
    const int fresh = n - 1;
    for (const auto& g : smaller) {
        for (unsigned nb = 0; nb < (1u << (n - 1)); ++nb) {
            FinStructure h = g;
            h.add_vertex(fresh);
            h.add_tuple("rho", {fresh, fresh});
            for (int i = 0; i < n - 1; ++i) {
                if (nb & (1u << i)) {
                    h.add_tuple("rho", {fresh, i});
                    h.add_tuple("rho", {i, fresh});
                }
            }
            next.emplace(h.canonical_key(), h);
        }
    }
    memo[n].reserve(next.size());
    for (auto& [k, v] : next) memo[n].push_back(std::move(v));
    return memo[n];
}

FinStructure chain(int n) {
    std::vector<Vertex> verts;
    for (int i = 0; i < n; ++i) verts.push_back(i);
    FinStructure c(Signature::linear_order(), verts);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) c.add_tuple("leq", {i, j});
    return c;
}

std::vector<FinStructure> distinct_up_to_iso(const std::vector<FinStructure>& in, int cap) {
    std::map<std::pair<int, std::string>, FinStructure> byKey;
    for (const auto& a : in) {
        if (a.size() > cap || a.size() == 0) continue;
        byKey.emplace(std::make_pair(a.size(), a.canonical_key()), a);
    }
    std::vector<FinStructure> out;
    out.reserve(byKey.size());
    for (auto& [k, v] : byKey) out.push_back(std::move(v));
    return out;
}

std::vector<FinStructure> substructures_up_to_iso(const FinStructure& gamma, int cap) {
    const auto& u = gamma.universe();
    const int n = static_cast<int>(u.size());
    std::vector<FinStructure> subs;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > cap) continue;
        std::vector<Vertex> verts;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) verts.push_back(u[i]);
        subs.push_back(gamma.induced(verts));
    }
    return distinct_up_to_iso(subs, cap);
}

} // namespace

const std::vector<FinStructure>& ClassPresentation::members_of_size(int s) const {
    static const std::vector<FinStructure> empty;
    if (s < 1 || s > max_size_) return empty;
    if (by_size_.size() <= static_cast<std::size_t>(s)) {
        by_size_.resize(s + 1);
        by_size_ready_.resize(s + 1, false);
    }
    if (by_size_ready_[s]) return by_size_[s];
    std::vector<FinStructure> raw;
    switch (kind_) {
        case Kind::graphs_with_loops:
            raw = loop_graphs_of_size(s);
            break;
        case Kind::linear_orders:
            raw.push_back(chain(s));
            break;
        case Kind::explicit_list:
            for (const auto& m : list_)
                if (m.size() == s) raw.push_back(m);
            break;
        case Kind::age_of:
            for (auto& m : substructures_up_to_iso(*gamma_, s))
                if (m.size() == s) raw.push_back(std::move(m));
            break;
    }
    auto slot = distinct_up_to_iso(raw, s);
    std::sort(slot.begin(), slot.end(), [](const FinStructure& a, const FinStructure& b) {
        return a.canonical_key() < b.canonical_key();
    });
    by_size_[s] = std::move(slot);
    by_size_ready_[s] = true;
    return by_size_[s];
}

const std::vector<FinStructure>& ClassPresentation::members(int cap) const {
    if (cap < 1) throw InputError("class member cap must be >= 1");
    cap = std::min(cap, max_size_);
    if (cumulative_.size() <= static_cast<std::size_t>(cap)) cumulative_.resize(cap + 1);
    auto& slot = cumulative_[cap];
    if (!slot.empty()) return slot;
    for (int s = 1; s <= cap; ++s) {
        const auto& ms = members_of_size(s);
        slot.insert(slot.end(), ms.begin(), ms.end());
    }
    return slot;
}

bool ClassPresentation::contains(const FinStructure& a) const {
    if (a.size() == 0 || a.size() > max_size_) return false;
    if (!(a.signature() == signature())) return false;
    switch (kind_) {
        case Kind::graphs_with_loops:
            return is_loop_graph(a);
        case Kind::linear_orders:
            return is_reflexive_chain(a);
        case Kind::explicit_list: {
            for (const auto& m : list_)
                if (m.size() == a.size() && find_isomorphism(a, m)) return true;
            return false;
        }
        case Kind::age_of:
            return !enumerate_morphisms(a, *gamma_, MorphismKind::embedding).empty();
    }
    return false;
}

bool ClassPresentation::hereditary_ok() const {
    for (const auto& m : members(max_size_)) {
        const auto& u = m.universe();
        const int n = static_cast<int>(u.size());
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<Vertex> verts;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) verts.push_back(u[i]);
            if (!contains(m.induced(verts))) return false;
        }
    }
    return true;
}

} // namespace ultralab
