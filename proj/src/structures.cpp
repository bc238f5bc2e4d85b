#include "ultralab/structures.hpp"

#include <algorithm>
#include <numeric>

#include "ultralab/errors.hpp"

namespace ultralab {

Signature::Signature(std::vector<RelationSymbol> relations) : rels_(std::move(relations)) {
    std::set<std::string> seen;
    for (const auto& r : rels_) {
        if (r.arity < 1) throw InputError("relation arity must be >= 1: " + r.name);
        if (!seen.insert(r.name).second) throw InputError("duplicate relation name: " + r.name);
    }
}

int Signature::arity(const std::string& name) const {
    for (const auto& r : rels_)
        if (r.name == name) return r.arity;
    throw InputError("unknown relation: " + name);
}

bool Signature::has(const std::string& name) const {
    for (const auto& r : rels_)
        if (r.name == name) return true;
    return false;
}

bool Signature::operator==(const Signature& o) const {
    if (rels_.size() != o.rels_.size()) return false;
    for (std::size_t i = 0; i < rels_.size(); ++i)
        if (rels_[i].name != o.rels_[i].name || rels_[i].arity != o.rels_[i].arity) return false;
    return true;
}

Signature Signature::graph() { return Signature({{"rho", 2}}); }
Signature Signature::linear_order() { return Signature({{"leq", 2}}); }

FinStructure::FinStructure(Signature sig, std::vector<Vertex> universe)
    : sig_(std::move(sig)), universe_(std::move(universe)) {
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    for (Vertex v : universe_)
        if (v < 0) throw InputError("vertex ids must be non-negative");
    for (const auto& r : sig_.relations()) rels_[r.name];
}

bool FinStructure::has_vertex(Vertex v) const {
    return std::binary_search(universe_.begin(), universe_.end(), v);
}

void FinStructure::add_vertex(Vertex v) {
    if (v < 0) throw InputError("vertex ids must be non-negative");
    auto it = std::lower_bound(universe_.begin(), universe_.end(), v);
    if (it == universe_.end() || *it != v) universe_.insert(it, v);
}

void FinStructure::add_tuple(const std::string& rel, const Tuple& t) {
    if (static_cast<int>(t.size()) != sig_.arity(rel))
        throw InputError("tuple arity mismatch for relation " + rel);
    for (Vertex v : t)
        if (!has_vertex(v)) throw InputError("tuple entry outside universe in relation " + rel);
    rels_[rel].insert(t);
}

bool FinStructure::related(const std::string& rel, const Tuple& t) const {
    auto it = rels_.find(rel);
    return it != rels_.end() && it->second.count(t) > 0;
}

const std::set<Tuple>& FinStructure::tuples(const std::string& rel) const {
    auto it = rels_.find(rel);
    if (it == rels_.end()) throw InputError("unknown relation: " + rel);
    return it->second;
}

FinStructure FinStructure::induced(const std::vector<Vertex>& verts) const {
    FinStructure r(sig_, verts);
    for (const auto& [name, tuples] : rels_) {
        for (const auto& t : tuples) {
            bool inside = std::all_of(t.begin(), t.end(), [&](Vertex v) { return r.has_vertex(v); });
            if (inside) r.rels_[name].insert(t);
        }
    }
    return r;
}

FinStructure FinStructure::relabeled(const std::map<Vertex, Vertex>& m) const {
    std::vector<Vertex> verts;
    verts.reserve(universe_.size());
    std::set<Vertex> images;
    for (Vertex v : universe_) {
        auto it = m.find(v);
        if (it == m.end()) throw InputError("relabeling misses a vertex");
        if (!images.insert(it->second).second) throw InputError("relabeling is not injective");
        verts.push_back(it->second);
    }
    FinStructure r(sig_, verts);
    for (const auto& [name, tuples] : rels_) {
        for (const auto& t : tuples) {
            Tuple img;
            img.reserve(t.size());
            for (Vertex v : t) img.push_back(m.at(v));
            r.rels_[name].insert(img);
        }
    }
    return r;
}

bool FinStructure::operator==(const FinStructure& o) const {
    return sig_ == o.sig_ && universe_ == o.universe_ && rels_ == o.rels_;
}

std::string FinStructure::canonical_key() const {
    const int n = size();
    // tuples pre-encoded as position vectors so the permutation loop is
    // pure integer work
    struct RelData {
        int arity;
        std::vector<std::vector<int>> tuples; // positions into universe_
    };
    std::vector<RelData> rel_data;
    for (const auto& [name, tuples] : rels_) {
        RelData rd;
        rd.arity = tuples.empty() ? 1 : static_cast<int>(tuples.begin()->size());
        for (const auto& t : tuples) {
            std::vector<int> pos;
            pos.reserve(t.size());
            for (Vertex v : t)
                pos.push_back(static_cast<int>(
                    std::lower_bound(universe_.begin(), universe_.end(), v) - universe_.begin()));
            rd.tuples.push_back(std::move(pos));
        }
        rel_data.push_back(std::move(rd));
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint64_t> best;
    std::vector<std::uint64_t> enc;
    std::vector<std::uint64_t> codes;
    do {
        enc.clear();
        for (const auto& rd : rel_data) {
            codes.clear();
            for (const auto& t : rd.tuples) {
                std::uint64_t code = 0;
                for (int p : t) code = code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(perm[p]);
                codes.push_back(code);
            }
            std::sort(codes.begin(), codes.end());
            enc.push_back(static_cast<std::uint64_t>(codes.size()));
            enc.insert(enc.end(), codes.begin(), codes.end());
        }
        if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::string out;
    out.reserve(best.size() * 4 + 8);
    out += std::to_string(n);
    // relation names in map order participate once; only sizes and codes vary
    for (const auto& [name, tuples] : rels_) {
        (void)tuples;
        out += '|';
        out += name;
    }
    for (std::uint64_t c : best) {
        out += ';';
        out += std::to_string(c);
    }
    return out;
}

Vertex Morphism::operator()(Vertex v) const {
    auto it = map.find(v);
    if (it == map.end()) throw InputError("morphism undefined on a vertex");
    return it->second;
}

Tuple Morphism::apply(const Tuple& t) const {
    Tuple r;
    r.reserve(t.size());
    for (Vertex v : t) r.push_back((*this)(v));
    return r;
}

Morphism Morphism::identity(const FinStructure& a) {
    Morphism m{a, a, {}};
    for (Vertex v : a.universe()) m.map[v] = v;
    return m;
}

Morphism Morphism::compose_after(const Morphism& inner) const {
    Morphism r{inner.source, target, {}};
    for (Vertex v : inner.source.universe()) r.map[v] = (*this)(inner(v));
    return r;
}

namespace {

bool check_hom_laws(const Morphism& f) {
    for (const auto& rs : f.source.signature().relations()) {
        for (const auto& t : f.source.tuples(rs.name)) {
            if (!f.target.related(rs.name, f.apply(t))) return false;
        }
    }
    return true;
}

bool check_reflection(const Morphism& f) {
    for (const auto& rs : f.source.signature().relations()) {
        // every target tuple inside the image must come from a source tuple
        std::map<Vertex, Vertex> inverse;
        for (const auto& [s, t] : f.map) inverse[t] = s;
        for (const auto& t : f.target.tuples(rs.name)) {
            Tuple pre;
            pre.reserve(t.size());
            bool inside = true;
            for (Vertex v : t) {
                auto it = inverse.find(v);
                if (it == inverse.end()) { inside = false; break; }
                pre.push_back(it->second);
            }
            if (inside && !f.source.related(rs.name, pre)) return false;
        }
    }
    return true;
}

bool is_injective(const Morphism& f) {
    std::set<Vertex> images;
    for (const auto& [s, t] : f.map) {
        (void)s;
        if (!images.insert(t).second) return false;
    }
    return true;
}

} // namespace

bool is_morphism(const Morphism& f, MorphismKind kind) {
    if (!(f.source.signature() == f.target.signature()))
        throw InputError("morphism endpoints have different signatures");
    for (Vertex v : f.source.universe()) {
        auto it = f.map.find(v);
        if (it == f.map.end()) throw InputError("morphism map is not total on the source");
        if (!f.target.has_vertex(it->second))
            throw InputError("morphism map leaves the target universe");
    }
    if (!check_hom_laws(f)) return false;
    if (kind == MorphismKind::hom) return true;
    if (!is_injective(f) || !check_reflection(f)) return false;
    if (kind == MorphismKind::embedding) return true;
    return f.map.size() == f.target.universe().size(); // bijective embedding
}

namespace {

// Backtracking enumeration in lexicographic image order. The fixed vertices
// are assigned up front and skipped during the walk.
struct Enumerator {
    const FinStructure& a;
    const FinStructure& b;
    MorphismKind kind;
    bool first_only;
    std::vector<Morphism>& out;

    bool tuple_prune(const Morphism& partial) const {
        for (const auto& rs : a.signature().relations()) {
            for (const auto& t : a.tuples(rs.name)) {
                Tuple img;
                img.reserve(t.size());
                bool full = true;
                for (Vertex x : t) {
                    auto it = partial.map.find(x);
                    if (it == partial.map.end()) { full = false; break; }
                    img.push_back(it->second);
                }
                if (full && !b.related(rs.name, img)) return false;
            }
        }
        return true;
    }

    bool walk(std::size_t idx, Morphism& partial, std::vector<bool>& used) {
        const auto& verts = a.universe();
        while (idx < verts.size() && partial.map.count(verts[idx])) ++idx;
        if (idx == verts.size()) {
            if (kind == MorphismKind::iso && partial.map.size() != b.universe().size()) return false;
            if (kind != MorphismKind::hom && !is_morphism(partial, kind)) return false;
            out.push_back(partial);
            return first_only;
        }
        Vertex v = verts[idx];
        for (std::size_t j = 0; j < b.universe().size(); ++j) {
            Vertex w = b.universe()[j];
            if (kind != MorphismKind::hom && used[j]) continue;
            partial.map[v] = w;
            if (tuple_prune(partial)) {
                used[j] = true;
                if (walk(idx + 1, partial, used)) {
                    partial.map.erase(v);
                    used[j] = false;
                    return true;
                }
                used[j] = false;
            }
            partial.map.erase(v);
        }
        return false;
    }
};

} // namespace

std::vector<Morphism> enumerate_morphisms_extending(const FinStructure& a, const FinStructure& b,
                                                    MorphismKind kind,
                                                    const std::map<Vertex, Vertex>& partial,
                                                    bool first_only) {
    if (!(a.signature() == b.signature()))
        throw InputError("cannot enumerate morphisms across signatures");
    std::vector<Morphism> out;
    if (kind != MorphismKind::hom && a.size() > b.size()) return out;
    if (kind == MorphismKind::iso && a.size() != b.size()) return out;

    Morphism seed{a, b, {}};
    std::vector<bool> used(b.universe().size(), false);
    std::set<Vertex> images;
    for (const auto& [from, to] : partial) {
        if (!a.has_vertex(from) || !b.has_vertex(to)) return out; // unsatisfiable fixement
        if (kind != MorphismKind::hom && !images.insert(to).second) return out;
        seed.map[from] = to;
        auto pos = std::lower_bound(b.universe().begin(), b.universe().end(), to) - b.universe().begin();
        used[static_cast<std::size_t>(pos)] = true;
    }
    Enumerator e{a, b, kind, first_only, out};
    if (!e.tuple_prune(seed)) return out;
    e.walk(0, seed, used);
    return out;
}

std::vector<Morphism> enumerate_morphisms(const FinStructure& a, const FinStructure& b,
                                          MorphismKind kind) {
    return enumerate_morphisms_extending(a, b, kind, {});
}

std::optional<Morphism> find_isomorphism(const FinStructure& a, const FinStructure& b) {
    auto first = enumerate_morphisms_extending(a, b, MorphismKind::iso, {}, true);
    if (first.empty()) return std::nullopt;
    return first.front();
}

} // namespace ultralab
