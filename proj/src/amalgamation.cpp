#include "ultralab/amalgamation.hpp"

#include <algorithm>
#include <optional>

#include "ultralab/errors.hpp"

namespace ultralab {

namespace {

Morphism checked(FinStructure src, FinStructure dst, std::map<Vertex, Vertex> map,
                 MorphismKind kind, const char* what) {
    Morphism m{std::move(src), std::move(dst), std::move(map)};
    if (!is_morphism(m, kind)) throw InputError(std::string(what) + " fails its morphism laws");
    return m;
}

bool same_on(const FinStructure& base, const Morphism& f, const Morphism& g) {
    for (Vertex v : base.universe())
        if (f(v) != g(v)) return false;
    return true;
}

void require_member(const ClassPresentation& cls, const FinStructure& a, const char* what) {
    if (!cls.contains(a)) throw InputError(std::string(what) + " is not a member of the class");
}

// Size-major candidate stream: small witnesses are found without ever
// materialising the large end of the catalog. fn returns true to stop.
template <class Fn>
void for_each_member(const ClassPresentation& cls, int bound, Fn&& fn) {
    for (int s = 1; s <= std::min(bound, cls.max_size()); ++s) {
        for (const auto& C : cls.members_of_size(s)) {
            if (fn(C)) return;
        }
    }
}

// The class as presented is finite; once the bound reaches the size of its
// largest member an exhausted search is definitive.
int class_sup_size(const ClassPresentation& cls) {
    switch (cls.kind()) {
        case ClassPresentation::Kind::age_of:
            return std::min(cls.max_size(), cls.gamma().size());
        case ClassPresentation::Kind::explicit_list: {
            int m = 1;
            for (const auto& s : cls.members(cls.max_size())) m = std::max(m, s.size());
            return std::min(cls.max_size(), m);
        }
        default:
            return cls.max_size();
    }
}

Verdict no_verdict(const ClassPresentation& cls, int bound, Json searched) {
    Verdict v;
    v.bound = bound;
    v.witness = nullptr;
    v.searched = std::move(searched);
    v.outcome = bound >= class_sup_size(cls) ? Verdict::Outcome::no_definitive
                                             : Verdict::Outcome::no_up_to_bound;
    return v;
}

Verdict yes_verdict(int bound, Json witness, Json searched) {
    return Verdict{Verdict::Outcome::yes, bound, std::move(witness), std::move(searched)};
}

} // namespace

Span Span::make(FinStructure A, FinStructure B1, FinStructure B2, std::map<Vertex, Vertex> f1,
                std::map<Vertex, Vertex> f2) {
    Span s;
    s.f1 = checked(A, B1, std::move(f1), MorphismKind::embedding, "f1");
    s.f2 = checked(A, B2, std::move(f2), MorphismKind::embedding, "f2");
    s.A = std::move(A);
    s.B1 = std::move(B1);
    s.B2 = std::move(B2);
    return s;
}

AEPInstance AEPInstance::make(Span span, FinStructure T, std::map<Vertex, Vertex> h1,
                              std::map<Vertex, Vertex> h2) {
    AEPInstance inst;
    inst.h1 = checked(span.B1, T, std::move(h1), MorphismKind::hom, "h1");
    inst.h2 = checked(span.B2, T, std::move(h2), MorphismKind::hom, "h2");
    for (Vertex a : span.A.universe())
        if (inst.h1(span.f1(a)) != inst.h2(span.f2(a)))
            throw InputError("instance does not commute: h1∘f1 != h2∘f2");
    inst.span = std::move(span);
    inst.T = std::move(T);
    return inst;
}

std::string Verdict::outcome_string() const {
    switch (outcome) {
        case Outcome::yes: return "yes";
        case Outcome::no_definitive: return "no-definitive";
        case Outcome::no_up_to_bound: return "no-up-to-bound";
    }
    return "?";
}

Json Verdict::to_json(const std::string& property) const {
    return Json{{"property", property},
                {"outcome", outcome_string()},
                {"bound", bound},
                {"searched", searched},
                {"witness", witness}};
}

int default_bound(const Span& span) { return span.B1.size() + span.B2.size() + 2; }

Verdict check_ap(const ClassPresentation& cls, const Span& span, int bound) {
    require_member(cls, span.A, "A");
    require_member(cls, span.B1, "B1");
    require_member(cls, span.B2, "B2");
    long examined = 0;
    std::optional<Verdict> found;
    // any amalgam restricts to the union of the leg images, which stays in
    // the class by heredity, so candidates above that size are redundant
    const int cap = std::min(bound, span.B1.size() + span.B2.size() - span.A.size());
    for_each_member(cls, cap, [&](const FinStructure& C) {
        for (const auto& k1 : enumerate_morphisms(span.B1, C, MorphismKind::embedding)) {
            // k2 is pinned on f2(A) by the commuting square
            std::map<Vertex, Vertex> pinned;
            for (Vertex a : span.A.universe()) pinned[span.f2(a)] = k1(span.f1(a));
            auto k2s = enumerate_morphisms_extending(span.B2, C, MorphismKind::embedding, pinned,
                                                     /*first_only=*/true);
            ++examined;
            if (!k2s.empty()) {
                const auto& k2 = k2s.front();
                if (!is_morphism(k1, MorphismKind::embedding) ||
                    !is_morphism(k2, MorphismKind::embedding) ||
                    !same_on(span.A, k2.compose_after(span.f2), k1.compose_after(span.f1)))
                    throw std::logic_error("witness failed revalidation");
                Json w{{"C", structure_to_json(C)},
                       {"k1", vertex_map_to_json(k1.map)},
                       {"k2", vertex_map_to_json(k2.map)}};
                found = yes_verdict(bound, w, Json{{"candidates", examined}});
                return true;
            }
        }
        return false;
    });
    if (found) return *found;
    return no_verdict(cls, bound, Json{{"candidates", examined}});
}

Verdict check_jep(const ClassPresentation& cls, const FinStructure& A, const FinStructure& B,
                  int bound) {
    require_member(cls, A, "A");
    require_member(cls, B, "B");
    long examined = 0;
    std::optional<Verdict> found;
    for_each_member(cls, bound, [&](const FinStructure& C) {
        ++examined;
        auto i1 = enumerate_morphisms_extending(A, C, MorphismKind::embedding, {}, true);
        if (i1.empty()) return false;
        auto i2 = enumerate_morphisms_extending(B, C, MorphismKind::embedding, {}, true);
        if (i2.empty()) return false;
        Json w{{"C", structure_to_json(C)},
               {"i1", vertex_map_to_json(i1.front().map)},
               {"i2", vertex_map_to_json(i2.front().map)}};
        found = yes_verdict(bound, w, Json{{"candidates", examined}});
        return true;
    });
    if (found) return *found;
    return no_verdict(cls, bound, Json{{"candidates", examined}});
}

namespace {

// Common engine for AEP (targets range over the class) and the V-valued
// variant (target fixed, no extension embedding).
Verdict amalgamated_extension(const ClassPresentation& cls, const AEPInstance& inst, int bound,
                              const FinStructure* fixed_target) {
    const Span& span = inst.span;
    long examined = 0;
    const int cap_c = std::min(bound, span.B1.size() + span.B2.size() - span.A.size());
    const int cap_t = std::min(bound, inst.T.size() + cap_c);

    auto try_target = [&](const FinStructure& C, const Morphism& g1, const Morphism& g2,
                          const FinStructure& Tp, const Morphism& k,
                          bool with_k) -> std::optional<Json> {
        // h is pinned on the g-images; conflicts kill this candidate pair.
        std::map<Vertex, Vertex> pins;
        for (Vertex b : span.B1.universe()) {
            Vertex c = g1(b), t = k(inst.h1(b));
            auto it = pins.find(c);
            if (it != pins.end() && it->second != t) return std::nullopt;
            pins[c] = t;
        }
        for (Vertex b : span.B2.universe()) {
            Vertex c = g2(b), t = k(inst.h2(b));
            auto it = pins.find(c);
            if (it != pins.end() && it->second != t) return std::nullopt;
            pins[c] = t;
        }
        auto hs = enumerate_morphisms_extending(C, Tp, MorphismKind::hom, pins, true);
        if (hs.empty()) return std::nullopt;
        const auto& h = hs.front();
        for (Vertex b : span.B1.universe())
            if (h(g1(b)) != k(inst.h1(b))) throw std::logic_error("revalidation failed");
        for (Vertex b : span.B2.universe())
            if (h(g2(b)) != k(inst.h2(b))) throw std::logic_error("revalidation failed");
        Json w{{"C", structure_to_json(C)},
               {"g1", vertex_map_to_json(g1.map)},
               {"g2", vertex_map_to_json(g2.map)},
               {"h", vertex_map_to_json(h.map)}};
        if (with_k) {
            w["Tprime"] = structure_to_json(Tp);
            w["k"] = vertex_map_to_json(k.map);
        }
        return w;
    };

    std::optional<Verdict> found;
    for_each_member(cls, cap_c, [&](const FinStructure& C) {
        for (const auto& g1 : enumerate_morphisms(span.B1, C, MorphismKind::embedding)) {
            std::map<Vertex, Vertex> pinned;
            for (Vertex a : span.A.universe()) pinned[span.f2(a)] = g1(span.f1(a));
            for (const auto& g2 :
                 enumerate_morphisms_extending(span.B2, C, MorphismKind::embedding, pinned)) {
                ++examined;
                if (fixed_target) {
                    auto w = try_target(C, g1, g2, *fixed_target,
                                        Morphism::identity(*fixed_target), false);
                    if (w) {
                        found = yes_verdict(bound, *w, Json{{"pairs", examined}});
                        return true;
                    }
                } else {
                    std::optional<Json> w;
                    for_each_member(cls, cap_t, [&](const FinStructure& Tp) {
                        for (const auto& k :
                             enumerate_morphisms(inst.T, Tp, MorphismKind::embedding)) {
                            w = try_target(C, g1, g2, Tp, k, true);
                            if (w) return true;
                        }
                        return false;
                    });
                    if (w) {
                        found = yes_verdict(bound, *w, Json{{"pairs", examined}});
                        return true;
                    }
                }
            }
        }
        return false;
    });
    if (found) return *found;
    Json searched{{"pairs", examined}, {"maxC", bound}};
    if (!fixed_target) searched["maxT"] = bound;
    return no_verdict(cls, bound, searched);
}

} // namespace

Verdict check_aep(const ClassPresentation& cls, const AEPInstance& inst, int bound) {
    require_member(cls, inst.span.A, "A");
    require_member(cls, inst.span.B1, "B1");
    require_member(cls, inst.span.B2, "B2");
    require_member(cls, inst.T, "T");
    return amalgamated_extension(cls, inst, bound, nullptr);
}

Verdict check_vvap(const ClassPresentation& cls, const FinStructure& V, const AEPInstance& inst,
                   int bound) {
    require_member(cls, V, "V");
    if (!(inst.T == V)) throw InputError("instance targets must equal V");
    return amalgamated_extension(cls, inst, bound, &V);
}

Verdict check_hap(const ClassPresentation& cls, const FinStructure& A, const FinStructure& B1,
                  const FinStructure& B2, const Morphism& f1_embedding, const Morphism& f2_hom,
                  int bound) {
    require_member(cls, A, "A");
    require_member(cls, B1, "B1");
    require_member(cls, B2, "B2");
    if (!is_morphism(f1_embedding, MorphismKind::embedding)) throw InputError("f1 must embed");
    if (!is_morphism(f2_hom, MorphismKind::hom)) throw InputError("f2 must be a homomorphism");
    long examined = 0;
    std::optional<Verdict> found;
    const int cap = std::min(bound, B1.size() + B2.size());
    for_each_member(cls, cap, [&](const FinStructure& C) {
        for (const auto& g2 : enumerate_morphisms(B2, C, MorphismKind::embedding)) {
            std::map<Vertex, Vertex> pinned;
            bool consistent = true;
            for (Vertex a : A.universe()) {
                Vertex from = f1_embedding(a), to = g2(f2_hom(a));
                auto it = pinned.find(from);
                if (it != pinned.end() && it->second != to) { consistent = false; break; }
                pinned[from] = to;
            }
            ++examined;
            if (!consistent) continue;
            auto g1s = enumerate_morphisms_extending(B1, C, MorphismKind::hom, pinned, true);
            if (!g1s.empty()) {
                Json w{{"C", structure_to_json(C)},
                       {"g1", vertex_map_to_json(g1s.front().map)},
                       {"g2", vertex_map_to_json(g2.map)}};
                found = yes_verdict(bound, w, Json{{"pairs", examined}});
                return true;
            }
        }
        return false;
    });
    if (found) return *found;
    return no_verdict(cls, bound, Json{{"pairs", examined}});
}

Verdict check_strict(const ClassPresentation& cls, const Span& span, int bound) {
    require_member(cls, span.A, "A");
    require_member(cls, span.B1, "B1");
    require_member(cls, span.B2, "B2");
    long candidates = 0;
    long refuted = 0;
    std::optional<Verdict> found;
    const int cap = std::min(bound, span.B1.size() + span.B2.size() - span.A.size());
    for_each_member(cls, cap, [&](const FinStructure& C) {
        for (const auto& lam : enumerate_morphisms(span.B1, C, MorphismKind::embedding)) {
            std::map<Vertex, Vertex> pinned;
            for (Vertex a : span.A.universe()) pinned[span.f2(a)] = lam(span.f1(a));
            for (const auto& nu :
                 enumerate_morphisms_extending(span.B2, C, MorphismKind::embedding, pinned)) {
                ++candidates;
                // universal property against every test cocone within the bound
                bool universal = true;
                for_each_member(cls, bound, [&](const FinStructure& X) {
                    for (const auto& f : enumerate_morphisms(span.B1, X, MorphismKind::hom)) {
                        std::map<Vertex, Vertex> want;
                        for (Vertex a : span.A.universe()) want[span.f2(a)] = f(span.f1(a));
                        for (const auto& g :
                             enumerate_morphisms_extending(span.B2, X, MorphismKind::hom, want)) {
                            std::map<Vertex, Vertex> pins;
                            bool ok = true;
                            for (Vertex b : span.B1.universe()) {
                                auto it = pins.find(lam(b));
                                if (it != pins.end() && it->second != f(b)) { ok = false; break; }
                                pins[lam(b)] = f(b);
                            }
                            if (ok) {
                                for (Vertex b : span.B2.universe()) {
                                    auto it = pins.find(nu(b));
                                    if (it != pins.end() && it->second != g(b)) { ok = false; break; }
                                    pins[nu(b)] = g(b);
                                }
                            }
                            std::size_t count = 0;
                            if (ok) {
                                count = enumerate_morphisms_extending(C, X, MorphismKind::hom, pins)
                                            .size();
                            }
                            if (count != 1) { universal = false; return true; }
                        }
                    }
                    return false;
                });
                if (universal) {
                    Json w{{"C", structure_to_json(C)},
                           {"lambda", vertex_map_to_json(lam.map)},
                           {"nu", vertex_map_to_json(nu.map)}};
                    found = yes_verdict(
                        bound, w, Json{{"candidates", candidates}, {"tested", "all X within bound"}});
                    return true;
                }
                ++refuted;
            }
        }
        return false;
    });
    if (found) return *found;
    // Pushouts are generated by the images of B1 and B2, so the candidate
    // space is complete once the bound covers |B1|+|B2|-|A|; an explicit
    // failing test refutes a candidate outright.
    Verdict v;
    v.bound = bound;
    v.witness = nullptr;
    v.searched = Json{{"candidates", candidates}, {"refuted", refuted}};
    int complete_at = span.B1.size() + span.B2.size() - span.A.size();
    v.outcome = bound >= complete_at ? Verdict::Outcome::no_definitive
                                     : Verdict::Outcome::no_up_to_bound;
    return v;
}

} // namespace ultralab
