#include "ultralab/dynamics.hpp"

#include <algorithm>

namespace ultralab::dynamics {

namespace {

using rado::std_edge;

// first-disagreement index through depth, as an ordinal with "deeper than
// depth" mapped past the end
int agreement_code(const RBranch& x, const RBranch& y, int depth) {
    auto d = first_disagreement(x, y, depth);
    return d ? *d : depth + 1;
}

} // namespace

PartialIso PartialIso::make(std::vector<std::pair<RBranch, RBranch>> pairs, int depth) {
    PartialIso p{std::move(pairs), depth};
    p.revalidate();
    return p;
}

void PartialIso::revalidate() const {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            // isometry of corresponding prefixes (injectivity both ways included)
            if (agreement_code(pairs[i].first, pairs[j].first, depth) !=
                agreement_code(pairs[i].second, pairs[j].second, depth))
                throw InputError("partial isomorphism is not an isometry on its pairs");
            // relation patterns agree through depth; one failure level each
            for (int lvl = 0; lvl <= depth; ++lvl) {
                bool lhs = pairs[i].first.space().edge(pairs[i].first.at(lvl), pairs[j].first.at(lvl));
                bool rhs =
                    pairs[i].second.space().edge(pairs[i].second.at(lvl), pairs[j].second.at(lvl));
                if (lhs != rhs)
                    throw InputError("partial isomorphism breaks a relation value at level " +
                                     std::to_string(lvl));
            }
        }
    }
}

std::optional<RBranch> AutoTable::apply(const RBranch& x, int depth) const {
    for (const auto& [a, b] : table.pairs)
        if (!first_disagreement(x, a, depth)) return b;
    return std::nullopt;
}

std::optional<RBranch> AutoTable::apply_inv(const RBranch& y, int depth) const {
    for (const auto& [a, b] : table.pairs)
        if (!first_disagreement(y, b, depth)) return a;
    return std::nullopt;
}

RBranch respond(const ProRado& side, const std::vector<std::pair<RBranch, RBranch>>& pairs,
                bool respond_right, const RBranch& moved, int depth) {
    // express everything as: existing points o_k on the answer side, with
    // target agreement a_k and the moved point's relation pattern
    std::vector<const RBranch*> mine, theirs;
    for (const auto& [a, b] : pairs) {
        mine.push_back(respond_right ? &a : &b);
        theirs.push_back(respond_right ? &b : &a);
    }
    const std::size_t k = pairs.size();
    std::vector<int> agree(k);
    for (std::size_t j = 0; j < k; ++j) agree[j] = agreement_code(moved, *mine[j], depth);
    // exact repeat of an existing point maps to its partner
    for (std::size_t j = 0; j < k; ++j)
        if (agree[j] > depth) return *theirs[j];

    std::vector<BigNat> prefix;
    for (int lvl = 0; lvl <= depth; ++lvl) {
        std::optional<BigNat> forced;
        for (std::size_t j = 0; j < k; ++j) {
            if (agree[j] > lvl) {
                BigNat v = theirs[j]->at(lvl);
                if (forced && !(*forced == v))
                    throw std::logic_error("inconsistent forced responses; invariants broken");
                forced = v;
            }
        }
        auto valid = [&](const BigNat& z) {
            if (lvl > 0 && !(side.bond(z) == prefix.back())) return false;
            for (std::size_t j = 0; j < k; ++j) {
                const BigNat& other = theirs[j]->at(lvl);
                if (agree[j] == lvl && z == other) return false;
                bool want = moved.space().edge(moved.at(lvl), mine[j]->at(lvl));
                if (side.edge(z, other) != want) return false;
            }
            return true;
        };
        std::optional<BigNat> choice;
        if (forced) {
            if (!valid(*forced))
                throw std::logic_error("forced response fails its constraints; invariants broken");
            choice = forced;
        } else {
            // canonical least: the small window at the root, the known fiber
            // above it, and a constructed witness when neither bites
            if (lvl == 0) {
                for (std::uint64_t z = 0; z < (1u << 10) && !choice; ++z) {
                    BigNat cand(z);
                    if (valid(cand)) choice = cand;
                }
            } else {
                for (const auto& cand : side.preimages(prefix.back(), 64))
                    if (valid(cand)) { choice = cand; break; }
            }
            if (!choice) {
                std::vector<BigNat> adj, nonadj, exclude;
                for (std::size_t j = 0; j < k; ++j) {
                    const BigNat& other = theirs[j]->at(lvl);
                    bool want = moved.space().edge(moved.at(lvl), mine[j]->at(lvl));
                    (want ? adj : nonadj).push_back(other);
                    if (agree[j] == lvl) exclude.push_back(other);
                }
                if (lvl == 0) {
                    choice = side.free_witness(adj, nonadj, exclude);
                } else {
                    choice = side.fiber_witness(prefix.back(), adj, nonadj, exclude);
                }
                if (!valid(*choice))
                    throw std::logic_error("constructed response failed validation");
            }
        }
        prefix.push_back(*choice);
    }
    return RBranch(&side, prefix);
}

namespace {

// Node enumeration for the density scheduler: diagonals over
// (level, vertex-index), deeper levels first, with concrete and generic
// vertices interleaved so shared-prefix points show up early. Nodes naming
// a generic that does not exist yet count as hit and are skipped.
std::optional<std::pair<int, BigNat>> chi(const ProRado& space, std::uint64_t j) {
    std::uint64_t d = 0, acc = 0;
    while (acc + d + 1 <= j) {
        acc += d + 1;
        ++d;
    }
    std::uint64_t offset = j - acc;
    int level = static_cast<int>(d - offset);
    std::uint64_t idx = offset;
    BigNat vert = idx % 2 == 0 ? BigNat(idx / 2) : ProRado::generic_vertex(idx / 2);
    if (!space.vertex_known(vert)) return std::nullopt;
    return std::make_pair(level, vert);
}

// A canonical branch through the node (level, vertex).
RBranch branch_through(const ProRado& R, int level, const BigNat& v) {
    std::vector<BigNat> prefix(static_cast<std::size_t>(level) + 1);
    prefix[static_cast<std::size_t>(level)] = v;
    for (int i = level; i > 0; --i) prefix[static_cast<std::size_t>(i) - 1] = R.bond(prefix[i]);
    return RBranch(&R, prefix);
}

} // namespace

AutoTable bf_extend(const ProRado& left, const ProRado& right, const PartialIso& start, int rounds,
                    int depth) {
    start.revalidate();
    AutoTable t{PartialIso{start.pairs, depth}, 0, 0};
    for (int round = 0; round < rounds; ++round) {
        const bool from_left = round % 2 == 0;
        const ProRado& mover_space = from_left ? left : right;
        std::uint64_t& cursor = from_left ? t.chi_next : t.xi_next;
        // least unhit scheduled node on the moving side
        std::optional<RBranch> moved;
        while (!moved) {
            auto node = chi(mover_space, cursor);
            ++cursor;
            if (!node) continue;
            auto [lvl, vtx] = *node;
            bool hit = false;
            for (const auto& [a, b] : t.table.pairs) {
                const RBranch& pt = from_left ? a : b;
                if (pt.at(lvl) == vtx) { hit = true; break; }
            }
            if (!hit) moved = branch_through(mover_space, lvl, vtx);
        }
        RBranch answer =
            respond(from_left ? right : left, t.table.pairs, /*respond_right=*/from_left, *moved,
                    depth);
        if (from_left)
            t.table.pairs.emplace_back(*moved, answer);
        else
            t.table.pairs.emplace_back(answer, *moved);
        t.table.revalidate();
    }
    return t;
}

RBranch shift_right(const RBranch& x, int depth) {
    const ProRado& R = x.space();
    std::vector<BigNat> prefix;
    prefix.push_back(R.bond(x.at(0)));
    for (int i = 0; i <= depth; ++i) prefix.push_back(x.at(i));
    return RBranch(&R, prefix);
}

RBranch shift_left(const RBranch& x, int depth) {
    const ProRado& R = x.space();
    std::vector<BigNat> prefix;
    for (int i = 1; i <= depth + 1; ++i) prefix.push_back(x.at(i));
    return RBranch(&R, prefix);
}

int shift_level(const PartialIso& alpha) {
    // m: every non-related tuple projects outside the relation by then
    int m = 0;
    for (const auto& [a1, b1] : alpha.pairs) {
        (void)b1;
        for (const auto& [a2, b2] : alpha.pairs) {
            (void)b2;
            std::optional<int> fail;
            for (int lvl = 0; lvl <= alpha.depth; ++lvl) {
                if (!a1.space().edge(a1.at(lvl), a2.at(lvl))) { fail = lvl; break; }
            }
            if (fail) m = std::max(m, *fail);
            // tuples related through the whole depth count as related
        }
    }
    // n: the projection splits every point of A ∪ B
    int n = 0;
    std::vector<const RBranch*> all;
    for (const auto& [a, b] : alpha.pairs) {
        all.push_back(&a);
        all.push_back(&b);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            auto d = first_disagreement(*all[i], *all[j], alpha.depth);
            if (!d) {
                // equal through depth: either the same point or uncertifiable
                if (!(all[i]->at(0) == all[j]->at(0)) ||
                    !(all[i]->at(alpha.depth) == all[j]->at(alpha.depth)))
                    throw InputError("prefixes too shallow to certify the shift level");
                continue;
            }
            n = std::max(n, *d);
        }
    }
    return std::max(m, n);
}

Conjugation conjugate_extend(const ProRado& R, const PartialIso& alpha, int depth, int rounds,
                             int samples, std::uint64_t seed) {
    Conjugation out;
    out.l = shift_level(alpha);
    const int l = out.l;

    // conjugate the pairs by l left-shifts; the Lemma makes this a metric iso
    std::vector<std::pair<RBranch, RBranch>> conj;
    for (const auto& [a, b] : alpha.pairs) {
        RBranch ca = a, cb = b;
        for (int s = 0; s < l; ++s) {
            ca = shift_left(ca, depth);
            cb = shift_left(cb, depth);
        }
        conj.emplace_back(ca, cb);
    }
    out.h = bf_extend(R, R, PartialIso::make(std::move(conj), depth), rounds, depth);

    ConjugationCertificate cert;
    cert.l = l;
    cert.rounds = rounds;
    cert.records = Json::array();

    // (i) the conjugated extension reproduces alpha on its pairs
    for (const auto& [a, b] : alpha.pairs) {
        RBranch shifted = a;
        for (int s = 0; s < l; ++s) shifted = shift_left(shifted, depth);
        auto image = out.h.apply(shifted, depth);
        if (!image) throw std::logic_error("conjugated table lost an alpha pair");
        RBranch back = *image;
        for (int s = 0; s < l; ++s) back = shift_right(back, depth);
        if (first_disagreement(back, b, depth)) cert.extends_alpha = false;
    }

    // (ii, iii) sampled pairs strictly deeper than Val(l) preserve distance
    // exactly and adjacency per level
    std::mt19937_64 rng(seed);
    const auto& tbl = out.h.table.pairs;
    std::vector<std::pair<std::size_t, std::size_t>> eligible;
    for (std::size_t i = 0; i < tbl.size(); ++i)
        for (std::size_t j = 0; j < tbl.size(); ++j)
            if (i != j && agreement_code(tbl[i].first, tbl[j].first, depth) >= 1)
                eligible.emplace_back(i, j);
    if (eligible.empty()) {
        cert.samples = 0;
    } else {
        for (int s = 0; s < samples; ++s) {
            auto [i, j] = eligible[rng() % eligible.size()];
            // h-domain points at distance <= 1/2 shift to pairs deeper than Val(l)
            RBranch u = tbl[i].first, hu = tbl[i].second;
            RBranch v = tbl[j].first, hv = tbl[j].second;
            for (int sh = 0; sh < l; ++sh) {
                u = shift_right(u, depth);
                v = shift_right(v, depth);
                hu = shift_right(hu, depth);
                hv = shift_right(hv, depth);
            }
            Level before = distance(u, v, depth);
            Level after = distance(hu, hv, depth);
            bool dist_ok = before == after;
            bool deeper = !(Level::val(static_cast<std::uint32_t>(l)) < before) &&
                          before != Level::val(static_cast<std::uint32_t>(l));
            bool adj_ok = true;
            for (int lvl = 0; lvl <= depth; ++lvl)
                if (u.space().edge(u.at(lvl), v.at(lvl)) !=
                    hu.space().edge(hu.at(lvl), hv.at(lvl)))
                    adj_ok = false;
            if (!dist_ok) cert.distances_exact = false;
            if (!adj_ok) cert.adjacency_preserved = false;
            cert.records.push_back(Json{{"before", level_to_json(before)},
                                        {"after", level_to_json(after)},
                                        {"deeper_than_l", deeper},
                                        {"distance_exact", dist_ok},
                                        {"adjacency", adj_ok}});
            ++cert.samples;
        }
    }
    out.certificate = cert;
    return out;
}

Json SkewVerdict::to_json() const {
    Json frag = Json::array();
    for (const auto& [x, y] : fragment)
        frag.push_back(Json::array({x.to_decimal(), y.to_decimal()}));
    return Json{{"found", found}, {"fragment", frag}};
}

SkewVerdict skew_hom_check(const ProRado& R, const SkewInstance& inst, int bound) {
    // precondition: the square commutes and both legs embed
    for (Vertex a : inst.A.universe()) {
        if (!(R.bond(inst.iota.at(a)) == inst.h.at(a)) ||
            !(R.bond(inst.kappa.at(a)) == inst.h.at(a)))
            throw InputError("skew instance square does not commute");
    }
    for (Vertex a : inst.A.universe()) {
        for (Vertex b : inst.A.universe()) {
            bool rel = inst.A.related("rho", {a, b});
            if (rel != R.edge(inst.iota.at(a), inst.iota.at(b)) ||
                rel != R.edge(inst.kappa.at(a), inst.kappa.at(b)))
                throw InputError("skew instance legs are not embeddings");
        }
    }
    SkewVerdict v;
    for (Vertex a : inst.A.universe()) v.fragment.emplace_back(inst.iota.at(a), inst.kappa.at(a));
    // grow the fragment by level back-and-forth within the bound, keeping it
    // a partial automorphism of the level graph
    Budget budget(R.budget_steps());
    for (std::uint64_t probe = 0; static_cast<int>(v.fragment.size()) < bound && probe < 16;
         ++probe) {
        BigNat u(probe);
        bool present = false;
        for (const auto& [x, y] : v.fragment)
            if (x == u) { present = true; break; }
        if (present) continue;
        std::vector<BigNat> adj, nonadj, exclude;
        for (const auto& [x, y] : v.fragment) {
            (R.edge(u, x) ? adj : nonadj).push_back(y);
            exclude.push_back(y);
        }
        BigNat img = R.free_witness(adj, nonadj, exclude);
        v.fragment.emplace_back(u, img);
    }
    // the fragment revalidates as a pattern isomorphism
    for (const auto& [x1, y1] : v.fragment)
        for (const auto& [x2, y2] : v.fragment)
            if (R.edge(x1, x2) != R.edge(y1, y2))
                throw std::logic_error("skew fragment failed revalidation");
    v.found = true;
    return v;
}

} // namespace ultralab::dynamics
