#ifndef ULTRALAB_DYNAMICS_HPP
#define ULTRALAB_DYNAMICS_HPP

#include <optional>
#include <random>

#include "ultralab/cochain.hpp"
#include "ultralab/rado.hpp"

namespace ultralab::dynamics {

using ultralab::BigNat;
using rado::ProRado;
using rado::RBranch;

/**
 * A finite partial metric isomorphism between two limit representations:
 * corresponding prefixes are isometric and carry identical relation
 * patterns through the working depth. Violations are rejected at
 * construction, not during extension.
 */
struct PartialIso {
    std::vector<std::pair<RBranch, RBranch>> pairs;
    int depth = 0;

    static PartialIso make(std::vector<std::pair<RBranch, RBranch>> pairs, int depth);
    void revalidate() const; // throws on any broken invariant
};

/** Game state grown by the back-and-forth strategy. */
struct AutoTable {
    PartialIso table;
    std::uint64_t chi_next = 0; // scheduler cursors into the node enumerations
    std::uint64_t xi_next = 0;

    std::optional<RBranch> apply(const RBranch& x, int depth) const;   // left to right
    std::optional<RBranch> apply_inv(const RBranch& y, int depth) const;
};

// Player 2's canonical response: the least branch matching the prescribed
// distances and relation patterns; existence is backed by the fiber
// witness property of the bond.
RBranch respond(const ProRado& side, const std::vector<std::pair<RBranch, RBranch>>& pairs,
                bool respond_right, const RBranch& moved, int depth);

// Alternating density-scheduled extension: after r rounds the first
// floor(r/2) nodes of each side's enumeration are hit.
AutoTable bf_extend(const ProRado& left, const ProRado& right, const PartialIso& start, int rounds,
                    int depth);

// Shift operators of the constant-bond cochain.
RBranch shift_right(const RBranch& x, int depth);
RBranch shift_left(const RBranch& x, int depth);

// The level from which a finite discrete isomorphism becomes a metric one
// under conjugation: all non-related tuples visible, all prefixes split.
int shift_level(const PartialIso& alpha);

struct ConjugationCertificate {
    int l = 0;
    int rounds = 0;
    bool extends_alpha = true;
    bool distances_exact = true;  // on sampled pairs deeper than Val(l)
    bool adjacency_preserved = true;
    int samples = 0;
    Json records;
};

struct Conjugation {
    int l = 0;
    AutoTable h;
    ConjugationCertificate certificate;
};

// Theorem-2 procedure: conjugate by l left-shifts, extend by the game,
// shift back; certify on sampled pairs.
Conjugation conjugate_extend(const ProRado& R, const PartialIso& alpha, int depth, int rounds,
                             int samples, std::uint64_t seed);

/** One level-lifting instance of skew-homogeneity over the level graph. */
struct SkewInstance {
    FinStructure A;
    std::map<Vertex, BigNat> iota;  // embeddings into the upper level
    std::map<Vertex, BigNat> kappa;
    std::map<Vertex, BigNat> h;     // homomorphism into the lower level
};

struct SkewVerdict {
    bool found = false;
    std::vector<std::pair<BigNat, BigNat>> fragment; // the automorphism fragment
    Json to_json() const;
};

SkewVerdict skew_hom_check(const ProRado& R, const SkewInstance& inst, int bound);

} // namespace ultralab::dynamics

#endif
