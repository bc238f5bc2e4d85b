#ifndef ULTRALAB_RADO_HPP
#define ULTRALAB_RADO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultralab/bignat.hpp"
#include "ultralab/cochain.hpp"
#include "ultralab/errors.hpp"
#include "ultralab/level.hpp"
#include "ultralab/structures.hpp"

namespace ultralab::rado {

// The edge rule of both concrete Rado copies forces exponential gaps, so
// word lengths and vertex numbers can exceed machine words while staying
// sparse; anything past these caps raises BudgetError instead of looping.
inline constexpr std::uint64_t kLenBits = 1 << 18;   // word length bit-width
inline constexpr std::uint64_t kIndexBits = 1 << 17; // materialised indices

/**
 * A word over {0,1}, stored sparsely: its length and the positions that
 * carry a 1. Positions of matched giants stay exact because shortlex
 * indices of short-enough words materialise as plain numbers.
 */
class Word {
public:
    Word() = default; // ε
    static Word from_bits(const std::string& bits); // "e" or "" is ε
    static Word make(BigNat length, std::vector<BigNat> one_positions);

    const BigNat& length() const { return length_; }
    const std::vector<BigNat>& ones() const { return ones_; }
    bool bit(const BigNat& i) const;

    bool operator==(const Word& o) const;
    bool operator!=(const Word& o) const { return !(*this == o); }
    // shortlex: length first, then the numeric value read MSB-first
    bool shortlex_less(const Word& o) const;

    bool printable() const { return length_ <= BigNat(1 << 20); }
    std::string to_bits() const; // requires printable()
    std::string describe() const; // sparse rendering for giants

    // phi of the length, lazily computed once; hot in edge tests
    const BigNat& phi_len() const;
    bool index_materialises() const;
    const BigNat& index() const; // #(w), BudgetError when too large
    std::string key() const;     // canonical map key

private:
    BigNat length_;
    std::vector<BigNat> ones_; // ascending
    mutable std::optional<BigNat> phi_cache_;
    mutable std::optional<BigNat> index_cache_;
};

// n = m, or the smaller index reads a 1 bit of the larger.
bool std_edge(const BigNat& n, const BigNat& m);

// #(w) = 2^|w| - 1 + value(w); BudgetError when it cannot materialise.
BigNat word_index(const Word& w);
Word word_at_index(const BigNat& idx);

// phi(n) = n - t(t+1)/2 for the largest triangular number below n.
BigNat phi(const BigNat& n);

int word_bit(const Word& w, const BigNat& i);

bool word_edge(const Word& v, const Word& w);

BigNat omega_word(const Word& w); // phi(|w|)

// Least standard-graph vertex adjacent to everything in `adj` and nothing
// in `nonadj`, skipping `exclude`; exact below the scan window, canonical
// algebraic witness beyond it.
BigNat std_witness(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj,
                   const std::vector<BigNat>& exclude, Budget& budget);

// The closing-recipe witness: a word u with omega_word(u) = c, adjacent to
// all of A and none of B. InputError when c is not adjacent to omega(A).
Word witness_recipe(const std::vector<Word>& A, const std::vector<Word>& B, const BigNat& c);

// The shortlex-least such word, by exact per-length construction.
std::optional<Word> witness_search(const std::vector<Word>& A, const std::vector<Word>& B,
                                   const BigNat& c, Budget& budget);

/**
 * The canonical isomorphism between the standard and the word copy, grown
 * by deterministic greedy back-and-forth. Table contents depend only on
 * how far construction has run.
 */
class IsoTable {
public:
    IsoTable() = default;

    std::size_t size() const { return entries_.size(); }
    const std::pair<BigNat, Word>& entry(std::size_t k) const { return entries_[k]; }

    void step(Budget& budget);                 // one forth or back move
    void ensure_pairs(std::size_t n, Budget& budget);
    const Word& psi(const BigNat& n, Budget& budget);
    const BigNat& psi_inv(const Word& w, Budget& budget);
    bool matched_std(const BigNat& n) const;

private:
    void forth_step(Budget& budget);
    void back_step(Budget& budget);
    void insert(BigNat s, Word w);
    Word least_word_for_pattern(const std::vector<char>& want, Budget& budget);
    BigNat least_std_for_pattern(const std::vector<char>& want, Budget& budget) const;

    std::vector<std::pair<BigNat, Word>> entries_;
    std::map<BigNat, std::size_t> by_std_;
    std::map<std::string, std::size_t> by_word_key_; // keyed by a canonical encoding
    BigNat next_std_ = 0;     // least possibly-unmatched standard vertex
    BigNat next_word_ = 0;    // shortlex counter for back moves
    bool forth_next_ = true;
    std::uint64_t forth_count_ = 0; // drives the cyclic fiber schedule
};

/**
 * A universal homomorphism of the standard graph, built generically on
 * demand: values are assigned lazily, always respecting the edge law, and
 * constrained fiber witnesses are produced by direct construction. Within
 * one run the assignments are deterministic in query order; tables are
 * in-memory only.
 */
class OmegaLazy {
public:
    // vertices at or above this value are generic: their adjacencies are
    // decided lazily and recorded, realizable in the standard graph by the
    // extension property at every finite stage
    static BigNat generic_base() { return BigNat::power_of_two(62); }
    static bool is_generic(const BigNat& n) { return !(n < generic_base()); }

    BigNat value(const BigNat& n);
    BigNat section(const BigNat& c); // least known preimage, else a fresh one
    std::vector<BigNat> preimages(const BigNat& c, std::size_t count);
    bool edge(const BigNat& u, const BigNat& v) const;
    // A fiber element of c adjacent to all of adj, none of nonadj, distinct
    // from exclude. InputError when c is not adjacent to the image of adj.
    BigNat witness(const BigNat& c, const std::vector<BigNat>& adj,
                   const std::vector<BigNat>& nonadj, const std::vector<BigNat>& exclude);
    // Same construction without a fiber constraint (no value assigned yet).
    BigNat free_witness(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj,
                        const std::vector<BigNat>& exclude);
    std::size_t assigned() const { return val_.size(); }
    std::size_t generic_count() const { return next_generic_; }

private:
    BigNat fresh(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj);
    std::string pair_key(const BigNat& u, const BigNat& v) const;

    std::map<BigNat, BigNat> val_;                  // bond values
    std::map<BigNat, std::vector<BigNat>> fibers_;  // known preimages per value
    std::map<std::string, bool> edges_;             // decided generic adjacencies
    std::uint64_t next_generic_ = 0;
};

/**
 * Pro-finite Rado machinery. The word-composed self-map (psi and friends)
 * is exact but confined to desk scale by the tier growth of the word copy;
 * the branch space therefore runs on a generically grown universal bond
 * over the same standard-graph levels.
 */
class ProRado {
public:
    using VertexT = BigNat;

    ProRado();

    // The universal endomorphism, grown on demand and memoized; surjective
    // with terminating sections by construction. The word-composed map
    // omega_word ∘ psi agrees in kind but is confined to the materialisable
    // range of the word copy (see word_composite).
    BigNat omega_std(const BigNat& n) const { return bond(n); }
    BigNat section_std(const BigNat& c) const { return section(c); }
    // omega_word ∘ psi on the range where the word copy materialises
    BigNat word_composite(const BigNat& n) const;
    const Word& psi(const BigNat& n) const;
    std::optional<BigNat> psi_inv(const Word& w) const;
    std::size_t table_size() const { return table_.size(); }
    std::pair<BigNat, Word> table_entry(std::size_t k) const { return table_.entry(k); }
    void ensure_table_pairs(std::size_t n) const;

    // the branch-space bond and its searches
    BigNat bond(const BigNat& v) const { return lazy_.value(v); }
    bool edge(const BigNat& u, const BigNat& v) const { return lazy_.edge(u, v); }
    std::size_t generic_count() const { return lazy_.generic_count(); }
    static BigNat generic_vertex(std::size_t id) { return OmegaLazy::generic_base() + BigNat(id); }
    bool vertex_known(const BigNat& v) const {
        return !OmegaLazy::is_generic(v) || v < generic_vertex(generic_count());
    }
    BigNat section(const BigNat& c) const { return lazy_.section(c); }
    std::vector<BigNat> preimages(const BigNat& c, std::size_t count) const;
    BigNat fiber_witness(const BigNat& c, const std::vector<BigNat>& adj,
                         const std::vector<BigNat>& nonadj,
                         const std::vector<BigNat>& exclude) const;
    BigNat free_witness(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj,
                        const std::vector<BigNat>& exclude) const {
        return lazy_.free_witness(adj, nonadj, exclude);
    }

    // branch-space interface (constant cochain)
    int max_depth() const { return std::numeric_limits<int>::max(); }
    BigNat bond_down(int, const BigNat& v) const { return bond(v); }
    BigNat canonical_up(int, const BigNat& v) const { return section(v); }
    bool related(const std::string& rel, int, const std::vector<BigNat>& t) const;
    const Signature& signature() const;

    std::uint64_t budget_steps() const { return budget_steps_; }
    void set_budget_steps(std::uint64_t s) { budget_steps_ = s; }

private:
    mutable IsoTable table_;
    mutable OmegaLazy lazy_;
    std::uint64_t budget_steps_ = 10'000'000;
};

using RBranch = BranchT<ProRado>;

// Finite surjective truncation of the constant-omega cochain: level 0 holds
// the first `width` vertices, upper levels are section images plus enough
// fiber elements to stay within width.
Cochain pro_rado_truncation(const ProRado& R, int depth, int width);

struct ExtensionSpec {
    // one entry per existing branch: prescribed distance 2^{-e} and
    // whether the new point is adjacent (edges certified through depth)
    std::vector<std::uint32_t> agree_before; // e_j
    std::vector<bool> adjacent;
};

// Realizes a one-point ultrametric-graph extension of the finite induced
// subgraph spanned by `existing`; returns the canonical least witness.
RBranch verify_intro_extension(const ProRado& R, const std::vector<RBranch>& existing,
                               const ExtensionSpec& spec, int depth);

// Strongness of the projection at a level, verified on a finite window of
// vertices: every related pair lifts to a pair related through depth.
StrongnessReport pro_rado_strong_at(const ProRado& R, int level, int depth, int width);

std::string word_to_cli(const Word& w);
Word word_from_cli(const std::string& s);

} // namespace ultralab::rado

#endif
