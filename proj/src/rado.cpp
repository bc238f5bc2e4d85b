#include "ultralab/rado.hpp"

#include <algorithm>
#include <cmath>

namespace ultralab::rado {

namespace {

const BigNat kOne(1);

// Scan windows for the exact-least searches; past them the canonical
// algebraic witness is used instead.
constexpr std::uint64_t kScanWindow = 1 << 14;
constexpr std::uint64_t kSaltWindow = 1 << 12;

} // namespace

// ---------------------------------------------------------------- Word --

Word Word::from_bits(const std::string& bits) {
    if (bits.empty() || bits == "e") return Word();
    Word w;
    w.length_ = BigNat(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            w.ones_.push_back(BigNat(i));
        else if (bits[i] != '0')
            throw InputError("word letters must be 0 or 1");
    }
    return w;
}

Word Word::make(BigNat length, std::vector<BigNat> one_positions) {
    if (length.bit_length() > kLenBits)
        throw BudgetError("word length is beyond the representable tier");
    Word w;
    w.length_ = std::move(length);
    std::sort(one_positions.begin(), one_positions.end());
    one_positions.erase(std::unique(one_positions.begin(), one_positions.end()),
                        one_positions.end());
    for (const auto& p : one_positions)
        if (!(p < w.length_)) throw InputError("one-position outside the word");
    w.ones_ = std::move(one_positions);
    return w;
}

bool Word::bit(const BigNat& i) const {
    return std::binary_search(ones_.begin(), ones_.end(), i);
}

bool Word::operator==(const Word& o) const {
    return length_ == o.length_ && ones_ == o.ones_;
}

bool Word::shortlex_less(const Word& o) const {
    if (length_ != o.length_) return length_ < o.length_;
    // same length: numeric value MSB-first; the earlier 1 wins
    std::size_t i = 0, j = 0;
    while (i < ones_.size() && j < o.ones_.size()) {
        if (ones_[i] == o.ones_[j]) {
            ++i;
            ++j;
        } else if (ones_[i] < o.ones_[j]) {
            return false; // we own the more significant 1
        } else {
            return true;
        }
    }
    if (i < ones_.size()) return false;
    if (j < o.ones_.size()) return true;
    return false;
}

std::string Word::to_bits() const {
    if (!printable()) throw BudgetError("word too long to print as bits");
    std::string s(length_.as_u64(), '0');
    for (const auto& p : ones_) s[p.as_u64()] = '1';
    return s;
}

std::string Word::describe() const {
    if (printable()) {
        std::string bits = to_bits();
        if (bits.size() <= 80) return bits.empty() ? "e" : bits;
    }
    std::string s = "len=" + length_.to_decimal() + " ones=[";
    for (std::size_t k = 0; k < ones_.size(); ++k) {
        if (k) s += ",";
        s += ones_[k].to_decimal();
    }
    return s + "]";
}

const BigNat& Word::phi_len() const {
    if (!phi_cache_) phi_cache_ = phi(length_);
    return *phi_cache_;
}

bool Word::index_materialises() const {
    return length_.fits_u64() && length_.as_u64() <= kIndexBits;
}

const BigNat& Word::index() const {
    if (index_cache_) return *index_cache_;
    if (!index_materialises())
        throw BudgetError("shortlex index of this word does not materialise");
    const std::uint64_t n = length_.as_u64();
    BigNat idx = BigNat::power_of_two(n) - kOne;
    for (const auto& p : ones_) idx += BigNat::power_of_two(n - 1 - p.as_u64());
    index_cache_ = std::move(idx);
    return *index_cache_;
}

std::string Word::key() const {
    std::string s = length_.to_decimal();
    for (const auto& p : ones_) {
        s += ":";
        s += p.to_decimal();
    }
    return s;
}

// ------------------------------------------------------------ functions --

bool std_edge(const BigNat& n, const BigNat& m) {
    if (n == m) return true;
    const BigNat& lo = n < m ? n : m;
    const BigNat& hi = n < m ? m : n;
    if (!lo.fits_u64()) return false; // the position exceeds every stored width
    return hi.bit(lo.as_u64());
}

BigNat word_index(const Word& w) { return w.index(); }

Word word_at_index(const BigNat& idx) {
    // |w| = L with 2^L - 1 <= idx < 2^{L+1} - 1, value = idx + 1 - 2^L
    BigNat succ = idx + kOne;
    std::uint64_t L = succ.bit_length() - 1;
    if (L > kIndexBits) throw BudgetError("index is beyond the materialisable tier");
    BigNat value = succ - BigNat::power_of_two(L);
    std::vector<BigNat> ones;
    for (std::uint64_t k = 0; k < L; ++k)
        if (value.bit(k)) ones.push_back(BigNat(L - 1 - k));
    return Word::make(BigNat(L), std::move(ones));
}

BigNat phi(const BigNat& n) {
    if (n.fits_u64()) {
        // fast path: closed form in words
        std::uint64_t v = n.as_u64();
        std::uint64_t t = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(v) + 1.0) - 1.0) / 2.0);
        while (t > 0 && t * (t + 1) / 2 > v) --t;
        while ((t + 1) * (t + 2) / 2 <= v) ++t;
        return BigNat(v - t * (t + 1) / 2);
    }
    BigNat t = triangular_root(n);
    return n - triangular(t);
}

int word_bit(const Word& w, const BigNat& i) { return w.bit(i) ? 1 : 0; }

bool word_edge(const Word& v, const Word& w) {
    if (v == w) return true;
    const Word& lo = v.shortlex_less(w) ? v : w;
    const Word& hi = v.shortlex_less(w) ? w : v;
    if (!std_edge(lo.phi_len(), hi.phi_len())) return false;
    if (!lo.index_materialises()) return false; // position beyond every stored one
    return hi.bit(lo.index());
}

BigNat omega_word(const Word& w) { return w.phi_len(); }

// ------------------------------------------------------------ witnesses --

namespace {

bool std_pattern_ok(const BigNat& x, const std::vector<BigNat>& adj,
                    const std::vector<BigNat>& nonadj, const std::vector<BigNat>& exclude) {
    for (const auto& e : exclude)
        if (x == e) return false;
    for (const auto& a : adj)
        if (!std_edge(x, a)) return false;
    for (const auto& b : nonadj)
        if (std_edge(x, b)) return false;
    return true;
}

} // namespace

BigNat std_witness(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj,
                   const std::vector<BigNat>& exclude, Budget& budget) {
    for (std::uint64_t x = 0; x < kScanWindow; ++x) {
        budget.tick("std_witness scan");
        if (std_pattern_ok(BigNat(x), adj, nonadj, exclude)) return BigNat(x);
    }
    std::vector<BigNat> uniq = adj;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    // targets too large to sit as bit positions are reached by flips: the
    // witness must name one of their set bits
    std::vector<BigNat> small;
    std::optional<BigNat> big;
    for (const auto& a : uniq) {
        if (a.fits_u64() && a.as_u64() <= (1u << 12)) small.push_back(a);
        else if (!big || a.bit_length() < big->bit_length()) big = a;
    }
    if (big) {
        for (std::uint64_t pos = 0; pos < big->bit_length() && pos < (1u << 22); ++pos) {
            if (!big->bit(pos)) continue;
            budget.tick("std_witness flip");
            if (std_pattern_ok(BigNat(pos), adj, nonadj, exclude)) return BigNat(pos);
        }
        throw BudgetError("std_witness: no flip partner for a large adjacency target");
    }
    // mask witness: adjacency bits plus free low bits keep it flip-reachable
    BigNat mask;
    std::uint64_t top = 48;
    for (const auto& a : small) {
        mask += BigNat::power_of_two(a.as_u64());
        top = std::max(top, a.as_u64() + 1);
    }
    for (std::uint64_t p = 0; p < 40; ++p) {
        bool taken = mask.bit(p);
        for (const auto& b : nonadj)
            if (b == BigNat(p)) taken = true;
        if (!taken) mask += BigNat::power_of_two(p);
    }
    for (const auto& b : nonadj)
        if (b.fits_u64()) top = std::max(top, b.bit_length());
    for (std::uint64_t k = top; k < top + kSaltWindow; ++k) {
        budget.tick("std_witness construct");
        BigNat x = mask + BigNat::power_of_two(k);
        if (std_pattern_ok(x, adj, nonadj, exclude)) return x;
    }
    throw BudgetError("std_witness: no witness within the construction window");
}

Word witness_recipe(const std::vector<Word>& A, const std::vector<Word>& B, const BigNat& c) {
    for (const auto& a : A)
        for (const auto& b : B)
            if (a == b) throw InputError("witness sets must be disjoint");
    for (const auto& a : A)
        if (!std_edge(c, omega_word(a)))
            throw InputError("target vertex is not adjacent to the image of A");
    BigNat n0; // strict lower bound for the length
    for (const auto& v : A)
        if (n0 < v.index()) n0 = v.index();
    for (const auto& v : B)
        if (n0 < v.index()) n0 = v.index();
    // least n > n0 with phi(n) = c: n = t(t+1)/2 + c with t >= c
    BigNat t = triangular_root(n0);
    if (t < c) t = c;
    while (!(triangular(t) + c > n0)) t += kOne;
    BigNat n = triangular(t) + c;
    std::vector<BigNat> ones;
    for (const auto& v : A) ones.push_back(v.index());
    Word u = Word::make(n, std::move(ones));
    // the recipe output always revalidates
    if (!(omega_word(u) == c)) throw std::logic_error("recipe produced a wrong fiber");
    for (const auto& a : A)
        if (!word_edge(u, a)) throw std::logic_error("recipe missed an adjacency");
    for (const auto& b : B)
        if (word_edge(u, b)) throw std::logic_error("recipe hit a forbidden adjacency");
    return u;
}

namespace {

struct WordConstraint {
    const Word* word;
    bool wanted; // edge or non-edge
};

bool word_pattern_ok(const Word& u, const std::vector<WordConstraint>& cs) {
    for (const auto& c : cs) {
        if (u == *c.word) return false; // candidates must be fresh
        if (word_edge(u, *c.word) != c.wanted) return false;
    }
    return true;
}

// The lexicographically least valid word of exactly length n (n beyond all
// constraint words), or nothing. Positives force their index bits; negative
// collisions are resolved by the smallest value bump.
std::optional<Word> least_word_of_length(const BigNat& n, const std::vector<WordConstraint>& cs,
                                         const std::optional<BigNat>& fiber, Budget& budget) {
    if (fiber && !(phi(n) == *fiber)) return std::nullopt;
    std::vector<BigNat> forced;
    for (const auto& c : cs) {
        if (!c.wanted) continue;
        if (!(c.word->length() < n)) return std::nullopt; // handled elsewhere
        if (!c.word->index_materialises()) throw BudgetError("positive constraint beyond tier");
        if (!(c.word->index() < n)) return std::nullopt; // bit cannot be placed
        if (!std_edge(c.word->phi_len(), phi(n))) return std::nullopt;
        forced.push_back(c.word->index());
    }
    // salt positions grow the value minimally from the low end
    for (std::uint64_t salt = 0; salt < kSaltWindow; ++salt) {
        budget.tick("least word salt");
        std::vector<BigNat> ones = forced;
        bool salt_ok = true;
        for (std::uint64_t bitpos = 0; bitpos < 12 && salt_ok; ++bitpos) {
            if (!(salt & (1ull << bitpos))) continue;
            if (!(BigNat(bitpos + 1) <= n)) { salt_ok = false; break; }
            BigNat pos = n - BigNat(bitpos + 1);
            ones.push_back(pos);
        }
        if (!salt_ok) break;
        Word u = Word::make(n, std::move(ones));
        if (word_pattern_ok(u, cs)) return u;
    }
    // the length was structurally feasible: giving up here could surrender
    // minimality, so fail loudly instead of moving on
    throw BudgetError("least_word_of_length: salt window exhausted");
}

} // namespace

std::optional<Word> witness_search(const std::vector<Word>& A, const std::vector<Word>& B,
                                   const BigNat& c, Budget& budget) {
    std::vector<WordConstraint> cs;
    for (const auto& a : A) cs.push_back({&a, true});
    for (const auto& b : B) cs.push_back({&b, false});

    std::optional<Word> best;
    auto offer = [&](const Word& u) {
        if (!best || u.shortlex_less(*best)) best = u;
    };

    // brute zone: fiber lengths small enough to enumerate fully
    const std::uint64_t brute_len = 12;
    for (std::uint64_t L = 0; L <= brute_len && !best; ++L) {
        if (!(phi(BigNat(L)) == c)) continue;
        for (std::uint64_t value = 0; value < (1ull << L); ++value) {
            budget.tick("witness brute scan");
            std::vector<BigNat> ones;
            for (std::uint64_t k = 0; k < L; ++k)
                if (value & (1ull << (L - 1 - k))) ones.push_back(BigNat(k));
            Word u = Word::make(BigNat(L), std::move(ones));
            if (word_pattern_ok(u, cs)) { offer(u); break; }
        }
    }
    // pool zone: every valid word below the largest positive sits on its ones
    const Word* vmax = nullptr;
    for (const auto& x : cs)
        if (x.wanted && (!vmax || vmax->shortlex_less(*x.word))) vmax = x.word;
    if (vmax) {
        for (const auto& p : vmax->ones()) {
            budget.tick("witness pool scan");
            if (p.bit_length() > kIndexBits) continue;
            Word u = word_at_index(p);
            if (omega_word(u) == c && word_pattern_ok(u, cs)) offer(u);
        }
        if (best && best->shortlex_less(*vmax)) return best;
    }
    if (!vmax && best) return best;
    // structured zone: lengths t(t+1)/2 + c ascending past every constraint
    BigNat t = c;
    {
        BigNat tr = triangular_root(BigNat(brute_len));
        if (t < tr) t = tr;
    }
    for (int window = 0; window < 1 << 12; ++window, t += kOne) {
        budget.tick("witness structured scan");
        BigNat n = triangular(t) + c;
        if (n.bit_length() > kLenBits) break;
        if (n <= BigNat(brute_len)) continue; // already brute-scanned
        auto u = least_word_of_length(n, cs, c, budget);
        if (u) { offer(*u); break; }
    }
    return best;
}

// ------------------------------------------------------------- IsoTable --

void IsoTable::insert(BigNat s, Word w) {
    // preserve/reflect check against every matched pair before committing
    for (const auto& [s2, w2] : entries_) {
        if (std_edge(s, s2) != word_edge(w, w2))
            throw std::logic_error("iso table insert would break the pattern");
    }
    by_std_[s] = entries_.size();
    by_word_key_[w.key()] = entries_.size();
    entries_.emplace_back(std::move(s), std::move(w));
}

bool IsoTable::matched_std(const BigNat& n) const { return by_std_.count(n) > 0; }

Word IsoTable::least_word_for_pattern(const std::vector<char>& want, Budget& budget) {
    std::vector<WordConstraint> cs;
    cs.reserve(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k)
        cs.push_back({&entries_[k].second, want[k] != 0});

    std::optional<Word> best;
    const Word* vmax = nullptr;
    for (const auto& c : cs)
        if (c.wanted && (!vmax || vmax->shortlex_less(*c.word))) vmax = c.word;

    // with no positive constraints a short word wins; scan shortlex order
    if (!vmax) {
        for (std::uint64_t idx = 0; idx < (1u << 13) - 1; ++idx) {
            budget.tick("psi word brute");
            Word u = word_at_index(BigNat(idx));
            if (word_pattern_ok(u, cs)) return u;
        }
        throw BudgetError("psi: no pattern word within the scan window");
    }
    // pool zone: anything below the largest positive must sit on its ones
    {
        for (const auto& p : vmax->ones()) {
            budget.tick("psi word pool");
            if (p.bit_length() > kIndexBits) continue; // cannot name a word
            Word u = word_at_index(p);
            if (word_pattern_ok(u, cs) && (!best || u.shortlex_less(*best))) best = u;
        }
        if (best && best->shortlex_less(*vmax)) return *best;
        // above zone: fiber-scheduled tie-break. The omega-value of the
        // response is the first compatible one at or after a cyclic cursor,
        // which keeps every small fiber inhabited; the absolute shortlex
        // least would scatter values across huge triangular residues and
        // leave most fibers empty for astronomically long.
        std::vector<BigNat> targets;
        for (const auto& c : cs)
            if (c.wanted) targets.push_back(c.word->phi_len());
        const std::uint64_t cursor = forth_count_ % 8;
        std::optional<BigNat> rstar;
        for (std::uint64_t probe = 0; probe < kScanWindow; ++probe) {
            budget.tick("psi value scan");
            BigNat r(cursor + probe);
            bool ok = true;
            for (const auto& tg : targets)
                if (!std_edge(r, tg)) { ok = false; break; }
            if (ok) { rstar = r; break; }
        }
        if (!rstar) {
            std::vector<BigNat> nonadj;
            rstar = std_witness(targets, nonadj, {}, budget);
        }
        BigNat n0 = vmax->index() + kOne;
        BigNat t = triangular_root(n0);
        if (t < *rstar) t = *rstar;
        while (!(n0 <= triangular(t) + *rstar)) t += kOne;
        BigNat n = triangular(t) + *rstar;
        if (n.bit_length() > kLenBits) throw BudgetError("psi: next tier is out of range");
        auto u = least_word_of_length(n, cs, std::nullopt, budget);
        if (!u) throw BudgetError("psi: constructed length was rejected");
        if (!best || u->shortlex_less(*best)) best = *u;
        return *best;
    }
}

BigNat IsoTable::least_std_for_pattern(const std::vector<char>& want, Budget& budget) const {
    std::vector<BigNat> adj, nonadj, exclude;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        (want[k] ? adj : nonadj).push_back(entries_[k].first);
        exclude.push_back(entries_[k].first);
    }
    return std_witness(adj, nonadj, exclude, budget);
}

void IsoTable::forth_step(Budget& budget) {
    ++forth_count_;
    while (matched_std(next_std_)) next_std_ += kOne;
    BigNat s = next_std_;
    std::vector<char> want(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k)
        want[k] = std_edge(s, entries_[k].first) ? 1 : 0;
    Word w = least_word_for_pattern(want, budget);
    insert(std::move(s), std::move(w));
}

void IsoTable::back_step(Budget& budget) {
    Word w;
    for (;;) {
        w = word_at_index(next_word_);
        if (by_word_key_.count(w.key()) == 0) break;
        next_word_ += kOne;
    }
    std::vector<char> want(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k)
        want[k] = word_edge(w, entries_[k].second) ? 1 : 0;
    BigNat s = least_std_for_pattern(want, budget);
    insert(std::move(s), std::move(w));
}

void IsoTable::step(Budget& budget) {
    if (forth_next_)
        forth_step(budget);
    else
        back_step(budget);
    forth_next_ = !forth_next_;
}

void IsoTable::ensure_pairs(std::size_t n, Budget& budget) {
    while (entries_.size() < n) step(budget);
}

const Word& IsoTable::psi(const BigNat& n, Budget& budget) {
    while (!matched_std(n)) {
        // the forth counter passes every standard vertex eventually
        if (forth_next_ && !(next_std_ <= n)) {
            // n was skipped because a back move already matched it
            break;
        }
        step(budget);
    }
    auto it = by_std_.find(n);
    if (it == by_std_.end()) throw std::logic_error("psi: vertex not matched after passing it");
    return entries_[it->second].second;
}

const BigNat& IsoTable::psi_inv(const Word& w, Budget& budget) {
    for (;;) {
        auto it = by_word_key_.find(w.key());
        if (it != by_word_key_.end()) return entries_[it->second].first;
        // back moves enumerate words in shortlex order; run until passed
        if (!forth_next_ && !(next_word_ <= w.index())) break;
        step(budget);
    }
    auto it = by_word_key_.find(w.key());
    if (it == by_word_key_.end()) throw std::logic_error("psi_inv: word not matched after passing it");
    return entries_[it->second].first;
}

// ------------------------------------------------------------ OmegaLazy --

std::string OmegaLazy::pair_key(const BigNat& u, const BigNat& v) const {
    std::string a = u.to_decimal(), b = v.to_decimal();
    if (b < a || (b.size() < a.size())) std::swap(a, b);
    if (a.size() > b.size()) std::swap(a, b);
    return a + "|" + b;
}

bool OmegaLazy::edge(const BigNat& u, const BigNat& v) const {
    if (u == v) return true;
    if (!is_generic(u) && !is_generic(v)) return std_edge(u, v);
    auto it = edges_.find(pair_key(u, v));
    if (it != edges_.end()) return it->second;
    // undecided pairs default to non-adjacent, recorded for reproducibility
    const_cast<OmegaLazy*>(this)->edges_.emplace(pair_key(u, v), false);
    return false;
}

BigNat OmegaLazy::fresh(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj) {
    BigNat s = generic_base() + BigNat(next_generic_++);
    for (const auto& a : adj) {
        if (s == a) continue;
        auto [it, inserted] = edges_.emplace(pair_key(s, a), true);
        if (!inserted && !it->second) throw std::logic_error("fresh vertex edge clash");
    }
    for (const auto& b : nonadj) edges_.emplace(pair_key(s, b), false);
    return s;
}

BigNat OmegaLazy::value(const BigNat& n) {
    auto it = val_.find(n);
    if (it != val_.end()) return it->second;
    if (is_generic(n)) throw std::logic_error("generic vertices are valued at birth");
    // concrete vertices bond identically: a homomorphism, and a vertex's
    // acceptance below then matches its own adjacency
    val_.emplace(n, n);
    fibers_[n].push_back(n);
    return n;
}

BigNat OmegaLazy::section(const BigNat& c) {
    auto fit = fibers_.find(c);
    if (fit != fibers_.end() && !fit->second.empty()) return fit->second.front();
    if (!is_generic(c)) return value(c) == c ? c : preimages(c, 1).front();
    return preimages(c, 1).front();
}

std::vector<BigNat> OmegaLazy::preimages(const BigNat& c, std::size_t count) {
    if (!is_generic(c)) value(c); // the identity preimage comes first
    auto& fiber = fibers_[c];
    while (fiber.size() < count) {
        BigNat s = fresh({}, {});
        val_.emplace(s, c);
        fiber.push_back(s);
    }
    return std::vector<BigNat>(fiber.begin(), fiber.begin() + static_cast<std::ptrdiff_t>(count));
}

BigNat OmegaLazy::witness(const BigNat& c, const std::vector<BigNat>& adj,
                          const std::vector<BigNat>& nonadj, const std::vector<BigNat>& exclude) {
    for (const auto& a : adj)
        if (!edge(c, value(a)))
            throw InputError("fiber witness: target not adjacent to the image of A");
    for (const auto& a : adj)
        for (const auto& b : nonadj)
            if (a == b) throw InputError("fiber witness: contradictory adjacency demands");
    std::vector<BigNat> avoid = nonadj;
    avoid.insert(avoid.end(), exclude.begin(), exclude.end());
    BigNat s = fresh(adj, avoid);
    val_.emplace(s, c);
    fibers_[c].push_back(s);
    return s;
}

BigNat OmegaLazy::free_witness(const std::vector<BigNat>& adj, const std::vector<BigNat>& nonadj,
                               const std::vector<BigNat>& exclude) {
    for (const auto& a : adj)
        for (const auto& b : nonadj)
            if (a == b) throw InputError("free witness: contradictory adjacency demands");
    std::vector<BigNat> avoid = nonadj;
    avoid.insert(avoid.end(), exclude.begin(), exclude.end());
    // the bond is total: a fresh value adjacent to the images of adj
    std::vector<BigNat> image;
    for (const auto& a : adj) image.push_back(value(a));
    BigNat v = fresh(image, {});
    val_.emplace(v, v); // values of generic values: fixed points keep chains finite
    fibers_[v].push_back(v);
    BigNat s = fresh(adj, avoid);
    val_.emplace(s, v);
    fibers_[v].push_back(s);
    return s;
}

// -------------------------------------------------------------- ProRado --

ProRado::ProRado() = default;

const Signature& ProRado::signature() const {
    static const Signature sig = Signature::graph();
    return sig;
}

BigNat ProRado::word_composite(const BigNat& n) const {
    Budget budget(budget_steps_);
    return table_.psi(n, budget).phi_len();
}

const Word& ProRado::psi(const BigNat& n) const {
    Budget budget(budget_steps_);
    return table_.psi(n, budget);
}

std::optional<BigNat> ProRado::psi_inv(const Word& w) const {
    Budget budget(budget_steps_);
    return table_.psi_inv(w, budget);
}

void ProRado::ensure_table_pairs(std::size_t n) const {
    Budget budget(budget_steps_);
    table_.ensure_pairs(n, budget);
}

std::vector<BigNat> ProRado::preimages(const BigNat& c, std::size_t count) const {
    return lazy_.preimages(c, count);
}

BigNat ProRado::fiber_witness(const BigNat& c, const std::vector<BigNat>& adj,
                              const std::vector<BigNat>& nonadj,
                              const std::vector<BigNat>& exclude) const {
    return lazy_.witness(c, adj, nonadj, exclude);
}

bool ProRado::related(const std::string& rel, int, const std::vector<BigNat>& t) const {
    if (rel != "rho" || t.size() != 2) throw InputError("the pro-finite graph only has rho/2");
    return lazy_.edge(t[0], t[1]);
}

Cochain pro_rado_truncation(const ProRado& R, int depth, int width) {
    if (width < 1 || depth < 1) throw InputError("truncation needs positive depth and width");
    (void)R;
    // the window restricts the bond to the concrete zone, where it is the
    // identity: levels repeat and the counit is an isomorphism
    std::vector<Vertex> verts;
    for (int k = 0; k < width; ++k) verts.push_back(k);
    FinStructure level(Signature::graph(), verts);
    for (Vertex a : verts)
        for (Vertex b : verts)
            if (std_edge(BigNat(static_cast<std::uint64_t>(a)), BigNat(static_cast<std::uint64_t>(b))))
                level.add_tuple("rho", {a, b});
    std::map<Vertex, Vertex> ident;
    for (Vertex a : verts) ident[a] = a;
    std::vector<FinStructure> levels(static_cast<std::size_t>(depth) + 1, level);
    std::vector<std::map<Vertex, Vertex>> bonds(static_cast<std::size_t>(depth), ident);
    return Cochain(std::move(levels), std::move(bonds));
}

RBranch verify_intro_extension(const ProRado& R, const std::vector<RBranch>& existing,
                               const ExtensionSpec& spec, int depth) {
    const std::size_t m = existing.size();
    if (spec.agree_before.size() != m || spec.adjacent.size() != m)
        throw InputError("extension prescription arity mismatch");
    for (std::uint32_t e : spec.agree_before)
        if (static_cast<int>(e) > depth)
            throw InputError("prescribed level exceeds the working depth");

    // ultrametric consistency: among {e_j, e_k, Δ(x_j, x_k)} the two
    // smallest exponents must be equal
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            auto d = first_disagreement(existing[j], existing[k], depth);
            long dm = d ? *d : depth + 1; // equal-through-depth acts as deepest
            std::vector<long> ex{static_cast<long>(spec.agree_before[j]),
                                 static_cast<long>(spec.agree_before[k]), dm};
            std::sort(ex.begin(), ex.end());
            if (ex[0] != ex[1])
                throw InputError("prescribed distances violate the ultrametric inequality");
        }
    }
    // graph-prefix consistency: while the new point coincides with x_j, its
    // edges to x_k are x_j's
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            if (j == k) continue;
            for (std::uint32_t i = 0; i < spec.agree_before[j]; ++i) {
                bool e = R.edge(existing[j].at(static_cast<int>(i)),
                                existing[k].at(static_cast<int>(i)));
                if (spec.adjacent[k] && !e)
                    throw InputError("prescription demands an edge the agreement prefix denies");
                if (!spec.adjacent[k] && static_cast<std::uint32_t>(i) == spec.agree_before[k] && e)
                    throw InputError("prescription demands a non-edge the agreement prefix denies");
            }
        }
    }

    Budget budget(R.budget_steps());
    std::vector<BigNat> prefix;
    for (int i = 0; i <= depth; ++i) {
        std::optional<BigNat> forced;
        for (std::size_t j = 0; j < m; ++j) {
            if (static_cast<std::uint32_t>(i) < spec.agree_before[j]) {
                BigNat v = existing[j].at(i);
                if (forced && !(*forced == v))
                    throw InputError("prescription forces two different vertices at level " +
                                     std::to_string(i));
                forced = v;
            }
        }
        auto valid = [&](const BigNat& z) {
            if (i > 0 && !(R.bond(z) == prefix.back())) return false;
            for (std::size_t j = 0; j < m; ++j) {
                const BigNat& xj = existing[j].at(i);
                if (static_cast<std::uint32_t>(i) == spec.agree_before[j] && z == xj) return false;
                if (spec.adjacent[j] && !R.edge(z, xj)) return false;
                if (!spec.adjacent[j] && static_cast<std::uint32_t>(i) == spec.agree_before[j] &&
                    R.edge(z, xj))
                    return false;
            }
            return true;
        };
        if (forced) {
            if (!valid(*forced))
                throw InputError("prescription is unrealisable at level " + std::to_string(i));
            prefix.push_back(*forced);
            continue;
        }
        // canonical least: walk the fiber (or all vertices at level 0)
        std::optional<BigNat> choice;
        if (i == 0) {
            for (std::uint64_t z = 0; z < kScanWindow; ++z) {
                budget.tick("intro level-0 scan");
                if (valid(BigNat(z))) { choice = BigNat(z); break; }
            }
            if (!choice) {
                std::vector<BigNat> adj, nonadj, exclude;
                for (std::size_t j = 0; j < m; ++j) {
                    const BigNat& xj = existing[j].at(0);
                    if (spec.adjacent[j]) adj.push_back(xj);
                    if (spec.agree_before[j] == 0) {
                        exclude.push_back(xj);
                        if (!spec.adjacent[j]) nonadj.push_back(xj);
                    }
                }
                choice = R.free_witness(adj, nonadj, exclude);
                if (!valid(*choice))
                    throw std::logic_error("constructed level-0 witness failed validation");
            }
        } else {
            for (std::size_t count = 4; !choice && count <= 64; count *= 2) {
                auto fiber = R.preimages(prefix.back(), count);
                for (const auto& z : fiber) {
                    budget.tick("intro fiber scan");
                    if (valid(z)) { choice = z; break; }
                }
            }
            if (!choice) {
                // construct a witness outright: split the prescriptions into
                // the wanted pattern at this level
                std::vector<BigNat> adj, nonadj, exclude;
                for (std::size_t j = 0; j < m; ++j) {
                    const BigNat& xj = existing[j].at(i);
                    if (spec.adjacent[j]) adj.push_back(xj);
                    if (static_cast<std::uint32_t>(i) == spec.agree_before[j]) {
                        exclude.push_back(xj);
                        if (!spec.adjacent[j]) nonadj.push_back(xj);
                    }
                }
                choice = R.fiber_witness(prefix.back(), adj, nonadj, exclude);
                if (!valid(*choice))
                    throw std::logic_error("constructed extension witness failed validation");
            }
        }
        if (!choice)
            throw BudgetError("extension witness search exhausted its budget at level " +
                              std::to_string(i));
        prefix.push_back(*choice);
    }
    RBranch out(&R, prefix);
    // post-hoc revalidation of the full prescription
    for (std::size_t j = 0; j < m; ++j) {
        Level want = Level::val(spec.agree_before[j]);
        if (!(distance(out, existing[j], depth) == want))
            throw std::logic_error("extension witness failed distance revalidation");
        Level lower = rel_value_lower(R, "rho", {out, existing[j]}, depth);
        if (spec.adjacent[j] && !(lower == Level::zero()))
            throw std::logic_error("extension witness failed adjacency revalidation");
        if (!spec.adjacent[j] && lower == Level::zero())
            throw std::logic_error("extension witness failed non-adjacency revalidation");
    }
    return out;
}

StrongnessReport pro_rado_strong_at(const ProRado& R, int level, int depth, int width) {
    Budget budget(R.budget_steps());
    (void)level; // the cochain is constant, every level looks the same
    for (int a = 0; a < width; ++a) {
        for (int b = 0; b < width; ++b) {
            BigNat u(static_cast<std::uint64_t>(a)), v(static_cast<std::uint64_t>(b));
            if (!R.edge(u, v)) continue;
            // lift the edge level by level; a fiber partner adjacent to the
            // chosen one always exists by universality
            BigNat x = u, y = v;
            for (int i = level + 1; i <= depth; ++i) {
                budget.tick("strongness lift");
                BigNat ny = R.section(y);
                std::optional<BigNat> nx;
                auto fiber = R.preimages(x, 16);
                for (const auto& cand : fiber)
                    if (R.edge(cand, ny)) { nx = cand; break; }
                if (!nx) nx = R.fiber_witness(x, {ny}, {}, {});
                x = *nx;
                y = ny;
            }
        }
    }
    return StrongnessReport{true, "", {}, depth};
}

std::string word_to_cli(const Word& w) {
    if (w.length().is_zero()) return "e";
    return w.describe();
}

Word word_from_cli(const std::string& s) { return Word::from_bits(s); }

} // namespace ultralab::rado
