#ifndef ULTRALAB_AMALGAMATION_HPP
#define ULTRALAB_AMALGAMATION_HPP

#include "ultralab/classes.hpp"
#include "ultralab/json_io.hpp"
#include "ultralab/structures.hpp"

namespace ultralab {

/** A span of embeddings f1: A -> B1, f2: A -> B2. */
struct Span {
    FinStructure A, B1, B2;
    Morphism f1, f2;

    // Validates the embedding laws.
    static Span make(FinStructure A, FinStructure B1, FinStructure B2,
                     std::map<Vertex, Vertex> f1, std::map<Vertex, Vertex> f2);
};

/** A span together with maps into a common target: h1∘f1 = h2∘f2. */
struct AEPInstance {
    Span span;
    FinStructure T;
    Morphism h1, h2;

    static AEPInstance make(Span span, FinStructure T, std::map<Vertex, Vertex> h1,
                            std::map<Vertex, Vertex> h2);
};

struct Verdict {
    enum class Outcome { yes, no_definitive, no_up_to_bound };
    Outcome outcome;
    int bound;
    Json witness;  // null unless yes
    Json searched; // what was exhausted

    bool is_yes() const { return outcome == Outcome::yes; }
    std::string outcome_string() const;
    Json to_json(const std::string& property) const;
};

// Bounded deciders. The bound caps the universe size of every structure the
// search introduces; the witness, when present, revalidates all maps and
// commuting equations before being returned.
Verdict check_ap(const ClassPresentation& cls, const Span& span, int bound);
Verdict check_jep(const ClassPresentation& cls, const FinStructure& A, const FinStructure& B,
                  int bound);
Verdict check_aep(const ClassPresentation& cls, const AEPInstance& inst, int bound);
Verdict check_hap(const ClassPresentation& cls, const FinStructure& A, const FinStructure& B1,
                  const FinStructure& B2, const Morphism& f1_embedding, const Morphism& f2_hom,
                  int bound);
Verdict check_vvap(const ClassPresentation& cls, const FinStructure& V, const AEPInstance& inst,
                   int bound);
Verdict check_strict(const ClassPresentation& cls, const Span& span, int bound);

int default_bound(const Span& span);

} // namespace ultralab

#endif
