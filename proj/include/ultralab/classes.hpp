#ifndef ULTRALAB_CLASSES_HPP
#define ULTRALAB_CLASSES_HPP

#include <optional>
#include <string>
#include <vector>

#include "ultralab/structures.hpp"

namespace ultralab {

/**
 * A finite class of structures up to isomorphism: one of the builtin
 * generators, an explicit list, or the age of a fixed structure.
 */
class ClassPresentation {
public:
    enum class Kind { graphs_with_loops, linear_orders, explicit_list, age_of };

    static ClassPresentation graphs_with_loops(int max_size);
    static ClassPresentation linear_orders(int max_size);
    static ClassPresentation explicit_list(std::vector<FinStructure> members, int max_size);
    static ClassPresentation age_of(FinStructure gamma, int max_size);

    Kind kind() const { return kind_; }
    int max_size() const { return max_size_; }
    const Signature& signature() const;
    const FinStructure& gamma() const;
    std::string name() const;

    // One representative per isomorphism type with universe size <= cap,
    // ordered by (size, canonical form). Memoized per instance.
    const std::vector<FinStructure>& members(int cap) const;

    // Representatives of exactly the given size, same order; lets bounded
    // searches stream small candidates without materialising big catalogs.
    const std::vector<FinStructure>& members_of_size(int s) const;

    // Membership up to isomorphism.
    bool contains(const FinStructure& a) const;

    // Hereditary-property check by enumeration over the generated members.
    bool hereditary_ok() const;

private:
    ClassPresentation(Kind k, int max_size) : kind_(k), max_size_(max_size) {}

    Kind kind_;
    int max_size_;
    std::optional<FinStructure> gamma_;
    std::vector<FinStructure> list_;
    mutable std::vector<std::vector<FinStructure>> by_size_;   // by_size_[s]
    mutable std::vector<bool> by_size_ready_;
    mutable std::vector<std::vector<FinStructure>> cumulative_; // cumulative_[cap]
};

} // namespace ultralab

#endif
