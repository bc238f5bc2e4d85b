#ifndef ULTRALAB_ERRORS_HPP
#define ULTRALAB_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ultralab {

// Malformed or inconsistent input (exit code 2 at the CLI).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search ran out of steps (exit code 3 at the CLI).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Step counter shared by the exhaustive searches. Budgets are always
// explicit; exceeding one raises BudgetError naming the search.
class Budget {
public:
    explicit Budget(std::uint64_t steps = 1'000'000) : left_(steps) {}

    void spend(std::uint64_t n, const char* where) {
        if (n > left_) throw BudgetError(std::string("search budget exhausted in ") + where);
        left_ -= n;
    }
    void tick(const char* where) { spend(1, where); }
    std::uint64_t remaining() const { return left_; }

private:
    std::uint64_t left_;
};

} // namespace ultralab

#endif
