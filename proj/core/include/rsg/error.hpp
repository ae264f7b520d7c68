#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsg {

// Malformed instance text (bad rational, unknown color, dangling name, ...).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when exhaustive enumeration would exceed the caller's profile budget.
// Carries the offending profile count so callers can report it.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::uint64_t profile_count, std::uint64_t budget)
        : std::runtime_error("profile space has " + std::to_string(profile_count) +
                             " profiles, budget is " + std::to_string(budget)),
          profile_count_(profile_count),
          budget_(budget) {}

    std::uint64_t profile_count() const { return profile_count_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t profile_count_;
    std::uint64_t budget_;
};

}  // namespace rsg
