#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace zerolab {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Knobs shared by every exhaustive or sampled computation.
struct RunOptions {
    /// Cap on estimated evaluation operations, checked before any work starts.
    std::uint64_t budget = kDefaultBudget;
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
};

unsigned resolve_workers(unsigned requested);

/// Throws BudgetExceededError when `required > budget`.
void require_budget(const mpz_class& required, std::uint64_t budget, const std::string& what);

/// base^exp as an arbitrary-precision integer.
mpz_class ipow(std::uint64_t base, std::uint64_t exp);

/// Narrowing helper for sizes already proven to be within budget.
std::uint64_t to_u64(const mpz_class& value);

}  // namespace zerolab
