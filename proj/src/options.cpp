#include "zerolab/options.hpp"

#include <thread>

#include "zerolab/errors.hpp"

namespace zerolab {

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void require_budget(const mpz_class& required, std::uint64_t budget, const std::string& what) {
    if (required > mpz_class(std::to_string(budget))) {
        throw BudgetExceededError(what, required.get_str(), budget);
    }
}

mpz_class ipow(std::uint64_t base, std::uint64_t exp) {
    mpz_class result;
    mpz_class b(std::to_string(base));
    mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
    return result;
}

std::uint64_t to_u64(const mpz_class& value) {
    if (value < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) {
        throw Error("integer " + value.get_str() + " does not fit in 64 bits");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
    return out;
}

}  // namespace zerolab
