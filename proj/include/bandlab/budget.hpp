#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bandlab {

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(std::uint64_t required_, std::uint64_t cap_)
        : std::runtime_error("operation budget exceeded: needs ~" +
                             std::to_string(required_) + " field ops, cap " +
                             std::to_string(cap_)),
          required(required_), cap(cap_) {}
    std::uint64_t required;
    std::uint64_t cap;
};

/// Cap on elementary field operations for exhaustive work.  Estimates are
/// checked up front so a too-large request refuses instead of truncating.
class Budget {
public:
    static constexpr std::uint64_t kDefaultCap = 100'000'000;

    Budget() = default;
    explicit Budget(std::uint64_t cap) : cap_(cap) {}

    std::uint64_t cap() const { return cap_; }

    void require(std::uint64_t estimated_ops) const {
        if (estimated_ops > cap_) throw BudgetExceeded(estimated_ops, cap_);
    }

private:
    std::uint64_t cap_ = kDefaultCap;
};

}  // namespace bandlab
