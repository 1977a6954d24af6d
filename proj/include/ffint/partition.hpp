#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ffint/errors.hpp"

namespace ffint {

/// Partition of a positive integer k: parts stored nonincreasing.
class Partition {
   public:
    explicit Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
        for (auto p : parts_)
            if (p == 0) raise(ErrorCode::ConfigError, "partition parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    const std::vector<std::uint32_t>& parts() const { return parts_; }

    std::uint64_t k() const {
        return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
    }

    /// Multiplicity of part j.
    std::uint32_t count_of(std::uint32_t j) const {
        return static_cast<std::uint32_t>(std::count(parts_.begin(), parts_.end(), j));
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << "+";
            os << parts_[i];
        }
        return os.str();
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

   private:
    std::vector<std::uint32_t> parts_;
};

/// All partitions of k, largest-first ((k) before (k-1,1) before ...).
inline std::vector<Partition> all_partitions(std::uint32_t k) {
    if (k > 64) raise(ErrorCode::BudgetExceeded, "partition enumeration capped at k = 64");
    std::vector<Partition> out;
    std::vector<std::uint32_t> cur;
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t rem,
                                                                std::uint32_t max_part) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::uint32_t part = std::min(rem, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(rem - part, part);
            cur.pop_back();
        }
    };
    rec(k, k);
    return out;
}

} // namespace ffint
