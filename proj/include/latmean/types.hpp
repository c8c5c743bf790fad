#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latmean {

/// Dense point index, unique within a space and stable for its lifetime.
using PointId = std::int32_t;

/// Thrown when an exact enumeration would emit more lattices than the caller's
/// cap; signals that the heuristic path should be used instead.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(std::size_t cap)
        : std::runtime_error("lattice enumeration exceeded cap of " + std::to_string(cap)),
          cap_(cap) {}
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

/// Malformed or semantically invalid input document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CheckStatus { Pass, Fail, Inconclusive };

struct CheckItem {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

/// Result of a fixed-eps identity/inequality check. Violations are data, not
/// exceptions: a Fail item records what was compared and by how much it missed.
struct CheckReport {
    std::vector<CheckItem> items;

    void add(std::string name, bool passed, std::string detail = {}) {
        items.push_back({std::move(name), passed ? CheckStatus::Pass : CheckStatus::Fail,
                         std::move(detail)});
    }
    void add_inconclusive(std::string name, std::string detail = {}) {
        items.push_back({std::move(name), CheckStatus::Inconclusive, std::move(detail)});
    }
    bool all_passed() const {
        for (const auto& it : items)
            if (it.status == CheckStatus::Fail) return false;
        return true;
    }
};

/// a <= b up to `slack` relative to max(1, |a|, |b|).
inline bool leq_rel(double a, double b, double slack) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return a <= b + slack * scale;
}

/// |a - b| within `slack` relative to max(1, |a|, |b|).
inline bool eq_rel(double a, double b, double slack) {
    return leq_rel(a, b, slack) && leq_rel(b, a, slack);
}

}  // namespace latmean
