#pragma once

#include <stdexcept>
#include <string>

namespace liftgap {

/// Thrown when an enumeration or solve would exceed an explicit budget.
/// The message reports the offending count so callers can adjust.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liftgap
