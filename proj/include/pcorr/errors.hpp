#pragma once

#include <stdexcept>
#include <string>

namespace pcorr {

// Error taxonomy shared across the library. Everything derives from
// std::runtime_error so callers can catch coarsely; the CLI maps these
// onto exit codes.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonIncreasing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntervalTooWide : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotReal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfBand : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MemoryBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuadratureDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TailTooFat : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Degenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pcorr
