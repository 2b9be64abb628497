#pragma once

#include <stdexcept>
#include <string>

namespace theodorus {

// Division where the divisor interval contains zero.
struct DivisorContainsZero : std::domain_error {
    DivisorContainsZero() : std::domain_error("interval divisor contains zero") {}
};

// Square root of an interval whose lower endpoint is negative.
struct NegativeRadicand : std::domain_error {
    NegativeRadicand() : std::domain_error("square root of negative radicand") {}
};

// Recurrence step on a box whose modulus enclosure touches the origin.
struct OriginInEnclosure : std::domain_error {
    OriginInEnclosure() : std::domain_error("complex enclosure touches the origin") {}
};

// Spiral index outside its valid range (n >= 1, r >= 1).
struct InvalidIndex : std::invalid_argument {
    explicit InvalidIndex(const std::string& what) : std::invalid_argument(what) {}
};

// Window (m, n) violating 1 <= m < n.
struct InvalidWindow : std::invalid_argument {
    explicit InvalidWindow(const std::string& what) : std::invalid_argument(what) {}
};

// Sweep bound N below the smallest meaningful value.
struct InvalidBound : std::invalid_argument {
    explicit InvalidBound(const std::string& what) : std::invalid_argument(what) {}
};

// A decision could not be made before reaching the precision cap.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace theodorus
