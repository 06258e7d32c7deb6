#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

/* Division by a series that is identically zero below its order. */
struct ZeroDivisor : std::domain_error {
    explicit ZeroDivisor(const std::string& what) : std::domain_error(what) {}
};

/* A coefficient-level integer division did not come out exact. For the
 * identities handled here integrality is guaranteed, so this signals that
 * the series under test is not what it claims to be. */
struct NonIntegralQuotient : std::domain_error {
    explicit NonIntegralQuotient(const std::string& what) : std::domain_error(what) {}
};

/* Möbius inversion of a divisor sum produced a non-integer: the input was
 * not of the form n -> sum_{d|n} d*a_d with integer a. */
struct NonIntegralExponent : std::domain_error {
    explicit NonIntegralExponent(const std::string& what) : std::domain_error(what) {}
};

/* Exhaustive enumeration was requested beyond its configured bound. */
struct InputTooLarge : std::domain_error {
    explicit InputTooLarge(const std::string& what) : std::domain_error(what) {}
};

/* k-gonal operations outside their domain (the k-gonal identity needs k > 4). */
struct KOutOfRange : std::domain_error {
    explicit KOutOfRange(const std::string& what) : std::domain_error(what) {}
};

/* (h, N) parameters violating the hypotheses of the requested identity. */
struct ParamsOutOfRange : std::domain_error {
    explicit ParamsOutOfRange(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qseries
