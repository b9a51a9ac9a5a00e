#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Use of the half-power generator s where only integer powers of q exist.
struct HalfPowerUnsupported : Error {
    using Error::Error;
};

// Input degree exceeds the degree a rewrite system was completed to.
struct TruncationExceeded : Error {
    using Error::Error;
};

// Resource guard tripped during completion.
struct CoefficientBlowup : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

// tr(E^-1 E^t) admits only root-of-unity solutions of q^2 + tau q + 1 = 0.
struct RootOfUnity : Error {
    using Error::Error;
};

// Objects of a cell pair do not share the trace invariant.
struct TraceMismatch : Error {
    using Error::Error;
};

struct NotCoinvariant : Error {
    using Error::Error;
};

struct NotSurjective : Error {
    NotSurjective(const std::string& msg, std::size_t rank, int degree)
        : Error(msg), rank_achieved(rank), degree_used(degree) {}
    std::size_t rank_achieved = 0;
    int degree_used = -1;
    // indices of an offending isomorphic pair in a direct sum, when known
    int part_a = -1, part_b = -1;
};

struct NotInner : Error {
    using Error::Error;
};

// A transported element left the computed cotensor basis (truncation too small).
struct BasisEscape : Error {
    using Error::Error;
};

// Enlarging the cotensor truncation by one changed the dimension.
struct DimensionUnstable : Error {
    using Error::Error;
};

}  // namespace qdc
