#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace digerm {

/// Exact integer type used for all incidence and normal-form arithmetic.
/// Smith normal form transforms can overflow any fixed-width type, so the
/// whole matrix layer runs on arbitrary precision.
using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

/// Thrown for domain failures: unreadable or malformed inputs, unknown
/// identifiers, operators applied to the wrong kind of cell.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

inline long long to_int64(const Int& v)
{
    if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
        throw InputError("integer too large for 64-bit export: " + v.str());
    return static_cast<long long>(v);
}

} // namespace digerm
