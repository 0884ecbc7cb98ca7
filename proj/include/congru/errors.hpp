#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace congru {

/// Base class for every failure raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class not_invertible : public error {
public:
    not_invertible(std::uint64_t value, std::uint64_t modulus, std::uint64_t gcd)
        : error("not invertible: gcd(" + std::to_string(value) + ", " + std::to_string(modulus) +
                ") = " + std::to_string(gcd)),
          gcd_(gcd) {}

    std::uint64_t gcd() const noexcept { return gcd_; }

private:
    std::uint64_t gcd_;
};

class even_modulus : public error {
public:
    explicit even_modulus(std::uint64_t n)
        : error("jacobi symbol needs an odd modulus, got " + std::to_string(n)) {}
};

/// p divides the discriminant, so (D/p^a) = 0 and no shifted index exists.
class zero_symbol : public error {
public:
    using error::error;
};

class precision_exhausted : public error {
public:
    using error::error;
};

class insufficient_precision : public error {
public:
    using error::error;
};

class negative_valuation : public error {
public:
    using error::error;
};

class division_by_zero : public error {
public:
    using error::error;
};

class mixed_rings : public error {
public:
    using error::error;
};

class ineligible_parameters : public error {
public:
    using error::error;
};

class precision_overflow : public error {
public:
    using error::error;
};

class checkpoint_mismatch : public error {
public:
    using error::error;
};

class invalid_x : public error {
public:
    using error::error;
};

class unknown_congruence : public error {
public:
    using error::error;
};

} // namespace congru
