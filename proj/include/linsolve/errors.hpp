#pragma once

#include <stdexcept>
#include <string>

namespace linsolve {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- input / construction errors ----

struct not_prime : error {
    explicit not_prime(const std::string& msg) : error(msg) {}
};

struct not_irreducible : error {
    explicit not_irreducible(const std::string& msg) : error(msg) {}
};

struct degree_mismatch : error {
    explicit degree_mismatch(const std::string& msg) : error(msg) {}
};

struct field_mismatch : error {
    explicit field_mismatch(const std::string& msg) : error(msg) {}
};

struct not_a_divisor : error {
    explicit not_a_divisor(const std::string& msg) : error(msg) {}
};

struct invalid_tower : error {
    explicit invalid_tower(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// ---- arithmetic errors ----

struct division_by_zero : error {
    explicit division_by_zero(const std::string& msg) : error(msg) {}
};

struct both_zero : error {
    explicit both_zero(const std::string& msg) : error(msg) {}
};

struct not_divisible : error {
    explicit not_divisible(const std::string& msg) : error(msg) {}
};

struct zero_constant_term : error {
    explicit zero_constant_term(const std::string& msg) : error(msg) {}
};

struct zero_polynomial : error {
    explicit zero_polynomial(const std::string& msg) : error(msg) {}
};

struct zero_divisor : error {
    explicit zero_divisor(const std::string& msg) : error(msg) {}
};

struct order_too_large : error {
    explicit order_too_large(const std::string& msg) : error(msg) {}
};

// ---- solver errors ----

struct invalid_k : error {
    explicit invalid_k(const std::string& msg) : error(msg) {}
};

struct not_solvable : error {
    explicit not_solvable(const std::string& msg) : error(msg) {}
};

struct not_in_subfield : error {
    explicit not_in_subfield(const std::string& msg) : error(msg) {}
};

struct not_applicable : error {
    explicit not_applicable(const std::string& msg) : error(msg) {}
};

struct too_many : error {
    explicit too_many(const std::string& msg) : error(msg) {}
};

// A failed consistency check inside the library.  Seeing this exception
// means a bug in linsolve itself, never bad user input.
struct internal_invariant_violation : error {
    explicit internal_invariant_violation(const std::string& msg) : error(msg) {}
};

}  // namespace linsolve
