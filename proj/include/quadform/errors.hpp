#pragma once

#include <stdexcept>
#include <string>

namespace quadform {

// Base for every failure raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class dimension_mismatch : public error {
public:
    using error::error;
};

class validation_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

// The linear part (A, b) is not the canonical shift pair.
class not_brunovsky : public error {
public:
    using error::error;
};

class not_controllable : public error {
public:
    not_controllable(std::size_t rank, std::size_t n)
        : error("pair (A, b) is not controllable: controllability matrix has rank " +
                std::to_string(rank) + ", expected " + std::to_string(n)),
          rank_(rank) {}

    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

class singular_transform : public error {
public:
    using error::error;
};

// Internal consistency failures. Seeing one means a bug or a violated precondition.
class certification_failure : public error {
public:
    using error::error;
};

class extraction_residual : public error {
public:
    using error::error;
};

class asymmetry_detected : public error {
public:
    using error::error;
};

class inconsistent_symmetry : public error {
public:
    using error::error;
};

class residual_nu_squared : public error {
public:
    using error::error;
};

class nonzero_r : public error {
public:
    using error::error;
};

}  // namespace quadform
