#pragma once

#include <stdexcept>
#include <string>

namespace qptau {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Mixing exact-rational and float scalars in one expression.
class mode_error : public error {
public:
    explicit mode_error(const std::string& what) : error(what) {}
};

// A Gamma_q / Barnes argument landed on a pole (or a zero in a denominator slot).
class pole_error : public error {
public:
    explicit pole_error(const std::string& what) : error(what) {}
};

// A Nekrasov or theta denominator vanished: the parameter point is non-generic.
class resonance_error : public error {
public:
    explicit resonance_error(const std::string& what) : error(what) {}
};

// Invalid argument / precondition violation.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// A truncated series did not reach the requested accuracy.
class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what) : error(what) {}
};

// A series evaluator was asked for a point outside its region of validity.
class region_error : public error {
public:
    explicit region_error(const std::string& what) : error(what) {}
};

// A map step or matrix inversion hit a singular locus.
class singular_error : public error {
public:
    explicit singular_error(const std::string& what) : error(what) {}
};

} // namespace qptau
