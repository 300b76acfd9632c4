#pragma once

#include <stdexcept>
#include <string>

namespace casimir1d {

/// Spectral point with u = xi = 0: no decay rate exists, Green functions are undefined.
class degenerate_spectral_point : public std::domain_error {
public:
    explicit degenerate_spectral_point(const std::string& what)
        : std::domain_error(what) {}
};

/// Interface-matching linear system is numerically singular at this spectral point.
class singular_matrix_error : public std::runtime_error {
public:
    singular_matrix_error(const std::string& what, double cond)
        : std::runtime_error(what + " (condition estimate " + std::to_string(cond) + ")"),
          condition(cond) {}
    double condition;
};

/// Quadrature ran out of evaluations before the tail could be classified.
class inconclusive_integral : public std::runtime_error {
public:
    explicit inconclusive_integral(const std::string& what) : std::runtime_error(what) {}
};

} // namespace casimir1d
