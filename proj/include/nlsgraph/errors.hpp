#pragma once

#include <stdexcept>
#include <string>

namespace nlsgraph {

/// Raised when an iterative numerical procedure (quadrature, root finder,
/// ODE integration) fails to reach its tolerance or loses its bracket.
/// Invalid arguments are reported with std::invalid_argument instead.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nlsgraph
