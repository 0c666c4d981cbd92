#pragma once

#include <stdexcept>
#include <string>

namespace pathology {

// A caller broke a documented precondition (bad parameter, wrong grid size, ...).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested construction cannot exist for these parameters.
class construction_impossible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The ODE integrator gave up (step size underflow, too many steps).
class integration_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw precondition_error(what);
}

}  // namespace pathology
