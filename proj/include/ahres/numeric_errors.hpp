#pragma once

#include <stdexcept>

namespace ahres {

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Spectral parameter too close to the half-integer lattice 2*lambda - n in Z.
struct indicial_collision : numeric_error {
    using numeric_error::numeric_error;
};
struct domain_error : numeric_error {
    using numeric_error::numeric_error;
};
struct integrator_failure : numeric_error {
    using numeric_error::numeric_error;
};
struct ill_conditioned : numeric_error {
    using numeric_error::numeric_error;
};
// The incoming coefficient A vanishes: scattering quotient undefined here.
struct at_resonance : numeric_error {
    using numeric_error::numeric_error;
};
struct zero_on_contour : numeric_error {
    using numeric_error::numeric_error;
};
// Boundary metric sample is not strictly positive where positivity is required.
struct non_positive_metric : numeric_error {
    using numeric_error::numeric_error;
};

} // namespace ahres
