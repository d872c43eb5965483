#ifndef FTMI_ERRORS_HPP
#define FTMI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ftmi {

// Factorization/eigensolver/quadrature failures. Carries the jitter that was
// attempted before giving up (0 when not applicable).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double jitter_attempted = 0.0)
        : std::runtime_error(what), jitter_attempted_(jitter_attempted) {}

    double jitter_attempted() const { return jitter_attempted_; }

private:
    double jitter_attempted_;
};

// Malformed experiment configs (bad key, bad value, missing section).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ftmi

#endif
