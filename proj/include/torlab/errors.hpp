#ifndef TORLAB_ERRORS_HPP
#define TORLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torlab {

// Error taxonomy shared by every module. The CLI maps these onto exit codes:
// config 2, numeric 3, capability/resource 4.

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric routine could not reach its certification target. Carries the
// best radius it achieved so callers can report how close it got.
struct numeric_error : std::runtime_error {
    double achieved_radius;
    explicit numeric_error(const std::string& msg, double achieved = 0.0)
        : std::runtime_error(msg), achieved_radius(achieved) {}
};

// Input exceeds a documented cap (e.g. the factorization degree cap).
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace torlab

#endif
