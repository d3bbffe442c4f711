#pragma once

#include <stdexcept>
#include <string>

namespace qbohm {

// Physics-level failure: singular coordinate factor, pole of the deformed
// subtraction, classically forbidden energy, non-normalizable input.
// The command line tool maps these to exit code 1.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The factor 1 + gamma*x crossed zero where it must stay positive.
class singularity_error : public domain_error {
 public:
  explicit singularity_error(double gamma)
      : domain_error("coordinate factor 1+gamma*x is non-positive; pole at x = " +
                     std::to_string(-1.0 / gamma)) {}
  singularity_error(double gamma, double x)
      : domain_error("coordinate factor 1+gamma*x is non-positive at x = " +
                     std::to_string(x) + "; pole at x = " + std::to_string(-1.0 / gamma)) {}
};

// The grid cannot support the request (too few points for the number of
// states asked for, stencil wider than the grid, ...).
class resolution_error : public domain_error {
 public:
  using domain_error::domain_error;
};

}  // namespace qbohm
