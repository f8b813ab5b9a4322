#pragma once

#include <stdexcept>

namespace ergolab {

// Raised for malformed inputs: bad probability vectors, bad JSON, bad
// experiment configs. The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditioning on a cylinder of measure zero (possible for Markov measures
// with a forbidden transition inside the observed window).
struct ZeroMeasureCylinder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point window does not cover the index range an operation needs.
struct InsufficientWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Brute-force enumeration would exceed the hard state budget (10^7 windows).
struct ComplexityGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A transition matrix admits no bi-infinite trajectory at all.
struct EmptySft : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interval averaging over an interval shorter than 1e-12.
struct DegenerateInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A metric ball sticks out of the valid range for the map at hand.
struct BallOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ergolab
