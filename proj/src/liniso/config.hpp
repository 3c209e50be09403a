#pragma once

namespace liniso {

// Size guards for the exhaustive parts of the library. Anything above a
// guard is refused up front with a cost estimate instead of running for hours.
struct Limits {
  int transform_n = 16;  // Walsh-Hadamard and truth-table work
  int gl_n = 5;          // sweeps over GL_n(F2)
  int lp_n = 8;          // approximate spectral norm LP
  int ball_r = 4;        // dense bitsets over all 2^(2^r) tables
};

}  // namespace liniso
