#pragma once

namespace coarseprox {

/// Command dispatch for the coarseprox binary. Exit codes: 0 success or
/// expected pattern, 1 demanded witness unavailable / relation refuted /
/// invalid certificate, 2 usage or input error.
int run_cli(int argc, const char* const* argv);

}  // namespace coarseprox
