#pragma once

#include <iosfwd>

namespace cycleprobe {

/**
 * Entry point of the `cycleprobe` command line:
 *
 *   cycleprobe <decompose|grid|study|summary> --config <path> [--lambda X]
 *              [--max-lag N] [--threshold P] [--criterion rmse|mae|mape|mcfadden]
 *              [--out DIR] [--joint-lags]
 *
 * Returns 0 on success. Otherwise prints `error[<Class>]: <message>` lines on
 * `err` and returns the numeric ErrorCode of the first failure (1 for usage errors).
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cycleprobe
