#pragma once

namespace levysup {

// Exit codes: 0 success, 2 configuration error, 3 hypothesis/moment failure,
// 4 numerical failure, 5 assertion failure in rate/study --assert mode.
int run_cli(int argc, char** argv);

} // namespace levysup
