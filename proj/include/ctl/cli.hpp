#pragma once

namespace ctl {

// Full command-line front end; returns the process exit status (0 only when
// every requested computation finished and all runtime invariants held).
int run_cli(int argc, char** argv);

}  // namespace ctl
