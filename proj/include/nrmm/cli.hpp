#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace nrmm {

/// Subcommands: spectrum, ipr, winding, phase-diagram, mobility-edge,
/// floquet-check. Returns 0 on success, 1 on computational failure,
/// 2 on usage errors (unknown flags, invalid ranges, even-q alpha).
int cli_dispatch(const std::vector<std::string>& args,
                 std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace nrmm
