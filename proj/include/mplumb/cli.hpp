#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mplumb/plumbing.hpp"

namespace mplumb {

/// Concrete catalog names (the parametrized families accept any valid n).
std::vector<std::string> catalog_list();

/// dynkin:A<n> | dynkin:D<n> | dynkin:E6/7/8 | danielewski:<n> | ramanujam.
/// Throws UnknownCatalog.
PlumbingGraph catalog_graph(const std::string& name);

/// Entry point of the motivic-plumb tool; args exclude the program name.
/// Exit codes: 0 success, 1 input/usage errors, 2 domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mplumb
