#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sph/rootsys.hpp"

namespace sph::cli {

/// Exit codes: 0 consistent, 1 usage or configuration error, 2 inconsistency.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInconsistent = 2;

/// Runs one command line (args excludes the program name). Matrices for
/// `bruhat` are read from in.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// {family, rank, roots (coefficient arrays, positive first), cartan, beta1}.
nlohmann::ordered_json root_system_json(const RootSystem& rs);
/// {pi, type, closure (root indices), torus_rank}.
nlohmann::ordered_json subsystem_json(const SubsystemSpec& spec);

/// Default worker count: SPH_THREADS when set, else the hardware concurrency.
int default_threads();

}  // namespace sph::cli
