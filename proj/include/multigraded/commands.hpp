#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "multigraded/manifest.hpp"

namespace mg {

/// Exit codes: 0 success or a check that holds, 1 a failed check (the
/// residual is in the result), 2 a validation, parse or lookup error.
struct CommandResult {
    int exit_code = 0;
    std::string text;
    nlohmann::ordered_json json;
};

/// `args` is the command followed by its names, e.g. {"check", "master", "H"}.
///
///   bracket X Y                 [X, Y] of two fields
///   poisson F G                 canonical bracket of two hamiltonians
///   apply X f                   X(f) for a field and a function
///   lift tangent|cotangent|phase X
///   legendre k                  the identification T*(N_[k]) = T*M
///   derham                      de Rham field of T of the chart
///   check homological|unital|nfold X
///   check master|drinfeld H
///   check bialgebroid H1 H2
///   check compat                the manifest's side fields on T* of the chart
///   derived-bracket H F G       {{F, H}, G}
///   dual F k | duals-orbit F | diagram F [dot|base] | dim F (i)
///   cocycle T1 T2 ...           the chain composes to the identity
///   gradedize T
CommandResult run_command(const Manifest& manifest, const std::vector<std::string>& args);

}  // namespace mg
