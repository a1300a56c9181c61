#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "wanet/config.hpp"

namespace wanet {

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    bool corrupt_closed_form = false;  // validate-bounds failure-path hook
};

// Dispatches a parsed config to the matching module, writes the CSV output
// and prints a short summary. Returns the process exit status.
int run_experiment(ExperimentConfig config, const RunOverrides& overrides, std::ostream& log);

}  // namespace wanet
