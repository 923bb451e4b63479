#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "levysim/config.hpp"
#include "levytype/martingale.hpp"

namespace levysim {

// Weight families used by every martingale test: h = 1 and h(x) = e B(x / 2).
std::vector<levytype::WeightFn> default_weight_functions();

struct ExperimentSummary {
    std::vector<std::string> files;          // relative to the output directory, in write order
    std::vector<std::string> failed_checks;  // "A4", "MG f2/bump", ... (diagnostic verdicts, not errors)
};

// Runs one experiment into out_dir (created if missing). `threads` changes
// speed only. On any error the files written so far are removed and the
// exception propagates; a failed schedule certificate raises ConfigError
// naming the certificate, e.g. "(S2)".
ExperimentSummary run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                 unsigned threads = 1);

}  // namespace levysim
