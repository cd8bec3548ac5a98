#pragma once

#include <set>
#include <string>
#include <vector>

#include "page/kernels.hpp"

namespace page {

enum class EmitKind { analog_bins, binary_bins, overlay, raw_tensor };

struct RunConfig {
    std::string input_path;
    std::string output_dir = "page_out";
    std::vector<KernelParams> bands;  // at least one
    std::set<EmitKind> emit;          // nonempty
    bool grayscale = false;           // collapse color input via luma before processing
};

// Parses flags (and an optional --config JSON file; explicit flags win) into
// a validated RunConfig. Throws invalid_parameter naming the offending field,
// or CLI::ParseError for malformed flag syntax.
RunConfig parse_args(const std::vector<std::string>& args);

// Decodes, runs the pipeline, writes the requested artifacts.
// Returns 0 on success; throws io_error / invalid_parameter on failure.
int run(const RunConfig& config);

// Full front end: exit 0 success, 1 I/O failure, 2 parameter error.
int cli_main(int argc, char** argv);

}  // namespace page
