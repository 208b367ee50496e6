#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qclt::cli {

inline constexpr const char* kVersion = "1.0.0";

// One logical command per invocation. Numeric fields are validated before
// any computation runs; see validate() for the accepted ranges.
struct RunConfig {
    std::string command;          // gram | asymptote | pnd | interp |
                                  // moments | converge | oracle
    std::string input_path;       // overlap JSON; loaded by the frontend
    std::string format = "json";  // json | csv
    std::string out = "stdout";   // path, or "stdout"
    double eps = 1e-12;           // truncation tolerance, in (0, 1e-3]
    std::size_t m_max = 100;      // entry cap, in [1, 10000]
    std::vector<int> n_list;      // source counts for converge / oracle
    double x = -1.0;              // equal-overlap weight; < 0 means unset
    double r = 1.0;               // mean photons per source, >= 0
    bool indistinguishable = false;  // all-ones overlap, no input file
    bool single_photon = true;       // finite-n sources are single photons
};

struct RunResult {
    int exit_code = 0;       // 0 ok, 2 validation, 3 io, 4 numeric
    std::string document;    // rendered JSON or CSV text on success
    std::string error_line;  // one line, "error: <category>: <reason>"
};

// Runs one command over already-loaded input bytes (empty when the command
// takes no file). Never throws: failures land in exit_code / error_line.
// Identical config and input produce byte-identical documents.
RunResult run(const RunConfig& config, const std::string& input);

// argv frontend: parse flags, read the input file, run, write the document
// to config.out. Returns the process exit code.
int main_entry(int argc, const char* const* argv);

}  // namespace qclt::cli
