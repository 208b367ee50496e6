#pragma once

#include <optional>
#include <string>

#include "qclt/gram.hpp"

namespace qclt::gram {

// Parsed overlap input: either an explicit matrix (from "states" or "gram")
// or an equal-overlap model, or both.
struct GramInput {
    std::optional<GramMatrix> gram;
    std::optional<InterpolationModel> interpolation;
};

// Accepts {"states": [[[re,im], ...], ...]}, {"gram": n x n of [re,im]},
// {"interpolation": {"x": real, "n": int}} (omit "n" for the limit).
// Plain numbers are accepted wherever an [re, im] pair is expected.
// Malformed or inconsistent content raises std::invalid_argument.
GramInput load_gram_input(const std::string& json_text);

// load_gram_input on the file's contents; unreadable path raises io_error.
GramInput read_gram_file(const std::string& path);

}  // namespace qclt::gram
