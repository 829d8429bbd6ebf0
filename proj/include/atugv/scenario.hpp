#pragma once

// Scenario files: INI-style key/value text with [section] headers.
// See docs/formats.md for the grammar and the full key list.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "atugv/cell_network.hpp"
#include "atugv/planner.hpp"
#include "atugv/simulator.hpp"

namespace atugv {

struct Scenario {
    std::string name;
    double side_length = 1.0;
    CellGraph graph;
    ReferenceConfiguration reference;
    PlanSpec plan;
    PlanOptions plan_options;
    SimConfig sim;
    double error_threshold = 1e-3;
    std::vector<std::string> warnings;  // ignored keys in lenient mode
};

enum class ParseMode { Strict, Lenient };

// Throws ParseError (with line number) for malformed text, or an Error
// naming the violated invariant when the content does not validate.
Scenario parse_scenario(std::string_view text, ParseMode mode = ParseMode::Strict,
                        const std::string& default_name = "scenario");

// As parse_scenario; the default name is the file stem. Throws Error(Io).
Scenario load_scenario(const std::filesystem::path& path, ParseMode mode = ParseMode::Strict);

}  // namespace atugv
