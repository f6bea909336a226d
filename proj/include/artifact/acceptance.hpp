#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace artifact {

struct CriterionResult {
    int id = 0;
    std::string suite;
    std::string title;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> details;  // failures first, then notes
};

const std::vector<std::string>& suite_names();

// runs one suite (or all for an empty name), printing one PASS/FAIL line per criterion
std::vector<CriterionResult> run_acceptance(const std::string& suite, std::ostream& out);

std::string golden_dir();

}  // namespace artifact
