#pragma once

// The verification matrix shared by the acceptance test binary and the
// `suite` subcommand. Each row is an exact check with a runtime budget.

#include <ostream>
#include <string>
#include <vector>

namespace qchar {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;  // failing case and witness, or a short count of checks
};

enum class Profile { Quick, Full };

/// Quick runs only the rank <= 2 rows. Progress lines go to `progress`.
std::vector<CriterionResult> run_acceptance(Profile profile, std::ostream* progress = nullptr);

}  // namespace qchar
