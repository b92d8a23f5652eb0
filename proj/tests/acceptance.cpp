// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <iostream>

#include "qchar/acceptance.hpp"

int main() {
    const auto results = qchar::run_acceptance(qchar::Profile::Full, &std::cerr);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::printf("criterion %d %s: %s (%.2f s of %.0f s) %s\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(),
                    r.seconds, r.budget_seconds, r.detail.c_str());
    }
    return all ? 0 : 1;
}
