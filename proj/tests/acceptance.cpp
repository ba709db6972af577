// Runs acceptance criteria 1-9 and prints one [PASS]/[FAIL] line per criterion.
// Exit status is nonzero if any criterion fails; pass --verbose to list every check.

#include "hyplab/verify.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv)
{
    bool verbose = false;
    for (int i = 1; i < argc; ++i)
        verbose = verbose || std::strcmp(argv[i], "--verbose") == 0 || std::strcmp(argv[i], "-v") == 0;

    bool all = true;
    for (int id = 1; id <= 9; ++id) {
        const hyplab::CriterionResult r = hyplab::run_criterion(id);
        hyplab::print_results(std::cout, {r}, verbose);
        std::cout.flush();
        all = all && r.pass();
    }
    return all ? 0 : 1;
}
