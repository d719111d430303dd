// Runs the full acceptance suite: one line per criterion, nonzero exit if
// any criterion fails.
#include <cstdio>

#include "a5a1/verify.hpp"

int main() {
    int failed = 0;
    int i = 0;
    for (const std::string& name : a5a1::check_names()) {
        ++i;
        a5a1::CheckResult r = a5a1::run_check(name);
        std::printf("criterion %2d %-20s %s  %s\n", i, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    if (failed) std::printf("%d of %d criteria failed\n", failed, i);
    return failed == 0 ? 0 : 1;
}
