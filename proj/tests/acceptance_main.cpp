#include "stark/acceptance.hpp"
#include "stark/cli.hpp"

#include <cstdio>
#include <exception>

int main() {
    try {
        stark::AcceptanceConfig cfg;
        cfg.threads = stark::threads_from_env();
        const stark::VerifyReport r = stark::run_acceptance(cfg);
        for (const auto& c : r.criteria)
            std::printf("%s %s  %s | measured %.6g, tolerance %.3g | %s\n", c.id.c_str(), c.pass ? "PASS" : "FAIL",
                        c.description.c_str(), c.measured, c.tolerance, c.detail.c_str());
        std::printf("overall %s in %.1f s\n", r.overall ? "PASS" : "FAIL", r.runtime_seconds);
        return r.overall ? 0 : 1;
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }
}
