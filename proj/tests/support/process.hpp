#pragma once

// Runs a shell command and captures its exit code, stdout and stderr.

#include <sys/wait.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "support/fixtures.hpp"

namespace drift::testing {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'')
            q += "'\\''";
        else
            q += c;
    }
    return q + "'";
}

inline ProcessResult run_process(const std::vector<std::string>& argv, const std::string& env_prefix = {}) {
    TempDir io("drift-proc");
    std::string cmd = env_prefix;
    for (const auto& a : argv)
        cmd += (cmd.empty() ? "" : " ") + shell_quote(a);
    cmd += " > " + shell_quote((io / "out").string()) + " 2> " + shell_quote((io / "err").string()) + " < /dev/null";
    const int status = std::system(cmd.c_str());
    ProcessResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text(io / "out");
    r.err = read_text(io / "err");
    return r;
}

}  // namespace drift::testing
