#pragma once

// Helpers shared by the CLI tests and the acceptance runner: spawning the
// CLI binary with captured output, and CSV line splitting.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace testsupport {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

inline std::string temp_path() {
    static int counter = 0;
    return "/tmp/rlcsim_test_" + std::to_string(++counter) + ".out";
}

inline CommandResult run_command(const std::string& command) {
    const std::string path = temp_path();
    const std::string full = command + " > " + path + " 2>/dev/null";
    const int status = std::system(full.c_str());
    CommandResult result;
    if (status != -1 && WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::remove(path.c_str());
    return result;
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

// Index of a column name in a CSV header row, or -1.
inline int column_index(const std::vector<std::string>& header,
                        const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace testsupport
