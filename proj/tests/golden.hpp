#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Compares text against tests/golden/<name>. With MCYCLE_UPDATE_GOLDEN=1 the
// file is rewritten instead.
inline bool matches_golden(const std::string& name, const std::string& text, std::string& diag) {
    const std::string path = std::string(MCYCLE_GOLDEN_DIR) + "/" + name;
    if (const char* up = std::getenv("MCYCLE_UPDATE_GOLDEN"); up && std::string(up) == "1") {
        std::ofstream(path) << text;
        return true;
    }
    std::ifstream in(path);
    if (!in) {
        diag = "missing golden file " + path;
        return false;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() == text) return true;
    diag = "golden mismatch for " + path + "\n--- expected\n" + ss.str() + "--- got\n" + text;
    return false;
}
