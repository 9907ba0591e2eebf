#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leobeam {

// Invalid user-supplied input (configs, CLI values, out-of-domain arguments).
// Carries every violated constraint found, not just the first.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(std::vector<std::string> issues)
        : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}

    explicit validation_error(std::string issue)
        : validation_error(std::vector<std::string>{std::move(issue)}) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string all;
        for (const auto& s : issues) {
            if (!all.empty()) all += "; ";
            all += s;
        }
        return all;
    }
    std::vector<std::string> issues_;
};

// A computation that cannot produce a meaningful result (as opposed to bad input).
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when fringe statistics are requested on a map with no detectable
// periodic structure (flat or non-striped pattern).
class no_fringe_error : public computation_error {
public:
    using computation_error::computation_error;
};

} // namespace leobeam
