/*
   Copyright 2026 The qtriple Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QTRIPLE_REPORT_HPP
#define QTRIPLE_REPORT_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace qtriple {

/// One named verification outcome. value is compared against tolerance by
/// whoever builds the check; pass records the verdict.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
    double tolerance = 0.0;
    double value = 0.0;
};

struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string detail, double tolerance, double value) {
        checks.push_back({std::move(name), pass, std::move(detail), tolerance, value});
    }
    /// Adds a check that passes when value <= tolerance.
    void add_bound(std::string name, double value, double tolerance, std::string detail = {}) {
        add(std::move(name), value <= tolerance, std::move(detail), tolerance, value);
    }
    void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

} // namespace qtriple

#endif // QTRIPLE_REPORT_HPP
