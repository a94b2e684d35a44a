#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mink {

/// Locale-independent float rendering with 17 significant digits
/// ('.' decimal separator regardless of environment).
std::string format_float17(double value);

/// Minimal CSV sink: '\n' line endings, no quoting (fields carry no commas).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

}  // namespace mink
