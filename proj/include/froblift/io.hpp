#pragma once

#include <optional>
#include <string>
#include <vector>

#include "froblift/lifting.hpp"
#include "froblift/splitting.hpp"

namespace froblift::io {

/// {"p": int, "vars": [names], "images": [strings], "log_rank": int, "center": [names]}
/// with "vars" defaulting to x1..xn and the last two keys optional.
struct ChartFile {
  std::vector<std::string> vars;
  ChartLifting lifting;
  std::optional<std::size_t> log_rank;
  std::optional<std::vector<std::size_t>> center;  // 0-based indices into vars
};

/// {"p": int, "vars": [names], "u": string}
struct SplittingFile {
  std::vector<std::string> vars;
  TraceSplitting splitting;
};

/// {"p": int, "vars": [names], "maps": [[string per variable], ...]}
struct GroupFile {
  std::vector<std::string> vars;
  GroupAction group;
};

ChartFile chart_from_json_text(const std::string& text);
SplittingFile splitting_from_json_text(const std::string& text);
GroupFile group_from_json_text(const std::string& text);

/// File variants; throw InputFormatError when the file cannot be read.
ChartFile load_chart(const std::string& path);
SplittingFile load_splitting(const std::string& path);
GroupFile load_group(const std::string& path);

/// Index of `name` in `vars`; throws UnknownVariable.
std::size_t variable_index(const std::vector<std::string>& vars, const std::string& name);

}  // namespace froblift::io
