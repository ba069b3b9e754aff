#pragma once

#include <string>
#include <vector>

#include <graphlim/graphlim.hpp>

namespace graphlim::cli {

/// Input file could not be read; reported with exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

/// Level from GRAPHLIM_LOG ("0"/"quiet", "1"/"info", "2"/"debug").
LogLevel log_level();
void log(LogLevel level, const std::string& message);

std::string read_file(const std::string& path);
Json read_json(const std::string& path);

/// "g6:<graph6>" is an inline literal; otherwise a file holding graph6 or
/// a JSON graph.
Graph read_graph(const std::string& source);

/// Parameter from --param (JSON table) or from --graphon with a cap.
GraphParameter read_parameter(const std::string& param_path, const std::string& graphon_path,
                              int cap);

std::vector<int> parse_int_list(const std::string& text);

/// "json" prints the document; "human" flattens it to "path: value" lines.
std::string render(const Json& doc, const std::string& format);

void write_output(const Json& doc, const std::string& format, const std::string& out_path);

}  // namespace graphlim::cli
