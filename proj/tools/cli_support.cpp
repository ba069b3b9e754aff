#include "cli_support.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace graphlim::cli {

LogLevel log_level() {
  const char* env = std::getenv("GRAPHLIM_LOG");
  if (env == nullptr) return LogLevel::kQuiet;
  const std::string value(env);
  if (value == "2" || value == "debug") return LogLevel::kDebug;
  if (value == "1" || value == "info") return LogLevel::kInfo;
  return LogLevel::kQuiet;
}

void log(LogLevel level, const std::string& message) {
  if (level == LogLevel::kQuiet || static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::cerr << "[graphlim] " << message << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Graph read_graph(const std::string& source) {
  if (source.rfind("g6:", 0) == 0) return from_graph6(source.substr(3));
  std::string text = read_file(source);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError(source + ": empty graph file");
  if (text[first] == '{') {
    try {
      return graph_from_json(Json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source + ": " + e.what());
    }
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return from_graph6(std::string_view(text).substr(first, last - first + 1));
}

GraphParameter read_parameter(const std::string& param_path, const std::string& graphon_path,
                              int cap) {
  if (!param_path.empty() && !graphon_path.empty())
    throw ParseError("give either --param or --graphon, not both");
  if (!param_path.empty()) return parameter_from_json(read_json(param_path));
  if (!graphon_path.empty()) return from_graphon(graphon_from_json(read_json(graphon_path)), cap);
  throw ParseError("a parameter is required: --param FILE or --graphon FILE");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("not an integer list: " + text);
    }
  }
  return out;
}

namespace {

void flatten(const Json& doc, const std::string& path, std::ostream& out) {
  if (doc.is_object() && !doc.empty()) {
    for (const auto& [key, value] : doc.items())
      flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (doc.is_array() && !doc.empty() && !doc.front().is_primitive()) {
    for (std::size_t i = 0; i < doc.size(); ++i) flatten(doc[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << (path.empty() ? "value" : path) << ": "
        << (doc.is_string() ? doc.get<std::string>() : doc.dump()) << '\n';
  }
}

}  // namespace

std::string render(const Json& doc, const std::string& format) {
  if (format == "human") {
    std::ostringstream out;
    flatten(doc, "", out);
    return out.str();
  }
  return doc.dump(2) + "\n";
}

void write_output(const Json& doc, const std::string& format, const std::string& out_path) {
  const std::string text = render(doc, format);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write output file: " + out_path);
  out << text;
}

}  // namespace graphlim::cli
