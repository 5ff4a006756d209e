#include "froblift/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "froblift/error.hpp"
#include "froblift/parse.hpp"

namespace froblift::io {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputFormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputFormatError("description file must be a JSON object");
  return doc;
}

Prime read_prime(const json& doc) {
  if (!doc.contains("p") || !doc["p"].is_number_integer() || doc["p"].get<long long>() < 2)
    throw InputFormatError("\"p\" must be an integer >= 2");
  return Prime(doc["p"].get<std::uint64_t>());
}

std::vector<std::string> read_names(const json& doc, const char* key) {
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw InputFormatError(std::string("\"") + key + "\" must be an array of strings");
  std::vector<std::string> out;
  for (const json& v : arr) {
    if (!v.is_string()) throw InputFormatError(std::string("\"") + key + "\" must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<std::string> read_vars(const json& doc, std::size_t default_count) {
  std::vector<std::string> vars =
      doc.contains("vars") ? read_names(doc, "vars") : default_variable_names(default_count);
  validate_variable_names(vars);
  return vars;
}

MultiPoly read_poly(const json& v, const std::vector<std::string>& vars, const Prime& prime, Level level,
                    const std::string& where) {
  if (!v.is_string()) throw InputFormatError(where + " must be a polynomial string");
  try {
    return parse_poly(v.get<std::string>(), vars, prime, level);
  } catch (const ParseError& e) {
    throw InputFormatError(where + ": " + e.what());
  } catch (const UnknownVariable& e) {
    throw InputFormatError(where + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::size_t variable_index(const std::vector<std::string>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  throw UnknownVariable(name);
}

ChartFile chart_from_json_text(const std::string& text) {
  const json doc = parse_document(text);
  const Prime prime = read_prime(doc);
  if (!doc.contains("images")) throw InputFormatError("chart file needs \"images\"");
  const std::vector<std::string> image_text = read_names(doc, "images");
  const std::vector<std::string> vars = read_vars(doc, image_text.size());
  if (vars.size() != image_text.size())
    throw InputFormatError("chart file needs one image per variable");
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < vars.size(); ++i)
    images.push_back(read_poly(doc["images"][i], vars, prime, Level::ModP2, "images[" + std::to_string(i) + "]"));

  ChartFile out{vars, ChartLifting(prime, std::move(images)), std::nullopt, std::nullopt};
  if (doc.contains("log_rank")) {
    if (!doc["log_rank"].is_number_unsigned()) throw InputFormatError("\"log_rank\" must be a nonnegative integer");
    out.log_rank = doc["log_rank"].get<std::size_t>();
  }
  if (doc.contains("center")) {
    std::vector<std::size_t> center;
    for (const std::string& name : read_names(doc, "center")) center.push_back(variable_index(vars, name));
    out.center = std::move(center);
  }
  return out;
}

SplittingFile splitting_from_json_text(const std::string& text) {
  const json doc = parse_document(text);
  const Prime prime = read_prime(doc);
  if (!doc.contains("vars")) throw InputFormatError("splitting file needs \"vars\"");
  if (!doc.contains("u")) throw InputFormatError("splitting file needs \"u\"");
  const std::vector<std::string> vars = read_vars(doc, 0);
  return {vars, TraceSplitting(read_poly(doc["u"], vars, prime, Level::ModP, "u"))};
}

GroupFile group_from_json_text(const std::string& text) {
  const json doc = parse_document(text);
  const Prime prime = read_prime(doc);
  if (!doc.contains("vars")) throw InputFormatError("group file needs \"vars\"");
  if (!doc.contains("maps") || !doc["maps"].is_array()) throw InputFormatError("group file needs \"maps\"");
  const std::vector<std::string> vars = read_vars(doc, 0);
  std::vector<std::vector<MultiPoly>> maps;
  for (std::size_t k = 0; k < doc["maps"].size(); ++k) {
    const json& m = doc["maps"][k];
    if (!m.is_array() || m.size() != vars.size())
      throw InputFormatError("maps[" + std::to_string(k) + "] needs one image per variable");
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < m.size(); ++i)
      images.push_back(read_poly(m[i], vars, prime, Level::ModP,
                                 "maps[" + std::to_string(k) + "][" + std::to_string(i) + "]"));
    maps.push_back(std::move(images));
  }
  return {vars, GroupAction(prime, vars.size(), std::move(maps))};
}

ChartFile load_chart(const std::string& path) { return chart_from_json_text(read_file(path)); }
SplittingFile load_splitting(const std::string& path) { return splitting_from_json_text(read_file(path)); }
GroupFile load_group(const std::string& path) { return group_from_json_text(read_file(path)); }

}  // namespace froblift::io
