#include "galmod/action_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace galmod {

namespace {

IntegerMatrix matrix_from_json(const nlohmann::json& j, std::size_t rank,
                               const std::string& what) {
  if (!j.is_array() || j.size() != rank)
    throw InvalidInput(what + " must be a " + std::to_string(rank) + "x" +
                       std::to_string(rank) + " integer matrix");
  IntegerMatrix m(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (!j[i].is_array() || j[i].size() != rank)
      throw InvalidInput(what + " row " + std::to_string(i) +
                         " has the wrong length");
    for (std::size_t k = 0; k < rank; ++k) {
      if (!j[i][k].is_number_integer())
        throw InvalidInput(what + " has a non-integer entry");
      m.at(i, k) = j[i][k].get<long long>();
    }
  }
  return m;
}

}  // namespace

ActionFile parse_action_file(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("action file must be a JSON object");
  if (j.contains("schema") && j["schema"] != "galmod-action/1")
    throw InvalidInput("unsupported schema '" +
                       j["schema"].get<std::string>() +
                       "', expected galmod-action/1");

  ActionFile file;
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    throw InvalidInput("action file needs an integer 'rank'");
  file.rank = j["rank"].get<std::size_t>();
  if (file.rank == 0) throw InvalidInput("rank must be positive");

  if (!j.contains("generators") || !j["generators"].is_array() ||
      j["generators"].empty())
    throw InvalidInput("action file needs a nonempty 'generators' list");
  for (const auto& g : j["generators"]) {
    if (!g.is_object() || !g.contains("name") || !g.contains("matrix") ||
        !g["name"].is_string())
      throw InvalidInput("each generator needs a 'name' and a 'matrix'");
    std::string name = g["name"].get<std::string>();
    file.generators.push_back(
        {name, matrix_from_json(g["matrix"], file.rank, "generator '" + name + "'")});
  }

  if (j.contains("pairing"))
    file.pairing = matrix_from_json(j["pairing"], file.rank, "pairing");
  if (j.contains("canonical")) {
    const auto& c = j["canonical"];
    if (!c.is_array() || c.size() != file.rank)
      throw InvalidInput("canonical vector has the wrong length");
    IntVector v(file.rank);
    for (std::size_t i = 0; i < file.rank; ++i) {
      if (!c[i].is_number_integer())
        throw InvalidInput("canonical vector has a non-integer entry");
      v[i] = c[i].get<long long>();
    }
    file.canonical = std::move(v);
  }
  if (j.contains("zero_cycle_degree_one")) {
    if (!j["zero_cycle_degree_one"].is_boolean())
      throw InvalidInput("zero_cycle_degree_one must be a boolean");
    file.zero_cycle_degree_one = j["zero_cycle_degree_one"].get<bool>();
  }
  return file;
}

ActionFile load_action_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_action_file(buffer.str());
}

}  // namespace galmod
