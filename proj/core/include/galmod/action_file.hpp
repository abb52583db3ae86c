#ifndef GALMOD_ACTION_FILE_HPP
#define GALMOD_ACTION_FILE_HPP

#include <optional>
#include <string>

#include "galmod/group.hpp"

namespace galmod {

// The JSON input format (schema "galmod-action/1"): a rank, named generator
// matrices (row-major, acting on column vectors from the left), and
// optionally a pairing, a canonical vector, and the zero-cycle flag.
struct ActionFile {
  std::size_t rank = 0;
  std::vector<NamedGenerator> generators;
  std::optional<IntegerMatrix> pairing;
  std::optional<IntVector> canonical;
  bool zero_cycle_degree_one = false;
};

ActionFile parse_action_file(const std::string& json_text);
ActionFile load_action_file(const std::string& path);

}  // namespace galmod

#endif  // GALMOD_ACTION_FILE_HPP
