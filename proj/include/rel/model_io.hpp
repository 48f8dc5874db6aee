#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rel/numerics.hpp"
#include "rel/rbd.hpp"

namespace rel {

/// Parsed contents of a declarative model file.
struct ModelFile {
  SystemModel model;
  std::optional<Grid> grid;
  std::vector<double> deadlines;  // empty when the file omits them
  int retransmissions = 0;
};

/// Parses and validates a model file. Throws IoError when the file cannot
/// be read and ValidationError, carrying every violation found, when the
/// JSON is malformed, the schema does not match, or the model invariants
/// fail. Distributions given in moments form are converted to parameters
/// at load.
ModelFile load_model_file(const std::filesystem::path& path);

/// Canonical serialization: distributions in parameters form, structure as
/// nested {"ref"} / {"series"} / {"parallel"} objects, two-space indent.
/// Loading the output reproduces an identical model.
std::string to_canonical_json(const ModelFile& m);

}  // namespace rel
