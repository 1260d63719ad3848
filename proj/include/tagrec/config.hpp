#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tagrec/embedding.hpp"
#include "tagrec/optimizer.hpp"

namespace tagrec {

/// Flat `key=value` file; '#' starts a comment, blank lines are skipped.
/// Keys mirror the TrainConfig and OptConfig fields; `seed` sets both seeds.
std::map<std::string, std::string> load_key_value_config(const std::filesystem::path& path);

/// Applies the recognized keys; throws std::invalid_argument on unknown keys
/// or unparsable values.
void apply_config(const std::map<std::string, std::string>& config, TrainConfig& train,
                  OptConfig& opt);

}  // namespace tagrec
