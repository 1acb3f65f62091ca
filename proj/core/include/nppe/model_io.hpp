#pragma once

#include <filesystem>
#include <string>

#include "nppe/embedder.hpp"

namespace nppe {

inline constexpr int kModelFormatVersion = 1;

/// Self-describing JSON document: method, lift config (polynomial models),
/// row-major coefficient matrix with explicit shape, eigenvalues, training
/// parameters and a format_version field. Doubles are written in shortest
/// round-trip form, so load(save(m)) transforms bit-identically.
std::string model_to_json(const ExplicitModel& model);
ExplicitModel model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const ExplicitModel& model);
ExplicitModel load_model(const std::filesystem::path& path);

}  // namespace nppe
