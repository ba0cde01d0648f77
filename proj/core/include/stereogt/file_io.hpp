#pragma once

#include <string>
#include <string_view>

namespace stereogt {

/// Whole-file binary read. Throws IoError naming the path.
std::string read_file(const std::string& path);

/// Writes through a temporary file and renames it into place.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace stereogt
