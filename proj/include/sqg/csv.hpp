#pragma once

#include <string>

namespace sqg {

// write a whole text artifact; creates parent directories as needed
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sqg
