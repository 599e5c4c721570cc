#pragma once

#include <string>

namespace ordet {

std::string version();
std::string compiler_version();
std::string boost_version();

}  // namespace ordet
