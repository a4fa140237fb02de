#pragma once

#include <string>
#include <string_view>

namespace afdforge::features {

// Snowball English (Porter2) stem of a lowercase word.
std::string stem_english(std::string_view word);

}  // namespace afdforge::features
