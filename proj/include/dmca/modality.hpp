#pragma once

#include <string>

namespace dmca {

enum class Modality { Vision, Tactile };

std::string to_string(Modality m);
Modality modality_from_string(const std::string& s);  // ManifestError on unknown

}  // namespace dmca
