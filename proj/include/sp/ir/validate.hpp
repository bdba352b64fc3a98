#pragma once

#include <string>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::ir {

// Checks every CharacterRecord invariant and returns one description per
// violation, each naming the field and the broken invariant. Pure: identical
// inputs yield identical lists. An empty list means the record is well formed.
std::vector<std::string> validate_record(const CharacterRecord& record);

}  // namespace sp::ir
