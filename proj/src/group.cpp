#include "noether/group.hpp"

#include <string>

namespace noether {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::SL2Linear: return "sl2-linear";
    case ActionKind::SA2Linear: return "sa2";
    case ActionKind::SL2Projective: return "sl2-projective";
  }
  return "unknown";
}

ActionKind action_from_string(std::string_view tag) {
  if (tag == "sl2-linear") return ActionKind::SL2Linear;
  if (tag == "sa2") return ActionKind::SA2Linear;
  if (tag == "sl2-projective") return ActionKind::SL2Projective;
  throw Error(ErrorCode::InvalidArgument, "unknown action tag '" + std::string(tag) + "'");
}

}  // namespace noether
