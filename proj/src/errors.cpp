#include "hypermode/errors.hpp"

namespace hypermode {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(what), line_(line), column_(column) {}

NotHyperbolicError::NotHyperbolicError(const std::string& what, double re, double im)
    : Error(what), re_(re), im_(im) {}

PropositionViolation::PropositionViolation(const std::string& what, double indicator)
    : Error(what), indicator_(indicator) {}

}  // namespace hypermode
