#include "relight/core/errors.hpp"

namespace relight {

void require(bool cond, const std::string& what) {
    if (!cond) throw ValidationError(what);
}

}  // namespace relight
