#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace hypermode {

enum class Execution { Serial, Parallel };

/// Run body(i) for i in [0, count). Exceptions are captured per index and the
/// one with the lowest index is rethrown after the loop, so serial and
/// parallel runs fail identically.
void for_each_index(std::size_t count, Execution exec, const std::function<void(std::size_t)>& body);

}  // namespace hypermode
