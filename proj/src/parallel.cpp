#include "hypermode/parallel.hpp"

#include <omp.h>

namespace hypermode {

void for_each_index(std::size_t count, Execution exec, const std::function<void(std::size_t)>& body) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long long>(count);
    if (exec == Execution::Serial) {
        for (long long i = 0; i < n; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < n; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace hypermode
