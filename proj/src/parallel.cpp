#include "dedekind/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dedekind {

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("DEDEKIND_JOBS")) {
        try {
            const int j = std::stoi(env);
            if (j > 0) return j;
        } catch (...) {
            // fall through to hardware count
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace dedekind
