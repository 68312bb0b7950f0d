#include "eislab/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eislab {

static int parse_env_cap() {
    const char* v = std::getenv("EISLAB_THREADS");
    if (!v) return 0;
    try {
        int n = std::stoi(v);
        return n > 0 ? n : 0;
    } catch (...) {
        return 0;
    }
}

int thread_count() {
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = 1;
#endif
    int cap = parse_env_cap();
    if (cap > 0 && cap < hw) return cap;
    return hw;
}

void apply_thread_env() {
#ifdef _OPENMP
    int cap = parse_env_cap();
    if (cap > 0) omp_set_num_threads(cap);
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace eislab
