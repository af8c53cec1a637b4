#include "pjam/parallel.hpp"

#include <omp.h>

namespace pjam {

int resolveThreads(const ExecutionPolicy& policy) { return policy.threads > 0 ? policy.threads : omp_get_max_threads(); }

}  // namespace pjam
