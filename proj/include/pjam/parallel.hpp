#pragma once

namespace pjam {

/// Worker count for the OpenMP scans; 0 keeps the runtime default.
struct ExecutionPolicy {
  int threads = 0;
};

int resolveThreads(const ExecutionPolicy& policy);

}  // namespace pjam
