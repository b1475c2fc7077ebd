#include "nevanlab/parallel.hpp"

namespace nevanlab {

namespace {
std::atomic<int> g_jobs{1};
}

int default_jobs() { return g_jobs.load(); }

void set_default_jobs(int jobs) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  g_jobs.store(jobs);
}

}  // namespace nevanlab
