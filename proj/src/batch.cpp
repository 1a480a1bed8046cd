#include "darkwell/batch.hpp"

#include <cstdlib>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace darkwell {

namespace {

SettleResult run_one(const SettleJob& job) {
    SettleResult r;
    try {
        const double t_max = job.t_max > 0.0 ? job.t_max : default_t_max(job.params);
        const Trajectory traj =
            integrate_until_settled(job.params, job.init, job.eps, t_max, job.dt);
        const TrajectorySample& last = traj.last();
        r.ok = true;
        r.p_left = last.loc.p_left;
        r.p_right = last.loc.p_right;
        r.t_settled = last.state.t;
    } catch (const SimError& e) {
        r.ok = false;
        r.code = e.code();
        r.message = e.what();
        r.p_left = r.p_right = r.t_settled = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}  // namespace

int batch_thread_count() {
    if (const char* env = std::getenv("DARKWELL_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<int>(n);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<SettleResult> run_settle_batch(std::span<const SettleJob> jobs,
                                           ExecPolicy policy) {
    std::vector<SettleResult> out(jobs.size());
    const long n = static_cast<long>(jobs.size());

    if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
        const int threads = batch_thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long i = 0; i < n; ++i) out[i] = run_one(jobs[i]);
        return out;
#endif
    }
    for (long i = 0; i < n; ++i) out[i] = run_one(jobs[i]);
    return out;
}

}  // namespace darkwell
