// batch.hpp - embarrassingly parallel execution of independent settle runs.
// The OpenMP kernel and the serial reference walk the same per-job code, so
// their results must agree bit for bit; tests and the bench tool rely on it.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "darkwell/dynamics.hpp"

namespace darkwell {

struct SettleJob {
    SystemParams params;
    Amplitudes init;
    double eps = 1e-8;
    double t_max = 0.0;  // 0 selects default_t_max
    double dt = 0.0;     // 0 selects default_dt
};

struct SettleResult {
    bool ok = false;
    double p_left = 0.0;
    double p_right = 0.0;
    double t_settled = 0.0;
    Errc code = Errc::bad_argument;  // valid when !ok
    std::string message;             // valid when !ok
};

enum class ExecPolicy { serial, parallel };

// Number of threads the parallel policy will use: DARKWELL_THREADS when set
// to a positive integer, otherwise the OpenMP default (1 without OpenMP).
int batch_thread_count();

// Results are indexed by job, independent of execution order.
std::vector<SettleResult> run_settle_batch(std::span<const SettleJob> jobs,
                                           ExecPolicy policy);

}  // namespace darkwell
