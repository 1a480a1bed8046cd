// bench.cpp - times the serial reference against the OpenMP batch kernel on a
// sweep-sized settle workload and checks that both return identical bits.
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <vector>

#include "darkwell/batch.hpp"

using namespace darkwell;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<SettleJob> make_workload(long n1, long n2) {
    std::vector<SettleJob> jobs;
    jobs.reserve(n1 * n2);
    for (long i = 0; i < n1; ++i) {
        for (long j = 0; j < n2; ++j) {
            SystemParams p;
            p.omega1_rabi = 1.0;
            p.omega2_rabi = -1.0 + 2.0 * static_cast<double>(i) / (n1 - 1);
            if (p.omega2_rabi == 0.0) p.omega2_rabi = 1e-3;
            p.gamma = 0.2 + 1.0 * static_cast<double>(j) / (n2 - 1);
            SettleJob job;
            job.params = p;
            job.init = left_state();
            job.eps = 1e-10;
            job.t_max = 400.0 / p.gamma + 50.0 / p.rabi_norm();
            jobs.push_back(job);
        }
    }
    return jobs;
}

}  // namespace

int main(int argc, char** argv) {
    long n1 = 25, n2 = 8;
    if (argc == 3) {
        n1 = std::atol(argv[1]);
        n2 = std::atol(argv[2]);
    }
    const std::vector<SettleJob> jobs = make_workload(n1, n2);
    std::cout << "workload: " << jobs.size() << " settle runs\n";

    const double t0 = now_seconds();
    const auto serial = run_settle_batch(jobs, ExecPolicy::serial);
    const double t1 = now_seconds();
    const auto parallel = run_settle_batch(jobs, ExecPolicy::parallel);
    const double t2 = now_seconds();

    bool identical = true;
    for (size_t k = 0; k < jobs.size(); ++k) {
        if (!serial[k].ok || !parallel[k].ok ||
            std::memcmp(&serial[k].p_left, &parallel[k].p_left, sizeof(double)) != 0 ||
            std::memcmp(&serial[k].p_right, &parallel[k].p_right, sizeof(double)) != 0 ||
            std::memcmp(&serial[k].t_settled, &parallel[k].t_settled, sizeof(double)) != 0) {
            identical = false;
            std::cout << "MISMATCH at job " << k << '\n';
        }
    }

    const double ts = t1 - t0;
    const double tp = t2 - t1;
    std::cout << "serial reference: " << ts << " s\n";
    std::cout << "openmp kernel (" << batch_thread_count() << " threads): " << tp
              << " s\n";
    std::cout << "speedup: " << (tp > 0.0 ? ts / tp : 0.0) << "x\n";
    std::cout << "results bitwise identical: " << (identical ? "yes" : "NO") << '\n';
    return identical ? 0 : 1;
}
