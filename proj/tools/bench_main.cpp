// Compares the OpenMP permutation-sweep and search kernels against their
// serial reference implementations and reports speedups.  The serial and
// parallel paths must produce identical results; this harness asserts that
// while timing them.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "cfas/core.hpp"
#include "cfas/magic.hpp"
#include "cfas/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

// splitmix64; deterministic inputs across runs.
struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

cfas::Tournament random_tournament(int n, Rng& rng) {
    cfas::TournamentBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            (rng.next() & 1) ? b.set_arc(u, v) : b.set_arc(v, u);
    return b.finalize();
}

// {a} => M => {b} plus the back arc b -> a; the 10-vertex sweep workload.
cfas::Tournament pinch_tournament() {
    const cfas::Tournament m = cfas::magic::magic_tournament();
    cfas::TournamentBuilder b(10);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v)
            m.arc(u, v) ? b.set_arc(1 + u, 1 + v) : b.set_arc(1 + v, 1 + u);
    for (int v = 1; v <= 8; ++v) {
        b.set_arc(0, v);
        b.set_arc(v, 9);
    }
    b.set_arc(9, 0);
    return b.finalize();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-32s serial %9.1f ms   omp %9.1f ms   speedup %.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
    std::printf("threads: %d\n", omp_get_max_threads());

    {
        const cfas::Tournament t = cfas::magic::magic_tournament();
        cfas::magic::Lemma22Report serial_report, parallel_report;
        // The serial enumerator returns the orderings; re-derive the count.
        double s = time_ms([&] {
            auto all = cfas::magic::enumerate_forest_orderings_serial(t, 1u << 20);
            serial_report.forest_count = all.size();
        });
        double p = time_ms([&] {
            parallel_report = cfas::magic::verify_lemma_2_2(t);
        });
        if (serial_report.forest_count != parallel_report.forest_count) {
            std::fprintf(stderr, "forest counts diverge\n");
            return 1;
        }
        report("magic 8! sweep", s, p);
    }

    {
        const cfas::Tournament t = pinch_tournament();
        std::vector<cfas::Ordering> serial_found, parallel_found;
        double s = time_ms([&] {
            serial_found =
                cfas::magic::enumerate_forest_orderings_serial(t, 1u << 20);
        });
        double p = time_ms([&] {
            parallel_found = cfas::magic::enumerate_forest_orderings(t, 1u << 20);
        });
        if (!(serial_found == parallel_found)) {
            std::fprintf(stderr, "enumerations diverge\n");
            return 1;
        }
        report("10! forest enumeration", s, p);
    }

    {
        Rng rng{42};
        const cfas::Tournament t = random_tournament(10, rng);
        const auto pred = cfas::solver::ClassPredicate::forest();
        cfas::solver::SearchOutcome serial_out, parallel_out;
        double s = time_ms([&] {
            serial_out = cfas::solver::exhaustive_oracle_serial(t, pred);
        });
        double p = time_ms([&] {
            parallel_out = cfas::solver::exhaustive_oracle(t, pred);
        });
        if (serial_out.decision != parallel_out.decision ||
            !(serial_out.stats == parallel_out.stats)) {
            std::fprintf(stderr, "oracle outcomes diverge\n");
            return 1;
        }
        report("10-vertex exhaustive oracle", s, p);
    }

    {
        Rng rng{7};
        std::vector<cfas::Tournament> ts;
        for (int i = 0; i < 128; ++i) ts.push_back(random_tournament(12, rng));
        const auto pred = cfas::solver::ClassPredicate::forest();
        std::uint64_t serial_nodes = 0, parallel_nodes = 0;
        double s = time_ms([&] {
            for (const auto& t : ts)
                serial_nodes +=
                    cfas::solver::find_class_ordering_serial(t, pred).stats.nodes;
        });
        double p = time_ms([&] {
            for (const auto& t : ts)
                parallel_nodes +=
                    cfas::solver::find_class_ordering(t, pred).stats.nodes;
        });
        if (serial_nodes != parallel_nodes) {
            std::fprintf(stderr, "search node counts diverge\n");
            return 1;
        }
        report("128 pruned searches (n=12)", s, p);
    }

    return 0;
}
