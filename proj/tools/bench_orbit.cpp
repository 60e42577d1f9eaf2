// Compares the serial and OpenMP orbit-closure kernels on a few wedges.
#include <chrono>
#include <iostream>

#include "chang/oracle.hpp"

using namespace chang;

namespace {

double time_ms(const VectorSpaceIndex& idx, const std::vector<Move>& moves, bool parallel,
               std::size_t& orbits) {
    auto t0 = std::chrono::steady_clock::now();
    auto labels = parallel ? orbit_labels_parallel(idx, moves) : orbit_labels_serial(idx, moves);
    auto t1 = std::chrono::steady_clock::now();
    std::size_t count = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == i) ++count;
    orbits = count;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wedges = {
        "S5vS6vS7",
        "Ceta7vS5vS7",
        "C7{s=1}vS5vS6",
        "P6(2^2)vS5vS7",
        "C7{s=2}vCeta7vS5",
    };
    if (argc > 1) {
        wedges.clear();
        for (int i = 1; i < argc; ++i) wedges.push_back(argv[i]);
    }
    RulePack pack = rule_pack();
    std::cout << "wedge                      states   orbits   serial(ms)  parallel(ms)  speedup\n";
    for (const std::string& lit : wedges) {
        WedgeSpace w = WedgeSpace::parse(lit);
        VectorSpaceIndex idx(w, 8);
        std::vector<Move> moves = standard_moves(w, 8, pack);
        std::size_t orbits_s = 0, orbits_p = 0;
        double ts = time_ms(idx, moves, false, orbits_s);
        double tp = time_ms(idx, moves, true, orbits_p);
        if (orbits_s != orbits_p) {
            std::cerr << "kernel disagreement on " << lit << "\n";
            return 1;
        }
        std::printf("%-26s %8zu %8zu %11.1f %13.1f %8.2fx\n", lit.c_str(), idx.size(), orbits_s,
                    ts, tp, ts / tp);
    }
    return 0;
}
