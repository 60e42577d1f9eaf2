#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chang/reduce.hpp"
#include "chang/wedge.hpp"

namespace chang {

// Exhaustive ground truth on one wedge: the full coefficient space, the
// orbit partition under the shipped moves, and the comparison against the
// rule-driven canonical forms.
struct OrbitReport {
    WedgeSpace wedge;
    int degree = 8;
    std::size_t vector_count = 0;
    std::size_t orbit_count = 0;
    // canonical representative (orbit minimum) with its orbit size
    std::vector<std::pair<AttachingVector, std::size_t>> orbits;
    // vectors whose canonicalize() output differs from their orbit minimum
    std::vector<AttachingVector> mismatches;
    // per-state orbit label (index of the least member), dense order
    std::vector<std::uint32_t> labels;

    std::string to_string(bool list_members = false) const;
};

struct OracleOptions {
    std::size_t state_budget = 1000000;
    std::size_t max_summands = 3;
    bool parallel = false;  // use the OpenMP closure kernel
};

// Dense index <-> vector conversion over the full coefficient space.
class VectorSpaceIndex {
  public:
    VectorSpaceIndex(const WedgeSpace& w, int degree);  // throws on infinite groups

    std::size_t size() const { return size_; }
    AttachingVector decode(std::size_t index) const;
    std::size_t encode(const AttachingVector& v) const;

  private:
    WedgeSpace wedge_;
    int degree_;
    std::vector<long> radices_;
    std::size_t size_;
};

// Every coefficient tuple exactly once (ascending dense index).
std::vector<AttachingVector> enumerate_vectors(const WedgeSpace& w, int degree,
                                               std::size_t budget = 1000000);

// Orbit labels (minimal reachable dense index per state) under the moves.
// The serial routine is the reference implementation; the parallel one uses
// OpenMP label propagation and must produce identical labels.
std::vector<std::uint32_t> orbit_labels_serial(const VectorSpaceIndex& idx,
                                               const std::vector<Move>& moves);
std::vector<std::uint32_t> orbit_labels_parallel(const VectorSpaceIndex& idx,
                                                 const std::vector<Move>& moves);

OrbitReport orbit_partition(const WedgeSpace& w, int degree, const std::vector<Move>& moves,
                            const OracleOptions& opts = {});

// Runs orbit_partition with the standard move set and compares each orbit
// minimum against canonicalize(); disagreements are recorded, not erased.
OrbitReport cross_check(const WedgeSpace& w, int degree, const RulePack& pack,
                        const OracleOptions& opts = {});

}  // namespace chang
