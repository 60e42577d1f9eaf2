#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chang/cohomops.hpp"
#include "chang/rules.hpp"
#include "chang/wedge.hpp"

namespace chang {

struct TraceStep {
    std::string rule_id;
    std::string detail;
};

struct Reduction {
    AttachingVector vector;
    std::vector<TraceStep> trace;
};

struct CanonOptions {
    std::size_t budget = 10000;  // applied rule steps
    bool polish = true;          // run the generic descent after the sweeps
};

// Value-level classification of one attaching vector against the admissible
// coefficient domains. The tiers follow the operation each class is
// detected by: tier 1 (Sq2), tier 2 (Theta), tier 3 (triple operation).
struct VectorAnalysis {
    bool n1 = false;
    bool n2 = false;
    bool n3 = false;
    bool odd_free = false;    // 3-primary part on a sphere / Chang carrier
    bool odd_moore = false;   // 3-primary part on an odd Moore summand
    bool inadmissible = false;
};

VectorAnalysis analyze_vector(const AttachingVector& v);

// Throws FlagMismatch when the coefficients contradict the flags.
void check_flags(const AttachingVector& v, const OperationFlags& flags);

// The invertible moves available on a wedge: identity +- one tabulated
// off-diagonal map (basic maps and rule-pack witnesses), sign flips, and
// the plus-rule self-equivalences.
std::vector<Move> standard_moves(const WedgeSpace& w, int degree, const RulePack& pack);

// Deterministic reduction to the canonical representative. With flags, the
// coefficients are first checked for consistency.
Reduction canonicalize(const AttachingVector& v, const std::optional<OperationFlags>& flags,
                       const RulePack& pack, const CanonOptions& opts = {});
Reduction canonicalize(const AttachingVector& v, const RulePack& pack,
                       const CanonOptions& opts = {});

// Projection to the p-primary part (p in {2, 3}), coefficients re-embedded
// into the same tables.
AttachingVector localize(const AttachingVector& v, long p);

// Sum of a purely 2-primary and a purely 3-primary vector.
AttachingVector merge_locals(const AttachingVector& v2, const AttachingVector& v3);

}  // namespace chang
