#pragma once

#include <string>
#include <vector>

#include "chang/wedge.hpp"

namespace chang {

// alpha on one summand licenses eliminating beta on another:
// compose(witness, alpha) == beta, checked when the pack is built.
struct PrecRule {
    ElementaryComplex alpha_host;
    GroupElement alpha;
    ElementaryComplex beta_host;
    GroupElement beta;
    FormalMorph witness;
    int degree;
    std::string rule_id;
};

// Self-equivalence of one summand absorbing a redundant term:
// compose(equivalence, kept + eliminated) == kept.
struct PlusRule {
    ElementaryComplex host;
    GroupElement eliminated;
    GroupElement kept;
    FormalMorph equivalence;
    FormalMorph inverse;
    int degree;
    std::string rule_id;
};

struct RuleBounds {
    int bottom = 5;   // classes live in degree bottom + 3
    long rmax = 3;
    long smax = 3;
    long rmax3 = 3;   // odd-torsion exponents
};

struct RulePack {
    int degree = 8;
    std::vector<PrecRule> prec;
    std::vector<PlusRule> plus;
};

// The complete shipped rule list at the given bounds, each rule carrying a
// witness that has been verified by composition. Transitive consequences of
// the basic relations are included with composed witnesses.
RulePack rule_pack(const RuleBounds& bounds = {});

// The plus-rule self-equivalences for one summand type, if any.
std::vector<PlusRule> plus_rules_for(const ElementaryComplex& host, int degree);

}  // namespace chang
