#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chang/abelian.hpp"
#include "chang/cohomops.hpp"

namespace chang {

// The wedge-splitting parameters of the codimension-one skeleton: how the
// 2-torsion of H_2 and H_3 distributes over Moore and Chang summands.
struct SplittingData {
    long k = 0;
    std::vector<long> s;       // t0: P^7(2^{s_j}) summands
    std::vector<long> r;       // t1: P^6(2^{r_j})
    std::vector<long> rbar;    // t2: C7[rbar_j]
    std::vector<long> shat;    // t3: C7{shat_j}
    std::vector<long> rcheck;  // t4: C7[rcheck_j]{scheck_j}
    std::vector<long> scheck;  // t4

    long t0() const { return static_cast<long>(s.size()); }
    long t1() const { return static_cast<long>(r.size()); }
    long t2() const { return static_cast<long>(rbar.size()); }
    long t3() const { return static_cast<long>(shat.size()); }
    long t4() const { return static_cast<long>(rcheck.size()); }
};

// Which candidate the classification should be pinned to, when known.
struct Selection {
    std::optional<std::string> member;  // x, d, y, a, abar, yhat, acheck, ycheck, cS, c
    long j0 = 1;                        // 1-based index into the member's exponent list
    std::optional<long> j0p;            // 1-based index into the 3-torsion exponent list
};

struct ManifoldInvariants {
    long l = 0;
    long d = 0;
    TorsionDecomposition torsion;
    OperationFlags flags;
    bool smooth = false;
    SplittingData split;
    std::optional<Selection> selection;

    long m2() const { return torsion.count(2); }
    long m3() const { return torsion.count(3); }
    std::vector<long> rprime() const { return torsion.exponents(3); }

    // Throws InvalidSplitting naming the violated constraint.
    void validate() const;
};

// Line-oriented key = value descriptor format; see docs/formats.md.
ManifoldInvariants parse_descriptor(const std::string& text);
std::string print_descriptor(const ManifoldInvariants& inv);

// Admissible coefficients of one pi-table slot: multiples of `step` in
// Z/modulus. step == 0 encodes the forced-zero domain.
struct CoefficientDomain {
    long modulus = 0;
    long step = 1;
};

// The shape of the suspended attaching map: the double-suspension wedge and
// the admissible coefficient domain of every generator slot.
struct GeneralAttachingForm {
    std::optional<WedgeSpace> wedge;  // absent when the skeleton is contractible
    int degree = 8;
    std::vector<std::vector<CoefficientDomain>> domains;

    bool admits(const AttachingVector& v) const;
    // Deterministic admissible sample; index 0 is the zero vector.
    AttachingVector sample(std::uint64_t index) const;
};

GeneralAttachingForm general_attaching_form(const ManifoldInvariants& inv);

}  // namespace chang
