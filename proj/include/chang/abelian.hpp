#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chang/errors.hpp"

namespace chang {

// One cyclic summand. order == 0 encodes the infinite cyclic group Z,
// order n >= 1 encodes Z/n. Order 1 is the trivial group and is dropped
// when a group is normalized.
struct CyclicSummand {
    long order = 0;

    friend bool operator==(const CyclicSummand&, const CyclicSummand&) = default;
};

// A finitely generated abelian group presented as an ordered direct sum of
// cyclic summands. The order of summands is significant for coefficient
// layout; isomorphism testing compares prime-power invariant factors.
class AbelianGroup {
  public:
    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<CyclicSummand> summands);

    static AbelianGroup zero() { return AbelianGroup{}; }
    static AbelianGroup free(int rank);
    static AbelianGroup cyclic(long order);

    const std::vector<CyclicSummand>& summands() const { return summands_; }
    std::size_t size() const { return summands_.size(); }
    bool is_trivial() const { return summands_.empty(); }
    bool is_finite() const;
    // Number of elements; throws StructuralError when the group is infinite.
    long element_count() const;

    // Removes order-1 summands.
    AbelianGroup normalized() const;

    // Direct sum, left-to-right.
    AbelianGroup direct_sum(const AbelianGroup& other) const;

    // The multiset of prime-power invariant factors plus the free rank.
    // Key 0 counts Z summands; key p^r counts Z/p^r factors.
    std::map<long, int> invariant_factors() const;

    std::string to_string() const;
    static AbelianGroup parse(const std::string& text);

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  private:
    std::vector<CyclicSummand> summands_;
};

// true iff the two groups are abstractly isomorphic.
bool iso_check(const AbelianGroup& g, const AbelianGroup& h);

// An element of an AbelianGroup, one coefficient per summand, each reduced
// to the canonical representative 0..order-1 (unreduced for order 0).
class GroupElement {
  public:
    GroupElement() = default;
    GroupElement(const AbelianGroup& g, std::vector<long> coefficients);

    static GroupElement zero(const AbelianGroup& g);

    const std::vector<long>& coefficients() const { return coeffs_; }
    long coefficient(std::size_t i) const { return coeffs_.at(i); }
    bool is_zero() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;

  private:
    std::vector<long> coeffs_;
};

long reduce_mod(long value, long order);

GroupElement add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const AbelianGroup& g, const GroupElement& a);
GroupElement scale(const AbelianGroup& g, long c, const GroupElement& a);

// min(r, s), the exponent arithmetic the group tables are stated with.
long min_exp(long r, long s);
// 1 for r == 1, otherwise 0.
long delta(long r);

// Splits T into its p-primary exponent lists: prime -> sorted exponents r,
// each standing for one Z/p^r factor.
class TorsionDecomposition {
  public:
    TorsionDecomposition() = default;
    explicit TorsionDecomposition(std::map<long, std::vector<long>> primaries);

    static TorsionDecomposition of(const AbelianGroup& g);

    const std::map<long, std::vector<long>>& primaries() const { return primaries_; }
    std::vector<long> exponents(long p) const;
    // Number of Z/p^r factors for the prime p.
    int count(long p) const { return static_cast<int>(exponents(p).size()); }
    AbelianGroup group() const;
    // The part supported on primes >= p_min.
    TorsionDecomposition at_least(long p_min) const;
    // The single-prime part.
    TorsionDecomposition primary(long p) const;
    bool empty() const;

    std::string to_string() const;
    static TorsionDecomposition parse(const std::string& text);

    friend bool operator==(const TorsionDecomposition&, const TorsionDecomposition&) = default;

  private:
    std::map<long, std::vector<long>> primaries_;
};

}  // namespace chang
