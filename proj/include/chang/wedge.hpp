#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chang/morphisms.hpp"

namespace chang {

// A finite wedge of simply connected elementary complexes.
class WedgeSpace {
  public:
    explicit WedgeSpace(std::vector<ElementaryComplex> summands);

    const std::vector<ElementaryComplex>& summands() const { return summands_; }
    std::size_t size() const { return summands_.size(); }
    const ElementaryComplex& operator[](std::size_t i) const { return summands_.at(i); }

    // Reduced integral homology by degree.
    std::map<int, AbelianGroup> homology() const;

    // Wedge with summand i removed; empty result is not allowed.
    WedgeSpace without(std::size_t i) const;

    std::string to_string() const;
    static WedgeSpace parse(const std::string& text);

    friend bool operator==(const WedgeSpace&, const WedgeSpace&) = default;

  private:
    std::vector<ElementaryComplex> summands_;
};

// A map S^degree -> wedge as one tabulated class per summand.
class AttachingVector {
  public:
    AttachingVector(const WedgeSpace& wedge, int degree);  // zero vector
    AttachingVector(const WedgeSpace& wedge, int degree, std::vector<GroupElement> entries);

    const WedgeSpace& wedge() const { return wedge_; }
    int degree() const { return degree_; }
    const std::vector<GroupElement>& entries() const { return entries_; }
    const GroupElement& entry(std::size_t i) const { return entries_.at(i); }
    void set_entry(std::size_t i, GroupElement e);
    bool is_zero() const;

    // Flattened coefficients, summand-major.
    std::vector<long> flat() const;

    std::string to_string() const;
    static AttachingVector parse(const WedgeSpace& wedge, int degree, const std::string& text);

    friend bool operator==(const AttachingVector&, const AttachingVector&) = default;

  private:
    WedgeSpace wedge_;
    int degree_;
    std::vector<GroupElement> entries_;
};

// Strict total order used to pick canonical orbit representatives: fewer
// nonzero coordinates first, then coordinate-wise with zero ranked last.
bool vector_less(const AttachingVector& a, const AttachingVector& b);

AttachingVector add(const AttachingVector& a, const AttachingVector& b);

// A self-map of a wedge in matrix form; entry (i, j) maps summand j to
// summand i. Equivalences must induce isomorphisms on integral homology,
// certified against an explicit inverse.
class EquivalenceMatrix {
  public:
    static EquivalenceMatrix identity(const WedgeSpace& w);
    // identity + f placed at (i, j), i != j.
    static EquivalenceMatrix elementary(const WedgeSpace& w, std::size_t i, std::size_t j,
                                        const FormalMorph& f);
    // identity with entry (i, i) replaced by a self-map of summand i.
    static EquivalenceMatrix diagonal(const WedgeSpace& w, std::size_t i, const FormalMorph& f);

    const WedgeSpace& wedge() const { return wedge_; }
    const FormalMorph& entry(std::size_t i, std::size_t j) const;
    EquivalenceMatrix& set_entry(std::size_t i, std::size_t j, FormalMorph f);

    // Matrix product (this . other), entries composed symbolically.
    EquivalenceMatrix after(const EquivalenceMatrix& other) const;

    // Induced integer matrix on H_degree, indexed by summand.
    std::vector<std::vector<long>> homology_matrix(int degree) const;

    std::string to_string() const;

  private:
    explicit EquivalenceMatrix(const WedgeSpace& w);

    WedgeSpace wedge_;
    std::vector<std::vector<FormalMorph>> entries_;
};

// Componentwise matrix action sum_j compose(entry(i,j), v_j).
AttachingVector act(const EquivalenceMatrix& m, const AttachingVector& v);

// True when every entry is a valid homomorphism on homology and
// m . inverse induces the identity on every homology degree.
bool homology_iso_certified(const EquivalenceMatrix& m, const EquivalenceMatrix& inverse);

// Reduced homology of the mapping cone of v (top cell in degree+1).
// Requires the Hurewicz image of v to vanish, which holds whenever the
// attaching degree exceeds every summand's dimension.
std::map<int, AbelianGroup> cone_homology(const AttachingVector& v);

// An invertible move with bookkeeping for reduction traces. `src` is the
// summand the nonidentity entry reads from; the move acts as the identity
// on vectors whose src entry vanishes.
struct Move {
    EquivalenceMatrix forward;
    EquivalenceMatrix inverse;
    std::string rule_id;
    std::size_t src = 0;
    std::size_t dst = 0;
};

// Bounded search: is w reachable from v using the given moves?
// Returns nullopt (indeterminate) when the budget is exhausted.
std::optional<bool> equivalent(const AttachingVector& v, const AttachingVector& w,
                               const std::vector<Move>& moves, std::size_t budget = 100000);

}  // namespace chang
