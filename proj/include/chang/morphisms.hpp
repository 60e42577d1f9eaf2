#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "chang/pi_tables.hpp"

namespace chang {

// Canonical maps between elementary complexes. Inclusion-type tags start
// with an "i", pinch-type tags with a "q", following the cofibre sequences
// the complexes are built from.
enum class Morph {
    Id,
    Eta,           // S^{a+1} -> S^a
    Eta2,          // S^{a+2} -> S^a
    MooreInc,      // S^n -> P^{n+1}(p^r)
    MoorePinch,    // P^{n+1}(p^r) -> S^{n+1}
    EtaTildeMap,   // S^{n+2} -> P^{n+1}(2^r), the eta lift as a map
    EtaCoext,      // P^{n+2}(2^s) -> S^n, extension of eta over the Moore space
    BChi,          // P^{n+1}(p^r) -> P^{n+1}(p^s)
    CEtaInc,       // S^n -> Ceta^{n+2}
    CEtaPinch,     // Ceta^{n+2} -> S^{n+2}
    ZetaBar,       // Ceta^{n+2} -> S^n, zetabar . i_eta = 2
    ZetaTilde,     // S^{n+2} -> Ceta^{n+2}, q_eta . zetatilde = 2
    CREtaInc,      // Ceta^{n+2} -> C^{n+2}[r]
    CRIncP,        // P^{n+1}(2^r) -> C^{n+2}[r]
    CRPinchTop,    // C^{n+2}[r] -> S^{n+2}
    CRPinchMid,    // C^{n+2}[r] -> S^{n+1}
    CRToMoore,     // C^{n+2}[r] -> P^{n+1}(2^{r'}), r' > r
    CSIncTop,      // S^{n+1} -> C^{n+2}{s}
    CSIncBot,      // S^n -> C^{n+2}{s}
    CSPinchTop,    // C^{n+2}{s} -> S^{n+2}
    CSPinchEta,    // C^{n+2}{s} -> Ceta^{n+2}
    CSPinchMoore,  // C^{n+2}{s} -> P^{n+2}(2^s)
    CSToRS,        // C^{n+2}{s} -> C^{n+2}[r]{s}
    CSXi,          // P^{n+2}(2^{s'}) -> C^{n+2}{s}, s < s'
    CSMu,          // C^{n+2}{s} -> S^n, kills the bottom cell, top cell to eta
    CSMuDown,      // C^{n+2}{s'} -> C^{n+2}{s}, s < s', acts by -2
    CSLambdaDown,  // C^{n+2}{s'} -> C^{n+2}{s}, s < s', keeps the (n+1)-cell
    CSThetaUp,     // C^{n+2}{s} -> C^{n+2}{s'}, s < s'
    RSIncTop,      // S^{n+1} -> C^{n+2}[r]{s}
    RSIncBot,      // S^n -> C^{n+2}[r]{s}
    RSIncP,        // P^{n+1}(2^r) -> C^{n+2}[r]{s}
    RSPinchTop,    // C^{n+2}[r]{s} -> S^{n+2}
    RSPinchMid,    // C^{n+2}[r]{s} -> S^{n+1}
    RSPinchMoore,  // C^{n+2}[r]{s} -> P^{n+2}(2^s)
    RSPinchCR,     // C^{n+2}[r]{s} -> C^{n+2}[r]
};

std::string morph_name(Morph m);

// A canonical map instantiated between two concrete complexes. The
// constructor validates the (source kind, target kind) signature.
class MorphSymbol {
  public:
    MorphSymbol(Morph tag, ElementaryComplex source, ElementaryComplex target);

    Morph tag() const { return tag_; }
    const ElementaryComplex& source() const { return source_; }
    const ElementaryComplex& target() const { return target_; }

    std::string to_string() const;

    // Induced multiplier on H_degree w.r.t. the canonical generators; 0 when
    // either side is trivial in that degree.
    long homology_multiplier(int degree) const;

    friend bool operator==(const MorphSymbol&, const MorphSymbol&) = default;
    friend auto operator<=>(const MorphSymbol&, const MorphSymbol&) = default;

  private:
    Morph tag_;
    ElementaryComplex source_;
    ElementaryComplex target_;
};

// Composition chain f1 . f2 . ... . fk (fk applied first). Never empty.
class MorphChain {
  public:
    explicit MorphChain(std::vector<MorphSymbol> symbols);
    MorphChain(std::initializer_list<MorphSymbol> symbols)
        : MorphChain(std::vector<MorphSymbol>(symbols)) {}

    const std::vector<MorphSymbol>& symbols() const { return symbols_; }
    const ElementaryComplex& source() const { return symbols_.back().source(); }
    const ElementaryComplex& target() const { return symbols_.front().target(); }

    MorphChain then_outer(const MorphSymbol& f) const;  // f . this
    static MorphChain concat(const MorphChain& outer, const MorphChain& inner);

    long homology_multiplier(int degree) const;
    std::string to_string() const;

    friend bool operator==(const MorphChain&, const MorphChain&) = default;
    friend auto operator<=>(const MorphChain&, const MorphChain&) = default;

  private:
    std::vector<MorphSymbol> symbols_;
};

// Integer combination of composition chains with one common signature.
class FormalMorph {
  public:
    FormalMorph(ElementaryComplex source, ElementaryComplex target);  // zero map
    static FormalMorph single(const MorphSymbol& f, long coeff = 1);
    static FormalMorph of_chain(const MorphChain& c, long coeff = 1);
    static FormalMorph identity(const ElementaryComplex& x, long coeff = 1);

    const ElementaryComplex& source() const { return source_; }
    const ElementaryComplex& target() const { return target_; }
    const std::vector<std::pair<long, MorphChain>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FormalMorph& add_term(long coeff, const MorphChain& chain);
    FormalMorph plus(const FormalMorph& other) const;
    FormalMorph scaled(long c) const;
    // (this) . (other), chains concatenated symbolically.
    FormalMorph after(const FormalMorph& other) const;

    // Merges equal chains and drops zero coefficients; sorts terms.
    FormalMorph normalized() const;

    long homology_multiplier(int degree) const;
    std::string to_string() const;

    friend bool operator==(const FormalMorph&, const FormalMorph&) = default;

  private:
    ElementaryComplex source_;
    ElementaryComplex target_;
    std::vector<std::pair<long, MorphChain>> terms_;
};

// Postcomposition action on tabulated homotopy classes. Throws
// UnknownComposite when the (map, class) pair is outside the shipped table,
// and UnsupportedTable when the result group is not tabulated.
GroupElement compose(const MorphSymbol& f, int degree, const GroupElement& x);
GroupElement compose(const MorphChain& f, int degree, const GroupElement& x);
GroupElement compose(const FormalMorph& f, int degree, const GroupElement& x);

// True when compose() succeeds on every element of pi(f.source(), degree).
bool compose_total(const FormalMorph& f, int degree);

// Morphism-level composites for the displayed identities that do not pass
// through a tabulated homotopy class (for example q_eta . zetatilde = 2).
std::optional<FormalMorph> compose_morph(const MorphSymbol& f, const MorphSymbol& g);

// All basic tabulated maps from X to Y (identity included when X == Y).
std::vector<MorphSymbol> morphs_between(const ElementaryComplex& x, const ElementaryComplex& y);

// Suspension homomorphism pi(host, degree) -> pi(host.suspend(), degree+1).
GroupElement suspend_class(const ElementaryComplex& host, int degree, const GroupElement& x);

}  // namespace chang
