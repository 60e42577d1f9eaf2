#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chang/abelian.hpp"
#include "chang/complexes.hpp"

namespace chang {

// Symbolic generator names for the shipped homotopy-group tables. Each tag
// is meaningful only for the (host kind, degree) slot it is tabulated in.
enum class Gen {
    Id,
    Eta,
    Eta2,
    Nu,
    Nu4,
    SNuPrime,
    NuPrime,
    I,
    IEta,
    IEta2,
    EtaTilde,
    INu,
    EtaTildeEta,
    IAlpha1,
    INu4,
    ISNuPrime,
    IEtaBot,
    IEtaNu,
    IEtaNu4,
    IEtaSNuPrime,
    IBar,
    IBarNu,
    IBarPEtaTildeEta,
    IBarNu4,
    IBarSNuPrime,
    IHat,
    IHatEta2,
    IHatNu,
    IHatNu4,
    IHatSNuPrime,
    ICheck,
    ICheckEta2,
    ICheckNu,
    ICheckPEtaTildeEta,
    ICheckNu4,
    ICheckSNuPrime,
};

// Display name, e.g. "i nu4" or "etatilde eta" (used by the table printer).
std::string gen_display(Gen g);
// Literal token, e.g. "i_nu4" (used by the vector grammar).
std::string gen_token(Gen g);

struct GenSymbol {
    Gen tag;
    ElementaryComplex host;
    int degree;

    friend bool operator==(const GenSymbol&, const GenSymbol&) = default;
};

// pi_degree(host) as an ordered list of cyclic summands with named
// generators, in the order the defining lemma lists them.
struct HomotopyGroupTable {
    ElementaryComplex host;
    int degree;
    AbelianGroup group;
    std::vector<Gen> generators;

    std::optional<std::size_t> slot(Gen g) const;
    std::string to_string() const;  // e.g. "Z/4 <i nu4> + Z/2 <etatilde eta>"
};

// The shipped table. Throws UnsupportedTable outside the tabulated range.
HomotopyGroupTable pi(const ElementaryComplex& host, int degree);

// True when pi() would succeed.
bool pi_supported(const ElementaryComplex& host, int degree);

// Builds an element of pi(host, degree) from (generator, coefficient) pairs.
GroupElement make_class(const ElementaryComplex& host, int degree,
                        const std::vector<std::pair<Gen, long>>& terms);

}  // namespace chang
