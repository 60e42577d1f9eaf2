#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chang/abelian.hpp"

namespace chang {

enum class Kind {
    Sphere,   // S^k
    Moore,    // P^k(p^r), cells k-1 and k
    ChangEta, // C^k_eta = S^{k-2} u_eta e^k
    ChangR,   // C^k_r = P^{k-1}(2^r) u e^k
    ChangS,   // C^{k,s} = S^{k-2} u_{eta q} C P^{k-1}(2^s)
    ChangRS,  // C^{k,s}_r = P^{k-1}(2^r) u C P^{k-1}(2^s)
};

// One indecomposable wedge summand: a sphere, a Moore space, or one of the
// four elementary Chang families. `top` is the top cell dimension, matching
// the superscript in the ASCII grammar.
class ElementaryComplex {
  public:
    static ElementaryComplex sphere(int k);
    static ElementaryComplex moore(int k, long p, long r);
    static ElementaryComplex chang_eta(int k);
    static ElementaryComplex chang_r(int k, long r);
    static ElementaryComplex chang_s(int k, long s);
    static ElementaryComplex chang_rs(int k, long r, long s);

    Kind kind() const { return kind_; }
    int top() const { return top_; }
    int bottom() const;
    long prime() const { return p_; }    // Moore only
    long r() const { return r_; }        // Moore / ChangR / ChangRS
    long s() const { return s_; }        // ChangS / ChangRS

    // Reduced integral homology, nonzero degrees only, ascending.
    std::vector<std::pair<int, AbelianGroup>> homology() const;
    // Same kind and parameters, every cell shifted up by one.
    ElementaryComplex suspend() const;

    std::string to_string() const;
    static ElementaryComplex parse(const std::string& text);
    static ElementaryComplex parse(const std::string& text, std::size_t& pos);

    friend bool operator==(const ElementaryComplex&, const ElementaryComplex&) = default;
    friend auto operator<=>(const ElementaryComplex&, const ElementaryComplex&) = default;

  private:
    ElementaryComplex(Kind kind, int top, long p, long r, long s);

    Kind kind_;
    int top_;
    long p_ = 0, r_ = 0, s_ = 0;
};

// True when realizability of a degree-7 class a * (nu4-type generator) as a
// suspension is constrained: hosts with a free or odd-torsion nu4 generator
// admit only a = 0; hosts with bottom homology Z/2^r require 2^r | a.
bool suspension_divisibility(const ElementaryComplex& host, long nu4_coefficient);

}  // namespace chang
