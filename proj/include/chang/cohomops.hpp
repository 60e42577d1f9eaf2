#pragma once

#include <optional>
#include <string>

#include "chang/pi_tables.hpp"
#include "chang/wedge.hpp"

namespace chang {

// Whether the named operations act nontrivially on the cohomology of M.
// psi_trivial is a standing hypothesis and must be true.
struct OperationFlags {
    bool sq2 = false;     // Sq^2 on H^4(M; Z/2)
    bool theta = false;   // secondary operation on H^3(M; Z/2)
    bool triple = false;  // tertiary operation on H^2(M; Z/2)
    bool p1 = false;      // P^1 on H^3(SM; Z/3)
    bool star = false;    // the Bockstein refinement of p1
    bool psi_trivial = true;

    void validate() const;
};

enum class ConeFamily {
    AS,        // P^7(2^s) u (k i eta^2 + k2 etatilde) e^9
    A,         // S^6 u (k eta^2) e^9
    CEtaNu,    // Ceta7 u (t i_eta nu) e^9
    AR,        // P^6(2^r) u (k etatilde eta + t i nu) e^9
    CBar,      // C7[r] u (k ibarP etatilde eta + t ibar nu) e^9
    CHat,      // C7{s} u (k ihat eta2 + t ihat nu) e^9
    CCheck,    // C7[r]{s} u (k icheck eta2 + k2 icheckP etatilde eta + t icheck nu) e^9
    TNu,       // S^5 u (t nu) e^9
    P1Sphere,  // S^5 u (c alpha1) e^9
    P1Moore,   // P^6(3^r) u (c i alpha1) e^9
    P1CEta,    // Ceta7 u (c i_eta alpha1) e^9
    P1CHat,    // C7{s} u (c ihat alpha1) e^9
};

// One of the model mapping cones the operation criteria are stated on.
struct ConePattern {
    ConeFamily family;
    ElementaryComplex host;
    long k = 0;   // eta^2-type coefficient (0/1)
    long k2 = 0;  // etatilde-type coefficient (0/1)
    long t = 0;   // nu-type or alpha1-type coefficient

    static ConePattern make(ConeFamily family, const ElementaryComplex& host, long k, long k2,
                            long t);
    // The attaching class the pattern encodes, in pi(host, 8).
    GroupElement attaching_class() const;
};

bool eval_sq2(const ConePattern& p);
bool eval_theta(const ConePattern& p);
enum class PsiResult { Iso, Trivial, Undefined };
PsiResult eval_psi(const ConePattern& p);
bool eval_p1(const ConePattern& p);

// Operation transfer across a sum of attaching maps: when the operation is
// trivial on the cone of g and the cohomology isomorphism conditions hold,
// the operation on C_{f+g} agrees with the operation on C_f.
// Returns nullopt when the hypotheses fail.
enum class ConeOp { Sq2, Theta, Psi, P1 };
std::optional<bool> additivity_transfer(const ConePattern& f, const ConePattern& g, ConeOp op);

// Flags detected by the coefficient pattern of an attaching vector, using
// the tier classification of its classes.
OperationFlags flags_from_vector(const AttachingVector& v);

}  // namespace chang
