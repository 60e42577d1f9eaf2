#include "chang/cohomops.hpp"

#include "chang/reduce.hpp"

namespace chang {

void OperationFlags::validate() const {
    if (!psi_trivial)
        throw FlagMismatch("the degree-4 Adem operation must act trivially (standing hypothesis)");
    if (star && !p1) throw FlagMismatch("condition_star requires p1_nontrivial");
}

ConePattern ConePattern::make(ConeFamily family, const ElementaryComplex& host, long k, long k2,
                              long t) {
    auto need = [&](bool cond, const char* what) {
        if (!cond) throw StructuralError(std::string("cone pattern mismatch: ") + what);
    };
    switch (family) {
        case ConeFamily::AS:
            need(host.kind() == Kind::Moore && host.prime() == 2 && host.bottom() == 6, "A^s host");
            break;
        case ConeFamily::A:
            need(host.kind() == Kind::Sphere && host.top() == 6, "A host");
            break;
        case ConeFamily::CEtaNu:
        case ConeFamily::P1CEta:
            need(host.kind() == Kind::ChangEta && host.top() == 7, "Ceta host");
            break;
        case ConeFamily::AR:
            need(host.kind() == Kind::Moore && host.prime() == 2 && host.bottom() == 5, "A_r host");
            break;
        case ConeFamily::CBar:
            need(host.kind() == Kind::ChangR && host.top() == 7, "Cbar host");
            break;
        case ConeFamily::CHat:
        case ConeFamily::P1CHat:
            need(host.kind() == Kind::ChangS && host.top() == 7, "Chat host");
            break;
        case ConeFamily::CCheck:
            need(host.kind() == Kind::ChangRS && host.top() == 7, "Ccheck host");
            break;
        case ConeFamily::TNu:
        case ConeFamily::P1Sphere:
            need(host.kind() == Kind::Sphere && host.top() == 5, "S^5 host");
            break;
        case ConeFamily::P1Moore:
            need(host.kind() == Kind::Moore && host.prime() == 3 && host.bottom() == 5,
                 "P^6(3^r) host");
            break;
    }
    if (k < 0 || k > 1 || k2 < 0 || k2 > 1)
        throw StructuralError("cone pattern coefficients k, k2 must be 0 or 1");
    return ConePattern{family, host, k, k2, t};
}

GroupElement ConePattern::attaching_class() const {
    const int d = 8;
    switch (family) {
        case ConeFamily::AS:
            if (host.r() == 1) return make_class(host, d, {{Gen::EtaTilde, k2 + 2 * k}});
            return make_class(host, d, {{Gen::IEta2, k}, {Gen::EtaTilde, k2}});
        case ConeFamily::A:
            return make_class(host, d, {{Gen::Eta2, k}});
        case ConeFamily::CEtaNu:
            return make_class(host, d, {{Gen::IEtaNu, t}});
        case ConeFamily::AR:
            return make_class(host, d, {{Gen::EtaTildeEta, k}, {Gen::INu, t}});
        case ConeFamily::CBar:
            return make_class(host, d, {{Gen::IBarPEtaTildeEta, k}, {Gen::IBarNu, t}});
        case ConeFamily::CHat:
            return make_class(host, d, {{Gen::IHatEta2, k}, {Gen::IHatNu, t}});
        case ConeFamily::CCheck:
            return make_class(host, d,
                              {{Gen::ICheckEta2, k},
                               {Gen::ICheckPEtaTildeEta, k2},
                               {Gen::ICheckNu, t}});
        case ConeFamily::TNu:
            return make_class(host, d, {{Gen::Nu, t}});
        case ConeFamily::P1Sphere:
            return make_class(host, d, {{Gen::Nu, 16 * t}});
        case ConeFamily::P1Moore:
            return make_class(host, d, {{Gen::IAlpha1, t}});
        case ConeFamily::P1CEta:
            return make_class(host, d, {{Gen::IEtaNu, 4 * t}});
        case ConeFamily::P1CHat:
            return make_class(host, d, {{Gen::IHatNu, 4 * t}});
    }
    throw StructuralError("unreachable");
}

bool eval_sq2(const ConePattern& p) {
    if (p.family != ConeFamily::AS)
        throw StructuralError("sq2 criterion applies to the A^s family only");
    return p.k2 == 1;
}

bool eval_theta(const ConePattern& p) {
    switch (p.family) {
        case ConeFamily::AS:
        case ConeFamily::A:
        case ConeFamily::AR:
        case ConeFamily::CBar:
        case ConeFamily::CHat:
            return p.k == 1;
        case ConeFamily::CCheck:
            return p.k == 1 || p.k2 == 1;
        default:
            throw StructuralError("theta criterion does not cover this family");
    }
}

PsiResult eval_psi(const ConePattern& p) {
    switch (p.family) {
        case ConeFamily::TNu:
        case ConeFamily::AR:
        case ConeFamily::CEtaNu:
        case ConeFamily::CBar:
        case ConeFamily::CHat:
        case ConeFamily::CCheck:
            break;
        default:
            throw StructuralError("psi criterion does not cover this family");
    }
    long domain = 0;
    switch (p.family) {
        case ConeFamily::TNu: domain = 24; break;
        case ConeFamily::CEtaNu:
        case ConeFamily::CHat: domain = 12; break;
        case ConeFamily::AR: domain = 1L << min_exp(p.host.r(), 3); break;
        case ConeFamily::CBar:
        case ConeFamily::CCheck: domain = 1L << min_exp(p.host.r(), 2); break;
        default: break;
    }
    long t = reduce_mod(p.t, domain);
    if (t % 4 == 2) return PsiResult::Iso;
    if (t % 4 == 0) return PsiResult::Trivial;
    return PsiResult::Undefined;
}

bool eval_p1(const ConePattern& p) {
    switch (p.family) {
        case ConeFamily::P1Sphere:
        case ConeFamily::P1Moore:
        case ConeFamily::P1CEta:
        case ConeFamily::P1CHat:
            return reduce_mod(p.t, 3) != 0;
        default:
            throw StructuralError("p1 criterion does not cover this family");
    }
}

namespace {

// Mod-p Betti number of a complex in one degree, from integral homology.
int betti_mod_p(const ElementaryComplex& c, int degree, long p) {
    int rank = 0;
    for (const auto& [d, g] : c.homology()) {
        if (d != degree && d != degree - 1) continue;
        for (const auto& s : g.summands()) {
            if (d == degree && s.order == 0)
                ++rank;  // free part
            else if (s.order != 0 && s.order % p == 0)
                ++rank;  // torsion contributes in degrees d and d+1
        }
    }
    return rank;
}

int cone_betti(const ElementaryComplex& host, int degree, long p) {
    // host u e^9: the 9-cell contributes H^9 and cannot cancel (no 8-cells)
    if (degree == 9) return 1 + betti_mod_p(host, 9, p);
    return betti_mod_p(host, degree, p);
}

std::optional<bool> eval_op(const ConePattern& p, ConeOp op) {
    try {
        switch (op) {
            case ConeOp::Sq2: return eval_sq2(p);
            case ConeOp::Theta: return eval_theta(p);
            case ConeOp::Psi: {
                PsiResult r = eval_psi(p);
                if (r == PsiResult::Undefined) return std::nullopt;
                return r == PsiResult::Iso;
            }
            case ConeOp::P1: return eval_p1(p);
        }
    } catch (const StructuralError&) {
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::optional<bool> additivity_transfer(const ConePattern& f, const ConePattern& g, ConeOp op) {
    if (f.host != g.host) return std::nullopt;
    int k = 0, t = 0;
    long p = 2;
    switch (op) {
        case ConeOp::Sq2: k = 7; t = 2; break;
        case ConeOp::Theta: k = 6; t = 3; break;
        case ConeOp::Psi: k = 5; t = 4; break;
        case ConeOp::P1: k = 5; t = 4; p = 3; break;
    }
    // isomorphism hypotheses: restriction in degree k, projection in k + t
    if (cone_betti(f.host, k, p) != betti_mod_p(f.host, k, p)) return std::nullopt;
    if (cone_betti(f.host, k + t, p) != 1) return std::nullopt;
    std::optional<bool> on_g = eval_op(g, op);
    if (!on_g || *on_g) return std::nullopt;  // operation must vanish on C_g
    return eval_op(f, op);
}

OperationFlags flags_from_vector(const AttachingVector& v) {
    VectorAnalysis a = analyze_vector(v);
    OperationFlags flags;
    flags.sq2 = a.n1;
    flags.theta = a.n2;
    flags.triple = a.n3;
    flags.p1 = a.odd_free || a.odd_moore;
    flags.star = flags.p1 && !a.odd_free && a.odd_moore;
    return flags;
}

}  // namespace chang
