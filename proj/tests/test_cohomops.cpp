#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chang/classify.hpp"
#include "chang/cohomops.hpp"

using namespace chang;
using EC = ElementaryComplex;

namespace {

ConePattern as_pattern(long s, long k, long k2) {
    return ConePattern::make(ConeFamily::AS, EC::moore(7, 2, s), k, k2, 0);
}

}  // namespace

TEST_CASE("flags validate the standing hypotheses") {
    OperationFlags f;
    CHECK_NOTHROW(f.validate());
    f.psi_trivial = false;
    CHECK_THROWS_AS(f.validate(), FlagMismatch);
    f.psi_trivial = true;
    f.star = true;
    CHECK_THROWS_AS(f.validate(), FlagMismatch);  // star needs p1
    f.p1 = true;
    CHECK_NOTHROW(f.validate());
}

TEST_CASE("sq2 criterion on the A^s family") {
    CHECK(eval_sq2(as_pattern(2, 0, 1)));
    CHECK_FALSE(eval_sq2(as_pattern(2, 1, 0)));
    CHECK_FALSE(eval_sq2(as_pattern(1, 0, 0)));
    CHECK(eval_sq2(as_pattern(1, 1, 1)));
    CHECK_THROWS_AS(eval_sq2(ConePattern::make(ConeFamily::A, EC::sphere(6), 1, 0, 0)),
                    StructuralError);
}

TEST_CASE("theta criterion across the model families") {
    CHECK(eval_theta(ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 2), 1, 0, 3)));
    CHECK_FALSE(eval_theta(ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 2), 0, 0, 3)));
    CHECK(eval_theta(ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 1, 1), 0, 1, 0)));
    CHECK(eval_theta(ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 1, 1), 1, 0, 0)));
    CHECK_FALSE(eval_theta(ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 1, 1), 0, 0, 2)));
    CHECK_FALSE(eval_theta(ConePattern::make(ConeFamily::AR, EC::moore(6, 2, 2), 0, 0, 2)));
    CHECK(eval_theta(ConePattern::make(ConeFamily::AR, EC::moore(6, 2, 2), 1, 0, 0)));
    CHECK(eval_theta(ConePattern::make(ConeFamily::A, EC::sphere(6), 1, 0, 0)));
    CHECK_FALSE(eval_theta(ConePattern::make(ConeFamily::CBar, EC::chang_r(7, 1), 0, 0, 1)));
    CHECK_THROWS_AS(eval_theta(ConePattern::make(ConeFamily::TNu, EC::sphere(5), 0, 0, 4)),
                    StructuralError);
}

TEST_CASE("psi criterion is a mod-4 test and is silent on odd multiples") {
    CHECK(eval_psi(ConePattern::make(ConeFamily::TNu, EC::sphere(5), 0, 0, 2)) == PsiResult::Iso);
    CHECK(eval_psi(ConePattern::make(ConeFamily::TNu, EC::sphere(5), 0, 0, 4)) ==
          PsiResult::Trivial);
    CHECK(eval_psi(ConePattern::make(ConeFamily::TNu, EC::sphere(5), 0, 0, 0)) ==
          PsiResult::Trivial);
    CHECK(eval_psi(ConePattern::make(ConeFamily::TNu, EC::sphere(5), 0, 0, 1)) ==
          PsiResult::Undefined);
    CHECK(eval_psi(ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 1, 1), 1, 1, 4)) ==
          PsiResult::Trivial);  // t reduces mod 2^{min(r,2)}
    CHECK(eval_psi(ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 1), 0, 0, 6)) ==
          PsiResult::Iso);
    CHECK(eval_psi(ConePattern::make(ConeFamily::CEtaNu, EC::chang_eta(7), 0, 0, 8)) ==
          PsiResult::Trivial);
    CHECK(eval_psi(ConePattern::make(ConeFamily::AR, EC::moore(6, 2, 3), 0, 0, 2)) ==
          PsiResult::Iso);
    CHECK_THROWS_AS(eval_psi(as_pattern(1, 0, 1)), StructuralError);
}

TEST_CASE("p1 criterion on the alpha1 cone families") {
    CHECK(eval_p1(ConePattern::make(ConeFamily::P1Sphere, EC::sphere(5), 0, 0, 1)));
    CHECK(eval_p1(ConePattern::make(ConeFamily::P1Moore, EC::moore(6, 3, 2), 0, 0, 1)));
    CHECK(eval_p1(ConePattern::make(ConeFamily::P1CEta, EC::chang_eta(7), 0, 0, 2)));
    CHECK(eval_p1(ConePattern::make(ConeFamily::P1CHat, EC::chang_s(7, 1), 0, 0, 1)));
    CHECK_FALSE(eval_p1(ConePattern::make(ConeFamily::P1Sphere, EC::sphere(5), 0, 0, 0)));
    CHECK_FALSE(eval_p1(ConePattern::make(ConeFamily::P1Moore, EC::moore(6, 3, 1), 0, 0, 3)));
    CHECK_THROWS_AS(eval_p1(ConePattern::make(ConeFamily::A, EC::sphere(6), 0, 0, 0)),
                    StructuralError);
}

TEST_CASE("additivity transfer") {
    ConePattern f = ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 2), 1, 0, 0);
    ConePattern g = ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 2), 0, 0, 4);
    auto r = additivity_transfer(f, g, ConeOp::Theta);
    REQUIRE(r.has_value());
    CHECK(*r);
    // fails when the operation is nontrivial on the second cone
    ConePattern g2 = ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 2), 1, 0, 0);
    CHECK_FALSE(additivity_transfer(f, g2, ConeOp::Theta).has_value());
    // psi on the check family ignores the 2-torsion coordinates
    ConePattern cf = ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 2, 1), 0, 0, 2);
    ConePattern cg = ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 2, 1), 1, 1, 0);
    auto rp = additivity_transfer(cf, cg, ConeOp::Psi);
    REQUIRE(rp.has_value());
    CHECK(*rp);  // iso since t = 2
    // hosts must agree
    CHECK_FALSE(additivity_transfer(f, cf, ConeOp::Theta).has_value());
    // zero first part: the second part governs
    ConePattern z = ConePattern::make(ConeFamily::CHat, EC::chang_s(7, 2), 0, 0, 0);
    auto rz = additivity_transfer(z, g, ConeOp::Theta);
    REQUIRE(rz.has_value());
    CHECK_FALSE(*rz);
}

TEST_CASE("patterns encode the matching attaching classes") {
    ConePattern p = ConePattern::make(ConeFamily::CCheck, EC::chang_rs(7, 1, 2), 1, 1, 0);
    CHECK(p.attaching_class() ==
          make_class(EC::chang_rs(7, 1, 2), 8,
                     {{Gen::ICheckEta2, 1}, {Gen::ICheckPEtaTildeEta, 1}}));
    ConePattern a1 = ConePattern::make(ConeFamily::P1Sphere, EC::sphere(5), 0, 0, 1);
    CHECK(a1.attaching_class() == make_class(EC::sphere(5), 8, {{Gen::Nu, 16}}));
    // s = 1 merges the eta^2 part into the etatilde coordinate
    CHECK(as_pattern(1, 1, 0).attaching_class() ==
          make_class(EC::moore(7, 2, 1), 8, {{Gen::EtaTilde, 2}}));
}

TEST_CASE("flags recovered from attaching vectors") {
    WedgeSpace w = WedgeSpace::parse("P7(2^2)vS5vP6(3^1)");
    auto flags = flags_from_vector(AttachingVector::parse(w, 8, "[1*etatilde; 0; 0]"));
    CHECK(flags.sq2);
    CHECK_FALSE(flags.theta);
    CHECK_FALSE(flags.p1);

    flags = flags_from_vector(AttachingVector::parse(w, 8, "[1*i_eta2; 1*eta3; 0]"));
    CHECK_FALSE(flags.sq2);
    CHECK(flags.theta);
    CHECK(flags.triple);

    flags = flags_from_vector(AttachingVector::parse(w, 8, "[0; 1*alpha1; 0]"));
    CHECK(flags.p1);
    CHECK_FALSE(flags.star);

    flags = flags_from_vector(AttachingVector::parse(w, 8, "[0; 0; 1*i_alpha1]"));
    CHECK(flags.p1);
    CHECK(flags.star);

    flags = flags_from_vector(AttachingVector::parse(w, 8, "[0; 4*nu; 0]"));
    CHECK(flags.triple);
    CHECK(flags.p1);
    CHECK_FALSE(flags.star);
}

TEST_CASE("round trip: classify outputs reproduce their input flags") {
    ManifoldInvariants inv;
    inv.l = 2;
    inv.d = 0;
    inv.torsion = TorsionDecomposition::parse("2^1, 2^2, 3^1");
    inv.split.k = 1;
    inv.split.s = {1};
    inv.split.r = {2};
    inv.split.rbar = {1};
    inv.split.shat = {2};
    for (int mask = 0; mask < 16; ++mask) {
        OperationFlags f;
        f.sq2 = mask & 1;
        f.theta = (mask & 2) && !f.sq2;
        f.triple = (mask & 4) && !f.sq2 && !f.theta;
        f.p1 = mask & 8;
        inv.flags = f;
        std::vector<WedgeDecomposition> decs;
        try {
            decs = classify_total(inv);
        } catch (const NoCarrier&) {
            continue;
        } catch (const FlagMismatch&) {
            continue;  // the descriptor has no carrier for this flag
        }
        for (const auto& dec : decs) {
            OperationFlags got = dec.cone ? flags_from_vector(dec.cone->second) : OperationFlags{};
            CHECK(got.sq2 == f.sq2);
            if (!f.sq2) CHECK(got.theta == f.theta);
            if (!f.sq2 && !f.theta) CHECK(got.triple == f.triple);
            CHECK(got.p1 == f.p1);
            if (f.p1) CHECK(got.star == f.star);
        }
    }
}
