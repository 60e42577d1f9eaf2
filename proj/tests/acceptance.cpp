// Acceptance suite: one pass/fail line per criterion.
//
// 1. table fidelity            snapshot rows for every tabulated lemma entry
// 2. composition identities    the displayed equations verify by lookup
// 3. rule-pack soundness       witnesses compose; canonicalize is idempotent
// 4. oracle equivalence        orbit partition agrees with canonical forms
// 5. theorem snapshot          candidate lists match an independent transcription
// 6. locality coherence        total = (2-local, 3-local) glued
// 7. smooth mode               removes exactly the three listed cases

#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "chang/classify.hpp"
#include "chang/oracle.hpp"

using namespace chang;
using EC = ElementaryComplex;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

const RulePack& pack() {
    static RulePack p = rule_pack();
    return p;
}

long pow2(long e) { return 1L << e; }

// ---------------------------------------------------------------------------
// criterion 1: table fidelity
// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    struct Row {
        std::string literal;
        int degree;
        std::string expected;
    };
    std::vector<Row> rows;
    auto add = [&](const std::string& lit, int degree, const std::string& expected) {
        rows.push_back({lit, degree, expected});
    };

    // spheres
    add("S5", 5, "Z <id>");
    add("S6", 6, "Z <id>");
    add("S5", 6, "Z/2 <eta>");
    add("S6", 7, "Z/2 <eta>");
    add("S7", 8, "Z/2 <eta>");
    add("S5", 7, "Z/2 <eta2>");
    add("S6", 8, "Z/2 <eta2>");
    add("S5", 8, "Z/24 <nu>");
    add("S6", 9, "Z/24 <nu>");
    add("S4", 7, "Z <nu4> + Z/12 <snuprime>");
    add("S3", 6, "Z/12 <nuprime>");

    auto zmod = [](long n) { return "Z/" + std::to_string(n); };
    auto pow3 = [](long e) {
        long v = 1;
        for (long i = 0; i < e; ++i) v *= 3;
        return v;
    };
    for (long r = 1; r <= 3; ++r) {
        std::string p6 = "P6(2^" + std::to_string(r) + ")";
        std::string p7 = "P7(2^" + std::to_string(r) + ")";
        std::string p5 = "P5(2^" + std::to_string(r) + ")";
        add(p6, 5, zmod(pow2(r)) + " <i>");
        add(p6, 6, "Z/2 <i eta>");
        add(p6, 7, r == 1 ? "Z/4 <etatilde>" : "Z/2 <i eta2> + Z/2 <etatilde>");
        add(p6, 8, zmod(pow2(std::min(r, 3L))) + " <i nu> + Z/2 <etatilde eta>");
        add(p7, 8, r == 1 ? "Z/4 <etatilde>" : "Z/2 <i eta2> + Z/2 <etatilde>");
        std::string tail = r == 1 ? "" : " + " + zmod(pow2(std::min(r - 1, 2L))) + " <i snuprime>";
        add(p5, 7, zmod(pow2(r + 1)) + " <i nu4> + Z/2 <etatilde eta>" + tail);

        add("P6(3^" + std::to_string(r) + ")", 8, "Z/3 <i alpha1>");
        add("P5(3^" + std::to_string(r) + ")", 7, zmod(pow3(r)) + " <i nu4> + Z/3 <i snuprime>");

        std::string c7r = "C7[r=" + std::to_string(r) + "]";
        std::string c6r = "C6[r=" + std::to_string(r) + "]";
        add(c7r, 8, zmod(pow2(std::min(r, 2L))) + " <ibar nu> + Z/2 <ibarP etatilde eta>");
        add(c6r, 7, zmod(pow2(r + 1)) + " <ibar nu4>" +
                        (r == 1 ? std::string{} : std::string(" + Z/2 <ibar snuprime>")) +
                        " + Z/2 <ibarP etatilde eta>");
        for (long s = 1; s <= 3; ++s) {
            std::string c7rs = "C7[r=" + std::to_string(r) + "]{s=" + std::to_string(s) + "}";
            add(c7rs, 8, "Z/2 <icheck eta2> + " + zmod(pow2(std::min(r, 2L))) +
                             " <icheck nu> + Z/2 <icheckP etatilde eta>");
        }
        std::string c6rs = "C6[r=" + std::to_string(r) + "]{s=1}";
        add(c6rs, 7, "Z/2 <icheck eta2> + " + zmod(pow2(r + 1)) + " <icheck nu4>" +
                         (r == 1 ? std::string{} : std::string(" + Z/2 <icheck snuprime>")) +
                         " + Z/2 <icheckP etatilde eta>");
    }
    for (long s = 1; s <= 3; ++s) {
        add("C7{s=" + std::to_string(s) + "}", 8, "Z/2 <ihat eta2> + Z/12 <ihat nu>");
        add("C6{s=" + std::to_string(s) + "}", 7,
            "Z/2 <ihat eta2> + Z <ihat nu4> + Z/6 <ihat snuprime>");
    }
    add("Ceta7", 8, "Z/12 <i_eta nu>");
    add("Ceta6", 7, "Z <i_eta nu4> + Z/6 <i_eta snuprime>");
    add("P5(5^1)", 7, "Z/5 <i nu4>");
    add("P7(3^2)", 8, "0");
    // bottom-6 hosts stay in the stable range
    add("Ceta8", 9, "Z/12 <i_eta nu>");
    add("C8[r=3]", 9, "Z/4 <ibar nu> + Z/2 <ibarP etatilde eta>");
    add("C8{s=2}", 9, "Z/2 <ihat eta2> + Z/12 <ihat nu>");
    add("C8[r=1]{s=1}", 9, "Z/2 <icheck eta2> + Z/2 <icheck nu> + Z/2 <icheckP etatilde eta>");

    std::size_t bad = 0;
    for (const Row& row : rows) {
        std::string got = pi(EC::parse(row.literal), row.degree).to_string();
        if (got != row.expected) {
            ++bad;
            g_notes.push_back("table " + row.literal + "@" + std::to_string(row.degree) +
                              ": got '" + got + "' want '" + row.expected + "'");
        }
    }
    detail = std::to_string(rows.size()) + " rows, " + std::to_string(bad) + " mismatches";
    return bad == 0 && rows.size() >= 40;
}

// ---------------------------------------------------------------------------
// criterion 2: composition identities
// ---------------------------------------------------------------------------

bool criterion2(std::string& detail) {
    std::size_t checked = 0, bad = 0;
    auto expect = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++bad;
            g_notes.push_back("identity failed: " + what);
        }
    };
    auto cls = [](const char* host, int degree,
                  std::initializer_list<std::pair<Gen, long>> terms) {
        return make_class(EC::parse(host), degree, std::vector<std::pair<Gen, long>>(terms));
    };
    auto sym = [](Morph t, const char* s, const char* tgt) {
        return MorphSymbol(t, EC::parse(s), EC::parse(tgt));
    };

    for (long r = 1; r <= 3; ++r) {
        std::string p = "P7(2^" + std::to_string(r) + ")";
        expect(compose(MorphSymbol(Morph::MoorePinch, EC::parse(p), EC::sphere(7)), 8,
                       make_class(EC::parse(p), 8, {{Gen::EtaTilde, 1}})) ==
                   cls("S7", 8, {{Gen::Eta, 1}}),
               "q etatilde = eta (r=" + std::to_string(r) + ")");
    }
    expect(compose(sym(Morph::MooreInc, "S6", "P7(2^1)"), 8, cls("S6", 8, {{Gen::Eta2, 1}})) ==
               cls("P7(2^1)", 8, {{Gen::EtaTilde, 2}}),
           "2 etatilde_1 = i eta^2");
    expect(compose(sym(Morph::BChi, "P7(2^1)", "P7(2^3)"), 8,
                   cls("P7(2^1)", 8, {{Gen::EtaTilde, 1}})) ==
               cls("P7(2^3)", 8, {{Gen::EtaTilde, 1}}),
           "B(chi) etatilde");
    expect(compose(sym(Morph::BChi, "P6(2^3)", "P6(2^1)"), 5, cls("P6(2^3)", 5, {{Gen::I, 1}})) ==
               cls("P6(2^1)", 5, {{Gen::I, 1}}),
           "B(chi) i, r >= s");
    expect(compose(sym(Morph::BChi, "P6(2^1)", "P6(2^3)"), 5, cls("P6(2^1)", 5, {{Gen::I, 1}})) ==
               cls("P6(2^3)", 5, {{Gen::I, 4}}),
           "B(chi) i, r < s");
    {
        auto r = compose_morph(sym(Morph::MoorePinch, "P6(2^2)", "S6"),
                               sym(Morph::BChi, "P6(2^3)", "P6(2^2)"));
        expect(r && r->normalized() ==
                       FormalMorph::single(sym(Morph::MoorePinch, "P6(2^3)", "S6"), 2).normalized(),
               "q B(chi) = 2 q");
    }
    expect(compose(sym(Morph::ZetaBar, "Ceta7", "S5"), 5, cls("Ceta7", 5, {{Gen::IEtaBot, 1}})) ==
               cls("S5", 5, {{Gen::Id, 2}}),
           "zetabar i_eta = 2");
    {
        auto r = compose_morph(sym(Morph::CEtaPinch, "Ceta7", "S7"),
                               sym(Morph::ZetaTilde, "S7", "Ceta7"));
        expect(r && r->normalized() == FormalMorph::identity(EC::sphere(7), 2).normalized(),
               "q_eta zetatilde = 2");
    }
    expect(compose(sym(Morph::Eta, "S6", "S5"), 8, cls("S6", 8, {{Gen::Eta2, 1}})) ==
               cls("S5", 8, {{Gen::Nu, 12}}),
           "eta^3 = 12 nu");
    expect(compose(sym(Morph::Eta2, "S7", "S5"), 8, cls("S7", 8, {{Gen::Eta, 1}})) ==
               cls("S5", 8, {{Gen::Nu, 12}}),
           "eta^2 . eta = 12 nu");
    expect(suspend_class(EC::sphere(4), 7, cls("S4", 7, {{Gen::SNuPrime, 1}})) ==
               cls("S5", 8, {{Gen::Nu, 2}}),
           "2 nu = suspended snuprime");
    {
        MorphChain route({sym(Morph::CRToMoore, "C7[r=1]", "P6(2^3)"),
                          sym(Morph::CRIncP, "P6(2^1)", "C7[r=1]")});
        expect(compose(route, 8, cls("P6(2^1)", 8, {{Gen::EtaTildeEta, 1}})) ==
                   cls("P6(2^3)", 8, {{Gen::EtaTildeEta, 1}}),
               "qbar ibar_P etatilde eta");
    }
    {
        auto r = compose_morph(sym(Morph::CRToMoore, "C7[r=1]", "P6(2^2)"),
                               sym(Morph::CRIncP, "P6(2^1)", "C7[r=1]"));
        expect(r && r->normalized() ==
                       FormalMorph::single(sym(Morph::BChi, "P6(2^1)", "P6(2^2)")).normalized(),
               "qbar ibar_P = B(chi)");
    }
    {
        auto r = compose_morph(sym(Morph::RSPinchCR, "C7[r=1]{s=2}", "C7[r=1]"),
                               sym(Morph::RSIncP, "P6(2^1)", "C7[r=1]{s=2}"));
        expect(r && r->normalized() ==
                       FormalMorph::single(sym(Morph::CRIncP, "P6(2^1)", "C7[r=1]")).normalized(),
               "qcheck_C icheck_P = ibar_P");
    }
    {
        auto a = compose_morph(sym(Morph::CSPinchEta, "C7{s=2}", "Ceta7"),
                               sym(Morph::CSIncBot, "S5", "C7{s=2}"));
        expect(a && a->normalized() ==
                       FormalMorph::single(sym(Morph::CEtaInc, "S5", "Ceta7")).normalized(),
               "qhat_eta ihat_bot = i_eta");
        auto b = compose_morph(sym(Morph::CSPinchEta, "C7{s=2}", "Ceta7"),
                               sym(Morph::CSIncTop, "S6", "C7{s=2}"));
        expect(b && b->normalized().is_zero(), "qhat_eta ihat_top = 0");
    }
    {
        auto a = compose_morph(sym(Morph::CSMu, "C7{s=1}", "S5"),
                               sym(Morph::CSIncTop, "S6", "C7{s=1}"));
        expect(a && a->normalized() ==
                       FormalMorph::single(sym(Morph::Eta, "S6", "S5")).normalized(),
               "mu ihat_top = eta");
        auto b = compose_morph(sym(Morph::CSMu, "C7{s=1}", "S5"),
                               sym(Morph::CSIncBot, "S5", "C7{s=1}"));
        expect(b && b->normalized().is_zero(), "mu ihat_bot = 0");
    }
    {
        GroupElement got = compose(FormalMorph::single(sym(Morph::ZetaBar, "Ceta7", "S5"), -1), 8,
                                   cls("Ceta7", 8, {{Gen::IEtaNu, 4}}));
        expect(got == cls("S5", 8, {{Gen::Nu, 16}}), "(-zetabar) i_eta alpha1 = alpha1");
    }
    {
        GroupElement combo = cls("C7{s=1}", 8, {{Gen::IHatNu, 4}, {Gen::IHatEta2, 1}});
        expect(compose(sym(Morph::CSThetaUp, "C7{s=1}", "C7{s=2}"), 8, combo) ==
                   cls("C7{s=2}", 8, {{Gen::IHatNu, 4}}),
               "theta (joint class) = ihat alpha1");
        expect(compose(sym(Morph::CSMu, "C7{s=1}", "S5"), 8, combo) ==
                   cls("S5", 8, {{Gen::Nu, 12}}),
               "mu (joint class) = eta^3");
    }
    for (const PlusRule& p : pack().plus) {
        GroupElement sum = add(pi(p.host, p.degree).group, p.kept, p.eliminated);
        expect(compose(p.equivalence, p.degree, sum) == p.kept,
               "plus rule on " + p.host.to_string());
    }
    {
        std::vector<std::pair<const char*, const char*>> pairs = {{"P6(2^2)", "S6"},
                                                                  {"Ceta7", "S7"},
                                                                  {"C7[r=2]", "S7"},
                                                                  {"C7{s=2}", "S7"},
                                                                  {"C7[r=2]{s=1}", "S7"}};
        for (auto [host, top] : pairs) {
            EC h = EC::parse(host);
            HomotopyGroupTable t = pi(h, 8);
            for (const MorphSymbol& q : morphs_between(h, EC::parse(top))) {
                if (morph_name(q.tag())[0] != 'q') continue;
                for (std::size_t k = 0; k < t.group.size(); ++k) {
                    std::vector<long> coeffs(t.group.size(), 0);
                    coeffs[k] = 1;
                    try {
                        GroupElement img = compose(q, 8, GroupElement(t.group, coeffs));
                        if (gen_token(t.generators[k])[0] == 'i')
                            expect(img.is_zero(),
                                   std::string("pinch of inclusion class on ") + host);
                    } catch (const UnknownComposite&) {
                    }
                }
            }
        }
    }
    detail = std::to_string(checked) + " identities, " + std::to_string(bad) + " failures";
    return bad == 0 && checked >= 15;
}

// ---------------------------------------------------------------------------
// criterion 3: rule-pack soundness + idempotence
// ---------------------------------------------------------------------------

bool criterion3(std::string& detail) {
    std::size_t bad = 0;
    const RulePack& p = pack();
    for (const PrecRule& r : p.prec) {
        try {
            if (compose(r.witness, r.degree, r.alpha) != r.beta) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    for (const PlusRule& r : p.plus) {
        GroupElement sum = add(pi(r.host, r.degree).group, r.kept, r.eliminated);
        if (compose(r.equivalence, r.degree, sum) != r.kept) ++bad;
        if (compose(r.inverse, r.degree, compose(r.equivalence, r.degree, sum)) != sum) ++bad;
    }

    std::vector<ManifoldInvariants> shapes;
    {
        ManifoldInvariants a;
        a.l = 2;
        a.d = 1;
        a.torsion = TorsionDecomposition::parse("2^1, 2^3, 3^2");
        a.split.k = 1;
        a.split.s = {1};
        a.split.r = {3};
        a.split.rbar = {1};
        a.split.shat = {3};
        shapes.push_back(a);
        ManifoldInvariants b;
        b.l = 1;
        b.torsion = TorsionDecomposition::parse("2^2");
        b.split.s = {2};
        b.split.r = {2};
        shapes.push_back(b);
        ManifoldInvariants c;
        c.l = 2;
        c.torsion = TorsionDecomposition::parse("2^1 x2, 3^1");
        c.split.k = 1;
        c.split.rcheck = {1};
        c.split.scheck = {1};
        c.split.r = {1};
        c.split.s = {1};
        shapes.push_back(c);
        ManifoldInvariants d;
        d.l = 1;
        d.d = 2;
        d.torsion = TorsionDecomposition::parse("2^3 x2");
        d.split.s = {3};
        d.split.shat = {3};
        d.split.r = {3};
        d.split.rbar = {3};
        shapes.push_back(d);
    }
    std::size_t samples = 0, not_idempotent = 0;
    for (const auto& inv : shapes) {
        GeneralAttachingForm form = general_attaching_form(inv);
        if (!form.wedge) continue;
        for (std::uint64_t i = 0; i < 250; ++i) {
            AttachingVector v = form.sample(i);
            if (!form.admits(v)) ++bad;
            AttachingVector c1 = canonicalize(v, pack()).vector;
            AttachingVector c2 = canonicalize(c1, pack()).vector;
            if (c1 != c2) {
                ++not_idempotent;
                if (g_notes.size() < 8)
                    g_notes.push_back("not idempotent: " + v.to_string() + " -> " +
                                      c1.to_string() + " -> " + c2.to_string());
            }
            ++samples;
        }
    }
    detail = std::to_string(p.prec.size()) + " prec rules, " + std::to_string(p.plus.size()) +
             " plus rules, " + std::to_string(samples) + " samples, " +
             std::to_string(not_idempotent) + " non-idempotent";
    return bad == 0 && not_idempotent == 0 && samples >= 1000;
}

// ---------------------------------------------------------------------------
// criterion 4: oracle equivalence
// ---------------------------------------------------------------------------

bool criterion4(std::string& detail) {
    std::vector<std::string> family = {
        "S6vS7",           "P7(2^1)",     "P7(2^2)",         "P6(2^2)vS7",
        "C7[r=1]{s=1}",    "P7(2^2)vS7",  "P6(2^1)vP7(2^1)", "S5vS6vS7",
        "P6(3^1)vS5",      "Ceta7vS5",    "C7{s=1}vS5",      "C7[r=2]vP6(2^2)",
        "C7[r=1]{s=1}vS5", "C7{s=2}vS5vS7",
    };
    std::size_t bad = 0;
    std::size_t s6s7_orbits = 0;
    for (const std::string& lit : family) {
        OrbitReport r = cross_check(WedgeSpace::parse(lit), 8, pack());
        if (!r.mismatches.empty()) {
            ++bad;
            g_notes.push_back("oracle mismatches on " + lit + ": " +
                              std::to_string(r.mismatches.size()));
        }
        if (lit == "S6vS7") s6s7_orbits = r.orbit_count;
        std::size_t total = 0;
        for (const auto& [rep, size] : r.orbits) total += size;
        if (total != r.vector_count) ++bad;
    }
    for (const std::string& lit : {std::string("P6(2^2)vS7"), std::string("C7{s=1}vS5")}) {
        WedgeSpace w = WedgeSpace::parse(lit);
        VectorSpaceIndex idx(w, 8);
        auto moves = standard_moves(w, 8, pack());
        if (orbit_labels_serial(idx, moves) != orbit_labels_parallel(idx, moves)) {
            ++bad;
            g_notes.push_back("kernel disagreement on " + lit);
        }
    }
    detail =
        std::to_string(family.size()) + " wedges, S6vS7 orbits = " + std::to_string(s6s7_orbits);
    return bad == 0 && s6s7_orbits == 3 && family.size() >= 10;
}

// ---------------------------------------------------------------------------
// criteria 5/6/7 share a bounded enumeration of splitting data
// ---------------------------------------------------------------------------

std::vector<ManifoldInvariants> bounded_enumeration() {
    std::vector<ManifoldInvariants> out;
    struct TPattern {
        int t0, t1, t2, t3, t4;
    };
    std::vector<TPattern> patterns;
    for (int t0 = 0; t0 <= 1; ++t0)
        for (int t1 = 0; t1 <= 1; ++t1)
            for (int t2 = 0; t2 <= 1; ++t2)
                for (int t3 = 0; t3 <= 1; ++t3)
                    for (int t4 = 0; t4 <= 1; ++t4)
                        if (t0 + t3 == t1 + t2) patterns.push_back({t0, t1, t2, t3, t4});
    for (const TPattern& tp : patterns) {
        int m2 = tp.t1 + tp.t2 + tp.t4;
        std::vector<std::vector<long>> choices;
        if (m2 == 0) choices = {{}};
        if (m2 == 1) choices = {{1}, {3}};
        if (m2 == 2) choices = {{1, 2}, {3, 3}};
        if (m2 == 3) choices = {{1, 2, 3}};
        for (const auto& exps : choices) {
            for (long l = 0; l <= 2; ++l) {
                for (long d = 0; d <= 1; ++d) {
                    for (long k = 0; k <= 1; ++k) {
                        for (int m3 = 0; m3 <= 1; ++m3) {
                            ManifoldInvariants inv;
                            inv.l = l;
                            inv.d = d;
                            inv.split.k = k;
                            std::map<long, std::vector<long>> tors;
                            for (long e : exps) tors[2].push_back(e);
                            if (m3) tors[3].push_back(2);
                            inv.torsion = TorsionDecomposition(tors);
                            std::size_t at = 0;
                            if (tp.t1) inv.split.r = {exps[at++]};
                            if (tp.t2) inv.split.rbar = {exps[at++]};
                            if (tp.t4) inv.split.rcheck = {exps[at++]};
                            at = 0;
                            if (tp.t0) inv.split.s = {exps[at++]};
                            if (tp.t3) inv.split.shat = {exps[at++]};
                            if (tp.t4) inv.split.scheck = {exps[at++]};
                            try {
                                inv.validate();
                            } catch (const std::exception&) {
                                continue;
                            }
                            out.push_back(inv);
                        }
                    }
                }
            }
        }
    }
    return out;
}

// Independent transcription of the statements' candidate lists.
struct Transcription {
    static std::string cone1(const std::string& shell, const std::string& x,
                             const std::string& vec) {
        return "(" + shell + "/" + x + ") v (" + x + " u[" + vec + "] e9)";
    }
    static std::string cone2(const std::string& shell, const std::string& x1,
                             const std::string& x2, const std::string& v1,
                             const std::string& v2) {
        std::string pair = x1 + " v " + x2;
        return "(" + shell + "/(" + pair + ")) v ((" + pair + ") u[" + v1 + "; " + v2 + "] e9)";
    }
    static std::string p6_2(long r) { return "P6(2^" + std::to_string(r) + ")"; }
    static std::string p7_2(long s) { return "P7(2^" + std::to_string(s) + ")"; }
    static std::string p6_3(long r) { return "P6(3^" + std::to_string(r) + ")"; }
    static std::string cbar(long r) { return "C7[r=" + std::to_string(r) + "]"; }
    static std::string chat(long s) { return "C7{s=" + std::to_string(s) + "}"; }
    static std::string ccheck(long r, long s) {
        return "C7[r=" + std::to_string(r) + "]{s=" + std::to_string(s) + "}";
    }

    static std::vector<long> distinct(const std::vector<long>& v) {
        std::vector<long> out;
        for (long x : v)
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        return out;
    }

    struct XEntry {
        std::string literal;
        std::string alpha;
    };
    static std::vector<XEntry> xs(const ManifoldInvariants& inv) {
        const auto& sp = inv.split;
        if (inv.flags.star) {
            std::vector<XEntry> out;
            for (long r : distinct(inv.rprime())) out.push_back({p6_3(r), "1*i_alpha1"});
            if (out.empty()) throw NoCarrier("transcription: star without 3-torsion");
            return out;
        }
        if (inv.l - sp.k - sp.t3() > 0) return {{"S5", "1*alpha1"}};
        if (sp.k > 0) {
            std::vector<XEntry> out = {{"Ceta7", "1*i_eta_alpha1"}};
            if (sp.t3() > 0) out.push_back({chat(sp.shat[0]), "1*ihat_alpha1"});
            return out;
        }
        if (sp.t3() > 0) return {{chat(sp.shat[0]), "1*ihat_alpha1"}};
        throw NoCarrier("transcription: no carrier");
    }

    struct Member {
        std::string id;
        std::string literal;
        std::string vec;
    };
    static std::vector<Member> theta_list(const ManifoldInvariants& inv) {
        const auto& sp = inv.split;
        std::vector<Member> out;
        for (long s : distinct(sp.s))
            out.push_back({"y", p7_2(s), s == 1 ? "2*etatilde" : "1*i_eta2"});
        for (long r : distinct(sp.r)) out.push_back({"a", p6_2(r), "1*etatilde_eta"});
        for (long r : distinct(sp.rbar)) out.push_back({"abar", cbar(r), "1*ibarP_etatilde_eta"});
        for (long s : distinct(sp.shat)) out.push_back({"yhat", chat(s), "1*ihat_eta2"});
        std::vector<std::pair<long, long>> rs;
        for (std::size_t j = 0; j < sp.rcheck.size(); ++j) {
            auto p = std::make_pair(sp.rcheck[j], sp.scheck[j]);
            if (std::find(rs.begin(), rs.end(), p) == rs.end()) rs.push_back(p);
        }
        for (auto [r, s] : rs) out.push_back({"acheck", ccheck(r, s), "1*icheckP_etatilde_eta"});
        for (auto [r, s] : rs) out.push_back({"ycheck", ccheck(r, s), "1*icheck_eta2"});
        return out;
    }

    static std::vector<std::string> two_local(const ManifoldInvariants& inv) {
        const auto& f = inv.flags;
        const auto& sp = inv.split;
        const bool empty_shell = inv.l == 0 && inv.d == 0 && inv.m2() == 0;
        std::vector<std::string> out;
        if (!f.sq2 && !f.theta && !f.triple)
            return {empty_shell ? "S9 [Thm1.1/1a]" : "S9 v V7 [Thm1.1/1a]"};
        if (empty_shell) throw FlagMismatch("transcription: flags on a contractible skeleton");
        if (f.sq2) {
            for (long s : distinct(sp.s))
                out.push_back(cone1("V7", p7_2(s), "1*etatilde") + " [Thm1.1/2]");
            if (inv.l - sp.k - sp.t2() > 0) out.push_back("(V7/S7) v Ceta9 [Thm1.1/2]");
            if (out.empty()) throw FlagMismatch("transcription: no sq2 carrier");
            return out;
        }
        if (f.theta) {
            if (theta_list(inv).empty()) throw FlagMismatch("transcription: no theta carrier");
            for (const Member& m : theta_list(inv))
                out.push_back(cone1("V7", m.literal, m.vec) + " [Thm1.1/1b]");
            return out;
        }
        bool has_cs = inv.l - sp.k - sp.t3() > 0;
        bool has_c = false;
        for (long r : distinct(sp.r)) has_c = has_c || r >= 3;
        if (!has_cs && !has_c) throw FlagMismatch("transcription: no triple carrier");
        if (inv.smooth) return {};
        if (has_cs) out.push_back(cone1("V7", "S5", "1*eta3") + " [Thm1.1/1c]");
        for (long r : distinct(sp.r))
            if (r >= 3) out.push_back(cone1("V7", p6_2(r), "1*i_eta3") + " [Thm1.1/1c]");
        return out;
    }

    static std::vector<std::string> three_local(const ManifoldInvariants& inv) {
        std::vector<long> t3 = inv.torsion.exponents(3);
        auto spine = [&](std::optional<long> drop) {
            std::vector<std::string> parts;
            for (long i = 0; i < inv.d; ++i) parts.push_back("S6");
            for (long e : t3) parts.push_back("P7(3^" + std::to_string(e) + ")");
            std::vector<long> rest = t3;
            if (drop) rest.erase(std::find(rest.begin(), rest.end(), *drop));
            for (long e : rest) parts.push_back("P6(3^" + std::to_string(e) + ")");
            return parts;
        };
        auto join = [](const std::vector<std::string>& parts) {
            std::string out;
            for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " v " : "") + parts[i];
            return out;
        };
        if (!inv.flags.p1) {
            std::vector<std::string> parts = spine(std::nullopt);
            for (long i = 0; i < inv.l; ++i) {
                parts.push_back("S5");
                parts.push_back("S7");
            }
            parts.push_back("S9");
            return {join(parts) + " [Thm3loc/1]"};
        }
        if (!inv.flags.star) {
            if (inv.l < 1) throw NoCarrier("transcription: 3-local needs a sphere");
            std::vector<std::string> parts = spine(std::nullopt);
            for (long i = 0; i < inv.l - 1; ++i) parts.push_back("S5");
            for (long i = 0; i < inv.l; ++i) parts.push_back("S7");
            parts.push_back("(S5 u[1*alpha1] e9)");
            return {join(parts) + " [Thm3loc/2]"};
        }
        std::vector<std::string> out;
        for (long r : distinct(t3)) {
            std::vector<std::string> parts = spine(r);
            for (long i = 0; i < inv.l; ++i) {
                parts.push_back("S5");
                parts.push_back("S7");
            }
            parts.push_back("(P6(3^" + std::to_string(r) + ") u[1*i_alpha1] e9)");
            out.push_back(join(parts) + " [Thm3loc/3]");
        }
        if (out.empty()) throw NoCarrier("transcription: star without 3-torsion");
        return out;
    }

    static std::vector<std::string> total(const ManifoldInvariants& inv) {
        const auto& f = inv.flags;
        const auto& sp = inv.split;
        std::vector<std::string> out;
        const bool empty_shell = inv.l == 0 && inv.d == 0 && inv.torsion.empty();
        if (!f.p1) {
            if (!f.sq2 && !f.theta && !f.triple)
                return {empty_shell ? "S9 [Thm1.2/1a]" : "S9 v W7 [Thm1.2/1a]"};
            if (empty_shell) throw FlagMismatch("transcription: flags on a contractible skeleton");
            if (f.sq2) {
                for (long s : distinct(sp.s))
                    out.push_back(cone1("W7", p7_2(s), "1*etatilde") + " [Thm1.2/1d]");
                if (inv.l - sp.k - sp.t2() > 0) out.push_back("(W7/S7) v Ceta9 [Thm1.2/1d]");
                if (out.empty()) throw FlagMismatch("transcription: no sq2 carrier");
                return out;
            }
            if (f.theta) {
                if (theta_list(inv).empty()) throw FlagMismatch("transcription: no theta carrier");
                if (inv.smooth) return {};
                for (const Member& m : theta_list(inv))
                    out.push_back(cone1("W7", m.literal, m.vec) + " [Thm1.2/1b]");
                return out;
            }
            bool has_cs = inv.l - sp.k - sp.t3() > 0;
            bool has_c = false;
            for (long r : distinct(sp.r)) has_c = has_c || r >= 3;
            if (!has_cs && !has_c) throw FlagMismatch("transcription: no triple carrier");
            if (has_cs) out.push_back(cone1("W7", "S5", "1*eta3") + " [Thm1.2/1c]");
            for (long r : distinct(sp.r))
                if (r >= 3) out.push_back(cone1("W7", p6_2(r), "1*i_eta3") + " [Thm1.2/1c]");
            return out;
        }
        if (empty_shell) throw FlagMismatch("transcription: flags on a contractible skeleton");
        std::vector<XEntry> carriers = xs(inv);
        if (!f.sq2 && !f.theta && !f.triple) {
            for (const XEntry& x : carriers)
                out.push_back(cone1("W7", x.literal, x.alpha) + " [Thm1.2/2a]");
            return out;
        }
        if (f.sq2) {
            for (long s : distinct(sp.s))
                for (const XEntry& x : carriers)
                    out.push_back(cone2("W7", p7_2(s), x.literal, "1*etatilde", x.alpha) +
                                  " [Thm1.2/2d(i)]");
            if (inv.l - sp.k - sp.t2() > 0)
                for (const XEntry& x : carriers)
                    out.push_back(cone2("W7", "S7", x.literal, "1*eta", x.alpha) +
                                  " [Thm1.2/2d(ii)]");
            if (out.empty()) throw FlagMismatch("transcription: no sq2 carrier");
            return out;
        }
        if (f.theta) {
            if (theta_list(inv).empty()) throw FlagMismatch("transcription: no theta carrier");
            if (inv.smooth) return {};
            std::map<std::string, std::string> tag{{"y", "i"},       {"a", "ii"},
                                                   {"abar", "iii"},  {"yhat", "iv"},
                                                   {"acheck", "vi"}, {"ycheck", "vii"}};
            for (const Member& m : theta_list(inv)) {
                for (const XEntry& x : carriers) {
                    if (m.id == "yhat" && x.literal.rfind("C7{", 0) == 0) {
                        out.push_back(cone1("W7", m.literal, "1*ihat_eta2 + 1*ihat_alpha1") +
                                      " [Thm1.2/2b(v)]");
                        continue;
                    }
                    out.push_back(cone2("W7", m.literal, x.literal, m.vec, x.alpha) +
                                  " [Thm1.2/2b(" + tag.at(m.id) + ")]");
                }
            }
            return out;
        }
        {
            bool has_cs = inv.l - sp.k - sp.t3() > 0;
            bool has_c = false;
            for (long r : distinct(sp.r)) has_c = has_c || r >= 3;
            if (!has_cs && !has_c) throw FlagMismatch("transcription: no triple carrier");
        }
        if (inv.l - sp.k - sp.t3() > 0) {
            if (!f.star) {
                out.push_back(cone1("W7", "S5", "4*nu") + " [Thm1.2/2c(i)]");
            } else {
                for (const XEntry& x : carriers)
                    out.push_back(cone2("W7", "S5", x.literal, "1*eta3", x.alpha) +
                                  " [Thm1.2/2c(ii)]");
            }
        }
        for (long r : distinct(sp.r))
            if (r >= 3)
                for (const XEntry& x : carriers)
                    out.push_back(cone2("W7", p6_2(r), x.literal, "1*i_eta3", x.alpha) +
                                  " [Thm1.2/2c(iii)]");
        return out;
    }
};

std::vector<OperationFlags> flag_grid(bool has_t3_torsion) {
    std::vector<OperationFlags> out;
    for (int sq2 = 0; sq2 <= 1; ++sq2)
        for (int theta = 0; theta <= 1; ++theta)
            for (int triple = 0; triple <= 1; ++triple)
                for (int p1 = 0; p1 <= 1; ++p1)
                    for (int star = 0; star <= (p1 && has_t3_torsion ? 1 : 0); ++star) {
                        OperationFlags f;
                        f.sq2 = sq2;
                        f.theta = theta;
                        f.triple = triple;
                        f.p1 = p1;
                        f.star = star;
                        out.push_back(f);
                    }
    return out;
}

std::vector<std::string> got_strings(const std::vector<WedgeDecomposition>& decs) {
    std::vector<std::string> out;
    for (const auto& d : decs) out.push_back(d.symbolic + " [" + d.case_tag + "]");
    return out;
}

bool criterion5(std::string& detail) {
    std::vector<ManifoldInvariants> universe = bounded_enumeration();
    std::size_t runs = 0, bad = 0, audits = 0, audit_bad = 0;
    bool six_member_seen = false, seven_tag_seen = false;
    using Runner = std::function<std::vector<WedgeDecomposition>(const ManifoldInvariants&)>;
    std::vector<std::pair<std::string, Runner>> runners = {
        {"2local", [](const ManifoldInvariants& i) { return classify_2local(i); }},
        {"3local", [](const ManifoldInvariants& i) { return classify_3local(i); }},
        {"total", [](const ManifoldInvariants& i) { return classify_total(i); }},
    };
    for (ManifoldInvariants inv : universe) {
        for (const OperationFlags& f : flag_grid(inv.m3() > 0)) {
            inv.flags = f;
            for (const auto& [name, run] : runners) {
                std::vector<std::string> got, want;
                bool got_err = false, want_err = false;
                std::vector<WedgeDecomposition> decs;
                try {
                    decs = run(inv);
                    got = got_strings(decs);
                } catch (const std::exception&) {
                    got_err = true;
                }
                try {
                    ManifoldInvariants probe = inv;
                    if (name == "2local") {
                        probe.flags.p1 = false;
                        probe.flags.star = false;
                        want = Transcription::two_local(probe);
                    } else if (name == "3local") {
                        want = Transcription::three_local(probe);
                    } else {
                        want = Transcription::total(probe);
                    }
                } catch (const std::exception&) {
                    want_err = true;
                }
                ++runs;
                if (got_err != want_err || (!got_err && got != want)) {
                    ++bad;
                    if (g_notes.size() < 10) {
                        std::ostringstream note;
                        note << "snapshot mismatch [" << name << "]"
                             << (got_err ? " <engine error>" : "")
                             << (want_err ? " <transcription error>" : "") << "\n"
                             << print_descriptor(inv) << "  got:";
                        for (auto& s : got) note << "\n    " << s;
                        note << "\n  want:";
                        for (auto& s : want) note << "\n    " << s;
                        g_notes.push_back(note.str());
                    }
                    continue;
                }
                if (got_err) continue;
                for (const auto& dec : decs) {
                    ++audits;
                    if (!homology_audit(dec, inv)) {
                        ++audit_bad;
                        if (g_notes.size() < 10) g_notes.push_back("audit failed: " + dec.symbolic);
                    }
                }
                if (name == "2local" && !f.sq2 && f.theta && decs.size() == 6)
                    six_member_seen = true;
                if (name == "total" && f.p1 && f.theta && !f.sq2) {
                    std::set<std::string> tags;
                    for (const auto& d : decs) tags.insert(d.case_tag);
                    if (tags.size() == 7) seven_tag_seen = true;
                }
            }
        }
    }
    detail = std::to_string(runs) + " runs, " + std::to_string(bad) + " list mismatches, " +
             std::to_string(audits) + " audits, " + std::to_string(audit_bad) +
             " audit failures, six-member=" + (six_member_seen ? "yes" : "no") +
             ", seven-shape=" + (seven_tag_seen ? "yes" : "no");
    return bad == 0 && audit_bad == 0 && six_member_seen && seven_tag_seen;
}

bool criterion6(std::string& detail) {
    std::vector<ManifoldInvariants> universe = bounded_enumeration();
    std::size_t checked = 0, bad = 0, merges = 0, merge_bad = 0;
    for (ManifoldInvariants inv : universe) {
        for (const OperationFlags& f : flag_grid(inv.m3() > 0)) {
            if (f.sq2 && (f.theta || f.triple)) continue;
            if (f.theta && f.triple) continue;
            inv.flags = f;
            std::vector<WedgeDecomposition> total, two, three;
            try {
                total = classify_total(inv);
                two = classify_2local(inv);
                three = classify_3local(inv);
            } catch (const std::exception&) {
                continue;
            }
            for (const auto& dec : total) {
                WedgeDecomposition at2 = localize_decomposition(dec, 2);
                bool m2 = false;
                for (const auto& t : two) m2 = m2 || same_decomposition(at2, t, pack());
                WedgeDecomposition at3 = localize_decomposition(dec, 3);
                bool m3 = false;
                for (const auto& t : three) m3 = m3 || same_decomposition(at3, t, pack());
                ++checked;
                if (!m2 || !m3) {
                    ++bad;
                    if (g_notes.size() < 10)
                        g_notes.push_back("locality mismatch: " + dec.symbolic + " [" +
                                          dec.case_tag + "] at2=" + at2.expanded() +
                                          " at3=" + at3.expanded());
                }
                if (dec.cone) {
                    ++merges;
                    const AttachingVector& v = dec.cone->second;
                    AttachingVector merged = merge_locals(localize(v, 2), localize(v, 3));
                    if (canonicalize(merged, pack()).vector != canonicalize(v, pack()).vector) {
                        ++merge_bad;
                        if (g_notes.size() < 10)
                            g_notes.push_back("merge mismatch: " + v.to_string());
                    }
                }
            }
        }
    }
    detail = std::to_string(checked) + " localizations, " + std::to_string(bad) + " mismatches, " +
             std::to_string(merges) + " merges, " + std::to_string(merge_bad) + " merge failures";
    return bad == 0 && merge_bad == 0 && checked > 0;
}

bool criterion7(std::string& detail) {
    std::vector<ManifoldInvariants> universe = bounded_enumeration();
    std::size_t checked = 0, bad = 0;
    const std::vector<std::string> removed = {"[Thm1.1/1c]", "[Thm1.2/1b]", "[Thm1.2/2b("};
    using Runner = std::vector<WedgeDecomposition> (*)(const ManifoldInvariants&);
    for (ManifoldInvariants inv : universe) {
        for (const OperationFlags& f : flag_grid(inv.m3() > 0)) {
            inv.flags = f;
            for (Runner run : {static_cast<Runner>(&classify_2local),
                               static_cast<Runner>(&classify_total)}) {
                std::vector<std::string> base, smooth;
                bool base_err = false, smooth_err = false;
                inv.smooth = false;
                try {
                    base = got_strings(run(inv));
                } catch (const std::exception&) {
                    base_err = true;
                }
                inv.smooth = true;
                try {
                    smooth = got_strings(run(inv));
                } catch (const std::exception&) {
                    smooth_err = true;
                }
                inv.smooth = false;
                ++checked;
                if (base_err) {
                    if (!smooth_err) ++bad;
                    continue;
                }
                if (smooth_err) {
                    ++bad;
                    continue;
                }
                std::vector<std::string> expect;
                for (const std::string& s : base) {
                    bool drop = false;
                    for (const std::string& tag : removed)
                        if (s.find(tag) != std::string::npos) drop = true;
                    if (!drop) expect.push_back(s);
                }
                if (smooth != expect) {
                    ++bad;
                    if (g_notes.size() < 10)
                        g_notes.push_back(
                            "smooth mode diff unexpected for sq2=" + std::to_string(f.sq2) +
                            " theta=" + std::to_string(f.theta) +
                            " triple=" + std::to_string(f.triple) + " p1=" + std::to_string(f.p1));
                }
            }
        }
    }
    detail = std::to_string(checked) + " comparisons, " + std::to_string(bad) + " unexpected";
    return bad == 0;
}

}  // namespace

int main() {
    struct Criterion {
        int index;
        const char* name;
        bool (*run)(std::string&);
    };
    std::vector<Criterion> all = {
        {1, "table fidelity", criterion1},
        {2, "composition identities", criterion2},
        {3, "rule-pack soundness and idempotence", criterion3},
        {4, "oracle equivalence", criterion4},
        {5, "theorem snapshot", criterion5},
        {6, "locality coherence", criterion6},
        {7, "smooth mode", criterion7},
    };
    for (const auto& c : all) {
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        report(c.index, c.name, pass, detail);
    }
    for (const auto& note : g_notes) std::cout << "  note: " << note << "\n";
    return g_failures == 0 ? 0 : 1;
}
