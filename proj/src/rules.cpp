#include "chang/rules.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chang {

namespace {

using EC = ElementaryComplex;

struct ClassInstance {
    EC host;
    GroupElement value;
    std::string name;
    int level;  // position in the elimination preorder; used for priority only
};

GroupElement cls(const EC& host, int degree, std::initializer_list<std::pair<Gen, long>> terms) {
    return make_class(host, degree, std::vector<std::pair<Gen, long>>(terms));
}

struct Edge {
    std::size_t from, to;
    FormalMorph witness;
    std::string rule_id;
};

}  // namespace

std::vector<PlusRule> plus_rules_for(const ElementaryComplex& host, int degree) {
    std::vector<PlusRule> out;
    const int n = host.bottom();
    // the absorbing self-map is always id + (inclusion . eta . pinch)
    auto make = [&](const MorphChain& nil, GroupElement elim, GroupElement kept) {
        FormalMorph eq = FormalMorph::identity(host).plus(FormalMorph::of_chain(nil));
        FormalMorph inv = FormalMorph::identity(host).plus(FormalMorph::of_chain(nil, -1));
        out.push_back({host, std::move(elim), std::move(kept), eq, inv, degree, "reduce-plus"});
    };
    switch (host.kind()) {
        case Kind::Moore: {
            if (host.prime() != 2) break;
            EC s_up = EC::sphere(n + 1);
            MorphChain nil({MorphSymbol(Morph::MooreInc, EC::sphere(n), host),
                            MorphSymbol(Morph::Eta, s_up, EC::sphere(n)),
                            MorphSymbol(Morph::MoorePinch, host, s_up)});
            if (degree == n + 3 && n >= 5) {
                // absorbs i eta^3 into etatilde eta
                make(nil, cls(host, degree, {{Gen::INu, 12}}),
                     cls(host, degree, {{Gen::EtaTildeEta, 1}}));
            } else if (degree == n + 2 && n >= 5) {
                // absorbs i eta^2 into etatilde
                GroupElement elim = host.r() == 1 ? cls(host, degree, {{Gen::EtaTilde, 2}})
                                                  : cls(host, degree, {{Gen::IEta2, 1}});
                make(nil, elim, cls(host, degree, {{Gen::EtaTilde, 1}}));
            }
            break;
        }
        case Kind::ChangRS: {
            if (degree != n + 3 || n < 4) break;
            EC s_mid = EC::sphere(n + 1);
            EC cr = EC::chang_r(host.top(), host.r());
            EC moore_up = EC::moore(n + 1, 2, host.r() + 1);
            MorphChain nil({MorphSymbol(Morph::RSIncTop, s_mid, host),
                            MorphSymbol(Morph::MoorePinch, moore_up, s_mid),
                            MorphSymbol(Morph::CRToMoore, cr, moore_up),
                            MorphSymbol(Morph::RSPinchCR, host, cr)});
            make(nil, cls(host, degree, {{Gen::ICheckEta2, 1}}),
                 cls(host, degree, {{Gen::ICheckPEtaTildeEta, 1}}));
            break;
        }
        default:
            break;
    }
    return out;
}

RulePack rule_pack(const RuleBounds& b) {
    const int n = b.bottom;
    const int degree = n + 3;
    if (n < 5) throw StructuralError("rule_pack needs bottom >= 5");

    const EC s_bot = EC::sphere(n);          // carries eta^3, alpha1 parts of nu
    const EC s_mid = EC::sphere(n + 1);
    const EC s_top = EC::sphere(n + 2);      // carries eta
    const EC c_eta = EC::chang_eta(n + 2);

    std::vector<ClassInstance> inst;
    auto add_inst = [&](const EC& host, GroupElement v, std::string name, int level) {
        inst.push_back({host, std::move(v), std::move(name), level});
        return inst.size() - 1;
    };

    // --- 2-primary ladder ---------------------------------------------
    std::map<long, std::size_t> etat;         // s -> etatilde_s on P^{n+2}(2^s)
    std::map<long, std::size_t> moore_ee;     // r -> etatilde_r eta on P^{n+1}(2^r)
    std::map<std::pair<long, long>, std::size_t> check_ee;  // (r,s)
    std::map<long, std::size_t> bar_ee;       // r
    std::map<long, std::size_t> moore_e2;     // s -> i eta^2 on P^{n+2}(2^s)
    std::map<long, std::size_t> hat_e2;       // s
    std::map<std::pair<long, long>, std::size_t> check_e2;  // (s,r)
    std::size_t eta_id, eta3_id;
    std::map<long, std::size_t> moore_e3;     // r >= 3 -> i eta^3 on P^{n+1}(2^r)

    int lvl = 0;
    for (long s = 1; s <= b.smax; ++s) {
        EC h = EC::moore(n + 2, 2, s);
        etat[s] = add_inst(h, cls(h, degree, {{Gen::EtaTilde, 1}}), "etatilde(" + std::to_string(s) + ")", lvl++);
    }
    eta_id = add_inst(s_top, cls(s_top, degree, {{Gen::Eta, 1}}), "eta", lvl++);
    for (long r = 1; r <= b.rmax; ++r) {
        EC h = EC::moore(n + 1, 2, r);
        moore_ee[r] = add_inst(h, cls(h, degree, {{Gen::EtaTildeEta, 1}}),
                               "etatilde_eta(" + std::to_string(r) + ")", lvl++);
        for (long s = 1; s <= b.smax; ++s) {
            EC c = EC::chang_rs(n + 2, r, s);
            check_ee[{r, s}] = add_inst(c, cls(c, degree, {{Gen::ICheckPEtaTildeEta, 1}}),
                                        "icheckP_etatilde_eta(" + std::to_string(r) + "," +
                                            std::to_string(s) + ")",
                                        lvl);
        }
        ++lvl;
        EC cbar = EC::chang_r(n + 2, r);
        bar_ee[r] = add_inst(cbar, cls(cbar, degree, {{Gen::IBarPEtaTildeEta, 1}}),
                             "ibarP_etatilde_eta(" + std::to_string(r) + ")", lvl++);
    }
    for (long s = b.smax; s >= 1; --s) {
        EC h = EC::moore(n + 2, 2, s);
        moore_e2[s] = add_inst(
            h,
            s == 1 ? cls(h, degree, {{Gen::EtaTilde, 2}}) : cls(h, degree, {{Gen::IEta2, 1}}),
            "i_eta2(" + std::to_string(s) + ")", lvl++);
    }
    for (long s = b.smax; s >= 1; --s) {
        EC c = EC::chang_s(n + 2, s);
        hat_e2[s] = add_inst(c, cls(c, degree, {{Gen::IHatEta2, 1}}),
                             "ihat_eta2(" + std::to_string(s) + ")", lvl++);
        for (long r = 1; r <= b.rmax; ++r) {
            EC crs = EC::chang_rs(n + 2, r, s);
            check_e2[{s, r}] = add_inst(crs, cls(crs, degree, {{Gen::ICheckEta2, 1}}),
                                        "icheck_eta2(" + std::to_string(s) + "," +
                                            std::to_string(r) + ")",
                                        lvl);
        }
        ++lvl;
    }
    eta3_id = add_inst(s_bot, cls(s_bot, degree, {{Gen::Nu, 12}}), "eta3", lvl++);
    for (long r = 3; r <= b.rmax; ++r) {
        EC h = EC::moore(n + 1, 2, r);
        moore_e3[r] = add_inst(h, cls(h, degree, {{Gen::INu, 12}}),
                               "i_eta3(" + std::to_string(r) + ")", lvl++);
    }

    // --- 3-primary classes ---------------------------------------------
    std::size_t a1 = add_inst(s_bot, cls(s_bot, degree, {{Gen::Nu, 16}}), "alpha1", lvl);
    std::size_t a1_eta =
        add_inst(c_eta, cls(c_eta, degree, {{Gen::IEtaNu, 4}}), "i_eta_alpha1", lvl);
    std::map<long, std::size_t> a1_hat;
    for (long s = 1; s <= b.smax; ++s) {
        EC c = EC::chang_s(n + 2, s);
        a1_hat[s] = add_inst(c, cls(c, degree, {{Gen::IHatNu, 4}}),
                             "ihat_alpha1(" + std::to_string(s) + ")", lvl);
    }
    ++lvl;
    std::map<long, std::size_t> a1_moore;
    for (long r = b.rmax3; r >= 1; --r) {
        EC h = EC::moore(n + 1, 3, r);
        a1_moore[r] = add_inst(h, cls(h, degree, {{Gen::IAlpha1, 1}}),
                               "i_alpha1(3^" + std::to_string(r) + ")", lvl++);
    }

    // --- basic edges -----------------------------------------------------
    std::vector<Edge> edges;
    auto sym = [&](Morph t, const EC& s, const EC& tg) { return MorphSymbol(t, s, tg); };
    auto edge1 = [&](std::size_t u, std::size_t v, const FormalMorph& w, const std::string& id) {
        edges.push_back({u, v, w, id});
    };
    auto chainw = [&](std::initializer_list<MorphSymbol> syms, long coeff = 1) {
        return FormalMorph::of_chain(MorphChain(std::vector<MorphSymbol>(syms)), coeff);
    };

    for (long s = 1; s <= b.smax; ++s) {
        EC ps = EC::moore(n + 2, 2, s);
        for (long s2 = s + 1; s2 <= b.smax; ++s2)
            edge1(etat[s], etat[s2],
                  FormalMorph::single(sym(Morph::BChi, ps, EC::moore(n + 2, 2, s2))),
                  "prec-etatilde-chi");
        edge1(etat[s], eta_id, FormalMorph::single(sym(Morph::MoorePinch, ps, s_top)),
              "prec-etatilde-eta");
    }
    for (long r = 1; r <= b.rmax; ++r) {
        EC pr = EC::moore(n + 1, 2, r);
        edge1(eta_id, moore_ee[r], FormalMorph::single(sym(Morph::EtaTildeMap, s_top, pr)),
              "prec-eta-lift");
        for (long s = 1; s <= b.smax; ++s)
            edge1(moore_ee[r], check_ee[{r, s}],
                  FormalMorph::single(sym(Morph::RSIncP, pr, EC::chang_rs(n + 2, r, s))),
                  "prec-moore-to-check");
        edge1(moore_ee[r], bar_ee[r],
              FormalMorph::single(sym(Morph::CRIncP, pr, EC::chang_r(n + 2, r))),
              "prec-moore-to-bar");
        for (long s = 1; s <= b.smax; ++s)
            edge1(check_ee[{r, s}], bar_ee[r],
                  FormalMorph::single(
                      sym(Morph::RSPinchCR, EC::chang_rs(n + 2, r, s), EC::chang_r(n + 2, r))),
                  "prec-check-to-bar");
        for (long r2 = r + 1; r2 <= b.rmax; ++r2) {
            edge1(bar_ee[r], moore_ee[r2],
                  FormalMorph::single(
                      sym(Morph::CRToMoore, EC::chang_r(n + 2, r), EC::moore(n + 1, 2, r2))),
                  "prec-bar-to-moore");
            edge1(moore_ee[r], moore_ee[r2],
                  FormalMorph::single(sym(Morph::BChi, pr, EC::moore(n + 1, 2, r2))),
                  "prec-moore-chi");
        }
        // out of the etatilde*eta block into the eta^2 block
        for (long s = 1; s <= b.smax; ++s) {
            EC ps2 = EC::moore(n + 2, 2, s);
            edge1(moore_ee[r], moore_e2[s],
                  chainw({sym(Morph::MooreInc, s_mid, ps2), sym(Morph::MoorePinch, pr, s_mid)}),
                  "prec-eta2-lift");
            edge1(moore_ee[r], hat_e2[s],
                  chainw({sym(Morph::CSIncTop, s_mid, EC::chang_s(n + 2, s)),
                          sym(Morph::MoorePinch, pr, s_mid)}),
                  "prec-eta2-lift");
        }
        edge1(moore_ee[r], eta3_id,
              chainw({sym(Morph::Eta, s_mid, s_bot), sym(Morph::MoorePinch, pr, s_mid)}),
              "prec-eta3-lift");
    }
    // eta can also feed the eta^2 and eta^3 classes directly
    for (long s = 1; s <= b.smax; ++s) {
        edge1(eta_id, moore_e2[s],
              chainw({sym(Morph::MooreInc, s_mid, EC::moore(n + 2, 2, s)),
                      sym(Morph::Eta, s_top, s_mid)}),
              "prec-eta2-lift");
        edge1(eta_id, hat_e2[s],
              chainw({sym(Morph::CSIncTop, s_mid, EC::chang_s(n + 2, s)),
                      sym(Morph::Eta, s_top, s_mid)}),
              "prec-eta2-lift");
    }
    edge1(eta_id, eta3_id, FormalMorph::single(sym(Morph::Eta2, s_top, s_bot)), "prec-eta3-lift");

    // the eta^2 block, descending in s
    for (long s = 1; s <= b.smax; ++s) {
        EC ps = EC::moore(n + 2, 2, s);
        EC cs = EC::chang_s(n + 2, s);
        for (long s0 = 1; s0 < s; ++s0) {
            edge1(moore_e2[s], hat_e2[s0],
                  FormalMorph::single(sym(Morph::CSXi, ps, EC::chang_s(n + 2, s0))),
                  "prec-moore-eta2-to-hat");
            edge1(hat_e2[s], hat_e2[s0],
                  FormalMorph::single(sym(Morph::CSLambdaDown, cs, EC::chang_s(n + 2, s0))),
                  "prec-hat-eta2-down");
        }
        for (long r = 1; r <= b.rmax; ++r) {
            edge1(hat_e2[s], check_e2[{s, r}],
                  FormalMorph::single(sym(Morph::CSToRS, cs, EC::chang_rs(n + 2, r, s))),
                  "prec-hat-to-check");
            edge1(check_e2[{s, r}], moore_e2[s],
                  FormalMorph::single(sym(Morph::RSPinchMoore, EC::chang_rs(n + 2, r, s), ps)),
                  "prec-check-to-moore");
        }
        edge1(moore_e2[s], eta3_id, FormalMorph::single(sym(Morph::EtaCoext, ps, s_bot)),
              "prec-eta2-to-eta3");
    }
    for (long r = 3; r <= b.rmax; ++r)
        edge1(eta3_id, moore_e3[r],
              FormalMorph::single(sym(Morph::MooreInc, s_bot, EC::moore(n + 1, 2, r))),
              "prec-eta3-moore");

    // --- 3-primary edges -------------------------------------------------
    edge1(a1, a1_eta, FormalMorph::single(sym(Morph::CEtaInc, s_bot, c_eta)), "prec-alpha1-up");
    edge1(a1_eta, a1, FormalMorph::single(sym(Morph::ZetaBar, c_eta, s_bot), -1),
          "prec-alpha1-down");
    for (long s = 1; s <= b.smax; ++s) {
        EC cs = EC::chang_s(n + 2, s);
        edge1(a1, a1_hat[s], FormalMorph::single(sym(Morph::CSIncBot, s_bot, cs)),
              "prec-alpha1-up");
        edge1(a1_hat[s], a1,
              chainw({sym(Morph::ZetaBar, c_eta, s_bot), sym(Morph::CSPinchEta, cs, c_eta)}, -1),
              "prec-alpha1-down");
        edge1(a1_hat[s], a1_eta, FormalMorph::single(sym(Morph::CSPinchEta, cs, c_eta)),
              "prec-alpha1-hat-to-eta");
        for (long s2 = 1; s2 <= b.smax; ++s2) {
            if (s2 < s)
                edge1(a1_hat[s], a1_hat[s2],
                      FormalMorph::single(sym(Morph::CSMuDown, cs, EC::chang_s(n + 2, s2))),
                      "prec-alpha1-mu");
            if (s < s2)
                edge1(a1_hat[s], a1_hat[s2],
                      FormalMorph::single(sym(Morph::CSThetaUp, cs, EC::chang_s(n + 2, s2))),
                      "prec-alpha1-theta");
        }
    }
    for (long r = 1; r <= b.rmax3; ++r) {
        EC p3 = EC::moore(n + 1, 3, r);
        edge1(a1, a1_moore[r], FormalMorph::single(sym(Morph::MooreInc, s_bot, p3)),
              "prec-alpha1-to-moore3");
        for (long r0 = 1; r0 < r; ++r0)
            edge1(a1_moore[r], a1_moore[r0],
                  FormalMorph::single(sym(Morph::BChi, p3, EC::moore(n + 1, 3, r0))),
                  "prec-moore3-down");
    }

    // --- transitive closure with verified witnesses ----------------------
    std::vector<PrecRule> prec;
    std::map<std::pair<std::size_t, std::size_t>, FormalMorph> best;
    auto verify = [&](std::size_t u, std::size_t v, const FormalMorph& w) -> bool {
        try {
            return compose(w, degree, inst[u].value) == inst[v].value;
        } catch (const UnknownComposite&) {
            return false;
        } catch (const UnsupportedTable&) {
            return false;
        }
    };
    for (const Edge& e : edges) {
        if (!verify(e.from, e.to, e.witness))
            throw StructuralError("rule witness failed verification: " + inst[e.from].name +
                                  " -> " + inst[e.to].name + " via " + e.witness.to_string());
        best.insert({{e.from, e.to}, e.witness});
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : edges) {
            std::vector<std::pair<std::pair<std::size_t, std::size_t>, FormalMorph>> found;
            for (const auto& [uv, w] : best) {
                if (uv.second != e.from) continue;
                auto key = std::make_pair(uv.first, e.to);
                if (best.count(key)) continue;
                FormalMorph comp = e.witness.after(w);
                if (verify(uv.first, e.to, comp)) found.push_back({key, comp});
            }
            for (auto& [key, w] : found) {
                best.insert({key, w});
                changed = true;
            }
        }
    }
    for (const auto& [uv, w] : best) {
        const auto& [u, v] = uv;
        std::string id;
        for (const Edge& e : edges)
            if (e.from == u && e.to == v) {
                id = e.rule_id;
                break;
            }
        if (id.empty()) id = "prec-chain";
        prec.push_back({inst[u].host, inst[u].value, inst[v].host, inst[v].value, w, degree, id});
    }

    // --- joint two/three-primary rules ------------------------------------
    auto joint = [&](const EC& ah, GroupElement av, const EC& bh, GroupElement bv,
                     const FormalMorph& w, const std::string& id) {
        try {
            if (compose(w, degree, av) != bv)
                throw StructuralError("joint rule witness failed: " + id);
        } catch (const UnknownComposite&) {
            throw StructuralError("joint rule witness untabulated: " + id);
        }
        prec.push_back({ah, std::move(av), bh, std::move(bv), w, degree, id});
    };

    GroupElement four_nu = cls(s_bot, degree, {{Gen::Nu, 4}});
    joint(s_bot, four_nu, s_bot, cls(s_bot, degree, {{Gen::Nu, 16}}),
          FormalMorph::identity(s_bot, -2), "joint-4nu-to-alpha1");
    joint(s_bot, four_nu, s_bot, cls(s_bot, degree, {{Gen::Nu, 12}}),
          FormalMorph::identity(s_bot, 3), "joint-4nu-to-eta3");
    for (long s = 1; s <= b.smax; ++s) {
        EC cs = EC::chang_s(n + 2, s);
        joint(s_bot, four_nu, cs, cls(cs, degree, {{Gen::IHatNu, 4}}),
              FormalMorph::single(sym(Morph::CSIncBot, s_bot, cs)), "joint-4nu-to-hat");
        GroupElement combo = cls(cs, degree, {{Gen::IHatNu, 4}, {Gen::IHatEta2, 1}});
        joint(cs, combo, s_bot, cls(s_bot, degree, {{Gen::Nu, 16}}),
              chainw({sym(Morph::ZetaBar, c_eta, s_bot), sym(Morph::CSPinchEta, cs, c_eta)}, -1),
              "joint-hat-to-alpha1");
        joint(cs, combo, s_bot, cls(s_bot, degree, {{Gen::Nu, 12}}),
              FormalMorph::single(sym(Morph::CSMu, cs, s_bot)), "joint-hat-to-eta3");
        joint(cs, combo, cs, cls(cs, degree, {{Gen::IHatNu, 4}}), FormalMorph::identity(cs, -2),
              "joint-hat-to-hat-alpha1");
        joint(cs, combo, cs, cls(cs, degree, {{Gen::IHatEta2, 1}}), FormalMorph::identity(cs, 3),
              "joint-hat-to-hat-eta2");
        for (long s2 = 1; s2 < s; ++s2) {
            EC cs2 = EC::chang_s(n + 2, s2);
            joint(cs, combo, cs2, cls(cs2, degree, {{Gen::IHatNu, 4}}),
                  FormalMorph::single(sym(Morph::CSMuDown, cs, cs2)), "joint-mu-down");
            joint(cs, combo, cs2, cls(cs2, degree, {{Gen::IHatEta2, 1}}),
                  FormalMorph::single(sym(Morph::CSLambdaDown, cs, cs2)), "joint-lambda-down");
        }
        for (long s2 = s + 1; s2 <= b.smax; ++s2) {
            EC cs2 = EC::chang_s(n + 2, s2);
            joint(cs, combo, cs2, cls(cs2, degree, {{Gen::IHatNu, 4}}),
                  FormalMorph::single(sym(Morph::CSThetaUp, cs, cs2)), "joint-theta-up");
        }
    }

    RulePack pack;
    pack.degree = degree;
    pack.prec = std::move(prec);
    for (long s = 1; s <= b.smax; ++s) {
        for (auto& p : plus_rules_for(EC::moore(n + 1, 2, s), degree)) pack.plus.push_back(p);
        for (auto& p : plus_rules_for(EC::moore(n + 2, 2, s), degree)) pack.plus.push_back(p);
        for (long r = 1; r <= b.rmax; ++r)
            for (auto& p : plus_rules_for(EC::chang_rs(n + 2, r, s), degree))
                pack.plus.push_back(p);
    }

    // dedupe plus rules (Moore hosts appear twice in the loops above)
    std::sort(pack.plus.begin(), pack.plus.end(), [](const PlusRule& a, const PlusRule& c) {
        return a.host < c.host;
    });
    pack.plus.erase(std::unique(pack.plus.begin(), pack.plus.end(),
                                [](const PlusRule& a, const PlusRule& c) {
                                    return a.host == c.host && a.eliminated == c.eliminated;
                                }),
                    pack.plus.end());

    for (const PlusRule& p : pack.plus) {
        GroupElement sum = add(pi(p.host, p.degree).group, p.kept, p.eliminated);
        if (compose(p.equivalence, p.degree, sum) != p.kept)
            throw StructuralError("plus rule failed verification on " + p.host.to_string());
    }
    return pack;
}

}  // namespace chang
