#include "chang/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace chang {

namespace {

using EC = ElementaryComplex;
using Terms = std::vector<std::pair<Gen, long>>;

std::vector<long> distinct_in_order(const std::vector<long>& v) {
    std::vector<long> out;
    for (long x : v)
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    return out;
}

std::string shell_name(Locality loc) { return loc == Locality::Two ? "V7" : "W7"; }

std::string join_wedge(const std::vector<EC>& summands) {
    std::ostringstream os;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        if (i) os << " v ";
        os << summands[i].to_string();
    }
    return os.str();
}

struct Carrier {
    EC host;
    Terms terms;
};

// Removes one summand of each carrier type from the shell list.
std::vector<EC> shell_minus(const std::vector<EC>& shell, const std::vector<Carrier>& carriers) {
    std::vector<EC> out = shell;
    for (const Carrier& c : carriers) {
        auto it = std::find(out.begin(), out.end(), c.host);
        if (it == out.end())
            throw StructuralError("carrier " + c.host.to_string() + " is not a shell summand");
        out.erase(it);
    }
    return out;
}

WedgeDecomposition cone_candidate(const std::string& tag, Locality loc,
                                  const std::vector<EC>& shell,
                                  const std::vector<Carrier>& carriers,
                                  const std::string& symbolic_override = "") {
    WedgeDecomposition dec;
    dec.case_tag = tag;
    dec.locality = loc;
    dec.free_summands = shell_minus(shell, carriers);
    std::vector<EC> hosts;
    for (const Carrier& c : carriers) hosts.push_back(c.host);
    WedgeSpace xw(hosts);
    AttachingVector v(xw, 8);
    for (std::size_t i = 0; i < carriers.size(); ++i)
        v.set_entry(i, make_class(carriers[i].host, 8, carriers[i].terms));
    dec.cone = {xw, v};
    if (!symbolic_override.empty()) {
        dec.symbolic = symbolic_override;
    } else {
        std::string xs = xw.size() == 1 ? xw[0].to_string() : "(" + join_wedge(hosts) + ")";
        dec.symbolic = "(" + shell_name(loc) + "/" + xs + ") v (" + xs + " u" + v.to_string() +
                       " e9)";
    }
    return dec;
}

WedgeDecomposition plain_candidate(const std::string& tag, Locality loc, std::string symbolic,
                                   std::vector<EC> summands) {
    WedgeDecomposition dec;
    dec.case_tag = tag;
    dec.locality = loc;
    dec.symbolic = std::move(symbolic);
    dec.free_summands = std::move(summands);
    return dec;
}

struct XChoice {
    Carrier carrier;
    std::string note;
};

std::vector<XChoice> x_candidates(const ManifoldInvariants& inv) {
    const auto& sp = inv.split;
    std::vector<XChoice> out;
    if (inv.flags.star) {
        std::vector<long> rp = inv.rprime();
        if (inv.selection && inv.selection->j0p) {
            long r = rp.at(static_cast<std::size_t>(*inv.selection->j0p - 1));
            out.push_back({{EC::moore(6, 3, r), {{Gen::IAlpha1, 1}}}, ""});
        } else {
            for (long r : distinct_in_order(rp))
                out.push_back({{EC::moore(6, 3, r), {{Gen::IAlpha1, 1}}}, ""});
        }
        return out;
    }
    if (inv.l - sp.k - sp.t3() > 0) {
        out.push_back({{EC::sphere(5), {{Gen::Nu, 16}}}, ""});
        return out;
    }
    if (sp.k > 0) {
        out.push_back({{EC::chang_eta(7), {{Gen::IEtaNu, 4}}}, ""});
        if (sp.t3() > 0)
            out.push_back({{EC::chang_s(7, sp.shat[0]), {{Gen::IHatNu, 4}}},
                           "carrier table lists two rows under the same hypothesis; "
                           "both carriers are exposed"});
        return out;
    }
    if (sp.t3() > 0) {
        out.push_back({{EC::chang_s(7, sp.shat[0]), {{Gen::IHatNu, 4}}}, ""});
        return out;
    }
    throw NoCarrier("no carrier summand for the 3-primary attaching class (l-k-t3 = 0, k = 0, t3 = 0)");
}

// Tier members of the theta case, in the order the statement lists them.
struct TierMember {
    std::string id;  // selection member name
    Carrier carrier;
};

std::vector<TierMember> theta_members(const ManifoldInvariants& inv) {
    const auto& sp = inv.split;
    std::vector<TierMember> out;
    for (long s : distinct_in_order(sp.s)) {
        EC h = EC::moore(7, 2, s);
        Terms t = s == 1 ? Terms{{Gen::EtaTilde, 2}} : Terms{{Gen::IEta2, 1}};
        out.push_back({"y", {h, t}});
    }
    for (long r : distinct_in_order(sp.r))
        out.push_back({"a", {EC::moore(6, 2, r), {{Gen::EtaTildeEta, 1}}}});
    for (long r : distinct_in_order(sp.rbar))
        out.push_back({"abar", {EC::chang_r(7, r), {{Gen::IBarPEtaTildeEta, 1}}}});
    for (long s : distinct_in_order(sp.shat))
        out.push_back({"yhat", {EC::chang_s(7, s), {{Gen::IHatEta2, 1}}}});
    std::vector<std::pair<long, long>> rs;
    for (std::size_t j = 0; j < sp.rcheck.size(); ++j) {
        auto p = std::make_pair(sp.rcheck[j], sp.scheck[j]);
        if (std::find(rs.begin(), rs.end(), p) == rs.end()) rs.push_back(p);
    }
    for (auto [r, s] : rs)
        out.push_back({"acheck", {EC::chang_rs(7, r, s), {{Gen::ICheckPEtaTildeEta, 1}}}});
    for (auto [r, s] : rs)
        out.push_back({"ycheck", {EC::chang_rs(7, r, s), {{Gen::ICheckEta2, 1}}}});
    return out;
}

std::vector<TierMember> sq2_members(const ManifoldInvariants& inv) {
    const auto& sp = inv.split;
    std::vector<TierMember> out;
    for (long s : distinct_in_order(sp.s))
        out.push_back({"x", {EC::moore(7, 2, s), {{Gen::EtaTilde, 1}}}});
    if (inv.l - sp.k - sp.t2() > 0) out.push_back({"d", {EC::sphere(7), {{Gen::Eta, 1}}}});
    return out;
}

std::vector<TierMember> triple_members(const ManifoldInvariants& inv) {
    const auto& sp = inv.split;
    std::vector<TierMember> out;
    if (inv.l - sp.k - sp.t3() > 0) out.push_back({"cS", {EC::sphere(5), {{Gen::Nu, 12}}}});
    for (long r : distinct_in_order(sp.r))
        if (r >= 3) out.push_back({"c", {EC::moore(6, 2, r), {{Gen::INu, 12}}}});
    return out;
}

// selection pinning: keep only the member matching (name, j0-indexed value).
std::vector<TierMember> pin_members(const ManifoldInvariants& inv, std::vector<TierMember> members,
                                    const std::vector<std::string>& allowed) {
    if (!inv.selection || !inv.selection->member) return members;
    const std::string& m = *inv.selection->member;
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end())
        throw FlagMismatch("selection member '" + m + "' contradicts the operation flags");
    const auto& sp = inv.split;
    const std::size_t j0 = static_cast<std::size_t>(inv.selection->j0 - 1);
    std::vector<TierMember> out;
    for (auto& tm : members) {
        if (tm.id != m) continue;
        bool match = true;
        auto check = [&](const std::vector<long>& lst, long have) {
            if (j0 >= lst.size())
                throw FlagMismatch("selection j0 exceeds the member's exponent list");
            match = lst[j0] == have;
        };
        if (m == "x" || m == "y") check(sp.s, tm.carrier.host.r());
        else if (m == "a" || m == "c") check(sp.r, tm.carrier.host.r());
        else if (m == "abar") check(sp.rbar, tm.carrier.host.r());
        else if (m == "yhat") check(sp.shat, tm.carrier.host.s());
        else if (m == "acheck" || m == "ycheck") {
            check(sp.rcheck, tm.carrier.host.r());
            if (match) check(sp.scheck, tm.carrier.host.s());
        }
        if (match) out.push_back(tm);
    }
    if (out.empty()) throw FlagMismatch("selection does not match any candidate");
    return out;
}

}  // namespace

std::vector<EC> WedgeDecomposition::all_summands() const {
    std::vector<EC> out = free_summands;
    if (cone)
        for (const auto& c : cone->first.summands()) out.push_back(c);
    return out;
}

std::string WedgeDecomposition::expanded() const {
    std::ostringstream os;
    os << join_wedge(free_summands);
    if (cone) {
        if (!free_summands.empty()) os << " v ";
        std::string xs = cone->first.size() == 1 ? cone->first[0].to_string()
                                                 : "(" + join_wedge(cone->first.summands()) + ")";
        os << "(" << xs << " u" << cone->second.to_string() << " e9)";
    }
    return os.str();
}

namespace {

std::vector<EC> v7_summands(const ManifoldInvariants& inv) {
    inv.validate();
    const auto& sp = inv.split;
    std::vector<EC> out;
    for (long i = 0; i < inv.d; ++i) out.push_back(EC::sphere(6));
    for (long i = 0; i < inv.l - sp.k - sp.t3(); ++i) out.push_back(EC::sphere(5));
    for (long i = 0; i < sp.k; ++i) out.push_back(EC::chang_eta(7));
    for (long i = 0; i < inv.l - sp.k - sp.t2(); ++i) out.push_back(EC::sphere(7));
    for (long s : sp.s) out.push_back(EC::moore(7, 2, s));
    for (long r : sp.r) out.push_back(EC::moore(6, 2, r));
    for (long r : sp.rbar) out.push_back(EC::chang_r(7, r));
    for (long s : sp.shat) out.push_back(EC::chang_s(7, s));
    for (std::size_t j = 0; j < sp.rcheck.size(); ++j)
        out.push_back(EC::chang_rs(7, sp.rcheck[j], sp.scheck[j]));
    return out;
}

std::vector<EC> w7_summands(const ManifoldInvariants& inv) {
    inv.validate();
    const auto& sp = inv.split;
    std::vector<EC> out;
    for (long i = 0; i < inv.d; ++i) out.push_back(EC::sphere(6));
    // P^6(T): the 2-primary part carried by Moore summands, then T_3, T_{>=5}
    for (long r : sp.r) out.push_back(EC::moore(6, 2, r));
    for (const auto& [p, exps] : inv.torsion.primaries())
        if (p >= 3)
            for (long e : exps) out.push_back(EC::moore(6, p, e));
    // P^7(T)
    for (long s : sp.s) out.push_back(EC::moore(7, 2, s));
    for (const auto& [p, exps] : inv.torsion.primaries())
        if (p >= 3)
            for (long e : exps) out.push_back(EC::moore(7, p, e));
    for (long i = 0; i < inv.l - sp.k - sp.t3(); ++i) out.push_back(EC::sphere(5));
    for (long i = 0; i < sp.k; ++i) out.push_back(EC::chang_eta(7));
    for (long i = 0; i < inv.l - sp.k - sp.t2(); ++i) out.push_back(EC::sphere(7));
    for (long r : sp.rbar) out.push_back(EC::chang_r(7, r));
    for (long s : sp.shat) out.push_back(EC::chang_s(7, s));
    for (std::size_t j = 0; j < sp.rcheck.size(); ++j)
        out.push_back(EC::chang_rs(7, sp.rcheck[j], sp.scheck[j]));
    return out;
}

}  // namespace

WedgeSpace build_V7(const ManifoldInvariants& inv) {
    std::vector<EC> out = v7_summands(inv);
    if (out.empty())
        throw InvalidSplitting("the codimension-one skeleton is contractible (V7 is empty)");
    return WedgeSpace(out);
}

WedgeSpace build_W7(const ManifoldInvariants& inv) {
    std::vector<EC> out = w7_summands(inv);
    if (out.empty())
        throw InvalidSplitting("the codimension-one skeleton is contractible (W7 is empty)");
    return WedgeSpace(out);
}

namespace {

std::vector<WedgeDecomposition> classify_2local_shell(const ManifoldInvariants& inv, Locality loc,
                                                      const std::vector<EC>& shell,
                                                      const std::string& thm) {
    const OperationFlags& f = inv.flags;
    std::vector<WedgeDecomposition> out;
    if (!f.sq2 && !f.theta && !f.triple) {
        std::vector<EC> all = {EC::sphere(9)};
        all.insert(all.end(), shell.begin(), shell.end());
        out.push_back(plain_candidate(thm + "/1a", loc, "S9 v " + shell_name(loc), all));
        return out;
    }
    if (f.sq2) {
        auto members = pin_members(inv, sq2_members(inv), {"x", "d"});
        for (const auto& m : members) {
            if (m.id == "d") {
                WedgeDecomposition dec =
                    cone_candidate(thm + "/2", loc, shell, {m.carrier},
                                   "(" + shell_name(loc) + "/S7) v Ceta9");
                out.push_back(std::move(dec));
            } else {
                out.push_back(cone_candidate(thm + "/2", loc, shell, {m.carrier}));
            }
        }
        if (out.empty()) throw FlagMismatch("sq2 flag set but no tier-1 carrier exists");
        return out;
    }
    if (f.theta) {
        auto members = pin_members(inv, theta_members(inv),
                                   {"y", "a", "abar", "yhat", "acheck", "ycheck"});
        if (members.empty()) throw FlagMismatch("theta flag set but no tier-2 carrier exists");
        if (loc == Locality::Total && inv.smooth) return out;  // removed in smooth mode
        for (const auto& m : members)
            out.push_back(cone_candidate(thm + "/1b", loc, shell, {m.carrier}));
        return out;
    }
    // triple operation case
    auto members = pin_members(inv, triple_members(inv), {"cS", "c"});
    if (members.empty()) throw FlagMismatch("triple flag set but no tier-3 carrier exists");
    if (loc == Locality::Two && inv.smooth) return out;  // removed in smooth mode
    for (const auto& m : members)
        out.push_back(cone_candidate(thm + "/1c", loc, shell, {m.carrier}));
    return out;
}

}  // namespace

std::vector<WedgeDecomposition> classify_2local(const ManifoldInvariants& inv) {
    inv.validate();
    std::vector<EC> shell = v7_summands(inv);
    ManifoldInvariants flat = inv;
    flat.flags.p1 = false;
    flat.flags.star = false;
    if (shell.empty()) {
        if (flat.flags.sq2 || flat.flags.theta || flat.flags.triple)
            throw FlagMismatch("operation flags set on a manifold with contractible skeleton");
        return {plain_candidate("Thm1.1/1a", Locality::Two, "S9", {EC::sphere(9)})};
    }
    return classify_2local_shell(flat, Locality::Two, shell, "Thm1.1");
}

std::vector<WedgeDecomposition> classify_3local(const ManifoldInvariants& inv) {
    inv.validate();
    const auto t3 = inv.torsion.exponents(3);
    auto base = [&](std::optional<long> drop_exp) {
        std::vector<EC> w;
        for (long i = 0; i < inv.d; ++i) w.push_back(EC::sphere(6));
        {
            std::vector<long> exps = t3;
            for (long e : exps) w.push_back(EC::moore(7, 3, e));
        }
        std::vector<long> exps = t3;
        if (drop_exp) {
            auto it = std::find(exps.begin(), exps.end(), *drop_exp);
            if (it == exps.end()) throw InvalidSplitting("3-torsion exponent not present");
            exps.erase(it);
        }
        for (long e : exps) w.push_back(EC::moore(6, 3, e));
        return w;
    };
    std::vector<WedgeDecomposition> out;
    if (!inv.flags.p1) {
        std::vector<EC> w = base(std::nullopt);
        for (long i = 0; i < inv.l; ++i) {
            w.push_back(EC::sphere(5));
            w.push_back(EC::sphere(7));
        }
        w.push_back(EC::sphere(9));
        out.push_back(plain_candidate("Thm3loc/1", Locality::Three, join_wedge(w), w));
        return out;
    }
    if (!inv.flags.star) {
        if (inv.l < 1)
            throw NoCarrier("p1 without condition_star needs a free degree-5 carrier (l >= 1)");
        std::vector<EC> w = base(std::nullopt);
        for (long i = 0; i < inv.l - 1; ++i) w.push_back(EC::sphere(5));
        for (long i = 0; i < inv.l; ++i) w.push_back(EC::sphere(7));
        WedgeDecomposition dec;
        dec.case_tag = "Thm3loc/2";
        dec.locality = Locality::Three;
        dec.free_summands = w;
        WedgeSpace xw({EC::sphere(5)});
        AttachingVector v(xw, 8);
        v.set_entry(0, make_class(EC::sphere(5), 8, {{Gen::Nu, 16}}));
        dec.cone = {xw, v};
        dec.symbolic = (w.empty() ? "" : join_wedge(w) + " v ") + "(S5 u" + v.to_string() + " e9)";
        out.push_back(std::move(dec));
        return out;
    }
    // condition_star: the cone sits on an odd Moore summand
    std::vector<long> rp = t3;
    std::vector<long> choices;
    if (inv.selection && inv.selection->j0p)
        choices.push_back(rp.at(static_cast<std::size_t>(*inv.selection->j0p - 1)));
    else
        choices = distinct_in_order(rp);
    for (long r : choices) {
        std::vector<EC> w = base(r);
        for (long i = 0; i < inv.l; ++i) {
            w.push_back(EC::sphere(5));
            w.push_back(EC::sphere(7));
        }
        WedgeDecomposition dec;
        dec.case_tag = "Thm3loc/3";
        dec.locality = Locality::Three;
        dec.free_summands = w;
        EC host = EC::moore(6, 3, r);
        WedgeSpace xw({host});
        AttachingVector v(xw, 8);
        v.set_entry(0, make_class(host, 8, {{Gen::IAlpha1, 1}}));
        dec.cone = {xw, v};
        dec.symbolic = (w.empty() ? "" : join_wedge(w) + " v ") + "(" + host.to_string() + " u" +
                       v.to_string() + " e9)";
        out.push_back(std::move(dec));
    }
    return out;
}

std::vector<WedgeDecomposition> classify_total(const ManifoldInvariants& inv) {
    inv.validate();
    std::vector<EC> shell = w7_summands(inv);
    const OperationFlags& f = inv.flags;
    std::vector<WedgeDecomposition> out;
    if (shell.empty()) {
        if (f.sq2 || f.theta || f.triple || f.p1)
            throw FlagMismatch("operation flags set on a manifold with contractible skeleton");
        return {plain_candidate("Thm1.2/1a", Locality::Total, "S9", {EC::sphere(9)})};
    }

    if (!f.p1) {
        // cases 1a-1d mirror the 2-local statement over the W7 shell
        ManifoldInvariants flat = inv;
        out = classify_2local_shell(flat, Locality::Total, shell, "Thm1.2");
        for (auto& dec : out) {
            if (dec.case_tag == "Thm1.2/2") dec.case_tag = "Thm1.2/1d";
        }
        return out;
    }

    std::vector<XChoice> xs = x_candidates(inv);
    auto alpha_of = [](const XChoice& x) { return x.carrier; };

    if (!f.sq2 && !f.theta && !f.triple) {
        for (const auto& x : xs) {
            WedgeDecomposition dec = cone_candidate("Thm1.2/2a", Locality::Total, shell,
                                                    {alpha_of(x)});
            if (!x.note.empty()) dec.notes.push_back(x.note);
            out.push_back(std::move(dec));
        }
        return out;
    }
    if (f.sq2) {
        auto members = pin_members(inv, sq2_members(inv), {"x", "d"});
        for (const auto& m : members) {
            std::string sub = m.id == "x" ? "Thm1.2/2d(i)" : "Thm1.2/2d(ii)";
            for (const auto& x : xs) {
                WedgeDecomposition dec =
                    cone_candidate(sub, Locality::Total, shell, {m.carrier, alpha_of(x)});
                if (!x.note.empty()) dec.notes.push_back(x.note);
                out.push_back(std::move(dec));
            }
        }
        if (out.empty()) throw FlagMismatch("sq2 flag set but no tier-1 carrier exists");
        return out;
    }
    if (f.theta) {
        auto members = pin_members(inv, theta_members(inv),
                                   {"y", "a", "abar", "yhat", "acheck", "ycheck"});
        if (members.empty()) throw FlagMismatch("theta flag set but no tier-2 carrier exists");
        if (inv.smooth) return out;  // case 2b removed in smooth mode
        std::map<std::string, std::string> sub{{"y", "Thm1.2/2b(i)"},    {"a", "Thm1.2/2b(ii)"},
                                               {"abar", "Thm1.2/2b(iii)"}, {"yhat", "Thm1.2/2b(iv)"},
                                               {"acheck", "Thm1.2/2b(vi)"},
                                               {"ycheck", "Thm1.2/2b(vii)"}};
        for (const auto& m : members) {
            for (const auto& x : xs) {
                if (m.id == "yhat" && x.carrier.host.kind() == Kind::ChangS) {
                    // both classes merge onto the theta carrier
                    Carrier merged{m.carrier.host,
                                   {{Gen::IHatEta2, 1}, {Gen::IHatNu, 4}}};
                    out.push_back(
                        cone_candidate("Thm1.2/2b(v)", Locality::Total, shell, {merged}));
                    continue;
                }
                WedgeDecomposition dec = cone_candidate(sub.at(m.id), Locality::Total, shell,
                                                        {m.carrier, alpha_of(x)});
                if (!x.note.empty()) dec.notes.push_back(x.note);
                out.push_back(std::move(dec));
            }
        }
        return out;
    }
    // triple case
    auto members = pin_members(inv, triple_members(inv), {"cS", "c"});
    if (members.empty()) throw FlagMismatch("triple flag set but no tier-3 carrier exists");
    for (const auto& m : members) {
        if (m.id == "cS") {
            if (!f.star) {
                // the 3-primary class shares the sphere: eta^3 + alpha1 = 4 nu
                Carrier merged{EC::sphere(5), {{Gen::Nu, 4}}};
                out.push_back(cone_candidate("Thm1.2/2c(i)", Locality::Total, shell, {merged}));
            } else {
                for (const auto& x : xs)
                    out.push_back(cone_candidate("Thm1.2/2c(ii)", Locality::Total, shell,
                                                 {m.carrier, alpha_of(x)}));
            }
            continue;
        }
        for (const auto& x : xs) {
            WedgeDecomposition dec =
                cone_candidate("Thm1.2/2c(iii)", Locality::Total, shell, {m.carrier, alpha_of(x)});
            if (!x.note.empty()) dec.notes.push_back(x.note);
            out.push_back(std::move(dec));
        }
    }
    return out;
}

bool homology_audit(const WedgeDecomposition& dec, const ManifoldInvariants& inv) {
    // expected: H_{i}(candidate) = H_{i-3}(M), in the candidate's locality
    TorsionDecomposition t = inv.torsion;
    if (dec.locality == Locality::Two) t = t.primary(2);
    if (dec.locality == Locality::Three) t = t.primary(3);
    std::map<int, AbelianGroup> expected;
    expected[5] = AbelianGroup::free(static_cast<int>(inv.l)).direct_sum(t.group());
    expected[6] = AbelianGroup::free(static_cast<int>(inv.d)).direct_sum(t.group());
    expected[7] = AbelianGroup::free(static_cast<int>(inv.l));
    expected[9] = AbelianGroup::free(1);

    std::map<int, AbelianGroup> got;
    for (const EC& c : dec.all_summands())
        for (const auto& [deg, g] : c.homology()) {
            auto it = got.find(deg);
            if (it == got.end())
                got.emplace(deg, g);
            else
                it->second = it->second.direct_sum(g);
        }
    if (dec.cone) {
        auto it = got.find(9);
        if (it == got.end())
            got.emplace(9, AbelianGroup::free(1));
        else
            it->second = it->second.direct_sum(AbelianGroup::free(1));
    }
    std::set<int> degrees;
    for (const auto& [deg, g] : expected)
        if (!g.is_trivial()) degrees.insert(deg);
    for (const auto& [deg, g] : got)
        if (!g.is_trivial()) degrees.insert(deg);
    for (int deg : degrees) {
        AbelianGroup e = expected.count(deg) ? expected[deg] : AbelianGroup::zero();
        AbelianGroup g = got.count(deg) ? got[deg] : AbelianGroup::zero();
        if (!iso_check(e, g)) return false;
    }
    return true;
}

namespace {

bool locally_trivial(const EC& c, long p) {
    for (const auto& [deg, g] : c.homology()) {
        for (const auto& s : g.summands()) {
            if (s.order == 0) return false;
            if (s.order % p == 0) return false;
        }
    }
    return true;
}

// p = 3: Chang complexes split into spheres since their glue is 2-primary.
std::vector<EC> split_3local(const EC& c) {
    switch (c.kind()) {
        case Kind::ChangEta: return {EC::sphere(c.bottom()), EC::sphere(c.top())};
        case Kind::ChangR: return {EC::sphere(c.top())};
        case Kind::ChangS: return {EC::sphere(c.bottom())};
        case Kind::ChangRS: return {};
        default:
            return locally_trivial(c, 3) ? std::vector<EC>{} : std::vector<EC>{c};
    }
}

}  // namespace

WedgeDecomposition localize_decomposition(const WedgeDecomposition& dec, long p) {
    if (p != 2 && p != 3) throw StructuralError("localize_decomposition: p must be 2 or 3");
    WedgeDecomposition out;
    out.case_tag = dec.case_tag + (p == 2 ? "@2" : "@3");
    out.locality = p == 2 ? Locality::Two : Locality::Three;
    for (const EC& c : dec.free_summands) {
        if (p == 2) {
            if (!locally_trivial(c, 2)) out.free_summands.push_back(c);
        } else {
            for (const EC& piece : split_3local(c)) out.free_summands.push_back(piece);
        }
    }
    if (!dec.cone) {
        out.symbolic = join_wedge(out.free_summands);
        return out;
    }
    const WedgeSpace& xw = dec.cone->first;
    AttachingVector v = localize(dec.cone->second, p);
    std::vector<EC> keep;
    std::vector<GroupElement> entries;
    for (std::size_t i = 0; i < xw.size(); ++i) {
        const EC& host = xw[i];
        if (p == 2) {
            if (locally_trivial(host, 2)) continue;  // carrier vanished with its class
            keep.push_back(host);
            entries.push_back(v.entry(i));
        } else {
            // 3-local carriers land on the bottom sphere of the split
            HomotopyGroupTable t = pi(host, 8);
            long alpha_mult = 0;
            for (std::size_t k = 0; k < t.group.size(); ++k) {
                long c = v.entry(i).coefficient(k);
                if (c == 0) continue;
                switch (t.generators[k]) {
                    case Gen::Nu: alpha_mult = c; break;           // already 3-primary
                    case Gen::IEtaNu:
                    case Gen::IHatNu: alpha_mult = 16 * reduce_mod(c, 3); break;
                    case Gen::IAlpha1: alpha_mult = -1; break;     // stays on the Moore summand
                    default: break;
                }
            }
            if (host.kind() == Kind::Moore && host.prime() == 3) {
                keep.push_back(host);
                entries.push_back(v.entry(i));
                continue;
            }
            std::vector<EC> pieces = split_3local(host);
            if (alpha_mult > 0) {
                EC s5 = EC::sphere(host.bottom());
                keep.push_back(s5);
                entries.push_back(make_class(s5, 8, {{Gen::Nu, alpha_mult}}));
                for (const EC& piece : pieces)
                    if (!(piece == s5)) out.free_summands.push_back(piece);
            } else {
                for (const EC& piece : pieces) out.free_summands.push_back(piece);
            }
        }
    }
    // a carrier whose class died splits off the cone
    std::vector<EC> live;
    std::vector<GroupElement> live_entries;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (entries[i].is_zero())
            out.free_summands.push_back(keep[i]);
        else {
            live.push_back(keep[i]);
            live_entries.push_back(entries[i]);
        }
    }
    if (live.empty()) {
        out.free_summands.push_back(EC::sphere(9));
    } else {
        WedgeSpace kw(live);
        out.cone = {kw, AttachingVector(kw, 8, std::move(live_entries))};
    }
    out.symbolic = out.expanded();
    return out;
}

bool same_decomposition(const WedgeDecomposition& a, const WedgeDecomposition& b,
                        const RulePack& pack) {
    std::vector<EC> sa = a.all_summands(), sb = b.all_summands();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    if (a.cone.has_value() != b.cone.has_value()) return false;
    if (!a.cone) return true;
    // normalize: sort carriers, then compare canonical forms
    auto normal = [&](const WedgeDecomposition& d) {
        std::vector<std::size_t> idx(d.cone->first.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return d.cone->first[x] < d.cone->first[y];
        });
        std::vector<EC> hosts;
        std::vector<GroupElement> entries;
        for (std::size_t i : idx) {
            hosts.push_back(d.cone->first[i]);
            entries.push_back(d.cone->second.entry(i));
        }
        WedgeSpace w(hosts);
        return canonicalize(AttachingVector(w, 8, entries), pack).vector;
    };
    AttachingVector ca = normal(a), cb = normal(b);
    return ca.wedge() == cb.wedge() && ca == cb;
}

}  // namespace chang
