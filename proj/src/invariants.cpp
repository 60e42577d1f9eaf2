#include "chang/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace chang {

namespace {

std::vector<long> sorted(std::vector<long> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string list_to_string(const std::vector<long>& v) {
    if (v.empty()) return "none";
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

std::vector<long> parse_list(const std::string& text) {
    std::vector<long> out;
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty() || t == "none") return out;
    std::size_t i = 0;
    while (i < t.size()) {
        std::size_t j = t.find(',', i);
        if (j == std::string::npos) j = t.size();
        out.push_back(std::stol(t.substr(i, j - i)));
        i = j + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw StructuralError("expected boolean, got '" + v + "'");
}

}  // namespace

void ManifoldInvariants::validate() const {
    auto fail = [](const std::string& what) { throw InvalidSplitting(what); };
    if (l < 0 || d < 0) fail("l and d must be >= 0");
    if (split.k < 0) fail("k must be >= 0");
    if (split.k + split.t2() > l) fail("k+t2 <= l violated");
    if (split.k + split.t3() > l) fail("k+t3 <= l violated");
    if (split.rcheck.size() != split.scheck.size())
        fail("rcheck and scheck must both have t4 entries");
    for (const auto* lst : {&split.s, &split.r, &split.rbar, &split.shat, &split.rcheck,
                            &split.scheck})
        for (long e : *lst)
            if (e < 1) fail("splitting exponents must be >= 1");

    const std::vector<long> t2exp = sorted(torsion.exponents(2));
    std::vector<long> rside = split.r;
    rside.insert(rside.end(), split.rbar.begin(), split.rbar.end());
    rside.insert(rside.end(), split.rcheck.begin(), split.rcheck.end());
    if (split.t1() + split.t2() + split.t4() != m2()) fail("t1+t2+t4 != m2");
    if (sorted(rside) != t2exp) fail("r-side exponents do not realize T2");
    std::vector<long> sside = split.s;
    sside.insert(sside.end(), split.shat.begin(), split.shat.end());
    sside.insert(sside.end(), split.scheck.begin(), split.scheck.end());
    if (split.t0() + split.t3() + split.t4() != m2()) fail("t0+t3+t4 != m2");
    if (sorted(sside) != t2exp) fail("s-side exponents do not realize T2");

    flags.validate();
    if (flags.star && m3() == 0) throw FlagMismatch("condition_star needs 3-torsion");
    if (selection && selection->j0 < 1) fail("selection j0 must be >= 1");
    if (selection && selection->j0p && (*selection->j0p < 1 || *selection->j0p > m3()))
        fail("selection j0p out of range");
}

ManifoldInvariants parse_descriptor(const std::string& text) {
    ManifoldInvariants inv;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw StructuralError("descriptor line needs '=': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!kv.emplace(key, val).second)
            throw StructuralError("duplicate descriptor key: " + key);
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    if (auto v = take("l")) inv.l = std::stol(*v);
    if (auto v = take("d")) inv.d = std::stol(*v);
    if (auto v = take("torsion")) inv.torsion = TorsionDecomposition::parse(*v);
    if (auto v = take("k")) inv.split.k = std::stol(*v);
    if (auto v = take("s")) inv.split.s = parse_list(*v);
    if (auto v = take("r")) inv.split.r = parse_list(*v);
    if (auto v = take("rbar")) inv.split.rbar = parse_list(*v);
    if (auto v = take("shat")) inv.split.shat = parse_list(*v);
    if (auto v = take("rcheck")) inv.split.rcheck = parse_list(*v);
    if (auto v = take("scheck")) inv.split.scheck = parse_list(*v);
    if (auto v = take("smooth")) inv.smooth = parse_bool(*v);
    if (auto v = take("flags")) {
        std::istringstream fs(*v);
        std::string item;
        while (fs >> item) {
            if (!item.empty() && item.back() == ',') item.pop_back();
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw StructuralError("flag entries look like name=0|1: " + item);
            std::string name = item.substr(0, eq);
            bool val = parse_bool(item.substr(eq + 1));
            if (name == "sq2") inv.flags.sq2 = val;
            else if (name == "theta") inv.flags.theta = val;
            else if (name == "triple") inv.flags.triple = val;
            else if (name == "p1") inv.flags.p1 = val;
            else if (name == "star") inv.flags.star = val;
            else if (name == "psi_trivial") inv.flags.psi_trivial = val;
            else throw StructuralError("unknown flag: " + name);
        }
    }
    if (auto v = take("selection")) {
        Selection sel;
        std::istringstream ss(*v);
        std::string item;
        while (ss >> item) {
            if (!item.empty() && item.back() == ',') item.pop_back();
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw StructuralError("selection entries look like key=value: " + item);
            std::string name = item.substr(0, eq);
            std::string val = item.substr(eq + 1);
            if (name == "member") sel.member = val;
            else if (name == "j0") sel.j0 = std::stol(val);
            else if (name == "j0p") sel.j0p = std::stol(val);
            else throw StructuralError("unknown selection key: " + name);
        }
        inv.selection = sel;
    }
    if (!kv.empty()) throw StructuralError("unknown descriptor key: " + kv.begin()->first);
    inv.validate();
    return inv;
}

GeneralAttachingForm general_attaching_form(const ManifoldInvariants& inv) {
    inv.validate();
    const auto& sp = inv.split;
    GeneralAttachingForm form;
    std::vector<ElementaryComplex> summands;
    std::vector<std::vector<CoefficientDomain>> domains;
    auto push = [&](const ElementaryComplex& c, std::vector<CoefficientDomain> doms) {
        summands.push_back(c);
        domains.push_back(std::move(doms));
    };
    for (long rp : inv.rprime())
        push(ElementaryComplex::moore(6, 3, rp), {{3, 1}});
    for (long i = 0; i < inv.l - sp.k - sp.t3(); ++i)
        push(ElementaryComplex::sphere(5), {{24, 4}});
    for (long i = 0; i < sp.k; ++i)
        push(ElementaryComplex::chang_eta(7), {{12, 4}});
    for (long i = 0; i < inv.l - sp.k - sp.t2(); ++i)
        push(ElementaryComplex::sphere(7), {{2, 1}});
    for (long s : sp.s) {
        if (s == 1)
            push(ElementaryComplex::moore(7, 2, s), {{4, 1}});
        else
            push(ElementaryComplex::moore(7, 2, s), {{2, 1}, {2, 1}});
    }
    for (long r : sp.r) {
        CoefficientDomain nu = r >= 3 ? CoefficientDomain{8, 4}
                                      : CoefficientDomain{1L << min_exp(r, 3), 0};
        push(ElementaryComplex::moore(6, 2, r), {nu, {2, 1}});
    }
    for (long r : sp.rbar)
        push(ElementaryComplex::chang_r(7, r), {{1L << min_exp(r, 2), 0}, {2, 1}});
    for (long s : sp.shat)
        push(ElementaryComplex::chang_s(7, s), {{2, 1}, {12, 4}});
    for (std::size_t j = 0; j < sp.rcheck.size(); ++j)
        push(ElementaryComplex::chang_rs(7, sp.rcheck[j], sp.scheck[j]),
             {{2, 1}, {1L << min_exp(sp.rcheck[j], 2), 0}, {2, 1}});
    if (!summands.empty()) {
        form.wedge = WedgeSpace(summands);
        for (std::size_t i = 0; i < summands.size(); ++i) {
            const AbelianGroup& g = pi(summands[i], form.degree).group;
            if (g.size() != domains[i].size())
                throw StructuralError("general form slot count mismatch on " +
                                      summands[i].to_string());
            for (std::size_t k = 0; k < g.size(); ++k)
                if (domains[i][k].modulus != g.summands()[k].order)
                    throw StructuralError("general form modulus mismatch on " +
                                          summands[i].to_string());
        }
    }
    form.domains = std::move(domains);
    return form;
}

bool GeneralAttachingForm::admits(const AttachingVector& v) const {
    if (!wedge) return false;
    if (v.wedge() != *wedge || v.degree() != degree) return false;
    for (std::size_t i = 0; i < domains.size(); ++i)
        for (std::size_t k = 0; k < domains[i].size(); ++k) {
            long c = v.entry(i).coefficient(k);
            const CoefficientDomain& d = domains[i][k];
            if (d.step == 0 ? c != 0 : c % d.step != 0) return false;
        }
    return true;
}

AttachingVector GeneralAttachingForm::sample(std::uint64_t index) const {
    if (!wedge) throw StructuralError("sample: the wedge is contractible");
    // splitmix64 stream keyed by the index
    auto next = [state = index * 0x9E3779B97F4A7C15ULL + 1]() mutable {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    AttachingVector v(*wedge, degree);
    if (index == 0) return v;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        const AbelianGroup& g = pi((*wedge)[i], degree).group;
        std::vector<long> coeffs(g.size(), 0);
        for (std::size_t k = 0; k < domains[i].size(); ++k) {
            const CoefficientDomain& d = domains[i][k];
            if (d.step == 0) continue;
            long values = d.modulus / d.step;
            coeffs[k] = d.step * static_cast<long>(next() % static_cast<std::uint64_t>(values));
        }
        v.set_entry(i, GroupElement(g, std::move(coeffs)));
    }
    return v;
}

std::string print_descriptor(const ManifoldInvariants& inv) {
    std::ostringstream os;
    os << "l = " << inv.l << "\n";
    os << "d = " << inv.d << "\n";
    os << "torsion = " << inv.torsion.to_string() << "\n";
    os << "k = " << inv.split.k << "\n";
    os << "s = " << list_to_string(inv.split.s) << "\n";
    os << "r = " << list_to_string(inv.split.r) << "\n";
    os << "rbar = " << list_to_string(inv.split.rbar) << "\n";
    os << "shat = " << list_to_string(inv.split.shat) << "\n";
    os << "rcheck = " << list_to_string(inv.split.rcheck) << "\n";
    os << "scheck = " << list_to_string(inv.split.scheck) << "\n";
    os << "flags = sq2=" << inv.flags.sq2 << " theta=" << inv.flags.theta
       << " triple=" << inv.flags.triple << " p1=" << inv.flags.p1 << " star=" << inv.flags.star
       << "\n";
    os << "smooth = " << (inv.smooth ? 1 : 0) << "\n";
    if (inv.selection) {
        os << "selection =";
        if (inv.selection->member) os << " member=" << *inv.selection->member;
        os << " j0=" << inv.selection->j0;
        if (inv.selection->j0p) os << " j0p=" << *inv.selection->j0p;
        os << "\n";
    }
    return os.str();
}

}  // namespace chang
