#include "chang/morphisms.hpp"

#include <algorithm>
#include <sstream>

namespace chang {

namespace {

long pow2(long e) { return 1L << e; }

using Terms = std::vector<std::pair<Gen, long>>;

// Builds an element of pi(host, degree), ignoring generators whose summand
// was dropped as trivial (order-1) from the table row.
GroupElement emit(const ElementaryComplex& host, int degree, const Terms& terms) {
    HomotopyGroupTable t = pi(host, degree);
    std::vector<long> coeffs(t.group.size(), 0);
    for (const auto& [g, c] : terms) {
        if (auto s = t.slot(g)) coeffs[*s] += c;
    }
    return GroupElement(t.group, std::move(coeffs));
}

bool is_sphere(const ElementaryComplex& c) { return c.kind() == Kind::Sphere; }
bool is_moore2(const ElementaryComplex& c) { return c.kind() == Kind::Moore && c.prime() == 2; }

[[noreturn]] void bad_signature(Morph tag, const ElementaryComplex& s, const ElementaryComplex& t) {
    throw StructuralError("invalid morphism signature: " + morph_name(tag) + ": " + s.to_string() +
                          " -> " + t.to_string());
}

}  // namespace

std::string morph_name(Morph m) {
    switch (m) {
        case Morph::Id: return "id";
        case Morph::Eta: return "eta";
        case Morph::Eta2: return "eta2";
        case Morph::MooreInc: return "i";
        case Morph::MoorePinch: return "q";
        case Morph::EtaTildeMap: return "etatilde";
        case Morph::EtaCoext: return "etacoext";
        case Morph::BChi: return "B";
        case Morph::CEtaInc: return "i_eta";
        case Morph::CEtaPinch: return "q_eta";
        case Morph::ZetaBar: return "zetabar";
        case Morph::ZetaTilde: return "zetatilde";
        case Morph::CREtaInc: return "ibar_eta";
        case Morph::CRIncP: return "ibarP";
        case Morph::CRPinchTop: return "qbar_top";
        case Morph::CRPinchMid: return "qbar_mid";
        case Morph::CRToMoore: return "qbar";
        case Morph::CSIncTop: return "ihat_top";
        case Morph::CSIncBot: return "ihat_bot";
        case Morph::CSPinchTop: return "qhat_top";
        case Morph::CSPinchEta: return "qhat_eta";
        case Morph::CSPinchMoore: return "qhat_P";
        case Morph::CSToRS: return "icheck_C";
        case Morph::CSXi: return "xibar";
        case Morph::CSMu: return "mu";
        case Morph::CSMuDown: return "mu_down";
        case Morph::CSLambdaDown: return "lambda";
        case Morph::CSThetaUp: return "theta";
        case Morph::RSIncTop: return "icheck_top";
        case Morph::RSIncBot: return "icheck_bot";
        case Morph::RSIncP: return "icheckP";
        case Morph::RSPinchTop: return "qcheck_top";
        case Morph::RSPinchMid: return "qcheck_mid";
        case Morph::RSPinchMoore: return "qcheck_P";
        case Morph::RSPinchCR: return "qcheck_C";
    }
    throw StructuralError("unreachable");
}

MorphSymbol::MorphSymbol(Morph tag, ElementaryComplex source, ElementaryComplex target)
    : tag_(tag), source_(std::move(source)), target_(std::move(target)) {
    const auto& s = source_;
    const auto& t = target_;
    bool ok = false;
    switch (tag) {
        case Morph::Id:
            ok = s == t;
            break;
        case Morph::Eta:
            ok = is_sphere(s) && is_sphere(t) && s.top() == t.top() + 1 && t.top() >= 3;
            break;
        case Morph::Eta2:
            ok = is_sphere(s) && is_sphere(t) && s.top() == t.top() + 2 && t.top() >= 3;
            break;
        case Morph::MooreInc:
            ok = is_sphere(s) && t.kind() == Kind::Moore && s.top() == t.bottom();
            break;
        case Morph::MoorePinch:
            ok = s.kind() == Kind::Moore && is_sphere(t) && t.top() == s.bottom() + 1;
            break;
        case Morph::EtaTildeMap:
            ok = is_sphere(s) && is_moore2(t) && s.top() == t.bottom() + 2;
            break;
        case Morph::EtaCoext:
            ok = is_moore2(s) && is_sphere(t) && s.bottom() == t.top() + 1;
            break;
        case Morph::BChi:
            ok = s.kind() == Kind::Moore && t.kind() == Kind::Moore && s.prime() == t.prime() &&
                 s.bottom() == t.bottom();
            break;
        case Morph::CEtaInc:
            ok = is_sphere(s) && t.kind() == Kind::ChangEta && s.top() == t.bottom();
            break;
        case Morph::CEtaPinch:
            ok = s.kind() == Kind::ChangEta && is_sphere(t) && t.top() == s.top();
            break;
        case Morph::ZetaBar:
            ok = s.kind() == Kind::ChangEta && is_sphere(t) && t.top() == s.bottom();
            break;
        case Morph::ZetaTilde:
            ok = is_sphere(s) && t.kind() == Kind::ChangEta && s.top() == t.top();
            break;
        case Morph::CREtaInc:
            ok = s.kind() == Kind::ChangEta && t.kind() == Kind::ChangR && s.top() == t.top();
            break;
        case Morph::CRIncP:
            ok = is_moore2(s) && t.kind() == Kind::ChangR && s.bottom() == t.bottom() &&
                 s.r() == t.r();
            break;
        case Morph::CRPinchTop:
            ok = s.kind() == Kind::ChangR && is_sphere(t) && t.top() == s.top();
            break;
        case Morph::CRPinchMid:
            ok = s.kind() == Kind::ChangR && is_sphere(t) && t.top() == s.top() - 1;
            break;
        case Morph::CRToMoore:
            ok = s.kind() == Kind::ChangR && is_moore2(t) && s.bottom() == t.bottom() &&
                 t.r() > s.r();
            break;
        case Morph::CSIncTop:
            ok = is_sphere(s) && t.kind() == Kind::ChangS && s.top() == t.bottom() + 1;
            break;
        case Morph::CSIncBot:
            ok = is_sphere(s) && t.kind() == Kind::ChangS && s.top() == t.bottom();
            break;
        case Morph::CSPinchTop:
            ok = s.kind() == Kind::ChangS && is_sphere(t) && t.top() == s.top();
            break;
        case Morph::CSPinchEta:
            ok = s.kind() == Kind::ChangS && t.kind() == Kind::ChangEta && s.top() == t.top();
            break;
        case Morph::CSPinchMoore:
            ok = s.kind() == Kind::ChangS && is_moore2(t) && t.bottom() == s.bottom() + 1 &&
                 t.r() == s.s();
            break;
        case Morph::CSToRS:
            ok = s.kind() == Kind::ChangS && t.kind() == Kind::ChangRS && s.top() == t.top() &&
                 s.s() == t.s();
            break;
        case Morph::CSXi:
            ok = is_moore2(s) && t.kind() == Kind::ChangS && s.bottom() == t.bottom() + 1 &&
                 t.s() < s.r();
            break;
        case Morph::CSMu:
            ok = s.kind() == Kind::ChangS && is_sphere(t) && t.top() == s.bottom();
            break;
        case Morph::CSMuDown:
        case Morph::CSLambdaDown:
            ok = s.kind() == Kind::ChangS && t.kind() == Kind::ChangS && s.top() == t.top() &&
                 t.s() < s.s();
            break;
        case Morph::CSThetaUp:
            ok = s.kind() == Kind::ChangS && t.kind() == Kind::ChangS && s.top() == t.top() &&
                 s.s() < t.s();
            break;
        case Morph::RSIncTop:
            ok = is_sphere(s) && t.kind() == Kind::ChangRS && s.top() == t.bottom() + 1;
            break;
        case Morph::RSIncBot:
            ok = is_sphere(s) && t.kind() == Kind::ChangRS && s.top() == t.bottom();
            break;
        case Morph::RSIncP:
            ok = is_moore2(s) && t.kind() == Kind::ChangRS && s.bottom() == t.bottom() &&
                 s.r() == t.r();
            break;
        case Morph::RSPinchTop:
            ok = s.kind() == Kind::ChangRS && is_sphere(t) && t.top() == s.top();
            break;
        case Morph::RSPinchMid:
            ok = s.kind() == Kind::ChangRS && is_sphere(t) && t.top() == s.top() - 1;
            break;
        case Morph::RSPinchMoore:
            ok = s.kind() == Kind::ChangRS && is_moore2(t) && t.bottom() == s.bottom() + 1 &&
                 t.r() == s.s();
            break;
        case Morph::RSPinchCR:
            ok = s.kind() == Kind::ChangRS && t.kind() == Kind::ChangR && s.top() == t.top() &&
                 s.r() == t.r();
            break;
    }
    if (!ok) bad_signature(tag, s, t);
}

std::string MorphSymbol::to_string() const {
    return morph_name(tag_) + "[" + source_.to_string() + "->" + target_.to_string() + "]";
}

long MorphSymbol::homology_multiplier(int degree) const {
    const int sn = source_.bottom();
    auto has = [&](const ElementaryComplex& c) {
        for (const auto& [d, g] : c.homology())
            if (d == degree && !g.is_trivial()) return true;
        return false;
    };
    if (!has(source_) || !has(target_)) return 0;
    switch (tag_) {
        case Morph::Id:
            return 1;
        case Morph::MooreInc:
        case Morph::CEtaInc:
        case Morph::CRIncP:
        case Morph::CSIncTop:
        case Morph::CSIncBot:
        case Morph::CSPinchMoore:
        case Morph::CSXi:
        case Morph::RSIncTop:
        case Morph::RSIncBot:
        case Morph::RSIncP:
        case Morph::RSPinchMoore:
        case Morph::RSPinchCR:
        case Morph::CEtaPinch:
        case Morph::CREtaInc:
        case Morph::CRPinchTop:
        case Morph::CSPinchEta:
        case Morph::CSToRS:
            return 1;
        case Morph::ZetaBar:
        case Morph::ZetaTilde:
            return 2;
        case Morph::BChi:
            return source_.r() >= target_.r()
                       ? 1
                       : (source_.prime() == 2 ? pow2(target_.r() - source_.r())
                                               : [&] {
                                                     long u = 1;
                                                     for (long i = source_.r(); i < target_.r(); ++i)
                                                         u *= source_.prime();
                                                     return u;
                                                 }());
        case Morph::CRToMoore:
            return pow2(target_.r() - source_.r());
        case Morph::CSMuDown:
            return -2;
        case Morph::CSLambdaDown:
            return degree == sn ? 0 : 1;
        case Morph::CSThetaUp:
            return degree == sn ? 1 : pow2(target_.s() - source_.s());
        case Morph::CSMu:
            return 0;
        default:
            return 0;
    }
}

MorphChain::MorphChain(std::vector<MorphSymbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw StructuralError("empty morphism chain");
    for (std::size_t i = 0; i + 1 < symbols_.size(); ++i)
        if (symbols_[i].source() != symbols_[i + 1].target())
            throw StructuralError("morphism chain does not compose: " + symbols_[i].to_string() +
                                  " after " + symbols_[i + 1].to_string());
}

MorphChain MorphChain::then_outer(const MorphSymbol& f) const {
    std::vector<MorphSymbol> out;
    out.reserve(symbols_.size() + 1);
    out.push_back(f);
    out.insert(out.end(), symbols_.begin(), symbols_.end());
    return MorphChain(std::move(out));
}

MorphChain MorphChain::concat(const MorphChain& outer, const MorphChain& inner) {
    std::vector<MorphSymbol> out = outer.symbols_;
    out.insert(out.end(), inner.symbols_.begin(), inner.symbols_.end());
    return MorphChain(std::move(out));
}

long MorphChain::homology_multiplier(int degree) const {
    long m = 1;
    for (const auto& sym : symbols_) {
        m *= sym.homology_multiplier(degree);
        if (m == 0) return 0;
    }
    return m;
}

std::string MorphChain::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i) os << ".";
        os << morph_name(symbols_[i].tag());
    }
    return os.str();
}

FormalMorph::FormalMorph(ElementaryComplex source, ElementaryComplex target)
    : source_(std::move(source)), target_(std::move(target)) {}

FormalMorph FormalMorph::single(const MorphSymbol& f, long coeff) {
    FormalMorph out(f.source(), f.target());
    if (coeff != 0) out.terms_.push_back({coeff, MorphChain({f})});
    return out;
}

FormalMorph FormalMorph::of_chain(const MorphChain& c, long coeff) {
    FormalMorph out(c.source(), c.target());
    if (coeff != 0) out.terms_.push_back({coeff, c});
    return out;
}

FormalMorph FormalMorph::identity(const ElementaryComplex& x, long coeff) {
    return single(MorphSymbol(Morph::Id, x, x), coeff);
}

FormalMorph& FormalMorph::add_term(long coeff, const MorphChain& chain) {
    if (chain.source() != source_ || chain.target() != target_)
        throw StructuralError("formal morphism term has mismatched signature");
    if (coeff != 0) terms_.push_back({coeff, chain});
    return *this;
}

FormalMorph FormalMorph::plus(const FormalMorph& other) const {
    if (other.source_ != source_ || other.target_ != target_)
        throw StructuralError("formal morphism sum has mismatched signature");
    FormalMorph out = *this;
    out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
    return out;
}

FormalMorph FormalMorph::scaled(long c) const {
    FormalMorph out(source_, target_);
    if (c == 0) return out;
    for (const auto& [k, chain] : terms_) out.terms_.push_back({k * c, chain});
    return out;
}

FormalMorph FormalMorph::after(const FormalMorph& other) const {
    if (other.target_ != source_)
        throw StructuralError("formal morphism composition has mismatched signature");
    FormalMorph out(other.source_, target_);
    for (const auto& [c1, f] : terms_)
        for (const auto& [c2, g] : other.terms_)
            out.terms_.push_back({c1 * c2, MorphChain::concat(f, g)});
    return out;
}

FormalMorph FormalMorph::normalized() const {
    std::vector<std::pair<long, MorphChain>> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    FormalMorph out(source_, target_);
    for (const auto& [c, chain] : sorted) {
        if (!out.terms_.empty() && out.terms_.back().second == chain)
            out.terms_.back().first += c;
        else
            out.terms_.push_back({c, chain});
    }
    std::erase_if(out.terms_, [](const auto& t) { return t.first == 0; });
    return out;
}

long FormalMorph::homology_multiplier(int degree) const {
    long m = 0;
    for (const auto& [c, chain] : terms_) m += c * chain.homology_multiplier(degree);
    return m;
}

std::string FormalMorph::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        if (terms_[i].first != 1) os << terms_[i].first << "*";
        os << terms_[i].second.to_string();
    }
    return os.str();
}

namespace {

// Action of one symbol on c * (one generator) of pi(source, degree).
// nullopt: the pair is outside the shipped table.
std::optional<Terms> act_gen(const MorphSymbol& f, Gen g, long c, int degree) {
    const ElementaryComplex& src = f.source();
    const ElementaryComplex& tgt = f.target();

    auto eta3_terms = [&](long k) -> Terms {
        // eta^3 in pi_{tn+3}(S^tn)
        if (tgt.top() >= 5) return {{Gen::Nu, 12 * k}};
        if (tgt.top() == 4) return {{Gen::SNuPrime, 6 * k}};
        return {{Gen::NuPrime, 6 * k}};
    };

    switch (f.tag()) {
        case Morph::Id:
            return Terms{{g, c}};

        case Morph::Eta:
            switch (g) {
                case Gen::Id: return Terms{{Gen::Eta, c}};
                case Gen::Eta: return Terms{{Gen::Eta2, c}};
                case Gen::Eta2: return eta3_terms(c);
                default: return std::nullopt;
            }
        case Morph::Eta2:
            switch (g) {
                case Gen::Id: return Terms{{Gen::Eta2, c}};
                case Gen::Eta: return eta3_terms(c);
                default: return std::nullopt;
            }

        case Morph::MooreInc: {
            const long p = tgt.prime();
            const long r = tgt.r();
            switch (g) {
                case Gen::Id: return Terms{{Gen::I, c}};
                case Gen::Eta: return p == 2 ? Terms{{Gen::IEta, c}} : Terms{};
                case Gen::Eta2:
                    if (p != 2) return Terms{};
                    return r == 1 ? Terms{{Gen::EtaTilde, 2 * c}} : Terms{{Gen::IEta2, c}};
                case Gen::Nu:
                    if (p == 2) return Terms{{Gen::INu, c}};
                    if (p == 3) return Terms{{Gen::IAlpha1, c}};
                    return Terms{};
                case Gen::Nu4: return Terms{{Gen::INu4, c}};
                case Gen::SNuPrime:
                    if (p >= 5) return Terms{};
                    return Terms{{Gen::ISNuPrime, c}};
                default: return std::nullopt;
            }
        }
        case Morph::MoorePinch:
            switch (g) {
                case Gen::I:
                case Gen::IEta:
                case Gen::IEta2:
                case Gen::INu:
                case Gen::INu4:
                case Gen::ISNuPrime:
                case Gen::IAlpha1: return Terms{};
                case Gen::EtaTilde: return Terms{{Gen::Eta, c}};
                case Gen::EtaTildeEta: return Terms{{Gen::Eta2, c}};
                default: return std::nullopt;
            }
        case Morph::EtaTildeMap:
            switch (g) {
                case Gen::Id: return Terms{{Gen::EtaTilde, c}};
                case Gen::Eta: return Terms{{Gen::EtaTildeEta, c}};
                default: return std::nullopt;
            }
        case Morph::EtaCoext:
            switch (g) {
                case Gen::I: return Terms{{Gen::Eta, c}};
                case Gen::IEta: return Terms{{Gen::Eta2, c}};
                case Gen::IEta2: return eta3_terms(c);
                case Gen::EtaTilde:
                    // 2*etatilde_1 = i eta^2 resolves even multiples only.
                    if (src.r() == 1 && c % 2 == 0) return eta3_terms(c / 2);
                    if (src.r() >= 2 && c % 2 == 0) return Terms{};
                    return std::nullopt;
                default: return std::nullopt;
            }
        case Morph::BChi: {
            const long p = src.prime();
            const long rs = src.r(), ts = tgt.r();
            long u = 1;
            if (rs < ts)
                for (long i = rs; i < ts; ++i) u *= p;
            switch (g) {
                case Gen::I: return Terms{{Gen::I, u * c}};
                case Gen::IEta: return Terms{{Gen::IEta, u * c}};
                case Gen::IEta2:
                    return ts == 1 ? Terms{{Gen::EtaTilde, 2 * u * c}} : Terms{{Gen::IEta2, u * c}};
                case Gen::EtaTilde:
                    if (ts >= rs) return ts == 1 ? Terms{{Gen::EtaTilde, c}} : Terms{{Gen::EtaTilde, c}};
                    if (c % 2 == 0)
                        return rs == 1 ? act_gen(f, Gen::IEta2, c / 2, degree) : Terms{};
                    return std::nullopt;
                case Gen::INu: return Terms{{Gen::INu, u * c}};
                case Gen::EtaTildeEta:
                    if (ts >= rs) return Terms{{Gen::EtaTildeEta, c}};
                    return std::nullopt;
                case Gen::IAlpha1: return Terms{{Gen::IAlpha1, u * c}};
                case Gen::INu4: return Terms{{Gen::INu4, u * c}};
                case Gen::ISNuPrime: return Terms{{Gen::ISNuPrime, u * c}};
                default: return std::nullopt;
            }
        }

        case Morph::CEtaInc:
            switch (g) {
                case Gen::Id: return Terms{{Gen::IEtaBot, c}};
                case Gen::Eta:
                case Gen::Eta2: return Terms{};  // i_eta . eta = 0
                case Gen::Nu: return Terms{{Gen::IEtaNu, c}};
                case Gen::Nu4: return Terms{{Gen::IEtaNu4, c}};
                case Gen::SNuPrime: return Terms{{Gen::IEtaSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::CEtaPinch:
            switch (g) {
                case Gen::IEtaBot:
                case Gen::IEtaNu:
                case Gen::IEtaNu4:
                case Gen::IEtaSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::ZetaBar:
            switch (g) {
                case Gen::IEtaBot: return Terms{{Gen::Id, 2 * c}};
                case Gen::IEtaNu: return Terms{{Gen::Nu, 2 * c}};
                case Gen::IEtaNu4: return Terms{{Gen::Nu4, 2 * c}};
                case Gen::IEtaSNuPrime: return Terms{{Gen::SNuPrime, 2 * c}};
                default: return std::nullopt;
            }
        case Morph::ZetaTilde:
            return std::nullopt;

        case Morph::CREtaInc:
            switch (g) {
                case Gen::IEtaBot: return Terms{{Gen::IBar, c}};
                case Gen::IEtaNu: return Terms{{Gen::IBarNu, c}};
                case Gen::IEtaNu4: return Terms{{Gen::IBarNu4, c}};
                case Gen::IEtaSNuPrime: return Terms{{Gen::IBarSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::CRIncP:
            switch (g) {
                case Gen::I: return Terms{{Gen::IBar, c}};
                case Gen::INu: return Terms{{Gen::IBarNu, c}};
                case Gen::EtaTildeEta: return Terms{{Gen::IBarPEtaTildeEta, c}};
                case Gen::INu4: return Terms{{Gen::IBarNu4, c}};
                case Gen::ISNuPrime: return Terms{{Gen::IBarSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::CRPinchTop:
            switch (g) {
                case Gen::IBar:
                case Gen::IBarNu:
                case Gen::IBarPEtaTildeEta:
                case Gen::IBarNu4:
                case Gen::IBarSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::CRPinchMid:
            switch (g) {
                case Gen::IBar:
                case Gen::IBarNu:
                case Gen::IBarNu4:
                case Gen::IBarSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::CRToMoore: {
            const long u = pow2(tgt.r() - src.r());
            switch (g) {
                case Gen::IBar: return Terms{{Gen::I, u * c}};
                case Gen::IBarNu: return Terms{{Gen::INu, u * c}};
                case Gen::IBarPEtaTildeEta: return Terms{{Gen::EtaTildeEta, c}};
                case Gen::IBarNu4: return Terms{{Gen::INu4, u * c}};
                case Gen::IBarSNuPrime: return Terms{{Gen::ISNuPrime, u * c}};
                default: return std::nullopt;
            }
        }

        case Morph::CSIncTop:
            switch (g) {
                case Gen::Eta2: return Terms{{Gen::IHatEta2, c}};
                default: return std::nullopt;
            }
        case Morph::CSIncBot:
            switch (g) {
                case Gen::Id: return Terms{{Gen::IHat, c}};
                case Gen::Nu: return Terms{{Gen::IHatNu, c}};
                case Gen::Nu4: return Terms{{Gen::IHatNu4, c}};
                case Gen::SNuPrime: return Terms{{Gen::IHatSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::CSPinchTop:
            switch (g) {
                case Gen::IHat:
                case Gen::IHatEta2:
                case Gen::IHatNu:
                case Gen::IHatNu4:
                case Gen::IHatSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::CSPinchEta:
            switch (g) {
                case Gen::IHat: return Terms{{Gen::IEtaBot, c}};
                case Gen::IHatEta2: return Terms{};  // qhat_eta . ihat_top = 0
                case Gen::IHatNu: return Terms{{Gen::IEtaNu, c}};
                case Gen::IHatNu4: return Terms{{Gen::IEtaNu4, c}};
                case Gen::IHatSNuPrime: return Terms{{Gen::IEtaSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::CSPinchMoore:
            switch (g) {
                case Gen::IHat: return Terms{};
                case Gen::IHatEta2:
                    return tgt.r() == 1 ? Terms{{Gen::EtaTilde, 2 * c}} : Terms{{Gen::IEta2, c}};
                case Gen::IHatNu:
                case Gen::IHatNu4:
                case Gen::IHatSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::CSToRS:
            switch (g) {
                case Gen::IHat: return Terms{{Gen::ICheck, c}};
                case Gen::IHatEta2: return Terms{{Gen::ICheckEta2, c}};
                case Gen::IHatNu: return Terms{{Gen::ICheckNu, c}};
                case Gen::IHatNu4: return Terms{{Gen::ICheckNu4, c}};
                case Gen::IHatSNuPrime: return Terms{{Gen::ICheckSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::CSXi:
            switch (g) {
                case Gen::IEta2: return Terms{{Gen::IHatEta2, c}};
                case Gen::EtaTilde:
                    if (c % 2 == 0)
                        return src.r() == 1 ? act_gen(f, Gen::IEta2, c / 2, degree) : Terms{};
                    return std::nullopt;
                default: return std::nullopt;
            }
        case Morph::CSMu:
            switch (g) {
                case Gen::IHat: return Terms{};
                case Gen::IHatEta2: return eta3_terms(c);
                case Gen::IHatNu:
                case Gen::IHatNu4:
                case Gen::IHatSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::CSMuDown:
            switch (g) {
                case Gen::IHat: return Terms{{Gen::IHat, -2 * c}};
                case Gen::IHatEta2: return Terms{{Gen::IHatEta2, -2 * c}};
                case Gen::IHatNu: return Terms{{Gen::IHatNu, -2 * c}};
                case Gen::IHatNu4: return Terms{{Gen::IHatNu4, -2 * c}};
                case Gen::IHatSNuPrime: return Terms{{Gen::IHatSNuPrime, -2 * c}};
                default: return std::nullopt;
            }
        case Morph::CSLambdaDown:
            switch (g) {
                case Gen::IHat: return Terms{};
                case Gen::IHatEta2: return Terms{{Gen::IHatEta2, c}};
                case Gen::IHatNu:
                case Gen::IHatNu4:
                case Gen::IHatSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::CSThetaUp: {
            const long u = pow2(tgt.s() - src.s());
            switch (g) {
                case Gen::IHat: return Terms{{Gen::IHat, c}};
                case Gen::IHatEta2: return Terms{{Gen::IHatEta2, u * c}};
                case Gen::IHatNu: return Terms{{Gen::IHatNu, c}};
                case Gen::IHatNu4: return Terms{{Gen::IHatNu4, c}};
                case Gen::IHatSNuPrime: return Terms{{Gen::IHatSNuPrime, c}};
                default: return std::nullopt;
            }
        }

        case Morph::RSIncTop:
            switch (g) {
                case Gen::Eta2: return Terms{{Gen::ICheckEta2, c}};
                default: return std::nullopt;
            }
        case Morph::RSIncBot:
            switch (g) {
                case Gen::Id: return Terms{{Gen::ICheck, c}};
                case Gen::Nu: return Terms{{Gen::ICheckNu, c}};
                case Gen::Nu4: return Terms{{Gen::ICheckNu4, c}};
                case Gen::SNuPrime: return Terms{{Gen::ICheckSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::RSIncP:
            switch (g) {
                case Gen::I: return Terms{{Gen::ICheck, c}};
                case Gen::INu: return Terms{{Gen::ICheckNu, c}};
                case Gen::EtaTildeEta: return Terms{{Gen::ICheckPEtaTildeEta, c}};
                case Gen::INu4: return Terms{{Gen::ICheckNu4, c}};
                case Gen::ISNuPrime: return Terms{{Gen::ICheckSNuPrime, c}};
                default: return std::nullopt;
            }
        case Morph::RSPinchTop:
            switch (g) {
                case Gen::ICheck:
                case Gen::ICheckEta2:
                case Gen::ICheckNu:
                case Gen::ICheckPEtaTildeEta:
                case Gen::ICheckNu4:
                case Gen::ICheckSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::RSPinchMid:
            switch (g) {
                case Gen::ICheck:
                case Gen::ICheckEta2:
                case Gen::ICheckNu:
                case Gen::ICheckNu4:
                case Gen::ICheckSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::RSPinchMoore:
            switch (g) {
                case Gen::ICheck: return Terms{};
                case Gen::ICheckEta2:
                    return tgt.r() == 1 ? Terms{{Gen::EtaTilde, 2 * c}} : Terms{{Gen::IEta2, c}};
                case Gen::ICheckNu:
                case Gen::ICheckPEtaTildeEta:
                case Gen::ICheckNu4:
                case Gen::ICheckSNuPrime: return Terms{};
                default: return std::nullopt;
            }
        case Morph::RSPinchCR:
            switch (g) {
                case Gen::ICheck: return Terms{{Gen::IBar, c}};
                case Gen::ICheckEta2: return Terms{};  // qcheck_C . icheck_top = 0
                case Gen::ICheckNu: return Terms{{Gen::IBarNu, c}};
                case Gen::ICheckPEtaTildeEta: return Terms{{Gen::IBarPEtaTildeEta, c}};
                case Gen::ICheckNu4: return Terms{{Gen::IBarNu4, c}};
                case Gen::ICheckSNuPrime: return Terms{{Gen::IBarSNuPrime, c}};
                default: return std::nullopt;
            }
    }
    return std::nullopt;
}

}  // namespace

GroupElement compose(const MorphSymbol& f, int degree, const GroupElement& x) {
    HomotopyGroupTable src = pi(f.source(), degree);
    if (x.coefficients().size() != src.group.size())
        throw StructuralError("compose: element does not lie in pi(" + f.source().to_string() +
                              ", " + std::to_string(degree) + ")");
    GroupElement out = GroupElement::zero(pi(f.target(), degree).group);
    HomotopyGroupTable tgt = pi(f.target(), degree);
    for (std::size_t i = 0; i < src.group.size(); ++i) {
        long c = x.coefficient(i);
        if (c == 0) continue;
        auto terms = act_gen(f, src.generators[i], c, degree);
        if (!terms)
            throw UnknownComposite("compose(" + f.to_string() + ", " +
                                   gen_token(src.generators[i]) + "@" + std::to_string(degree) +
                                   ") is not tabulated");
        out = add(tgt.group, out, emit(f.target(), degree, *terms));
    }
    return out;
}

GroupElement compose(const MorphChain& f, int degree, const GroupElement& x) {
    GroupElement cur = x;
    const auto& syms = f.symbols();
    for (auto it = syms.rbegin(); it != syms.rend(); ++it) cur = compose(*it, degree, cur);
    return cur;
}

GroupElement compose(const FormalMorph& f, int degree, const GroupElement& x) {
    HomotopyGroupTable tgt = pi(f.target(), degree);
    GroupElement out = GroupElement::zero(tgt.group);
    for (const auto& [c, chain] : f.terms())
        out = add(tgt.group, out, scale(tgt.group, c, compose(chain, degree, x)));
    return out;
}

bool compose_total(const FormalMorph& f, int degree) {
    HomotopyGroupTable src = pi(f.source(), degree);
    if (!pi_supported(f.target(), degree)) return false;
    for (std::size_t i = 0; i < src.group.size(); ++i) {
        std::vector<long> coeffs(src.group.size(), 0);
        const long order = src.group.summands()[i].order;
        for (long c = 1; c < (order == 0 ? 2 : order); ++c) {
            coeffs[i] = c;
            try {
                (void)compose(f, degree, GroupElement(src.group, coeffs));
            } catch (const UnknownComposite&) {
                return false;
            } catch (const UnsupportedTable&) {
                return false;
            }
        }
    }
    return true;
}

std::optional<FormalMorph> compose_morph(const MorphSymbol& f, const MorphSymbol& g) {
    if (g.target() != f.source()) throw StructuralError("compose_morph: signature mismatch");
    const auto& X = g.source();
    const auto& Z = f.target();
    auto zero = [&] { return FormalMorph(X, Z); };
    auto one = [&](Morph tag, long coeff = 1) {
        return FormalMorph::single(MorphSymbol(tag, X, Z), coeff);
    };

    if (f.tag() == Morph::Id) return FormalMorph::of_chain(MorphChain({g}));
    if (g.tag() == Morph::Id) return FormalMorph::of_chain(MorphChain({f}));

    switch (f.tag()) {
        case Morph::ZetaBar:
            if (g.tag() == Morph::CEtaInc) return one(Morph::Id, 2);
            break;
        case Morph::CEtaPinch:
            if (g.tag() == Morph::ZetaTilde) return one(Morph::Id, 2);
            if (g.tag() == Morph::CEtaInc) return zero();
            break;
        case Morph::MoorePinch:
            if (g.tag() == Morph::MooreInc) return zero();
            if (g.tag() == Morph::BChi) {
                long u = 1;
                if (g.source().r() >= g.target().r())
                    for (long i = g.target().r(); i < g.source().r(); ++i) u *= g.source().prime();
                return FormalMorph::single(
                    MorphSymbol(Morph::MoorePinch, X, Z), u);
            }
            break;
        case Morph::BChi:
            if (g.tag() == Morph::MooreInc) {
                long u = 1;
                if (f.source().r() < f.target().r())
                    for (long i = f.source().r(); i < f.target().r(); ++i) u *= f.source().prime();
                return one(Morph::MooreInc, u);
            }
            break;
        case Morph::CRToMoore:
            if (g.tag() == Morph::CRIncP) return one(Morph::BChi);
            break;
        case Morph::RSPinchCR:
            if (g.tag() == Morph::RSIncP) return one(Morph::CRIncP);
            if (g.tag() == Morph::RSIncTop) return zero();
            break;
        case Morph::CSPinchEta:
            if (g.tag() == Morph::CSIncBot) return one(Morph::CEtaInc);
            if (g.tag() == Morph::CSIncTop) return zero();
            break;
        case Morph::CSToRS:
            if (g.tag() == Morph::CSIncTop) return one(Morph::RSIncTop);
            if (g.tag() == Morph::CSIncBot) return one(Morph::RSIncBot);
            break;
        case Morph::CSPinchMoore:
            if (g.tag() == Morph::CSIncTop) return one(Morph::MooreInc);
            if (g.tag() == Morph::CSIncBot) return zero();
            break;
        case Morph::RSPinchMoore:
            if (g.tag() == Morph::RSIncTop) return one(Morph::MooreInc);
            if (g.tag() == Morph::RSIncP) return zero();
            break;
        case Morph::CSXi:
            if (g.tag() == Morph::MooreInc) return one(Morph::CSIncTop);
            break;
        case Morph::EtaCoext:
            if (g.tag() == Morph::MooreInc) return one(Morph::Eta);
            break;
        case Morph::CSMu:
            if (g.tag() == Morph::CSIncBot) return zero();
            if (g.tag() == Morph::CSIncTop) return one(Morph::Eta);
            break;
        case Morph::CSMuDown:
            if (g.tag() == Morph::CSIncTop) return one(Morph::CSIncTop, -2);
            if (g.tag() == Morph::CSIncBot) return one(Morph::CSIncBot, -2);
            break;
        case Morph::CSLambdaDown:
            if (g.tag() == Morph::CSIncTop) return one(Morph::CSIncTop);
            if (g.tag() == Morph::CSIncBot) return zero();
            break;
        case Morph::CSThetaUp:
            if (g.tag() == Morph::CSIncTop)
                return one(Morph::CSIncTop, pow2(f.target().s() - f.source().s()));
            if (g.tag() == Morph::CSIncBot) return one(Morph::CSIncBot);
            break;
        case Morph::CSPinchTop:
            if (g.tag() == Morph::CSIncTop || g.tag() == Morph::CSIncBot) return zero();
            break;
        case Morph::CRPinchTop:
            if (g.tag() == Morph::CRIncP || g.tag() == Morph::CREtaInc) return zero();
            break;
        case Morph::CRPinchMid:
            if (g.tag() == Morph::CREtaInc) return zero();
            break;
        case Morph::RSPinchMid:
            if (g.tag() == Morph::CSToRS) return zero();
            break;
        case Morph::CREtaInc:
            if (g.tag() == Morph::CEtaInc) {
                // bottom-cell identification: ibar_eta . i_eta = ibar_P . i
                auto moore = ElementaryComplex::moore(f.target().top() - 1, 2, f.target().r());
                return FormalMorph::of_chain(
                    MorphChain({MorphSymbol(Morph::CRIncP, moore, f.target()),
                                MorphSymbol(Morph::MooreInc, X, moore)}));
            }
            break;
        default:
            break;
    }
    return std::nullopt;
}

std::vector<MorphSymbol> morphs_between(const ElementaryComplex& x, const ElementaryComplex& y) {
    std::vector<MorphSymbol> out;
    auto push = [&](Morph tag) { out.push_back(MorphSymbol(tag, x, y)); };
    if (x == y) push(Morph::Id);

    const Kind kx = x.kind(), ky = y.kind();
    if (kx == Kind::Sphere && ky == Kind::Sphere) {
        if (x.top() == y.top() + 1 && y.top() >= 3) push(Morph::Eta);
        if (x.top() == y.top() + 2 && y.top() >= 3) push(Morph::Eta2);
    }
    if (kx == Kind::Sphere && ky == Kind::Moore) {
        if (x.top() == y.bottom()) push(Morph::MooreInc);
        if (y.prime() == 2 && x.top() == y.bottom() + 2) push(Morph::EtaTildeMap);
    }
    if (kx == Kind::Moore && ky == Kind::Sphere) {
        if (y.top() == x.bottom() + 1) push(Morph::MoorePinch);
        if (x.prime() == 2 && x.bottom() == y.top() + 1) push(Morph::EtaCoext);
    }
    if (kx == Kind::Moore && ky == Kind::Moore && x.prime() == y.prime() &&
        x.bottom() == y.bottom() && !(x == y))
        push(Morph::BChi);
    if (kx == Kind::Sphere && ky == Kind::ChangEta) {
        if (x.top() == y.bottom()) push(Morph::CEtaInc);
        if (x.top() == y.top()) push(Morph::ZetaTilde);
    }
    if (kx == Kind::ChangEta && ky == Kind::Sphere) {
        if (y.top() == x.top()) push(Morph::CEtaPinch);
        if (y.top() == x.bottom()) push(Morph::ZetaBar);
    }
    if (kx == Kind::ChangEta && ky == Kind::ChangR && x.top() == y.top()) push(Morph::CREtaInc);
    if (kx == Kind::Moore && x.prime() == 2 && ky == Kind::ChangR && x.bottom() == y.bottom() &&
        x.r() == y.r())
        push(Morph::CRIncP);
    if (kx == Kind::ChangR && ky == Kind::Moore && y.prime() == 2 && x.bottom() == y.bottom() &&
        y.r() > x.r())
        push(Morph::CRToMoore);
    if (kx == Kind::ChangR && ky == Kind::Sphere) {
        if (y.top() == x.top()) push(Morph::CRPinchTop);
        if (y.top() == x.top() - 1) push(Morph::CRPinchMid);
    }
    if (kx == Kind::Sphere && ky == Kind::ChangS) {
        if (x.top() == y.bottom() + 1) push(Morph::CSIncTop);
        if (x.top() == y.bottom()) push(Morph::CSIncBot);
    }
    if (kx == Kind::ChangS && ky == Kind::Sphere) {
        if (y.top() == x.top()) push(Morph::CSPinchTop);
        if (y.top() == x.bottom()) push(Morph::CSMu);
    }
    if (kx == Kind::ChangS && ky == Kind::ChangEta && x.top() == y.top()) push(Morph::CSPinchEta);
    if (kx == Kind::ChangS && ky == Kind::Moore && y.prime() == 2 && y.bottom() == x.bottom() + 1 &&
        y.r() == x.s())
        push(Morph::CSPinchMoore);
    if (kx == Kind::ChangS && ky == Kind::ChangRS && x.top() == y.top() && x.s() == y.s())
        push(Morph::CSToRS);
    if (kx == Kind::Moore && x.prime() == 2 && ky == Kind::ChangS &&
        x.bottom() == y.bottom() + 1 && y.s() < x.r())
        push(Morph::CSXi);
    if (kx == Kind::ChangS && ky == Kind::ChangS && x.top() == y.top()) {
        if (y.s() < x.s()) {
            push(Morph::CSMuDown);
            push(Morph::CSLambdaDown);
        }
        if (x.s() < y.s()) push(Morph::CSThetaUp);
    }
    if (kx == Kind::Sphere && ky == Kind::ChangRS) {
        if (x.top() == y.bottom() + 1) push(Morph::RSIncTop);
        if (x.top() == y.bottom()) push(Morph::RSIncBot);
    }
    if (kx == Kind::Moore && x.prime() == 2 && ky == Kind::ChangRS && x.bottom() == y.bottom() &&
        x.r() == y.r())
        push(Morph::RSIncP);
    if (kx == Kind::ChangRS && ky == Kind::Sphere) {
        if (y.top() == x.top()) push(Morph::RSPinchTop);
        if (y.top() == x.top() - 1) push(Morph::RSPinchMid);
    }
    if (kx == Kind::ChangRS && ky == Kind::Moore && y.prime() == 2 &&
        y.bottom() == x.bottom() + 1 && y.r() == x.s())
        push(Morph::RSPinchMoore);
    if (kx == Kind::ChangRS && ky == Kind::ChangR && x.top() == y.top() && x.r() == y.r())
        push(Morph::RSPinchCR);
    return out;
}

GroupElement suspend_class(const ElementaryComplex& host, int degree, const GroupElement& x) {
    HomotopyGroupTable src = pi(host, degree);
    if (x.coefficients().size() != src.group.size())
        throw StructuralError("suspend_class: element does not match table");
    const ElementaryComplex up = host.suspend();
    const int up_degree = degree + 1;
    HomotopyGroupTable tgt = pi(up, up_degree);
    Terms terms;
    for (std::size_t i = 0; i < src.group.size(); ++i) {
        long c = x.coefficient(i);
        if (c == 0) continue;
        switch (src.generators[i]) {
            case Gen::Nu4: terms.push_back({Gen::Nu, c}); break;
            case Gen::SNuPrime: terms.push_back({Gen::Nu, 2 * c}); break;
            case Gen::NuPrime: terms.push_back({Gen::SNuPrime, c}); break;
            case Gen::INu4: terms.push_back({Gen::INu, c}); break;
            case Gen::ISNuPrime:
                terms.push_back(host.prime() == 2 ? std::pair{Gen::INu, 2 * c}
                                                  : std::pair{Gen::IAlpha1, c});
                break;
            case Gen::IEtaNu4: terms.push_back({Gen::IEtaNu, c}); break;
            case Gen::IEtaSNuPrime: terms.push_back({Gen::IEtaNu, 2 * c}); break;
            case Gen::IBarNu4: terms.push_back({Gen::IBarNu, c}); break;
            case Gen::IBarSNuPrime: terms.push_back({Gen::IBarNu, 2 * c}); break;
            case Gen::IHatNu4: terms.push_back({Gen::IHatNu, c}); break;
            case Gen::IHatSNuPrime: terms.push_back({Gen::IHatNu, 2 * c}); break;
            case Gen::ICheckNu4: terms.push_back({Gen::ICheckNu, c}); break;
            case Gen::ICheckSNuPrime: terms.push_back({Gen::ICheckNu, 2 * c}); break;
            default: terms.push_back({src.generators[i], c}); break;
        }
    }
    std::vector<long> coeffs(tgt.group.size(), 0);
    for (const auto& [g, c] : terms) {
        auto s = tgt.slot(g);
        if (!s) continue;  // suspended into a trivial summand
        coeffs[*s] += c;
    }
    return GroupElement(tgt.group, std::move(coeffs));
}

}  // namespace chang
