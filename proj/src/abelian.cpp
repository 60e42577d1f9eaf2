#include "chang/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace chang {

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

long parse_long(const std::string& s, std::size_t& i) {
    skip_ws(s, i);
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected integer", i);
    return std::stol(s.substr(start, i - start));
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<CyclicSummand> summands) : summands_(std::move(summands)) {
    for (const auto& c : summands_)
        if (c.order < 0) throw StructuralError("cyclic summand order must be >= 0");
}

AbelianGroup AbelianGroup::free(int rank) {
    std::vector<CyclicSummand> s(static_cast<std::size_t>(rank), CyclicSummand{0});
    return AbelianGroup(std::move(s));
}

AbelianGroup AbelianGroup::cyclic(long order) {
    return AbelianGroup({CyclicSummand{order}});
}

bool AbelianGroup::is_finite() const {
    return std::all_of(summands_.begin(), summands_.end(),
                       [](const CyclicSummand& c) { return c.order != 0; });
}

long AbelianGroup::element_count() const {
    if (!is_finite()) throw StructuralError("element_count: group is infinite");
    long n = 1;
    for (const auto& c : summands_) n *= c.order;
    return n;
}

AbelianGroup AbelianGroup::normalized() const {
    std::vector<CyclicSummand> out;
    for (const auto& c : summands_)
        if (c.order != 1) out.push_back(c);
    return AbelianGroup(std::move(out));
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& other) const {
    std::vector<CyclicSummand> out = summands_;
    out.insert(out.end(), other.summands_.begin(), other.summands_.end());
    return AbelianGroup(std::move(out));
}

std::map<long, int> AbelianGroup::invariant_factors() const {
    std::map<long, int> out;
    for (const auto& c : summands_) {
        if (c.order == 0) {
            out[0] += 1;
            continue;
        }
        long n = c.order;
        for (long p = 2; p * p <= n; ++p) {
            if (n % p != 0) continue;
            long q = 1;
            while (n % p == 0) {
                n /= p;
                q *= p;
            }
            out[q] += 1;
        }
        if (n > 1) out[n] += 1;
    }
    return out;
}

std::string AbelianGroup::to_string() const {
    AbelianGroup g = normalized();
    if (g.summands_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < g.summands_.size(); ++i) {
        if (i) os << " + ";
        if (g.summands_[i].order == 0)
            os << "Z";
        else
            os << "Z/" << g.summands_[i].order;
    }
    return os.str();
}

AbelianGroup AbelianGroup::parse(const std::string& text) {
    std::vector<CyclicSummand> out;
    std::size_t i = 0;
    skip_ws(text, i);
    if (i < text.size() && text[i] == '0') {
        ++i;
        skip_ws(text, i);
        if (i != text.size()) throw ParseError("trailing characters after 0", i);
        return AbelianGroup{};
    }
    while (true) {
        skip_ws(text, i);
        if (i >= text.size() || text[i] != 'Z') throw ParseError("expected Z", i);
        ++i;
        long order = 0;
        if (i < text.size() && text[i] == '/') {
            ++i;
            order = parse_long(text, i);
            if (order < 1) throw ParseError("cyclic order must be >= 1", i);
        }
        out.push_back({order});
        skip_ws(text, i);
        if (i == text.size()) break;
        if (text[i] != '+') throw ParseError("expected '+'", i);
        ++i;
    }
    return AbelianGroup(std::move(out));
}

bool iso_check(const AbelianGroup& g, const AbelianGroup& h) {
    return g.invariant_factors() == h.invariant_factors();
}

long reduce_mod(long value, long order) {
    if (order == 0) return value;
    long r = value % order;
    if (r < 0) r += order;
    return r;
}

GroupElement::GroupElement(const AbelianGroup& g, std::vector<long> coefficients) {
    if (coefficients.size() != g.summands().size())
        throw StructuralError("coefficient count does not match summand count");
    coeffs_ = std::move(coefficients);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = reduce_mod(coeffs_[i], g.summands()[i].order);
}

GroupElement GroupElement::zero(const AbelianGroup& g) {
    return GroupElement(g, std::vector<long>(g.summands().size(), 0));
}

bool GroupElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](long c) { return c == 0; });
}

GroupElement add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    if (a.coefficients().size() != g.size() || b.coefficients().size() != g.size())
        throw StructuralError("add: element does not match group");
    std::vector<long> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = a.coefficient(i) + b.coefficient(i);
    return GroupElement(g, std::move(out));
}

GroupElement negate(const AbelianGroup& g, const GroupElement& a) {
    return scale(g, -1, a);
}

GroupElement scale(const AbelianGroup& g, long c, const GroupElement& a) {
    if (a.coefficients().size() != g.size())
        throw StructuralError("scale: element does not match group");
    std::vector<long> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = c * a.coefficient(i);
    return GroupElement(g, std::move(out));
}

long min_exp(long r, long s) {
    if (r < 0 || s < 0) throw StructuralError("min_exp: negative exponent");
    return std::min(r, s);
}

long delta(long r) { return r == 1 ? 1 : 0; }

TorsionDecomposition::TorsionDecomposition(std::map<long, std::vector<long>> primaries)
    : primaries_(std::move(primaries)) {
    for (auto& [p, exps] : primaries_) {
        if (p < 2) throw StructuralError("torsion prime must be >= 2");
        for (long e : exps)
            if (e < 1) throw StructuralError("torsion exponent must be >= 1");
        std::sort(exps.begin(), exps.end());
    }
    std::erase_if(primaries_, [](const auto& kv) { return kv.second.empty(); });
}

TorsionDecomposition TorsionDecomposition::of(const AbelianGroup& g) {
    std::map<long, std::vector<long>> primaries;
    for (const auto& [q, count] : g.invariant_factors()) {
        if (q == 0) throw StructuralError("torsion decomposition of an infinite group");
        long p = 0, e = 0, n = q;
        for (long cand = 2; cand * cand <= q; ++cand)
            if (q % cand == 0) {
                p = cand;
                break;
            }
        if (p == 0) p = q;
        while (n > 1) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < count; ++i) primaries[p].push_back(e);
    }
    return TorsionDecomposition(std::move(primaries));
}

std::vector<long> TorsionDecomposition::exponents(long p) const {
    auto it = primaries_.find(p);
    return it == primaries_.end() ? std::vector<long>{} : it->second;
}

AbelianGroup TorsionDecomposition::group() const {
    std::vector<CyclicSummand> out;
    for (const auto& [p, exps] : primaries_)
        for (long e : exps) {
            long q = 1;
            for (long i = 0; i < e; ++i) q *= p;
            out.push_back({q});
        }
    return AbelianGroup(std::move(out));
}

TorsionDecomposition TorsionDecomposition::at_least(long p_min) const {
    std::map<long, std::vector<long>> out;
    for (const auto& [p, exps] : primaries_)
        if (p >= p_min) out[p] = exps;
    return TorsionDecomposition(std::move(out));
}

TorsionDecomposition TorsionDecomposition::primary(long p) const {
    std::map<long, std::vector<long>> out;
    if (auto it = primaries_.find(p); it != primaries_.end()) out[p] = it->second;
    return TorsionDecomposition(std::move(out));
}

bool TorsionDecomposition::empty() const { return primaries_.empty(); }

std::string TorsionDecomposition::to_string() const {
    if (primaries_.empty()) return "none";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, exps] : primaries_) {
        std::map<long, int> mult;
        for (long e : exps) mult[e] += 1;
        for (const auto& [e, m] : mult) {
            if (!first) os << ", ";
            first = false;
            os << p << "^" << e;
            if (m > 1) os << " x" << m;
        }
    }
    return os.str();
}

TorsionDecomposition TorsionDecomposition::parse(const std::string& text) {
    std::map<long, std::vector<long>> primaries;
    std::size_t i = 0;
    skip_ws(text, i);
    if (text.compare(i, 4, "none") == 0) {
        i += 4;
        skip_ws(text, i);
        if (i != text.size()) throw ParseError("trailing characters after 'none'", i);
        return TorsionDecomposition{};
    }
    if (i == text.size()) return TorsionDecomposition{};
    while (true) {
        long p = parse_long(text, i);
        skip_ws(text, i);
        long e = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            e = parse_long(text, i);
        }
        long mult = 1;
        skip_ws(text, i);
        if (i < text.size() && text[i] == 'x') {
            ++i;
            mult = parse_long(text, i);
        }
        if (p < 2) throw ParseError("torsion prime must be >= 2", i);
        bool prime = p >= 2;
        for (long c = 2; c * c <= p; ++c)
            if (p % c == 0) prime = false;
        if (!prime) throw ParseError("torsion base must be prime", i);
        for (long m = 0; m < mult; ++m) primaries[p].push_back(e);
        skip_ws(text, i);
        if (i == text.size()) break;
        if (text[i] != ',') throw ParseError("expected ','", i);
        ++i;
    }
    return TorsionDecomposition(std::move(primaries));
}

}  // namespace chang
