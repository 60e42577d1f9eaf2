#include "chang/complexes.hpp"

#include <cctype>
#include <sstream>

namespace chang {

namespace {

long pow_long(long base, long exp) {
    long out = 1;
    for (long i = 0; i < exp; ++i) out *= base;
    return out;
}

void expect(const std::string& s, std::size_t& i, char c) {
    if (i >= s.size() || s[i] != c)
        throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
}

long read_int(const std::string& s, std::size_t& i) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected integer", i);
    return std::stol(s.substr(start, i - start));
}

}  // namespace

ElementaryComplex::ElementaryComplex(Kind kind, int top, long p, long r, long s)
    : kind_(kind), top_(top), p_(p), r_(r), s_(s) {}

ElementaryComplex ElementaryComplex::sphere(int k) {
    if (k < 2) throw StructuralError("sphere dimension must be >= 2");
    return {Kind::Sphere, k, 0, 0, 0};
}

ElementaryComplex ElementaryComplex::moore(int k, long p, long r) {
    if (k < 3) throw StructuralError("Moore space dimension must be >= 3");
    if (p < 2) throw StructuralError("Moore space prime must be >= 2");
    for (long c = 2; c * c <= p; ++c)
        if (p % c == 0) throw StructuralError("Moore space base must be prime");
    if (r < 1) throw StructuralError("Moore space exponent must be >= 1");
    return {Kind::Moore, k, p, r, 0};
}

ElementaryComplex ElementaryComplex::chang_eta(int k) {
    if (k < 5) throw StructuralError("Chang complex needs bottom >= 3");
    return {Kind::ChangEta, k, 2, 0, 0};
}

ElementaryComplex ElementaryComplex::chang_r(int k, long r) {
    if (k < 5) throw StructuralError("Chang complex needs bottom >= 3");
    if (r < 1) throw StructuralError("Chang exponent r must be >= 1");
    return {Kind::ChangR, k, 2, r, 0};
}

ElementaryComplex ElementaryComplex::chang_s(int k, long s) {
    if (k < 5) throw StructuralError("Chang complex needs bottom >= 3");
    if (s < 1) throw StructuralError("Chang exponent s must be >= 1");
    return {Kind::ChangS, k, 2, 0, s};
}

ElementaryComplex ElementaryComplex::chang_rs(int k, long r, long s) {
    if (k < 5) throw StructuralError("Chang complex needs bottom >= 3");
    if (r < 1 || s < 1) throw StructuralError("Chang exponents must be >= 1");
    return {Kind::ChangRS, k, 2, r, s};
}

int ElementaryComplex::bottom() const {
    switch (kind_) {
        case Kind::Sphere: return top_;
        case Kind::Moore: return top_ - 1;
        default: return top_ - 2;
    }
}

std::vector<std::pair<int, AbelianGroup>> ElementaryComplex::homology() const {
    const int n = bottom();
    switch (kind_) {
        case Kind::Sphere:
            return {{n, AbelianGroup::free(1)}};
        case Kind::Moore:
            return {{n, AbelianGroup::cyclic(pow_long(p_, r_))}};
        case Kind::ChangEta:
            return {{n, AbelianGroup::free(1)}, {n + 2, AbelianGroup::free(1)}};
        case Kind::ChangR:
            return {{n, AbelianGroup::cyclic(pow_long(2, r_))}, {n + 2, AbelianGroup::free(1)}};
        case Kind::ChangS:
            return {{n, AbelianGroup::free(1)}, {n + 1, AbelianGroup::cyclic(pow_long(2, s_))}};
        case Kind::ChangRS:
            return {{n, AbelianGroup::cyclic(pow_long(2, r_))},
                    {n + 1, AbelianGroup::cyclic(pow_long(2, s_))}};
    }
    throw StructuralError("unreachable");
}

ElementaryComplex ElementaryComplex::suspend() const {
    return {kind_, top_ + 1, p_, r_, s_};
}

std::string ElementaryComplex::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Sphere:
            os << "S" << top_;
            break;
        case Kind::Moore:
            os << "P" << top_ << "(" << p_ << "^" << r_ << ")";
            break;
        case Kind::ChangEta:
            os << "Ceta" << top_;
            break;
        case Kind::ChangR:
            os << "C" << top_ << "[r=" << r_ << "]";
            break;
        case Kind::ChangS:
            os << "C" << top_ << "{s=" << s_ << "}";
            break;
        case Kind::ChangRS:
            os << "C" << top_ << "[r=" << r_ << "]{s=" << s_ << "}";
            break;
    }
    return os.str();
}

ElementaryComplex ElementaryComplex::parse(const std::string& text) {
    std::size_t i = 0;
    ElementaryComplex c = parse(text, i);
    if (i != text.size()) throw ParseError("trailing characters after complex", i);
    return c;
}

ElementaryComplex ElementaryComplex::parse(const std::string& text, std::size_t& i) {
    if (i >= text.size()) throw ParseError("empty complex literal", i);
    if (text[i] == 'S') {
        ++i;
        return sphere(static_cast<int>(read_int(text, i)));
    }
    if (text[i] == 'P') {
        ++i;
        int k = static_cast<int>(read_int(text, i));
        expect(text, i, '(');
        long p = read_int(text, i);
        expect(text, i, '^');
        long r = read_int(text, i);
        expect(text, i, ')');
        return moore(k, p, r);
    }
    if (text.compare(i, 4, "Ceta") == 0) {
        i += 4;
        return chang_eta(static_cast<int>(read_int(text, i)));
    }
    if (text[i] == 'C') {
        ++i;
        int k = static_cast<int>(read_int(text, i));
        long r = 0, s = 0;
        bool has_r = false, has_s = false;
        if (i < text.size() && text[i] == '[') {
            ++i;
            expect(text, i, 'r');
            expect(text, i, '=');
            r = read_int(text, i);
            expect(text, i, ']');
            has_r = true;
        }
        if (i < text.size() && text[i] == '{') {
            ++i;
            expect(text, i, 's');
            expect(text, i, '=');
            s = read_int(text, i);
            expect(text, i, '}');
            has_s = true;
        }
        if (has_r && has_s) return chang_rs(k, r, s);
        if (has_r) return chang_r(k, r);
        if (has_s) return chang_s(k, s);
        throw ParseError("Chang complex needs [r=..] or {s=..}", i);
    }
    throw ParseError("unrecognized complex literal", i);
}

bool suspension_divisibility(const ElementaryComplex& host, long a) {
    if (host.bottom() != 4)
        throw StructuralError("suspension_divisibility applies to bottom-4 hosts");
    switch (host.kind()) {
        case Kind::Sphere:
            throw StructuralError("suspension_divisibility: no nu4-type generator on S4 host");
        case Kind::ChangEta:
        case Kind::ChangS:
            return a == 0;
        case Kind::Moore:
            if (host.prime() != 2) return a == 0;
            [[fallthrough]];
        case Kind::ChangR:
        case Kind::ChangRS: {
            long m = 1;
            for (long i = 0; i < host.r(); ++i) m *= 2;
            return a % m == 0;
        }
    }
    throw StructuralError("unreachable");
}

}  // namespace chang
