#include "chang/pi_tables.hpp"

#include <map>
#include <sstream>
#include <tuple>

namespace chang {

namespace {

long pow2(long e) { return 1L << e; }

long pow_long(long b, long e) {
    long out = 1;
    for (long i = 0; i < e; ++i) out *= b;
    return out;
}

struct Row {
    std::vector<CyclicSummand> orders;
    std::vector<Gen> gens;

    void push(long order, Gen g) {
        if (order == 1) return;  // trivial summand, dropped
        orders.push_back({order});
        gens.push_back(g);
    }
};

HomotopyGroupTable finish(const ElementaryComplex& host, int degree, Row row) {
    return {host, degree, AbelianGroup(std::move(row.orders)), std::move(row.gens)};
}

[[noreturn]] void untabulated(const ElementaryComplex& host, int degree) {
    throw UnsupportedTable("pi(" + host.to_string() + ", " + std::to_string(degree) +
                           ") is not tabulated");
}

}  // namespace

std::string gen_display(Gen g) {
    switch (g) {
        case Gen::Id: return "id";
        case Gen::Eta: return "eta";
        case Gen::Eta2: return "eta2";
        case Gen::Nu: return "nu";
        case Gen::Nu4: return "nu4";
        case Gen::SNuPrime: return "snuprime";
        case Gen::NuPrime: return "nuprime";
        case Gen::I: return "i";
        case Gen::IEta: return "i eta";
        case Gen::IEta2: return "i eta2";
        case Gen::EtaTilde: return "etatilde";
        case Gen::INu: return "i nu";
        case Gen::EtaTildeEta: return "etatilde eta";
        case Gen::IAlpha1: return "i alpha1";
        case Gen::INu4: return "i nu4";
        case Gen::ISNuPrime: return "i snuprime";
        case Gen::IEtaBot: return "i_eta";
        case Gen::IEtaNu: return "i_eta nu";
        case Gen::IEtaNu4: return "i_eta nu4";
        case Gen::IEtaSNuPrime: return "i_eta snuprime";
        case Gen::IBar: return "ibar";
        case Gen::IBarNu: return "ibar nu";
        case Gen::IBarPEtaTildeEta: return "ibarP etatilde eta";
        case Gen::IBarNu4: return "ibar nu4";
        case Gen::IBarSNuPrime: return "ibar snuprime";
        case Gen::IHat: return "ihat";
        case Gen::IHatEta2: return "ihat eta2";
        case Gen::IHatNu: return "ihat nu";
        case Gen::IHatNu4: return "ihat nu4";
        case Gen::IHatSNuPrime: return "ihat snuprime";
        case Gen::ICheck: return "icheck";
        case Gen::ICheckEta2: return "icheck eta2";
        case Gen::ICheckNu: return "icheck nu";
        case Gen::ICheckPEtaTildeEta: return "icheckP etatilde eta";
        case Gen::ICheckNu4: return "icheck nu4";
        case Gen::ICheckSNuPrime: return "icheck snuprime";
    }
    throw StructuralError("unreachable");
}

std::string gen_token(Gen g) {
    std::string s = gen_display(g);
    for (char& c : s)
        if (c == ' ') c = '_';
    return s;
}

std::optional<std::size_t> HomotopyGroupTable::slot(Gen g) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == g) return i;
    return std::nullopt;
}

std::string HomotopyGroupTable::to_string() const {
    if (generators.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (i) os << " + ";
        const long order = group.summands()[i].order;
        if (order == 0)
            os << "Z";
        else
            os << "Z/" << order;
        os << " <" << gen_display(generators[i]) << ">";
    }
    return os.str();
}

namespace {

HomotopyGroupTable pi_uncached(const ElementaryComplex& host, int degree);

}  // namespace

HomotopyGroupTable pi(const ElementaryComplex& host, int degree) {
    using Key = std::tuple<Kind, int, long, long, long, int>;
    thread_local std::map<Key, HomotopyGroupTable> cache;
    Key key{host.kind(), host.top(), host.prime(), host.r(), host.s(), degree};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    HomotopyGroupTable t = pi_uncached(host, degree);
    cache.emplace(std::move(key), t);
    return t;
}

namespace {

HomotopyGroupTable pi_uncached(const ElementaryComplex& host, int degree) {
    const int n = host.bottom();
    if (degree < 1) untabulated(host, degree);
    if (degree < n) return finish(host, degree, {});  // connectivity

    Row row;
    switch (host.kind()) {
        case Kind::Sphere: {
            const int m = host.top();
            if (degree == m) {
                row.push(0, Gen::Id);
                return finish(host, degree, std::move(row));
            }
            if (degree == m + 1 && m >= 3) {
                row.push(2, Gen::Eta);
                return finish(host, degree, std::move(row));
            }
            if (degree == m + 2 && m >= 3) {
                row.push(2, Gen::Eta2);
                return finish(host, degree, std::move(row));
            }
            if (degree == m + 3) {
                if (m >= 5) {
                    row.push(24, Gen::Nu);
                    return finish(host, degree, std::move(row));
                }
                if (m == 4) {
                    row.push(0, Gen::Nu4);
                    row.push(12, Gen::SNuPrime);
                    return finish(host, degree, std::move(row));
                }
                if (m == 3) {
                    row.push(12, Gen::NuPrime);
                    return finish(host, degree, std::move(row));
                }
            }
            untabulated(host, degree);
        }
        case Kind::Moore: {
            const long p = host.prime();
            const long r = host.r();
            if (n < 3) untabulated(host, degree);
            if (degree == n) {
                row.push(pow_long(p, r), Gen::I);
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 1) {
                if (p == 2) row.push(2, Gen::IEta);
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 2) {
                if (p == 2) {
                    if (r == 1) {
                        row.push(4, Gen::EtaTilde);
                    } else {
                        row.push(2, Gen::IEta2);
                        row.push(2, Gen::EtaTilde);
                    }
                }
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 3 && n >= 5) {
                if (p == 2) {
                    row.push(pow2(min_exp(r, 3)), Gen::INu);
                    row.push(2, Gen::EtaTildeEta);
                } else if (p == 3) {
                    row.push(3, Gen::IAlpha1);
                }
                return finish(host, degree, std::move(row));
            }
            if (degree == 7 && n == 4) {
                if (p == 2) {
                    row.push(pow2(r + 1), Gen::INu4);
                    row.push(2, Gen::EtaTildeEta);
                    row.push(pow2(min_exp(r - 1, 2)), Gen::ISNuPrime);
                } else if (p == 3) {
                    row.push(pow_long(3, r), Gen::INu4);
                    row.push(3, Gen::ISNuPrime);
                } else {
                    row.push(pow_long(p, r), Gen::INu4);
                }
                return finish(host, degree, std::move(row));
            }
            untabulated(host, degree);
        }
        case Kind::ChangEta: {
            if (degree == n) {
                row.push(0, Gen::IEtaBot);
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 3 && n >= 5) {
                row.push(12, Gen::IEtaNu);
                return finish(host, degree, std::move(row));
            }
            if (degree == 7 && n == 4) {
                row.push(0, Gen::IEtaNu4);
                row.push(6, Gen::IEtaSNuPrime);
                return finish(host, degree, std::move(row));
            }
            untabulated(host, degree);
        }
        case Kind::ChangR: {
            const long r = host.r();
            if (degree == n) {
                row.push(pow2(r), Gen::IBar);
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 3 && n >= 5) {
                row.push(pow2(min_exp(r, 2)), Gen::IBarNu);
                row.push(2, Gen::IBarPEtaTildeEta);
                return finish(host, degree, std::move(row));
            }
            if (degree == 7 && n == 4) {
                row.push(pow2(r + 1), Gen::IBarNu4);
                if (delta(r) == 0) row.push(2, Gen::IBarSNuPrime);
                row.push(2, Gen::IBarPEtaTildeEta);
                return finish(host, degree, std::move(row));
            }
            untabulated(host, degree);
        }
        case Kind::ChangS: {
            if (degree == n) {
                row.push(0, Gen::IHat);
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 3 && n >= 5) {
                row.push(2, Gen::IHatEta2);
                row.push(12, Gen::IHatNu);
                return finish(host, degree, std::move(row));
            }
            if (degree == 7 && n == 4) {
                row.push(2, Gen::IHatEta2);
                row.push(0, Gen::IHatNu4);
                row.push(6, Gen::IHatSNuPrime);
                return finish(host, degree, std::move(row));
            }
            untabulated(host, degree);
        }
        case Kind::ChangRS: {
            const long r = host.r();
            if (degree == n) {
                row.push(pow2(r), Gen::ICheck);
                return finish(host, degree, std::move(row));
            }
            if (degree == n + 3 && n >= 5) {
                row.push(2, Gen::ICheckEta2);
                row.push(pow2(min_exp(r, 2)), Gen::ICheckNu);
                row.push(2, Gen::ICheckPEtaTildeEta);
                return finish(host, degree, std::move(row));
            }
            if (degree == 7 && n == 4) {
                row.push(2, Gen::ICheckEta2);
                row.push(pow2(r + 1), Gen::ICheckNu4);
                if (delta(r) == 0) row.push(2, Gen::ICheckSNuPrime);
                row.push(2, Gen::ICheckPEtaTildeEta);
                return finish(host, degree, std::move(row));
            }
            untabulated(host, degree);
        }
    }
    throw StructuralError("unreachable");
}

}  // namespace

bool pi_supported(const ElementaryComplex& host, int degree) {
    try {
        (void)pi(host, degree);
        return true;
    } catch (const UnsupportedTable&) {
        return false;
    }
}

GroupElement make_class(const ElementaryComplex& host, int degree,
                        const std::vector<std::pair<Gen, long>>& terms) {
    HomotopyGroupTable t = pi(host, degree);
    std::vector<long> coeffs(t.group.size(), 0);
    for (const auto& [g, c] : terms) {
        auto s = t.slot(g);
        if (!s)
            throw StructuralError("generator " + gen_token(g) + " absent from pi(" +
                                  host.to_string() + ", " + std::to_string(degree) + ")");
        coeffs[*s] += c;
    }
    return GroupElement(t.group, std::move(coeffs));
}

}  // namespace chang
