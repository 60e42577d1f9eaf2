#include "chang/wedge.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace chang {

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// Strips underscores and dimension digits (digits between two letters) so
// "i6eta2", "i_eta2" and "ieta2" normalize alike while the trailing digits
// of "eta2" or "alpha1" stay meaningful.
std::string normalize_token(const std::string& t) {
    std::string bare;
    for (char c : t)
        if (c != '_') bare.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    std::string out;
    for (std::size_t i = 0; i < bare.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(bare[i])) && i + 1 < bare.size() && i > 0 &&
            std::isalpha(static_cast<unsigned char>(bare[i - 1])) &&
            std::isalpha(static_cast<unsigned char>(bare[i + 1])))
            continue;
        out.push_back(bare[i]);
    }
    return out;
}

// Named multiples of table generators accepted by the vector grammar.
std::optional<std::pair<Gen, long>> alias_for(const ElementaryComplex& host, int degree,
                                              const std::string& key) {
    const int n = host.bottom();
    switch (host.kind()) {
        case Kind::Sphere:
            if (degree == n + 3 && host.top() >= 5) {
                if (key == "eta3") return {{Gen::Nu, 12}};
                if (key == "alpha1") return {{Gen::Nu, 16}};
            }
            return std::nullopt;
        case Kind::Moore:
            // 2*etatilde_1 = i eta^2 on the exponent-one Moore space
            if (host.prime() == 2 && host.r() == 1 && degree == n + 2 && key == "ieta2")
                return {{Gen::EtaTilde, 2}};
            if (degree != n + 3) return std::nullopt;
            if (host.prime() == 2 && n >= 5 && key == "ieta3") return {{Gen::INu, 12}};
            if (host.prime() == 3 && n >= 5 && key == "ialpha1") return {{Gen::IAlpha1, 1}};
            return std::nullopt;
        case Kind::ChangEta:
            if (degree == n + 3 && n >= 5) {
                if (key == "ietaalpha1") return {{Gen::IEtaNu, 4}};
                if (key == "ietaeta3") return {{Gen::IEtaNu, 12}};
            }
            return std::nullopt;
        case Kind::ChangS:
            if (degree == n + 3 && n >= 5) {
                if (key == "ihatalpha1") return {{Gen::IHatNu, 4}};
                if (key == "ihateta3") return {{Gen::IHatNu, 12}};
            }
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

// Short display forms for the named multiples the statements use.
std::optional<std::string> pretty_term(Gen g, long c, long order) {
    switch (g) {
        case Gen::Nu:
            if (c == 16) return "1*alpha1";
            if (c == 8) return "2*alpha1";
            if (c == 12) return "1*eta3";
            return std::nullopt;
        case Gen::IEtaNu:
            if (c == 4) return "1*i_eta_alpha1";
            if (c == 8) return "2*i_eta_alpha1";
            return std::nullopt;
        case Gen::IHatNu:
            if (c == 4) return "1*ihat_alpha1";
            if (c == 8) return "2*ihat_alpha1";
            return std::nullopt;
        case Gen::INu:
            if (order == 8 && c == 4) return "1*i_eta3";
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

}  // namespace

WedgeSpace::WedgeSpace(std::vector<ElementaryComplex> summands) : summands_(std::move(summands)) {
    if (summands_.empty()) throw StructuralError("wedge must have at least one summand");
    for (const auto& c : summands_)
        if (c.bottom() < 2) throw StructuralError("wedge summands must be simply connected");
}

std::map<int, AbelianGroup> WedgeSpace::homology() const {
    std::map<int, AbelianGroup> out;
    for (const auto& c : summands_)
        for (const auto& [d, g] : c.homology()) {
            auto it = out.find(d);
            if (it == out.end())
                out.emplace(d, g);
            else
                it->second = it->second.direct_sum(g);
        }
    return out;
}

WedgeSpace WedgeSpace::without(std::size_t i) const {
    if (i >= summands_.size()) throw StructuralError("without: index out of range");
    std::vector<ElementaryComplex> out;
    for (std::size_t j = 0; j < summands_.size(); ++j)
        if (j != i) out.push_back(summands_[j]);
    return WedgeSpace(std::move(out));
}

std::string WedgeSpace::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < summands_.size(); ++i) {
        if (i) os << "v";
        os << summands_[i].to_string();
    }
    return os.str();
}

WedgeSpace WedgeSpace::parse(const std::string& text) {
    std::vector<ElementaryComplex> out;
    std::size_t i = 0;
    skip_ws(text, i);
    bool bracketed = i < text.size() && text[i] == '[';
    if (bracketed) ++i;
    while (true) {
        skip_ws(text, i);
        out.push_back(ElementaryComplex::parse(text, i));
        skip_ws(text, i);
        if (i < text.size() && text[i] == 'v') {
            ++i;
            continue;
        }
        break;
    }
    if (bracketed) {
        if (i >= text.size() || text[i] != ']') throw ParseError("expected ']'", i);
        ++i;
        skip_ws(text, i);
    }
    if (i != text.size()) throw ParseError("trailing characters after wedge", i);
    return WedgeSpace(std::move(out));
}

AttachingVector::AttachingVector(const WedgeSpace& wedge, int degree)
    : wedge_(wedge), degree_(degree) {
    for (const auto& c : wedge.summands())
        entries_.push_back(GroupElement::zero(pi(c, degree).group));
}

AttachingVector::AttachingVector(const WedgeSpace& wedge, int degree,
                                 std::vector<GroupElement> entries)
    : wedge_(wedge), degree_(degree), entries_(std::move(entries)) {
    if (entries_.size() != wedge.size())
        throw StructuralError("attaching vector entry count mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].coefficients().size() != pi(wedge[i], degree).group.size())
            throw StructuralError("attaching vector entry does not match pi table");
}

void AttachingVector::set_entry(std::size_t i, GroupElement e) {
    if (e.coefficients().size() != pi(wedge_[i], degree_).group.size())
        throw StructuralError("set_entry: element does not match pi table");
    entries_.at(i) = std::move(e);
}

bool AttachingVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const GroupElement& e) { return e.is_zero(); });
}

std::vector<long> AttachingVector::flat() const {
    std::vector<long> out;
    for (const auto& e : entries_)
        out.insert(out.end(), e.coefficients().begin(), e.coefficients().end());
    return out;
}

std::string AttachingVector::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << "; ";
        HomotopyGroupTable t = pi(wedge_[i], degree_);
        bool any = false;
        for (std::size_t k = 0; k < t.group.size(); ++k) {
            long c = entries_[i].coefficient(k);
            if (c == 0) continue;
            if (any) os << " + ";
            if (auto pretty = pretty_term(t.generators[k], c, t.group.summands()[k].order))
                os << *pretty;
            else
                os << c << "*" << gen_token(t.generators[k]);
            any = true;
        }
        if (!any) os << "0";
    }
    os << "]";
    return os.str();
}

AttachingVector AttachingVector::parse(const WedgeSpace& wedge, int degree,
                                       const std::string& text) {
    std::size_t i = 0;
    skip_ws(text, i);
    if (i >= text.size() || text[i] != '[') throw ParseError("expected '['", i);
    ++i;
    std::vector<GroupElement> entries;
    for (std::size_t idx = 0; idx < wedge.size(); ++idx) {
        HomotopyGroupTable t = pi(wedge[idx], degree);
        std::vector<long> coeffs(t.group.size(), 0);
        while (true) {
            skip_ws(text, i);
            if (i < text.size() && text[i] == '0') {
                std::size_t save = i;
                ++i;
                skip_ws(text, i);
                if (i < text.size() && (text[i] == '*' || std::isalnum(static_cast<unsigned char>(text[i])))) {
                    i = save;  // not a bare zero: fall through to term parsing
                } else if (i < text.size() && text[i] == '+') {
                    ++i;
                    continue;
                } else {
                    break;
                }
            }
            // term: <int> '*' <token> or bare <token>
            long coeff = 1;
            skip_ws(text, i);
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || std::isdigit(static_cast<unsigned char>(text[i])))) {
                bool neg = text[i] == '-';
                if (neg) ++i;
                std::size_t ds = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == ds) throw ParseError("expected coefficient", i);
                coeff = std::stol(text.substr(ds, i - ds));
                if (neg) coeff = -coeff;
                skip_ws(text, i);
                if (i >= text.size() || text[i] != '*') throw ParseError("expected '*'", i);
                ++i;
            }
            skip_ws(text, i);
            std::size_t ts = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            if (i == ts) throw ParseError("expected generator token", start);
            std::string key = normalize_token(text.substr(ts, i - ts));
            bool matched = false;
            for (std::size_t k = 0; k < t.generators.size(); ++k) {
                if (normalize_token(gen_token(t.generators[k])) == key) {
                    coeffs[k] += coeff;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                if (auto al = alias_for(wedge[idx], degree, key)) {
                    if (auto s = t.slot(al->first)) {
                        coeffs[*s] += coeff * al->second;
                        matched = true;
                    }
                }
            }
            if (!matched)
                throw ParseError("unknown generator '" + text.substr(ts, i - ts) + "' for " +
                                     wedge[idx].to_string(),
                                 ts);
            skip_ws(text, i);
            if (i < text.size() && text[i] == '+') {
                ++i;
                continue;
            }
            break;
        }
        entries.push_back(GroupElement(t.group, std::move(coeffs)));
        skip_ws(text, i);
        if (idx + 1 < wedge.size()) {
            if (i >= text.size() || text[i] != ';') throw ParseError("expected ';'", i);
            ++i;
        }
    }
    skip_ws(text, i);
    if (i >= text.size() || text[i] != ']') throw ParseError("expected ']'", i);
    ++i;
    skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing characters after vector", i);
    return AttachingVector(wedge, degree, std::move(entries));
}

bool vector_less(const AttachingVector& a, const AttachingVector& b) {
    std::vector<long> fa = a.flat(), fb = b.flat();
    if (fa.size() != fb.size()) throw StructuralError("vector_less: incompatible vectors");
    std::size_t sa = 0, sb = 0;
    for (long c : fa) sa += c != 0;
    for (long c : fb) sb += c != 0;
    if (sa != sb) return sa < sb;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        // zero ranks after every nonzero value
        long ka = fa[i] == 0 ? std::numeric_limits<long>::max() : fa[i];
        long kb = fb[i] == 0 ? std::numeric_limits<long>::max() : fb[i];
        if (ka != kb) return ka < kb;
    }
    return false;
}

AttachingVector add(const AttachingVector& a, const AttachingVector& b) {
    if (a.wedge() != b.wedge() || a.degree() != b.degree())
        throw StructuralError("add: vectors on different wedges");
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < a.wedge().size(); ++i) {
        const AbelianGroup& g = pi(a.wedge()[i], a.degree()).group;
        out.push_back(add(g, a.entry(i), b.entry(i)));
    }
    return AttachingVector(a.wedge(), a.degree(), std::move(out));
}

EquivalenceMatrix::EquivalenceMatrix(const WedgeSpace& w) : wedge_(w) {
    entries_.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            entries_[i].emplace_back(w[j], w[i]);
}

EquivalenceMatrix EquivalenceMatrix::identity(const WedgeSpace& w) {
    EquivalenceMatrix m(w);
    for (std::size_t i = 0; i < w.size(); ++i)
        m.entries_[i][i] = FormalMorph::identity(w[i]);
    return m;
}

EquivalenceMatrix EquivalenceMatrix::elementary(const WedgeSpace& w, std::size_t i, std::size_t j,
                                                const FormalMorph& f) {
    if (i == j) throw StructuralError("elementary move needs i != j");
    EquivalenceMatrix m = identity(w);
    if (f.source() != w[j] || f.target() != w[i])
        throw StructuralError("elementary move entry has mismatched signature");
    m.entries_[i][j] = f;
    return m;
}

EquivalenceMatrix EquivalenceMatrix::diagonal(const WedgeSpace& w, std::size_t i,
                                              const FormalMorph& f) {
    EquivalenceMatrix m = identity(w);
    if (f.source() != w[i] || f.target() != w[i])
        throw StructuralError("diagonal move entry has mismatched signature");
    m.entries_[i][i] = f;
    return m;
}

const FormalMorph& EquivalenceMatrix::entry(std::size_t i, std::size_t j) const {
    return entries_.at(i).at(j);
}

EquivalenceMatrix& EquivalenceMatrix::set_entry(std::size_t i, std::size_t j, FormalMorph f) {
    if (f.source() != wedge_[j] || f.target() != wedge_[i])
        throw StructuralError("set_entry: mismatched signature");
    entries_.at(i).at(j) = std::move(f);
    return *this;
}

EquivalenceMatrix EquivalenceMatrix::after(const EquivalenceMatrix& other) const {
    if (other.wedge_ != wedge_) throw StructuralError("after: wedges differ");
    EquivalenceMatrix out(wedge_);
    const std::size_t n = wedge_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            FormalMorph acc(wedge_[j], wedge_[i]);
            for (std::size_t k = 0; k < n; ++k) {
                if (entries_[i][k].is_zero() || other.entries_[k][j].is_zero()) continue;
                acc = acc.plus(entries_[i][k].after(other.entries_[k][j]));
            }
            out.entries_[i][j] = acc.normalized();
        }
    return out;
}

std::vector<std::vector<long>> EquivalenceMatrix::homology_matrix(int degree) const {
    const std::size_t n = wedge_.size();
    std::vector<std::vector<long>> out(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = entries_[i][j].homology_multiplier(degree);
    return out;
}

std::string EquivalenceMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < wedge_.size(); ++i) {
        os << "[ ";
        for (std::size_t j = 0; j < wedge_.size(); ++j) {
            if (j) os << " | ";
            os << entries_[i][j].to_string();
        }
        os << " ]\n";
    }
    return os.str();
}

AttachingVector act(const EquivalenceMatrix& m, const AttachingVector& v) {
    if (m.wedge() != v.wedge()) throw StructuralError("act: wedge mismatch");
    const std::size_t n = v.wedge().size();
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < n; ++i) {
        const AbelianGroup& g = pi(v.wedge()[i], v.degree()).group;
        GroupElement acc = GroupElement::zero(g);
        for (std::size_t j = 0; j < n; ++j) {
            const FormalMorph& f = m.entry(i, j);
            if (f.is_zero() || v.entry(j).is_zero()) continue;
            acc = add(g, acc, compose(f, v.degree(), v.entry(j)));
        }
        out.push_back(std::move(acc));
    }
    return AttachingVector(v.wedge(), v.degree(), std::move(out));
}

namespace {

long homology_order(const ElementaryComplex& c, int degree) {
    for (const auto& [d, g] : c.homology())
        if (d == degree) {
            if (g.size() != 1) throw StructuralError("unexpected homology shape");
            return g.summands()[0].order;
        }
    return 1;  // trivial
}

}  // namespace

bool homology_iso_certified(const EquivalenceMatrix& m, const EquivalenceMatrix& inverse) {
    const WedgeSpace& w = m.wedge();
    std::set<int> degrees;
    for (const auto& c : w.summands())
        for (const auto& [d, g] : c.homology()) degrees.insert(d);
    for (int d : degrees) {
        auto A = m.homology_matrix(d);
        auto B = inverse.homology_matrix(d);
        const std::size_t n = w.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const long src = homology_order(w[j], d);
                const long tgt = homology_order(w[i], d);
                // homomorphism validity of each entry
                for (long mult : {A[i][j], B[i][j]}) {
                    if (src == 1 || tgt == 1) continue;
                    if (tgt == 0 && src != 0 && mult != 0) return false;
                    if (tgt != 0 && src != 0 && (mult * src) % tgt != 0) return false;
                }
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc += A[i][k] * B[k][j];
                const long tgt = homology_order(w[i], d);
                if (tgt == 1 || homology_order(w[j], d) == 1) continue;
                long want = (i == j) ? 1 : 0;
                if (tgt == 0) {
                    if (acc != want) return false;
                } else if ((acc - want) % tgt != 0) {
                    return false;
                }
            }
    }
    return true;
}

std::map<int, AbelianGroup> cone_homology(const AttachingVector& v) {
    // Hurewicz image: only a bottom-degree class of a summand can hit
    // homology; everything above the bottom cell maps to zero.
    for (std::size_t i = 0; i < v.wedge().size(); ++i) {
        if (v.degree() == v.wedge()[i].bottom() && !v.entry(i).is_zero())
            throw StructuralError("cone_homology: nonzero Hurewicz image not supported");
    }
    std::map<int, AbelianGroup> h = v.wedge().homology();
    auto it = h.find(v.degree() + 1);
    if (it == h.end())
        h.emplace(v.degree() + 1, AbelianGroup::free(1));
    else
        it->second = it->second.direct_sum(AbelianGroup::free(1));
    return h;
}

std::optional<bool> equivalent(const AttachingVector& v, const AttachingVector& w,
                               const std::vector<Move>& moves, std::size_t budget) {
    if (v.wedge() != w.wedge() || v.degree() != w.degree())
        throw StructuralError("equivalent: vectors on different wedges");
    if (v == w) return true;
    std::set<std::vector<long>> seen;
    std::deque<AttachingVector> frontier{v};
    seen.insert(v.flat());
    std::size_t steps = 0;
    while (!frontier.empty()) {
        AttachingVector cur = frontier.front();
        frontier.pop_front();
        for (const Move& mv : moves) {
            for (const EquivalenceMatrix* m : {&mv.forward, &mv.inverse}) {
                if (++steps > budget) return std::nullopt;
                AttachingVector nxt = act(*m, cur);
                if (nxt == w) return true;
                if (seen.insert(nxt.flat()).second) frontier.push_back(nxt);
            }
        }
    }
    return false;
}

}  // namespace chang
