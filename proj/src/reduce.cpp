#include "chang/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace chang {

namespace {

long pow_long(long b, long e) {
    long out = 1;
    for (long i = 0; i < e; ++i) out *= b;
    return out;
}

long p_adic_val(long m, long p) {
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

// p-primary component of c in Z/m, re-embedded (c_p = c mod p^a, 0 mod rest).
long p_part(long c, long m, long p) {
    if (m == 0) {
        if (c != 0) throw StructuralError("localize: free coefficient domain");
        return 0;
    }
    const long pa = pow_long(p, p_adic_val(m, p));
    const long rest = m / pa;
    if (pa == 1) return 0;
    for (long k = 0; k < pa; ++k) {
        long x = k * rest;
        if ((x - c) % pa == 0) return reduce_mod(x, m);
    }
    throw StructuralError("localize: CRT failed");
}

}  // namespace

VectorAnalysis analyze_vector(const AttachingVector& v) {
    VectorAnalysis a;
    for (std::size_t i = 0; i < v.wedge().size(); ++i) {
        const ElementaryComplex& host = v.wedge()[i];
        HomotopyGroupTable t = pi(host, v.degree());
        for (std::size_t k = 0; k < t.group.size(); ++k) {
            long c = v.entry(i).coefficient(k);
            if (c == 0) continue;
            switch (t.generators[k]) {
                case Gen::Eta: a.n1 = true; break;
                case Gen::Eta2: a.n2 = true; break;
                case Gen::EtaTilde:
                    if (host.r() == 1) {
                        if (c % 2 == 1)
                            a.n1 = true;
                        else
                            a.n2 = true;  // 2*etatilde_1 = i eta^2
                    } else {
                        a.n1 = true;
                    }
                    break;
                case Gen::IEta2:
                case Gen::EtaTildeEta:
                case Gen::IBarPEtaTildeEta:
                case Gen::IHatEta2:
                case Gen::ICheckEta2:
                case Gen::ICheckPEtaTildeEta:
                    a.n2 = true;
                    break;
                case Gen::Nu:
                    if (c % 3 != 0) a.odd_free = true;
                    if (reduce_mod(c, 8) == 4)
                        a.n3 = true;
                    else if (reduce_mod(c, 8) != 0)
                        a.inadmissible = true;
                    break;
                case Gen::INu: {
                    long order = t.group.summands()[k].order;
                    if (order == 8 && reduce_mod(c, 8) == 4)
                        a.n3 = true;
                    else
                        a.inadmissible = true;
                    break;
                }
                case Gen::IEtaNu:
                case Gen::IHatNu:
                    if (c % 3 != 0) a.odd_free = true;
                    if (reduce_mod(c, 4) != 0) a.inadmissible = true;
                    break;
                case Gen::IBarNu:
                case Gen::ICheckNu:
                    a.inadmissible = true;
                    break;
                case Gen::IAlpha1:
                    a.odd_moore = true;
                    break;
                default:
                    a.inadmissible = true;
                    break;
            }
        }
    }
    return a;
}

void check_flags(const AttachingVector& v, const OperationFlags& flags) {
    flags.validate();
    VectorAnalysis a = analyze_vector(v);
    if (a.inadmissible)
        throw FlagMismatch("coefficients outside the admissible (Psi-trivial) domains");
    if (flags.sq2 != a.n1)
        throw FlagMismatch(flags.sq2 ? "sq2 flag set but no tier-1 coefficient"
                                     : "tier-1 coefficient present but sq2 flag unset");
    if (!flags.sq2) {
        if (flags.theta != a.n2)
            throw FlagMismatch(flags.theta ? "theta flag set but no tier-2 coefficient"
                                           : "tier-2 coefficient present but theta flag unset");
        if (!flags.theta && flags.triple != a.n3)
            throw FlagMismatch(flags.triple ? "triple flag set but no tier-3 coefficient"
                                            : "tier-3 coefficient present but triple flag unset");
    }
    const bool p3 = a.odd_free || a.odd_moore;
    if (flags.p1 != p3)
        throw FlagMismatch(flags.p1 ? "p1 flag set but no 3-primary coefficient"
                                    : "3-primary coefficient present but p1 flag unset");
    if (flags.star && a.odd_free)
        throw FlagMismatch("condition_star forces the free 3-primary parts to vanish");
    if (flags.p1 && !flags.star && !a.odd_free)
        throw FlagMismatch("without condition_star the 3-primary part needs a free carrier");
}

std::vector<Move> standard_moves(const WedgeSpace& w, int degree, const RulePack& pack) {
    std::vector<Move> moves;
    std::set<std::string> seen;
    auto add_elementary = [&](std::size_t i, std::size_t j, const FormalMorph& f,
                              const std::string& id) {
        std::ostringstream key;
        key << i << "<-" << j << ":" << f.to_string();
        if (!seen.insert(key.str()).second) return;
        moves.push_back({EquivalenceMatrix::elementary(w, i, j, f),
                         EquivalenceMatrix::elementary(w, i, j, f.scaled(-1)), id, j, i});
    };
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (i == j) continue;
            for (const MorphSymbol& f : morphs_between(w[j], w[i]))
                add_elementary(i, j, FormalMorph::single(f), "move:" + morph_name(f.tag()));
            for (const PrecRule& r : pack.prec) {
                if (r.degree != degree) continue;
                if (r.alpha_host == w[j] && r.beta_host == w[i])
                    add_elementary(i, j, r.witness, r.rule_id);
            }
        }
        moves.push_back({EquivalenceMatrix::diagonal(w, i, FormalMorph::identity(w[i], -1)),
                         EquivalenceMatrix::diagonal(w, i, FormalMorph::identity(w[i], -1)),
                         "unit-neg", i, i});
        for (const PlusRule& p : pack.plus) {
            if (p.host != w[i]) continue;
            moves.push_back({EquivalenceMatrix::diagonal(w, i, p.equivalence),
                             EquivalenceMatrix::diagonal(w, i, p.inverse), p.rule_id, i, i});
        }
    }
    return moves;
}

namespace {

std::optional<AttachingVector> try_act(const EquivalenceMatrix& m, const AttachingVector& v) {
    try {
        return act(m, v);
    } catch (const UnknownComposite&) {
        return std::nullopt;
    } catch (const UnsupportedTable&) {
        return std::nullopt;
    }
}

struct Descent {
    const std::vector<Move>& moves;
    std::size_t applied = 0;
    std::size_t evaluated = 0;
    std::size_t budget;
    std::size_t eval_cap;
    std::vector<TraceStep>* trace;

    Descent(const std::vector<Move>& mv, std::size_t budget, std::vector<TraceStep>* tr)
        : moves(mv), budget(budget), eval_cap(std::max<std::size_t>(budget * 500, 1000000)),
          trace(tr) {}

    void note(const std::string& id, const AttachingVector& to) {
        if (trace) trace->push_back({id, to.to_string()});
        if (++applied > budget)
            throw Indeterminate("canonicalize: rule application budget exhausted");
    }

    std::optional<AttachingVector> eval(const EquivalenceMatrix& m, const AttachingVector& v) {
        if (++evaluated > eval_cap)
            throw Indeterminate("canonicalize: evaluation budget exhausted");
        return try_act(m, v);
    }

    // best multiple of the best single move (repeated application of one
    // elementary move realizes every integer multiple of its entry)
    bool step(AttachingVector& cur) {
        const Move* best_move = nullptr;
        std::optional<AttachingVector> best;
        long best_times = 0;
        for (const Move& mv : moves) {
            if (cur.entry(mv.src).is_zero()) continue;
            for (const EquivalenceMatrix* dir : {&mv.forward, &mv.inverse}) {
                AttachingVector probe = cur;
                for (long times = 1; times <= 24; ++times) {
                    auto nxt = eval(*dir, probe);
                    if (!nxt) break;
                    if (*nxt == cur) break;  // cycled back
                    probe = *nxt;
                    if (vector_less(probe, cur) && (!best || vector_less(probe, *best))) {
                        best = probe;
                        best_move = &mv;
                        best_times = times;
                    }
                }
            }
        }
        if (!best) return false;
        cur = *best;
        note(best_move->rule_id + (best_times > 1 ? " x" + std::to_string(best_times) : ""), cur);
        return true;
    }

    // True when a nonzero coordinate admits units beyond a sign; smaller
    // orders are already normalized by the sign flips.
    static bool wants_unit_loops(const AttachingVector& v) {
        for (std::size_t i = 0; i < v.wedge().size(); ++i) {
            const AbelianGroup& g = pi(v.wedge()[i], v.degree()).group;
            for (std::size_t k = 0; k < g.size(); ++k)
                if (v.entry(i).coefficient(k) != 0 && g.summands()[k].order >= 8) return true;
        }
        return false;
    }

    // transfer out, scale through the partner, transfer back: realizes the
    // unit multiplications the wedge admits but no single move does
    bool unit_loop(AttachingVector& cur) {
        if (!wants_unit_loops(cur)) return false;
        for (const Move& out : moves) {
            if (out.src == out.dst || cur.entry(out.src).is_zero()) continue;
            for (const Move& back : moves) {
                if (back.src != out.dst || back.dst != out.src) continue;
                auto lifted = eval(out.forward, cur);
                if (!lifted || *lifted == cur) continue;
                AttachingVector stage = *lifted;
                for (long k = 1; k <= 24; ++k) {
                    auto next_stage = eval(back.forward, stage);
                    if (!next_stage) break;
                    stage = *next_stage;
                    auto dropped = eval(out.inverse, stage);
                    if (!dropped) break;
                    AttachingVector w = *dropped;
                    // clean residues before judging the detour
                    std::vector<TraceStep>* saved = trace;
                    trace = nullptr;
                    std::size_t saved_applied = applied;
                    while (step(w)) {
                    }
                    trace = saved;
                    applied = saved_applied;
                    if (vector_less(w, cur)) {
                        note(out.rule_id + "/" + back.rule_id + " loop x" + std::to_string(k), w);
                        cur = w;
                        return true;
                    }
                    if (stage == *lifted) break;  // the partner coordinate cycled
                }
            }
        }
        return false;
    }

    // transfer + eliminate: one rise followed by a strict improvement
    bool step2(AttachingVector& cur) {
        for (const Move& m1 : moves) {
            if (cur.entry(m1.src).is_zero()) continue;
            for (const EquivalenceMatrix* d1 : {&m1.forward, &m1.inverse}) {
                auto mid = eval(*d1, cur);
                if (!mid || *mid == cur) continue;
                for (const Move& m2 : moves) {
                    if (mid->entry(m2.src).is_zero()) continue;
                    for (const EquivalenceMatrix* d2 : {&m2.forward, &m2.inverse}) {
                        AttachingVector probe = *mid;
                        for (long times = 1; times <= 24; ++times) {
                            auto nxt = eval(*d2, probe);
                            if (!nxt || *nxt == *mid) break;
                            probe = *nxt;
                            if (vector_less(probe, cur)) {
                                note(m1.rule_id, *mid);
                                note(m2.rule_id, probe);
                                cur = probe;
                                return true;
                            }
                        }
                    }
                }
            }
        }
        return false;
    }
};

}  // namespace

Reduction canonicalize(const AttachingVector& v, const std::optional<OperationFlags>& flags,
                       const RulePack& pack, const CanonOptions& opts) {
    if (flags) check_flags(v, *flags);
    Reduction out{v, {}};
    std::vector<Move> moves = standard_moves(v.wedge(), v.degree(), pack);
    Descent d(moves, opts.budget, &out.trace);
    AttachingVector cur = v;
    bool progress = true;
    while (progress) {
        while (d.step(cur)) {
        }
        progress = false;
        if (opts.polish) progress = d.step2(cur) || d.unit_loop(cur);
    }
    out.vector = cur;
    return out;
}

Reduction canonicalize(const AttachingVector& v, const RulePack& pack, const CanonOptions& opts) {
    return canonicalize(v, std::nullopt, pack, opts);
}

AttachingVector localize(const AttachingVector& v, long p) {
    if (p != 2 && p != 3) throw StructuralError("localize: only p = 2 and p = 3 are supported");
    std::vector<GroupElement> entries;
    for (std::size_t i = 0; i < v.wedge().size(); ++i) {
        const AbelianGroup& g = pi(v.wedge()[i], v.degree()).group;
        std::vector<long> coeffs(g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
            coeffs[k] = p_part(v.entry(i).coefficient(k), g.summands()[k].order, p);
        entries.push_back(GroupElement(g, std::move(coeffs)));
    }
    return AttachingVector(v.wedge(), v.degree(), std::move(entries));
}

AttachingVector merge_locals(const AttachingVector& v2, const AttachingVector& v3) {
    if (v2.wedge() != v3.wedge() || v2.degree() != v3.degree())
        throw StructuralError("merge_locals: vectors on different wedges");
    auto check_pure = [&](const AttachingVector& v, long p, const char* what) {
        for (std::size_t i = 0; i < v.wedge().size(); ++i) {
            const AbelianGroup& g = pi(v.wedge()[i], v.degree()).group;
            for (std::size_t k = 0; k < g.size(); ++k) {
                long c = v.entry(i).coefficient(k);
                if (c == 0) continue;
                long m = g.summands()[k].order;
                if (m == 0) throw StructuralError("merge_locals: free coefficient present");
                if (p_part(c, m, p) != c)
                    throw StructuralError(std::string("merge_locals: ") + what +
                                          " vector is not purely " + std::to_string(p) +
                                          "-primary");
            }
        }
    };
    check_pure(v2, 2, "first");
    check_pure(v3, 3, "second");
    return add(v2, v3);
}

}  // namespace chang
