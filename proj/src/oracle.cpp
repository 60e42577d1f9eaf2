#include "chang/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chang {

VectorSpaceIndex::VectorSpaceIndex(const WedgeSpace& w, int degree) : wedge_(w), degree_(degree) {
    size_ = 1;
    for (const auto& c : w.summands()) {
        HomotopyGroupTable t = pi(c, degree);
        for (const auto& s : t.group.summands()) {
            if (s.order == 0)
                throw StructuralError("enumerate_vectors: pi(" + c.to_string() + ", " +
                                      std::to_string(degree) + ") is infinite");
            radices_.push_back(s.order);
            size_ *= static_cast<std::size_t>(s.order);
        }
    }
}

AttachingVector VectorSpaceIndex::decode(std::size_t index) const {
    std::vector<GroupElement> entries;
    std::size_t pos = 0;
    for (const auto& c : wedge_.summands()) {
        const AbelianGroup& g = pi(c, degree_).group;
        std::vector<long> coeffs(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) {
            long radix = radices_[pos++];
            coeffs[k] = static_cast<long>(index % static_cast<std::size_t>(radix));
            index /= static_cast<std::size_t>(radix);
        }
        entries.push_back(GroupElement(g, std::move(coeffs)));
    }
    return AttachingVector(wedge_, degree_, std::move(entries));
}

std::size_t VectorSpaceIndex::encode(const AttachingVector& v) const {
    std::size_t index = 0, mul = 1, pos = 0;
    for (std::size_t i = 0; i < wedge_.size(); ++i) {
        for (long c : v.entry(i).coefficients()) {
            index += static_cast<std::size_t>(c) * mul;
            mul *= static_cast<std::size_t>(radices_[pos++]);
        }
    }
    return index;
}

std::vector<AttachingVector> enumerate_vectors(const WedgeSpace& w, int degree,
                                               std::size_t budget) {
    VectorSpaceIndex idx(w, degree);
    if (idx.size() > budget)
        throw Indeterminate("enumerate_vectors: state space of size " +
                            std::to_string(idx.size()) + " exceeds the budget");
    std::vector<AttachingVector> out;
    out.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out.push_back(idx.decode(i));
    return out;
}

namespace {

// Applies the move to the state; SIZE_MAX when the composite is untabulated.
std::size_t apply_move(const VectorSpaceIndex& idx, const EquivalenceMatrix& m, std::size_t s) {
    try {
        return idx.encode(act(m, idx.decode(s)));
    } catch (const UnknownComposite&) {
        return SIZE_MAX;
    } catch (const UnsupportedTable&) {
        return SIZE_MAX;
    }
}

}  // namespace

std::vector<std::uint32_t> orbit_labels_serial(const VectorSpaceIndex& idx,
                                               const std::vector<Move>& moves) {
    const std::size_t n = idx.size();
    constexpr std::uint32_t unseen = UINT32_MAX;
    std::vector<std::uint32_t> label(n, unseen);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != unseen) continue;
        // states are explored in ascending order, so start is the orbit minimum
        label[start] = static_cast<std::uint32_t>(start);
        stack.push_back(start);
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            for (const Move& mv : moves) {
                for (const EquivalenceMatrix* dir : {&mv.forward, &mv.inverse}) {
                    std::size_t t = apply_move(idx, *dir, s);
                    if (t == SIZE_MAX || label[t] != unseen) continue;
                    label[t] = static_cast<std::uint32_t>(start);
                    stack.push_back(t);
                }
            }
        }
    }
    return label;
}

std::vector<std::uint32_t> orbit_labels_parallel(const VectorSpaceIndex& idx,
                                                 const std::vector<Move>& moves) {
    const std::size_t n = idx.size();
    std::vector<std::uint32_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<std::uint32_t>(i);

    // Cache the move images once, in parallel; the propagation loop then
    // min-reduces labels along edges until it stabilizes.
    const std::size_t m = moves.size();
    std::vector<std::uint32_t> image(2 * m * n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (long long si = 0; si < static_cast<long long>(n); ++si) {
        std::size_t s = static_cast<std::size_t>(si);
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t f = apply_move(idx, moves[k].forward, s);
            std::size_t g = apply_move(idx, moves[k].inverse, s);
            image[(2 * k) * n + s] = f == SIZE_MAX ? UINT32_MAX : static_cast<std::uint32_t>(f);
            image[(2 * k + 1) * n + s] = g == SIZE_MAX ? UINT32_MAX : static_cast<std::uint32_t>(g);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(|| : changed)
#endif
        for (long long si = 0; si < static_cast<long long>(n); ++si) {
            std::size_t s = static_cast<std::size_t>(si);
            std::uint32_t best = label[s];
            for (std::size_t e = 0; e < 2 * m; ++e) {
                std::uint32_t t = image[e * n + s];
                if (t == UINT32_MAX) continue;
                best = std::min(best, label[t]);
            }
            // pointer jumping: adopt the label of the current representative
            best = std::min(best, label[best]);
            if (best < label[s]) {
                label[s] = best;
                changed = true;
            }
        }
    }
    return label;
}

namespace {

void check_limits(const WedgeSpace& w, const VectorSpaceIndex& idx, const OracleOptions& opts,
                  const char* who) {
    if (w.size() > opts.max_summands)
        throw Indeterminate(std::string(who) + ": wedge has " + std::to_string(w.size()) +
                            " summands, above the configured cap of " +
                            std::to_string(opts.max_summands));
    if (idx.size() > opts.state_budget)
        throw Indeterminate(std::string(who) + ": state space of size " +
                            std::to_string(idx.size()) + " exceeds the budget");
}

}  // namespace

OrbitReport orbit_partition(const WedgeSpace& w, int degree, const std::vector<Move>& moves,
                            const OracleOptions& opts) {
    VectorSpaceIndex idx(w, degree);
    check_limits(w, idx, opts, "orbit_partition");
    std::vector<std::uint32_t> label =
        opts.parallel ? orbit_labels_parallel(idx, moves) : orbit_labels_serial(idx, moves);

    OrbitReport report{w, degree, idx.size(), 0, {}, {}, {}};
    std::map<std::uint32_t, std::size_t> sizes;
    for (std::uint32_t l : label) sizes[l] += 1;
    report.orbit_count = sizes.size();
    for (const auto& [rep, count] : sizes) report.orbits.push_back({idx.decode(rep), count});
    for (std::size_t s = 0; s < idx.size(); ++s) report.labels.push_back(label[s]);
    return report;
}

OrbitReport cross_check(const WedgeSpace& w, int degree, const RulePack& pack,
                        const OracleOptions& opts) {
    std::vector<Move> moves = standard_moves(w, degree, pack);
    VectorSpaceIndex idx(w, degree);
    check_limits(w, idx, opts, "cross_check");
    std::vector<std::uint32_t> label =
        opts.parallel ? orbit_labels_parallel(idx, moves) : orbit_labels_serial(idx, moves);

    OrbitReport report{w, degree, idx.size(), 0, {}, {}, {}};
    std::map<std::uint32_t, std::size_t> sizes;
    for (std::uint32_t l : label) sizes[l] += 1;
    report.orbit_count = sizes.size();
    for (const auto& [rep, count] : sizes) report.orbits.push_back({idx.decode(rep), count});
    for (std::size_t s = 0; s < idx.size(); ++s) report.labels.push_back(label[s]);

    // Orbit minima under the canonical vector order, by explicit scan.
    std::map<std::uint32_t, std::size_t> minimum;
    for (std::size_t s = 0; s < idx.size(); ++s) {
        auto it = minimum.find(label[s]);
        if (it == minimum.end()) {
            minimum.emplace(label[s], s);
            continue;
        }
        if (vector_less(idx.decode(s), idx.decode(it->second))) it->second = s;
    }
    for (std::size_t s = 0; s < idx.size(); ++s) {
        AttachingVector v = idx.decode(s);
        AttachingVector canon = canonicalize(v, pack).vector;
        if (idx.encode(canon) != minimum[label[s]]) report.mismatches.push_back(v);
    }
    return report;
}

std::string OrbitReport::to_string(bool list_members) const {
    std::ostringstream os;
    os << "wedge " << wedge.to_string() << " degree " << degree << "\n";
    os << "vectors " << vector_count << ", orbits " << orbit_count << "\n";
    std::optional<VectorSpaceIndex> idx;
    if (list_members && !labels.empty()) idx.emplace(wedge, degree);
    for (const auto& [rep, size] : orbits) {
        os << "  orbit size " << size << " rep " << rep.to_string() << "\n";
        if (idx) {
            std::uint32_t key = static_cast<std::uint32_t>(idx->encode(rep));
            for (std::size_t s = 0; s < labels.size(); ++s)
                if (labels[s] == key) os << "    " << idx->decode(s).to_string() << "\n";
        }
    }
    if (!mismatches.empty()) {
        os << "MISMATCHES " << mismatches.size() << "\n";
        for (const auto& v : mismatches) os << "  " << v.to_string() << "\n";
    }
    os << "note: merges are certified by the shipped moves; distinct orbits are\n"
          "conservative (the full self-equivalence group may identify more).\n";
    return os.str();
}

}  // namespace chang
