#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "chang/oracle.hpp"

using namespace chang;
using EC = ElementaryComplex;

namespace {

const RulePack& pack() {
    static RulePack p = rule_pack();
    return p;
}

}  // namespace

TEST_CASE("vector enumeration covers every coefficient tuple once") {
    WedgeSpace w = WedgeSpace::parse("S6vS7");
    auto vectors = enumerate_vectors(w, 8);
    CHECK(vectors.size() == 4);
    std::set<std::vector<long>> seen;
    for (const auto& v : vectors) CHECK(seen.insert(v.flat()).second);

    CHECK(enumerate_vectors(WedgeSpace::parse("P7(2^1)"), 8).size() == 4);
    CHECK(enumerate_vectors(WedgeSpace::parse("P7(2^2)"), 8).size() == 4);
    // a zero coefficient group has exactly the zero vector
    CHECK(enumerate_vectors(WedgeSpace::parse("P7(3^1)"), 8).size() == 1);
    // infinite groups are unsupported
    CHECK_THROWS_AS(enumerate_vectors(WedgeSpace::parse("S8"), 8), StructuralError);
    // budget excess is indeterminate
    CHECK_THROWS_AS(enumerate_vectors(WedgeSpace::parse("S5vS5vS5"), 8, 100), Indeterminate);
}

TEST_CASE("encode and decode are mutually inverse") {
    VectorSpaceIndex idx(WedgeSpace::parse("P6(2^2)vS7"), 8);
    CHECK(idx.size() == 16);
    for (std::size_t i = 0; i < idx.size(); ++i) CHECK(idx.encode(idx.decode(i)) == i);
}

TEST_CASE("the S6vS7 wedge has exactly three orbits") {
    WedgeSpace w = WedgeSpace::parse("S6vS7");
    OrbitReport r = orbit_partition(w, 8, standard_moves(w, 8, pack()));
    CHECK(r.vector_count == 4);
    CHECK(r.orbit_count == 3);
    std::size_t total = 0;
    for (const auto& [rep, size] : r.orbits) total += size;
    CHECK(total == r.vector_count);
    // orbits: {0}, {eta^2 on S6}, {eta on S7 with and without the eta^2 shadow}
    CHECK(r.orbits[0].second == 1);
    CHECK(r.orbits[1].second == 1);
    CHECK(r.orbits[2].second == 2);
}

TEST_CASE("single Moore summand orbits") {
    WedgeSpace w1 = WedgeSpace::parse("P7(2^1)");
    OrbitReport r1 = orbit_partition(w1, 8, standard_moves(w1, 8, pack()));
    CHECK(r1.vector_count == 4);
    CHECK(r1.orbit_count == 3);  // {0}, {etatilde, 3 etatilde}, {2 etatilde}

    WedgeSpace w2 = WedgeSpace::parse("P7(2^2)");
    OrbitReport r2 = orbit_partition(w2, 8, standard_moves(w2, 8, pack()));
    CHECK(r2.vector_count == 4);
    CHECK(r2.orbit_count == 3);  // {0}, {i eta2}, {etatilde, etatilde + i eta2}
}

TEST_CASE("zero move set keeps every vector in its own orbit") {
    WedgeSpace w = WedgeSpace::parse("P6(2^2)vS7");
    OrbitReport r = orbit_partition(w, 8, {});
    CHECK(r.orbit_count == r.vector_count);
}

TEST_CASE("serial and parallel closures agree") {
    for (const char* lit : {"S6vS7", "P6(2^2)vS7", "C7{s=1}vS5", "Ceta7vS5vS7"}) {
        WedgeSpace w = WedgeSpace::parse(lit);
        VectorSpaceIndex idx(w, 8);
        auto moves = standard_moves(w, 8, pack());
        auto serial = orbit_labels_serial(idx, moves);
        auto parallel = orbit_labels_parallel(idx, moves);
        CHECK(serial == parallel);
    }
}

TEST_CASE("cross check: canonical forms equal orbit minima on the family") {
    for (const char* lit : {"S6vS7", "P7(2^1)", "P7(2^2)", "P6(2^2)vS7", "C7[r=1]{s=1}",
                            "P6(2^1)vP7(2^1)", "P6(3^1)vS5"}) {
        OrbitReport r = cross_check(WedgeSpace::parse(lit), 8, pack());
        CHECK_MESSAGE(r.mismatches.empty(), lit, ": ", r.mismatches.size(), " mismatches");
    }
}

TEST_CASE("cross check collapses the joint 2/3 classes on C7{s}vS5") {
    WedgeSpace w = WedgeSpace::parse("C7{s=1}vS5");
    OrbitReport r = cross_check(w, 8, pack());
    CHECK(r.mismatches.empty());
    // (ihat eta2, alpha1) and (ihat eta2 + ihat alpha1, 0) lie in one orbit
    VectorSpaceIndex idx(w, 8);
    auto moves = standard_moves(w, 8, pack());
    auto labels = orbit_labels_serial(idx, moves);
    AttachingVector a = AttachingVector::parse(w, 8, "[1*ihat_eta2; 1*alpha1]");
    AttachingVector b = AttachingVector::parse(w, 8, "[1*ihat_eta2 + 1*ihat_alpha1; 0]");
    CHECK(labels[idx.encode(a)] == labels[idx.encode(b)]);
}

TEST_CASE("weakened move sets report mismatches instead of erasing them") {
    WedgeSpace w = WedgeSpace::parse("P7(2^2)vS7");
    std::vector<Move> weak;  // sign flips only
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto m = EquivalenceMatrix::diagonal(w, i, FormalMorph::identity(w[i], -1));
        weak.push_back({m, m, "unit-neg", i, i});
    }
    VectorSpaceIndex idx(w, 8);
    auto labels = orbit_labels_serial(idx, weak);
    std::size_t mismatches = 0;
    std::map<std::uint32_t, std::size_t> minimum;
    for (std::size_t s = 0; s < idx.size(); ++s) {
        auto it = minimum.find(labels[s]);
        if (it == minimum.end())
            minimum.emplace(labels[s], s);
        else if (vector_less(idx.decode(s), idx.decode(it->second)))
            it->second = s;
    }
    for (std::size_t s = 0; s < idx.size(); ++s) {
        AttachingVector canon = canonicalize(idx.decode(s), pack()).vector;
        if (idx.encode(canon) != minimum[labels[s]]) ++mismatches;
    }
    CHECK(mismatches > 0);
}

TEST_CASE("every move preserves mapping-cone homology over the whole space") {
    WedgeSpace w = WedgeSpace::parse("P6(2^2)vS7");
    VectorSpaceIndex idx(w, 8);
    auto moves = standard_moves(w, 8, pack());
    auto base = cone_homology(idx.decode(0));
    for (std::size_t s = 0; s < idx.size(); ++s) {
        AttachingVector v = idx.decode(s);
        CHECK(cone_homology(v) == base);
        for (const Move& mv : moves) {
            try {
                CHECK(cone_homology(act(mv.forward, v)) == base);
            } catch (const UnknownComposite&) {
            }
        }
    }
}

TEST_CASE("prec rule pairs lie in one orbit of the two-summand wedge") {
    std::size_t checked = 0;
    for (const PrecRule& r : pack().prec) {
        if (checked >= 25) break;
        if (r.alpha_host == r.beta_host) continue;
        WedgeSpace w({r.alpha_host, r.beta_host});
        VectorSpaceIndex idx(w, 8);
        if (idx.size() > 2000) continue;
        AttachingVector with_beta(w, 8, {r.alpha, r.beta});
        AttachingVector without(w, 8,
                                {r.alpha, GroupElement::zero(pi(r.beta_host, 8).group)});
        auto moves = standard_moves(w, 8, pack());
        auto labels = orbit_labels_serial(idx, moves);
        CHECK_MESSAGE(labels[idx.encode(with_beta)] == labels[idx.encode(without)], r.rule_id);
        ++checked;
    }
    CHECK(checked == 25);
}

TEST_CASE("state budget excess is indeterminate") {
    WedgeSpace w = WedgeSpace::parse("S5vS5vS5");
    OracleOptions opts;
    opts.state_budget = 100;
    CHECK_THROWS_AS(orbit_partition(w, 8, {}, opts), Indeterminate);
}

TEST_CASE("report text lists counts and representatives") {
    WedgeSpace w = WedgeSpace::parse("S6vS7");
    OrbitReport r = cross_check(w, 8, pack());
    std::string text = r.to_string();
    CHECK(text.find("vectors 4, orbits 3") != std::string::npos);
    CHECK(text.find("MISMATCH") == std::string::npos);
}
