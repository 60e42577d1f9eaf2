#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chang/invariants.hpp"
#include "chang/reduce.hpp"
#include "chang/wedge.hpp"

namespace chang {

enum class Locality { Two, Three, Total };

// One candidate homotopy type: a wedge of elementary complexes plus at most
// one mapping cone X u_alpha e^9 carrying the top cell.
struct WedgeDecomposition {
    std::string case_tag;    // e.g. "Thm1.2/2b(v)"
    std::string symbolic;    // shell form, e.g. "(W7/P7(2^2)) v (P7(2^2) u[1*etatilde] e9)"
    Locality locality = Locality::Total;
    std::vector<ElementaryComplex> free_summands;
    std::optional<std::pair<WedgeSpace, AttachingVector>> cone;
    std::vector<std::string> notes;

    // All summands including the cone carriers (the cone cell aside).
    std::vector<ElementaryComplex> all_summands() const;
    std::string expanded() const;
};

// The wedge shells of the two main statements.
WedgeSpace build_V7(const ManifoldInvariants& inv);
WedgeSpace build_W7(const ManifoldInvariants& inv);

std::vector<WedgeDecomposition> classify_2local(const ManifoldInvariants& inv);
std::vector<WedgeDecomposition> classify_3local(const ManifoldInvariants& inv);
std::vector<WedgeDecomposition> classify_total(const ManifoldInvariants& inv);

// Graded-group soundness: the reduced homology of the candidate equals the
// three-fold shift of H(M), in the candidate's locality.
bool homology_audit(const WedgeDecomposition& dec, const ManifoldInvariants& inv);

// Projection of a total candidate to its p-local shape (p in {2, 3}):
// summands with trivial p-local homology are dropped and cone coefficients
// are p-localized; carriers that become contractible leave the cone.
WedgeDecomposition localize_decomposition(const WedgeDecomposition& dec, long p);

// Comparison helper: multiset of summands plus canonicalized cone data.
bool same_decomposition(const WedgeDecomposition& a, const WedgeDecomposition& b,
                        const RulePack& pack);

}  // namespace chang
