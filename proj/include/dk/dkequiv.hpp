#pragma once

// The equivalence engine: normalization by induction along the canonical
// order, denormalization by the product formula over Epi classes,
// round-trip witnesses, the section-retraction audit and the Kan /
// truncation detectors.

#include "dk/diagram.hpp"
#include "dk/dktriple.hpp"

namespace dk {

struct PhiNotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FactorizationAmbiguity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionConservationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPartiallyMonotone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Split witnesses per object: incl realizes the normalized summand
// inside the diagram value, proj retracts onto it; phi and its block
// data are kept per object-class representative.
struct EquivalenceWitness {
    Ring ring;
    std::vector<int> nbar;           // object -> normalized dimension
    std::vector<Matrix> incl;        // object -> dims[b] x nbar[b]
    std::vector<Matrix> proj;        // object -> nbar[b] x dims[b]
    std::vector<Matrix> s_mat;       // object -> assembled section-side block matrix
    std::vector<Matrix> r_mat;       // object -> assembled retraction-side block matrix
    std::vector<Matrix> phi;         // class rep -> r_mat * s_mat (empty elsewhere)
    std::vector<std::vector<int>> phi_blocks;   // class rep -> block sizes
    std::vector<std::vector<int>> block_order;  // class rep -> ordered Epi class rep arrows
};

struct NormalizationResult {
    MatDiagram normalized;  // pointed diagram over n0.n0
    N0Result n0;
    EquivalenceWitness witness;
};

// Induction over object classes in the linear extension of <=; the
// returned diagram passes the pointed functoriality scan, dimension
// conservation and the witness identities (all asserted, not assumed).
NormalizationResult normalize(const DKTriple& t, const MatDiagram& x);

// Product formula: Y_b = (+) over Epi classes e: b ->> n of Ybar_n, with
// blocks read off the regular factorization u = m . e'. Ybar must be a
// pointed diagram over build_N0(t).
MatDiagram denormalize(const DKTriple& t, const MatDiagram& ybar);

struct RoundtripResult {
    std::vector<Matrix> theta;  // per object: denormalized dim x input dim
    bool invertible = false;
    bool natural = false;

    bool pass() const { return invertible && natural; }
};

// theta_b = stack over Epi classes e of proj . mat(e): natural iso
// X => denormalize(normalize(X)).
RoundtripResult roundtrip_check(const DKTriple& t, const MatDiagram& x);

// psi_n: natural iso Ybar => normalize(denormalize(Ybar)), read off the
// identity-class summand inclusion.
RoundtripResult reverse_roundtrip_check(const DKTriple& t, const MatDiagram& ybar);

struct AuditReport {
    int object = -1;
    int dim_x = 0, dim_lim = 0, dim_colim = 0, dim_nbar = 0;
    bool composite_iso = false;   // colim -> X_b -> lim invertible
    bool dims_consistent = false; // dim_x == dim_colim + dim_nbar == dim_lim + dim_nbar
    bool kernel_matches = false;  // ker(to-lim) and coker(from-colim) both have dim nbar

    bool pass() const { return composite_iso && dims_consistent && kernel_matches; }
};

// Direct total-fiber / total-cofiber computation over the comma
// categories of non-invertible (dual) Epis at object n, compared
// dimension-for-dimension with the witness path.
AuditReport section_retraction_audit(const DKTriple& t, const MatDiagram& x, int n);

struct KanReport {
    bool vanishing = false;       // normalized value is zero at n
    bool limit_cone_iso = false;  // X_n -> lim over non-invertible Epis is iso

    bool agree() const { return vanishing == limit_cone_iso; }
};

// Requires a partially monotone triple.
KanReport kan_detector(const DKTriple& t, const MatDiagram& x, int n);

// Number of object classes strictly below n's class.
int object_level(const DKTriple& t, int n);

// True when the normalized diagram vanishes at every class of level > k.
bool truncation_detector(const DKTriple& t, const MatDiagram& x, int k);

}  // namespace dk
