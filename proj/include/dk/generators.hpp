#pragma once

// Builders for the example DK-triples at finite truncation: the simplex
// category with min/max-preserving injections, the generic Par^op
// construction over a factorization system, and its Gamma and FI#
// instances.

#include "dk/diagram.hpp"
#include "dk/dktriple.hpp"

namespace dk {

struct FactorizationSystemViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite category whose arrows are concrete functions between finite
// sets: fn[arrow] is the value tuple on 0..elems[src]-1.
struct ConcreteCategory {
    FinCategory cat;
    std::vector<int> elems;            // object index -> element count
    std::vector<std::vector<int>> fn;  // arrow id -> values

    int arrow_id(int src, int tgt, const std::vector<int>& values) const;
};

enum class MorphismClass { Fin, Inj, Surj };

// Fin<=k / FinInj<=k / Surj<=k: sets of size 0..k as objects "0".."k".
ConcreteCategory fin_category(int k, MorphismClass cls);

// Full subcategory of the simplex category on [0]..[k]; objects are
// named "[0]".."[k]" and arrows are weakly monotone value tuples.
ConcreteCategory delta_category(int k);

DKTriple delta_min(int k);
DKTriple delta_max(int k);

// The order-reversing involution of delta<=k as an arrow id permutation;
// exchanges delta_min and delta_max arrow-for-arrow.
std::vector<int> delta_order_reversal(int k);

struct FactorizationInput {
    ConcreteCategory A;
    std::set<int> E_A;
    std::set<int> M_A;
};

// B = Par^op A with E / Ev the spans whose non-trivial leg sits in M_A.
// span_of records the canonical representative span of each B-arrow as
// (left leg in A, right leg in M_A).
struct ParOp {
    DKTriple triple;
    ConcreteCategory A;
    std::vector<std::pair<int, int>> span_of;

    // The co-M-partial map of a B-arrow X -> Y on elements: value per
    // element of Y, -1 where undefined.
    std::vector<int> partial_map(int b_arrow) const;
};

ParOp par_op(const FactorizationInput& input);

ParOp gamma(int k);     // Par^op over (Fin<=k, Surj, Inj)
ParOp fi_sharp(int k);  // Par^op over (FinInj<=k, Iso, Inj)

// The tautological diagram of a Par^op triple: X_S = free module on the
// elements of S, spans acting as partial permutation matrices (entry
// (m(z), a(z)) = 1 for the representative span a: Z -> X, m: Z -> Y).
MatDiagram linearize_par_op(const ParOp& p, Ring ring);

// CLI preset names: "delta-min:k", "delta-max:k", "gamma:k", "fi-sharp:k".
TripleData preset_triple(const std::string& name);

}  // namespace dk
