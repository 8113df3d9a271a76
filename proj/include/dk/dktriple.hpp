#pragma once

// DK-triple data: derived arrow classes, the axiom validator (T1)-(T5),
// the pairing/matching machinery, the canonical partial order and the
// constructions N0 and V.

#include "dk/fincat.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace dk {

struct NotWideSubcategory : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AxiomFailure : std::runtime_error {
    AxiomFailure(std::string ax, const std::string& detail)
        : std::runtime_error(ax + ": " + detail), axiom(std::move(ax)) {}
    std::string axiom;
};
struct NoAdmissibleOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAntisymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw, unvalidated triple data (B, E, Ev).
struct TripleData {
    FinCategory B;
    std::set<int> E;   // Epis
    std::set<int> Ev;  // dual Epis
};

// Sing = Ev_neq . B, Reg = B \ Sing, M = B \ (B . E_neq), MReg = M n Reg.
struct DerivedClasses {
    std::set<int> sing, reg, mono, mreg;
};

DerivedClasses compute_classes(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev);

// The (T2) certificate at one object: iso-class rows pi0 E(b), columns
// pi0 Ev(b), the matched bijection and an admissible order making the
// pairing matrix unipotent upper triangular modulo non-isomorphisms.
struct PairingData {
    int object = -1;
    ArrowClassSet rows;  // Epis out of b, source-side classes
    ArrowClassSet cols;  // dual Epis into b, target-side classes
    std::vector<std::vector<bool>> iso_entry;  // [row][col]: e . v invertible
    std::vector<int> matching;  // row class -> col class
    std::vector<int> order;     // admissible order as a list of row-class indices
    bool unique_matching = false;
    bool diagonal = false;  // iso entries are exactly the matching
};

struct AxiomReport {
    std::string axiom;
    bool pass = false;
    std::string detail;  // counterexample description when failing
};

struct ValidationReport {
    std::vector<AxiomReport> axioms;
    std::vector<PairingData> pairings;  // one per object, in object order (empty on T2 failure)
    bool pass() const;
    const AxiomReport* first_failure() const;
};

// Canonical partial order b' <= b on object iso classes (a dual Epi
// b' -> b exists), plus a deterministic linear extension of the class
// representatives.
struct ObjectOrder {
    std::vector<int> rep;                   // object -> class representative object
    std::vector<std::vector<bool>> leq;     // [rep][rep], indexed by object id
    std::vector<int> linear;                // class representatives in extension order
};

// A certified DK-triple; only produced by validate_triple.
struct DKTriple {
    FinCategory B;
    std::set<int> E, Ev;
    DerivedClasses classes;
    std::vector<PairingData> pairings;  // per object
    ObjectOrder order;
};

AxiomReport check_T1(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev,
                     const DerivedClasses& classes);
PairingData check_T2(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev, int b);
AxiomReport check_T3(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev);
AxiomReport check_T4(const FinCategory& B, const DerivedClasses& classes);
AxiomReport check_T5(const FinCategory& B, const DerivedClasses& classes);

// Runs all checks; the report carries per-axiom verdicts and the pairing
// certificates.
ValidationReport validate_triple_report(const TripleData& t);

// Returns the certified triple or throws AxiomFailure / NotWideSubcategory
// naming the first violated axiom.
DKTriple validate_triple(const TripleData& t);

ObjectOrder object_order(const FinCategory& B, const std::set<int>& Ev);

bool is_reduced(const DKTriple& t);
DKTriple reduce(const DKTriple& t);

bool is_diagonalizable(const DKTriple& t);
bool is_monotone(const DKTriple& t);
bool is_partially_monotone(const DKTriple& t);

// Construction 3.2.1: the pointed quotient N0 = M / (M n Sing).
// Objects of n0 are the objects of B plus zero, in the same order;
// `arrow_of_mreg` maps each MReg arrow of B to its N0 arrow id.
struct N0Result {
    PointedFinCategory n0;
    std::vector<int> object_of;     // B object index -> n0 object index (identity embedding)
    std::map<int, int> arrow_of_mreg;
};
N0Result build_N0(const DKTriple& t);

// Construction 3.2.4: the upper triangular category V gluing B_+ and N0
// along the bimodule Sing\B.
struct VResult {
    PointedFinCategory v;
    std::vector<int> n_object;  // B object index -> V object index of its N-copy
    std::vector<int> b_object;  // B object index -> V object index of its B-copy
    std::map<int, int> n_arrow_of_mreg;  // MReg arrow -> V arrow (N side)
    std::map<int, int> b_arrow_of;       // B arrow -> V arrow (B side)
    std::map<int, int> r_arrow_of_reg;   // Reg arrow b -> [n] -> V arrow b -> n
};
VResult build_V(const DKTriple& t);

// Serialization: {"category": <inline or path>, "epis": [...],
// "dual_epis": [...]}.
std::string triple_to_json(const TripleData& t);
TripleData triple_from_json(const std::string& text);

}  // namespace dk
