#pragma once

// Explicit finite categories given by total composition tables, plus the
// pointed-category constructions (free pointed category, quotient by a
// two-sided ideal).

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dk {

struct AssociativityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingComposite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadIdentity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAnIdeal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Arrow {
    int id = -1;
    int src = -1;  // object index
    int tgt = -1;  // object index

    bool operator==(const Arrow&) const = default;
};

// A finite category: objects are indices into `objects`, arrows carry
// dense integer ids, and composition is stored as a total table. All
// enumerations iterate in id order so output is deterministic.
class FinCategory {
public:
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    std::vector<int> identity;                  // object index -> arrow id
    std::vector<std::vector<int>> compose_tab;  // [g][f] -> arrow id, -1 if not composable

    int object_index(const std::string& name) const;

    int src(int f) const { return arrows[f].src; }
    int tgt(int f) const { return arrows[f].tgt; }
    bool composable(int g, int f) const { return tgt(f) == src(g); }

    // g after f; both must be composable.
    int compose(int g, int f) const;

    std::vector<int> hom(int x, int y) const;

    // Validates all category laws by full enumeration; throws the first
    // violated law (associativity triple, missing composite, bad unit).
    void validate() const;

    bool is_iso(int f) const;
    std::optional<int> inverse_of(int f) const;

    std::vector<int> iso_arrows() const;

    // Representative-object map for object iso classes: obj -> lowest
    // object index isomorphic to it, plus a witnessing iso arrow
    // (lowest arrow id) obj -> rep.
    std::vector<int> object_class_reps() const;
    int iso_witness(int from, int to) const;  // lowest-id iso arrow, -1 if none
};

FinCategory validate_category(FinCategory raw);
FinCategory opposite(const FinCategory& c);

// A finite pointed category: a FinCategory plus a designated zero object.
// For every pair (x, y) there is a distinguished zero arrow x -> 0 -> y;
// `zero_arrow` resolves it.
struct PointedFinCategory {
    FinCategory base;
    int zero = -1;  // zero object index

    int zero_arrow(int x, int y) const;
    bool is_zero_arrow(int f) const;

    void validate() const;
};

// Construction 2.2.1: freely adjoin a zero object.
PointedFinCategory free_pointed(const FinCategory& c);

// Quotient by a two-sided ideal; arrows in the ideal become the zero
// arrow. Objects whose identity lies in the ideal become isomorphic to 0
// (permitted; reported via `collapsed`). `arrow_image` maps old arrow ids
// to new ones (-1 = became zero arrow).
struct QuotientResult {
    PointedFinCategory cat;
    std::vector<int> object_image;  // old object index -> new object index
    std::vector<int> arrow_image;   // old arrow id -> new arrow id, -1 if killed
    std::vector<int> collapsed;     // objects with identity in the ideal
};
QuotientResult quotient_by_ideal(const FinCategory& c, const std::set<int>& ideal);

enum class ClassSide { Source, Target };

// Partition of arrows sharing a source (Source side: f ~ f' iff an iso h
// of targets has h.f = f') or sharing a target (Target side: f ~ f' iff
// an iso h of sources has f'.h = f). Representatives are the lowest
// arrow id in each class.
struct ArrowClassSet {
    ClassSide side;
    std::vector<std::vector<int>> classes;  // each sorted by arrow id
    std::vector<int> reps;                  // class index -> representative arrow id

    int class_of(int arrow) const;
};

ArrowClassSet arrow_classes(const FinCategory& c, const std::vector<int>& arrows, ClassSide side);

// Two arrows are isomorphic in the arrow category: isos h, h' with
// h'.f = g.h.
bool arrows_isomorphic(const FinCategory& c, int f, int g);

// JSON category file format; save -> load is byte-identical after
// canonical key ordering.
std::string category_to_json(const FinCategory& c);
FinCategory category_from_json(const std::string& text);

}  // namespace dk
