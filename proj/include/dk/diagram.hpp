#pragma once

// Matrix-valued functors on finite (pointed) categories, generators for
// always-functorial test diagrams, and finite limits/colimits of vector
// spaces.

#include "dk/exactla.hpp"
#include "dk/fincat.hpp"

#include <functional>

namespace dk {

struct FunctorialityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PointednessViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A functor shape -> matrices: dims[obj] is the value dimension and
// mats[arrow] the dim(tgt) x dim(src) value matrix. Pointed diagrams
// carry the zero object (dimension 0 is enforced).
struct MatDiagram {
    FinCategory shape;
    bool pointed = false;
    int zero_object = -1;  // object index when pointed
    Ring ring;
    std::vector<int> dims;
    std::vector<Matrix> mats;

    const Matrix& mat(int arrow) const { return mats[arrow]; }
};

// Full functoriality scan (identities, every composable pair); throws
// the first violation in arrow-id order.
MatDiagram validate_diagram(FinCategory shape, Ring ring, std::vector<int> dims,
                            std::vector<Matrix> mats);
MatDiagram validate_diagram(const PointedFinCategory& shape, Ring ring, std::vector<int> dims,
                            std::vector<Matrix> mats);

// b -> free module on hom(c, b), arrows acting by postcomposition. The
// pointed variant drops the zero arrow's basis vector.
MatDiagram representable(const FinCategory& shape, int c, Ring ring);
MatDiagram representable(const PointedFinCategory& shape, int c, Ring ring);

// A set-valued functor on `shape` given by explicit tables: sizes[obj]
// is the value cardinality and action[arrow] the value tuple on elements
// of the source (an entry of -1 sends that element to zero under
// linearization).
struct SetFunctor {
    FinCategory shape;
    std::vector<int> sizes;
    std::vector<std::vector<int>> action;
};

// Free linearization; `reduced` treats element 0 of every value set as a
// basepoint, dropping its basis vector (values 0 / -1 become zero).
MatDiagram linearize_set_functor(const SetFunctor& f, Ring ring, bool reduced);

struct LimitResult {
    int dim = 0;
    std::vector<Matrix> legs;  // legs[obj]: dims[obj] x dim, apex -> values
};
struct ColimitResult {
    int dim = 0;
    std::vector<Matrix> legs;  // legs[obj]: dim x dims[obj], values -> apex
};

// Limit = kernel of the difference map (+)_obj -> (+)_arrows; colimit =
// cokernel of the dual map. Legs are returned explicitly and exact.
LimitResult finite_limit(const MatDiagram& d);
ColimitResult finite_colimit(const MatDiagram& d);

// The mediating map into the limit apex from a cone (legs[obj] must be
// dims[obj] x cone_dim and commute with the diagram).
Matrix map_into_limit(const MatDiagram& d, const LimitResult& lim, const std::vector<Matrix>& cone,
                      int cone_dim);
// The mediating map out of the colimit apex from a cocone (legs
// cocone_dim x dims[obj]).
Matrix map_from_colimit(const MatDiagram& d, const ColimitResult& colim,
                        const std::vector<Matrix>& cocone, int cocone_dim);

// Same matrices transposed over the opposite shape.
MatDiagram opposite_diagram(const MatDiagram& d);

// Diagram files: shape by reference string (path or preset), matrices
// stored for every arrow as row-major scalar strings.
struct DiagramFile {
    std::string shape_ref;
    Ring ring;
    std::map<std::string, int> dims;               // object name -> dim
    std::map<int, std::vector<std::string>> mats;  // arrow id -> row-major entries
};

DiagramFile diagram_to_file(const MatDiagram& d, const std::string& shape_ref);
std::string diagram_file_to_json(const DiagramFile& f);
DiagramFile diagram_file_from_json(const std::string& text);

// Rebuild (and fully re-validate) a diagram against its resolved shape.
MatDiagram diagram_from_file(const DiagramFile& f, const FinCategory& shape);
MatDiagram diagram_from_file(const DiagramFile& f, const PointedFinCategory& shape);

}  // namespace dk
