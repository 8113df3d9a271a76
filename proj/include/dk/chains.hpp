#pragma once

// Chain-complex specialization of the simplex-category instance:
// conversion of normalized diagrams, Betti numbers, the classical Moore
// complex used as an independent oracle, and simplicial test presets.

#include "dk/dkequiv.hpp"
#include "dk/generators.hpp"

namespace dk {

struct WrongShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-negatively graded complex: d[n] maps degree n to degree n-1
// (d[0] is the empty map out of degree 0). d[n-1] * d[n] = 0 always.
struct ChainComplexData {
    Ring ring;
    std::vector<int> dims;
    std::vector<Matrix> d;
};

ChainComplexData validate_chain_complex(Ring ring, std::vector<int> dims, std::vector<Matrix> d);

// Reads a pointed diagram over N0 of a simplex-category triple off as a
// chain complex via [n] -> degree n and the unique non-identity regular
// mono [n-1] -> [n].
ChainComplexData to_chain_complex(const DKTriple& t, const N0Result& n0, const MatDiagram& xbar);

std::vector<int> homology(const ChainComplexData& c);

// A simplicial vector space: a diagram over the opposite of the
// truncated simplex category, with concrete access to face maps.
struct SimplicialVectorSpace {
    ConcreteCategory delta;  // the (covariant) simplex category
    MatDiagram diag;         // over opposite(delta.cat)
    int k = 0;

    int face_arrow(int n, int i) const;  // arrow id of the i-th face [n-1] -> [n]
    const Matrix& face(int n, int i) const { return diag.mat(face_arrow(n, i)); }
};

// N_n = intersection over i = 1..n of ker(face_i), differential induced
// by face_0. Computed by direct kernel intersection, independent of the
// equivalence engine.
ChainComplexData moore_oracle(const SimplicialVectorSpace& x);

// Presets: "delta0", "delta1", "delta2", "boundary-delta2", "s1"
// (the interval with collapsed endpoints), all truncated at level k and
// freely linearized.
SimplicialVectorSpace simplicial_preset(const std::string& name, int k, Ring ring);

// Constant simplicial vector space of dimension d.
SimplicialVectorSpace constant_simplicial(int d, int k, Ring ring);

// The engine-facing covariant diagram of a simplicial vector space.
MatDiagram to_engine_diagram(const SimplicialVectorSpace& x);

}  // namespace dk
