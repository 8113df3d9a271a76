#include "dk/chains.hpp"

#include <algorithm>

namespace dk {

ChainComplexData validate_chain_complex(Ring ring, std::vector<int> dims, std::vector<Matrix> d) {
    ChainComplexData c;
    c.ring = ring;
    c.dims = std::move(dims);
    c.d = std::move(d);
    if (c.d.size() != c.dims.size()) throw WrongShape("one differential per degree expected");
    for (size_t n = 0; n < c.dims.size(); ++n) {
        int below = n == 0 ? 0 : c.dims[n - 1];
        if (c.d[n].rows() != below || c.d[n].cols() != c.dims[n])
            throw WrongShape("differential " + std::to_string(n) + " has the wrong shape");
        if (n >= 1 && !(c.d[n - 1] * c.d[n]).is_zero())
            throw WrongShape("d*d != 0 at degree " + std::to_string(n));
    }
    return c;
}

ChainComplexData to_chain_complex(const DKTriple& t, const N0Result& n0, const MatDiagram& xbar) {
    const int k = static_cast<int>(t.B.objects.size()) - 1;
    std::vector<int> dims;
    std::vector<Matrix> d;
    for (int n = 0; n <= k; ++n) dims.push_back(xbar.dims[n0.object_of[n]]);
    d.push_back(Matrix::zero(xbar.ring, 0, dims[0]));
    for (int n = 1; n <= k; ++n) {
        // the unique non-identity regular mono [n-1] -> [n]
        int found = -1, count = 0;
        for (int m : t.classes.mreg) {
            if (t.B.src(m) != n - 1 || t.B.tgt(m) != n) continue;
            ++count;
            found = m;
        }
        if (count != 1)
            throw WrongShape("expected exactly one regular mono between consecutive degrees, got " +
                             std::to_string(count));
        d.push_back(xbar.mat(n0.arrow_of_mreg.at(found)).transpose());
    }
    return validate_chain_complex(xbar.ring, std::move(dims), std::move(d));
}

std::vector<int> homology(const ChainComplexData& c) {
    std::vector<int> betti;
    for (size_t n = 0; n < c.dims.size(); ++n) {
        int cycles = c.dims[n] - rank(c.d[n]);
        int boundaries = n + 1 < c.d.size() ? rank(c.d[n + 1]) : 0;
        betti.push_back(cycles - boundaries);
    }
    return betti;
}

int SimplicialVectorSpace::face_arrow(int n, int i) const {
    std::vector<int> values(n);
    for (int j = 0; j < n; ++j) values[j] = j < i ? j : j + 1;
    return delta.arrow_id(n - 1, n, values);
}

ChainComplexData moore_oracle(const SimplicialVectorSpace& x) {
    std::vector<int> dims;
    std::vector<Matrix> d;
    std::vector<Matrix> basis;  // basis[n]: X_n x N_n, columns span N_n
    for (int n = 0; n <= x.k; ++n) {
        int xn = x.diag.dims[n];
        if (n == 0) {
            basis.push_back(Matrix::identity(x.diag.ring, xn));
            d.push_back(Matrix::zero(x.diag.ring, 0, xn));
        } else {
            std::vector<Matrix> faces;
            for (int i = 1; i <= n; ++i) faces.push_back(x.face(n, i));
            basis.push_back(kernel_basis(Matrix::vcat(faces, x.diag.ring, xn)));
            // face_0 carries N_n into N_{n-1}; express it in that basis
            d.push_back(solve(basis[n - 1], x.face(n, 0) * basis[n]));
        }
        dims.push_back(basis[n].cols());
    }
    return validate_chain_complex(x.diag.ring, std::move(dims), std::move(d));
}

namespace {

// monotone tuples of length len over 0..top, lexicographically
std::vector<std::vector<int>> monotone_tuples(int len, int top) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int v = cur.empty() ? 0 : cur.back(); v <= top; ++v) {
            cur.push_back(v);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

bool constant_tuple(const std::vector<int>& t) {
    return std::all_of(t.begin(), t.end(), [&t](int v) { return v == t.front(); });
}

bool onto_range(const std::vector<int>& t, int top) {
    std::set<int> seen(t.begin(), t.end());
    return static_cast<int>(seen.size()) == top + 1;
}

SimplicialVectorSpace from_simplices(int k, Ring ring, int top,
                                     const std::function<bool(const std::vector<int>&)>& keep,
                                     bool collapse_constants) {
    SimplicialVectorSpace out;
    out.delta = delta_category(k);
    out.k = k;
    SetFunctor f;
    f.shape = opposite(out.delta.cat);
    // element lists per level; with collapsing, element 0 is the common
    // basepoint of the identified simplices
    std::vector<std::vector<std::vector<int>>> simplices(k + 1);
    auto index_of = [&](int level, const std::vector<int>& s) {
        if (collapse_constants && constant_tuple(s)) return 0;
        auto& list = simplices[level];
        auto it = std::find(list.begin(), list.end(), s);
        return static_cast<int>(it - list.begin()) + (collapse_constants ? 1 : 0);
    };
    for (int m = 0; m <= k; ++m)
        for (const auto& s : monotone_tuples(m + 1, top))
            if (keep(s) && !(collapse_constants && constant_tuple(s))) simplices[m].push_back(s);
    f.sizes.resize(k + 1);
    for (int m = 0; m <= k; ++m)
        f.sizes[m] = static_cast<int>(simplices[m].size()) + (collapse_constants ? 1 : 0);
    f.action.resize(f.shape.arrows.size());
    for (const Arrow& a : f.shape.arrows) {
        // a: [m] -> [n] in the opposite shape is a monotone g: [n] -> [m]
        int m = a.src, n = a.tgt;
        const std::vector<int>& g = out.delta.fn[a.id];
        std::vector<int>& act = f.action[a.id];
        act.resize(f.sizes[m]);
        int base = collapse_constants ? 1 : 0;
        if (collapse_constants) act[0] = 0;
        for (size_t si = 0; si < simplices[m].size(); ++si) {
            std::vector<int> img(n + 1);
            for (int j = 0; j <= n; ++j) img[j] = simplices[m][si][g[j]];
            act[base + static_cast<int>(si)] = index_of(n, img);
        }
    }
    out.diag = linearize_set_functor(f, ring, false);
    return out;
}

}  // namespace

SimplicialVectorSpace simplicial_preset(const std::string& name, int k, Ring ring) {
    auto all = [](const std::vector<int>&) { return true; };
    if (name == "delta0") return from_simplices(k, ring, 0, all, false);
    if (name == "delta1") return from_simplices(k, ring, 1, all, false);
    if (name == "delta2") return from_simplices(k, ring, 2, all, false);
    if (name == "boundary-delta2")
        return from_simplices(k, ring, 2, [](const std::vector<int>& s) { return !onto_range(s, 2); },
                              false);
    if (name == "s1") return from_simplices(k, ring, 1, all, true);
    throw std::invalid_argument("unknown simplicial preset: " + name);
}

SimplicialVectorSpace constant_simplicial(int d, int k, Ring ring) {
    SimplicialVectorSpace out;
    out.delta = delta_category(k);
    out.k = k;
    FinCategory shape = opposite(out.delta.cat);
    std::vector<int> dims(k + 1, d);
    std::vector<Matrix> mats(shape.arrows.size(), Matrix::identity(ring, d));
    out.diag = validate_diagram(std::move(shape), ring, std::move(dims), std::move(mats));
    return out;
}

MatDiagram to_engine_diagram(const SimplicialVectorSpace& x) { return opposite_diagram(x.diag); }

}  // namespace dk
